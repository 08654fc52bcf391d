#include <cstdlib>
#include <random>

#include "doctest.h"
#include "khtail/bigint.hpp"
#include "khtail/grading.hpp"
#include "khtail/laurent.hpp"

using namespace khtail;

TEST_CASE("bigint basic arithmetic against int64") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 4000; ++iter) {
    int64_t a = static_cast<int64_t>(rng() % 2000000007ull) - 1000000003;
    int64_t b = static_cast<int64_t>(rng() % 2000000007ull) - 1000000003;
    BigInt A(a), B(b);
    CHECK((A + B).to_int64() == a + b);
    CHECK((A - B).to_int64() == a - b);
    CHECK((A * B).to_int64() == a * b);
    if (b != 0) {
      CHECK((A / B).to_int64() == a / b);
      CHECK((A % B).to_int64() == a % b);
    }
    CHECK(BigInt::gcd(A, B).to_int64() == std::gcd(std::abs(a), std::abs(b)));
  }
}

TEST_CASE("bigint multi-limb division and decimal round trip") {
  BigInt a = BigInt::from_string("123456789012345678901234567890123456789");
  BigInt b = BigInt::from_string("987654321098765432109");
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r < b.abs());
  CHECK(a.to_string() == "123456789012345678901234567890123456789");
  CHECK((-a).to_string()[0] == '-');
  // (a*b)/b == a exactly
  CHECK((a * b) / b == a);
  CHECK(((a * b) % b).is_zero());
}

TEST_CASE("quantum integers") {
  CHECK(quantum_integer(0).is_zero());
  CHECK(quantum_integer(1).is_one());
  CHECK(quantum_integer(2) == LaurentPoly::q_power(1) + LaurentPoly::q_power(-1));
  // [2][3] = [4] + [2]
  CHECK(quantum_integer(2) * quantum_integer(3) ==
        quantum_integer(4) + quantum_integer(2));
}

TEST_CASE("laurent rational normalization") {
  LaurentPoly q2 = quantum_integer(2);
  LaurentRational r(quantum_integer(4) + quantum_integer(2), q2);  // = [2][3]/[2] = [3]
  CHECK(r.is_polynomial());
  CHECK(r.num() == quantum_integer(3));

  LaurentRational one_over_2(LaurentPoly(1), q2);
  LaurentRational back = one_over_2 * LaurentRational(q2);
  CHECK(back == LaurentRational(1));

  // q-power units get pulled into the numerator
  LaurentRational u(LaurentPoly::q_power(3), LaurentPoly::q_power(5));
  CHECK(u.is_polynomial());
  CHECK(u.num() == LaurentPoly::q_power(-2));

  // arithmetic identities
  LaurentRational x(quantum_integer(3), quantum_integer(2));
  CHECK(x - x == LaurentRational());
  CHECK(x / x == LaurentRational(1));
  CHECK((x + x) == x * LaurentRational(2));
}

TEST_CASE("rational bounds helpers") {
  CHECK(f_prime(0, 3) == Rational(2));
  CHECK(f_old(0, 3) == Rational(3));
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(seq_stab_bound(4, 2) == 3);
  CHECK(seq_stab_bound(0, 5) == 4);
  CHECK(badequate_threshold(0, 2) == 4);
  CHECK(badequate_threshold(-2, 2) == 8);
  CHECK_THROWS(badequate_threshold(-1, 2));
}
