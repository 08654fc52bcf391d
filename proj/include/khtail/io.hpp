// Diagram text formats: the line-oriented slice list, braid-word shorthand
// B<n>:1,1,-2, and PD-code import.
#pragma once

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "khtail/braid.hpp"
#include "khtail/diagram.hpp"

namespace khtail {

struct ParsedDiagram {
  SlicedTangle tangle;
  std::optional<std::vector<int>> orientation;  // per-component flips
};

namespace iodetail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!iodetail::trim(cur).empty()) out.push_back(std::stoi(trim(cur)));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

// PD import: attach crossings one at a time onto a frontier of open edge
// labels, inserting cups for legs born here. A doubled label is capped only
// once both of its crossing-leg slots are spent (capping earlier would close
// a circle the code does not contain). Backtracking covers awkward orders;
// real planar codes settle greedily.
class PdBuilder {
public:
  explicit PdBuilder(std::vector<std::array<int, 4>> xs) : xs_(std::move(xs)) {
    for (auto& x : xs_)
      for (int e : x) remaining_[e] += 1;
    for (auto& [e, c] : remaining_)
      if (c != 2)
        throw std::invalid_argument("PD import: every edge label must appear twice");
  }

  SlicedTangle run() {
    SlicedTangle t(0);
    std::vector<int> frontier;
    std::vector<char> used(xs_.size(), 0);
    if (!search(t, frontier, used, 0))
      throw std::invalid_argument("PD import: no planar slicing found");
    return t;
  }

private:
  std::vector<std::array<int, 4>> xs_;
  std::map<int, int> remaining_;  // unprocessed leg slots per edge label

  void close_caps(SlicedTangle& t, std::vector<int>& f) const {
    bool again = true;
    while (again) {
      again = false;
      for (size_t p = 0; p + 1 < f.size(); ++p)
        if (f[p] == f[p + 1] && remaining_.at(f[p]) == 0) {
          t.append(SliceKind::Cap, static_cast<int>(p) + 1);
          f.erase(f.begin() + p, f.begin() + p + 2);
          again = true;
          break;
        }
    }
  }

  int count_on(const std::vector<int>& f, int e) const {
    int c = 0;
    for (int x : f) c += (x == e);
    return c;
  }

  bool search(SlicedTangle& t, std::vector<int>& frontier,
              std::vector<char>& used, int done) {
    close_caps(t, frontier);
    if (done == static_cast<int>(xs_.size())) return frontier.empty();
    // passes: both bottom legs present and adjacent; one present (cup the
    // other); neither present (two cups, tried on an empty stretch)
    for (int pass = 0; pass < 3; ++pass) {
      for (size_t x = 0; x < xs_.size(); ++x) {
        if (used[x]) continue;
        for (int r = 0; r < 4; ++r) {
          int bl = xs_[x][r], br = xs_[x][(r + 1) % 4];
          int tr = xs_[x][(r + 2) % 4], tl = xs_[x][(r + 3) % 4];
          SliceKind kind = (r % 2 == 0) ? SliceKind::NegX : SliceKind::PosX;
          for (size_t p = 0; p <= frontier.size(); ++p) {
            SlicedTangle t2 = t;
            std::vector<int> f2 = frontier;
            size_t at = p;
            bool ok = false;
            if (pass == 0) {
              if (p + 1 < f2.size() && f2[p] == bl && f2[p + 1] == br) ok = true;
            } else if (pass == 1) {
              if (p < f2.size() && f2[p] == bl && count_on(f2, br) == 0 &&
                  remaining_.at(br) == 2) {
                t2.append(SliceKind::Cup, static_cast<int>(p) + 2);
                f2.insert(f2.begin() + p + 1, br);
                f2.insert(f2.begin() + p + 2, br);
                ok = true;
              } else if (p < f2.size() && f2[p] == br && count_on(f2, bl) == 0 &&
                         remaining_.at(bl) == 2) {
                t2.append(SliceKind::Cup, static_cast<int>(p) + 1);
                f2.insert(f2.begin() + p, bl);
                f2.insert(f2.begin() + p + 1, bl);
                at = p + 1;
                ok = true;
              }
            } else {
              if (p == frontier.size() && count_on(f2, bl) == 0 &&
                  count_on(f2, br) == 0 && remaining_.at(bl) == 2 &&
                  remaining_.at(br) == 2) {
                t2.append(SliceKind::Cup, static_cast<int>(p) + 1);
                f2.insert(f2.begin() + p, bl);
                f2.insert(f2.begin() + p + 1, bl);
                t2.append(SliceKind::Cup, static_cast<int>(p) + 3);
                f2.insert(f2.begin() + p + 2, br);
                f2.insert(f2.begin() + p + 3, br);
                at = p + 1;
                ok = true;
              }
            }
            if (!ok) continue;
            t2.append(kind, static_cast<int>(at) + 1);
            f2[at] = tl;
            f2[at + 1] = tr;
            used[x] = 1;
            for (int e : xs_[x]) remaining_[e] -= 1;
            if (search(t2, f2, used, done + 1)) {
              t = std::move(t2);
              frontier = std::move(f2);
              return true;
            }
            for (int e : xs_[x]) remaining_[e] += 1;
            used[x] = 0;
          }
        }
      }
    }
    return false;
  }
};

}  // namespace iodetail

// Accepts: braid shorthand "B<n>:1,1,-2", slice lines ("x+ 1", "x- 2",
// "cup 1", "cap 2", one per line, bottom to top, optional "orient 1,-1,.."
// header), or a PD code ("pd a b c d" lines or X[a,b,c,d] tuples).
inline ParsedDiagram parse_diagram(const std::string& text) {
  ParsedDiagram out;
  std::string first;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      line = iodetail::trim(line);
      if (!line.empty() && line[0] != '#') {
        first = line;
        break;
      }
    }
  }
  if (first.empty()) throw std::invalid_argument("empty diagram description");

  if (first[0] == 'B' && first.find(':') != std::string::npos) {
    int n = std::stoi(first.substr(1, first.find(':') - 1));
    std::vector<int> letters =
        iodetail::parse_int_list(first.substr(first.find(':') + 1));
    out.tangle = trace_closure_tangle(braid_to_tangle(BraidWord(n, letters)));
    return out;
  }

  if (first.rfind("pd", 0) == 0 || first.rfind("PD", 0) == 0 ||
      first.rfind("X[", 0) == 0) {
    std::vector<std::array<int, 4>> xs;
    std::string cleaned;
    for (char c : text)
      cleaned.push_back((std::isdigit(static_cast<unsigned char>(c)) ||
                         c == '-' || c == ',')
                            ? c
                            : (c == '[' || c == ']' ? ',' : ' '));
    std::istringstream is(cleaned);
    std::vector<int> nums;
    std::string tok;
    while (is >> tok) {
      for (auto& piece : iodetail::parse_int_list(tok)) nums.push_back(piece);
    }
    if (nums.size() % 4) throw std::invalid_argument("PD: need 4-tuples");
    for (size_t k = 0; k + 3 < nums.size(); k += 4)
      xs.push_back({nums[k], nums[k + 1], nums[k + 2], nums[k + 3]});
    if (xs.empty()) throw std::invalid_argument("PD: no crossings");
    out.tangle = iodetail::PdBuilder(xs).run();
    return out;
  }

  // slice list
  SlicedTangle t(0);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = iodetail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "orient") {
      std::string rest;
      std::getline(ls, rest);
      rest = iodetail::trim(rest);
      if (rest != "auto") out.orientation = iodetail::parse_int_list(rest);
      continue;
    }
    int pos = 0;
    if (!(ls >> pos)) throw std::invalid_argument("slice line needs a position");
    if (op == "x+")
      t.append(SliceKind::PosX, pos);
    else if (op == "x-")
      t.append(SliceKind::NegX, pos);
    else if (op == "cup")
      t.append(SliceKind::Cup, pos);
    else if (op == "cap")
      t.append(SliceKind::Cap, pos);
    else
      throw std::invalid_argument("unknown slice: " + op);
  }
  out.tangle = std::move(t);
  return out;
}

inline LinkDiagram diagram_from_text(const std::string& text) {
  ParsedDiagram p = parse_diagram(text);
  if (p.orientation) return LinkDiagram(p.tangle, p.orientation);
  return LinkDiagram(p.tangle);
}

// canonical slice-list form (used for hashing and round trips)
inline std::string diagram_to_text(const SlicedTangle& t) {
  std::ostringstream os;
  for (const auto& s : t.slices()) {
    switch (s.kind) {
      case SliceKind::PosX: os << "x+ "; break;
      case SliceKind::NegX: os << "x- "; break;
      case SliceKind::Cup: os << "cup "; break;
      case SliceKind::Cap: os << "cap "; break;
    }
    os << s.pos << "\n";
  }
  return os.str();
}

}  // namespace khtail
