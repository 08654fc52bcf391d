// Content-addressed result cache: one JSON file per key under a single
// directory plus a line-oriented index. Writes go through a temp file and
// atomic rename; payloads carry a checksum and corrupted entries are
// recomputed.
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace khtail {

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

constexpr const char* kEngineVersion = "khtail-1.0";

class ResultCache {
public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  static std::string make_key(const std::string& canonical_input,
                              const std::string& params) {
    return hex64(fnv1a64(std::string(kEngineVersion) + "\n" + canonical_input +
                         "\n" + params));
  }

  std::optional<std::string> load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::stringstream rest;
    rest << in.rdbuf();
    std::string payload = rest.str();
    if (header.rfind("#checksum ", 0) != 0) return std::nullopt;
    if (header.substr(10) != hex64(fnv1a64(payload))) return std::nullopt;
    return payload;
  }

  void store(const std::string& key, const std::string& payload) const {
    std::string tmp = path(key) + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << "#checksum " << hex64(fnv1a64(payload)) << "\n" << payload;
    }
    std::filesystem::rename(tmp, path(key));
    append_index(key);
  }

  const std::string& dir() const { return dir_; }

private:
  std::string dir_;
  std::string path(const std::string& key) const { return dir_ + "/" + key + ".json"; }
  void append_index(const std::string& key) const {
    std::ofstream idx(dir_ + "/index.tsv", std::ios::app);
    idx << key << "\n";
  }
};

// run manifest: command, parameters, timings and cache hits, emitted on
// request next to the results
struct RunManifest {
  std::string command;
  std::string params;
  long long millis = 0;
  int cache_hits = 0;
  int cache_misses = 0;
  std::string verdict;

  std::string to_json() const {
    std::ostringstream os;
    os << "{\"command\":\"" << command << "\",\"params\":\"" << params
       << "\",\"millis\":" << millis << ",\"cache_hits\":" << cache_hits
       << ",\"cache_misses\":" << cache_misses << ",\"verdict\":\"" << verdict
       << "\"}";
    return os.str();
  }
};

}  // namespace khtail
