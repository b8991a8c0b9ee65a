#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace greenlaunch {

// Plain `key = value` config files. Lines starting with '#' (or blank) are
// skipped; values keep everything after the first '=' with surrounding
// whitespace trimmed. Lists are comma-separated.
class KvConfig {
 public:
  KvConfig() = default;

  static KvConfig parse_file(const std::string& path);
  static KvConfig parse_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int64_t> get_int_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// FNV-1a over a canonical serialization; see config_hash() users.
uint64_t fnv1a64(const std::string& data);

std::string to_hex(uint64_t v);

}  // namespace greenlaunch
