#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace arhyg {

/// Legal interval for a numeric config key, used in range-violation messages.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double v) const;
  std::string describe() const;
};

/// Flat `key = value` configuration text: one pair per line, '#' comments,
/// blank lines ignored. Every key must be consumed by a typed getter —
/// finish() rejects leftovers, so typos never pass silently. Getters record
/// the effective value (parsed or default), and echo() emits them back in a
/// form that re-parses to the identical configuration.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double number(const std::string& key, double fallback, const Interval& range);
  double require_number(const std::string& key, const Interval& range);
  std::uint64_t integer(const std::string& key, std::uint64_t fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> number_list(const std::string& key, std::vector<double> fallback);
  std::vector<std::string> text_list(const std::string& key,
                                     std::vector<std::string> fallback);

  /// Throws arhyg::config_error naming any key that was never consumed.
  void finish() const;

  /// Canonical `key = value` lines of every consumed key, sorted by key.
  std::string echo() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    bool consumed = false;
  };

  const Entry* find(const std::string& key) const;
  Entry* find(const std::string& key);
  void record(const std::string& key, const std::string& value);

  std::string origin_;
  std::map<std::string, Entry> entries_;
  std::map<std::string, std::string> effective_;
};

}  // namespace arhyg
