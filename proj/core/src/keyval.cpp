#include "arhygarch/keyval.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "arhygarch/errors.hpp"

namespace arhyg {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string format17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_number(const std::string& key, const std::string& raw) {
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': cannot parse number from \"" + raw + "\"");
  }
}

}  // namespace

bool Interval::contains(double v) const {
  if (!std::isfinite(v)) return false;
  if (lo_open ? !(v > lo) : !(v >= lo)) return false;
  if (hi_open ? !(v < hi) : !(v <= hi)) return false;
  return true;
}

std::string Interval::describe() const {
  std::ostringstream os;
  os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
  return os.str();
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text,
                                          const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error(origin + ":" + std::to_string(line_no) +
                         ": expected 'key = value', got \"" + stripped + "\"");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw config_error(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    auto [it, inserted] = cfg.entries_.emplace(key, Entry{value, line_no, false});
    if (!inserted) {
      throw config_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                         key + "' (first at line " + std::to_string(it->second.line) +
                         ")");
    }
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.find(key) != entries_.end();
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void KeyValueConfig::record(const std::string& key, const std::string& value) {
  effective_[key] = value;
}

double KeyValueConfig::number(const std::string& key, double fallback) {
  double v = fallback;
  if (Entry* e = find(key)) {
    e->consumed = true;
    v = parse_number(key, e->value);
  }
  record(key, format17(v));
  return v;
}

double KeyValueConfig::number(const std::string& key, double fallback,
                              const Interval& range) {
  const double v = number(key, fallback);
  if (!range.contains(v)) {
    throw config_error("key '" + key + "' = " + format17(v) +
                       " out of range; legal interval is " + range.describe());
  }
  return v;
}

double KeyValueConfig::require_number(const std::string& key, const Interval& range) {
  if (!has(key)) {
    throw config_error("missing required key '" + key + "'");
  }
  return number(key, 0.0, range);
}

std::uint64_t KeyValueConfig::integer(const std::string& key, std::uint64_t fallback) {
  std::uint64_t v = fallback;
  if (Entry* e = find(key)) {
    e->consumed = true;
    try {
      std::size_t used = 0;
      const unsigned long long parsed = std::stoull(e->value, &used);
      if (used != e->value.size()) throw std::invalid_argument("trailing characters");
      v = parsed;
    } catch (const std::exception&) {
      throw config_error("key '" + key + "': cannot parse integer from \"" + e->value +
                         "\"");
    }
  }
  record(key, std::to_string(v));
  return v;
}

std::string KeyValueConfig::text(const std::string& key, const std::string& fallback) {
  std::string v = fallback;
  if (Entry* e = find(key)) {
    e->consumed = true;
    v = e->value;
  }
  record(key, v);
  return v;
}

std::vector<double> KeyValueConfig::number_list(const std::string& key,
                                                std::vector<double> fallback) {
  std::vector<double> v = std::move(fallback);
  if (Entry* e = find(key)) {
    e->consumed = true;
    v.clear();
    std::istringstream is(e->value);
    std::string item;
    while (std::getline(is, item, ',')) {
      const std::string stripped = trim(item);
      if (stripped.empty()) {
        throw config_error("key '" + key + "': empty list element");
      }
      v.push_back(parse_number(key, stripped));
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format17(v[i]);
  }
  record(key, os.str());
  return v;
}

std::vector<std::string> KeyValueConfig::text_list(const std::string& key,
                                                   std::vector<std::string> fallback) {
  std::vector<std::string> v = std::move(fallback);
  if (Entry* e = find(key)) {
    e->consumed = true;
    v.clear();
    std::istringstream is(e->value);
    std::string item;
    while (std::getline(is, item, ',')) {
      const std::string stripped = trim(item);
      if (stripped.empty()) {
        throw config_error("key '" + key + "': empty list element");
      }
      v.push_back(stripped);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  record(key, os.str());
  return v;
}

void KeyValueConfig::finish() const {
  std::string unknown;
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed) {
      if (!unknown.empty()) unknown += ", ";
      unknown += "'" + key + "' (line " + std::to_string(entry.line) + ")";
    }
  }
  if (!unknown.empty()) {
    throw config_error(origin_ + ": unknown key(s): " + unknown);
  }
}

std::string KeyValueConfig::echo() const {
  std::ostringstream os;
  for (const auto& [key, value] : effective_) {
    os << key << " = " << value << '\n';
  }
  return os.str();
}

}  // namespace arhyg
