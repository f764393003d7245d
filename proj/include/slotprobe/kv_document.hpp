#pragma once

// Flat key/value text documents.
//
// One `key=value` entry per line, in insertion order. Keys may not contain
// '=' or line breaks; values escape backslash, newline and carriage return.
// Blank lines and lines starting with '#' are ignored when parsing. Lists are
// stored as `prefix.count=n` followed by `prefix.0 .. prefix.n-1`.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "slotprobe/error.hpp"

namespace slotprobe {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) fail(ErrorCode::invalid_argument, "cannot format number");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    fail(ErrorCode::parse_error, "not a number: '" + std::string(v) + "'");
  return out;
}

inline std::int64_t parse_int(std::string_view v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    fail(ErrorCode::parse_error, "not an integer: '" + std::string(v) + "'");
  return out;
}

class KvDocument {
 public:
  KvDocument& set(std::string key, std::string value) {
    validate_key(key);
    if (auto it = index_.find(key); it != index_.end()) {
      entries_[it->second].second = std::move(value);
    } else {
      index_.emplace(key, entries_.size());
      entries_.emplace_back(std::move(key), std::move(value));
    }
    return *this;
  }
  KvDocument& set(std::string key, const char* value) { return set(std::move(key), std::string(value)); }
  KvDocument& set(std::string key, std::string_view value) { return set(std::move(key), std::string(value)); }
  KvDocument& set(std::string key, std::int64_t value) { return set(std::move(key), std::to_string(value)); }
  KvDocument& set(std::string key, int value) { return set(std::move(key), std::to_string(value)); }
  KvDocument& set(std::string key, std::size_t value) { return set(std::move(key), std::to_string(value)); }
  KvDocument& set(std::string key, double value) { return set(std::move(key), format_double(value)); }
  KvDocument& set(std::string key, bool value) { return set(std::move(key), std::string(value ? "true" : "false")); }

  void set_list(const std::string& prefix, const std::vector<std::string>& items) {
    set(prefix + ".count", items.size());
    for (std::size_t i = 0; i < items.size(); ++i) set(prefix + "." + std::to_string(i), items[i]);
  }

  bool has(std::string_view key) const { return index_.find(std::string(key)) != index_.end(); }

  std::optional<std::string_view> find(std::string_view key) const {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return std::string_view(entries_[it->second].second);
  }

  const std::string& get(std::string_view key) const {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) fail(ErrorCode::parse_error, "missing key '" + std::string(key) + "'");
    return entries_[it->second].second;
  }

  std::int64_t get_int(std::string_view key) const {
    const std::string& v = get(key);
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      fail(ErrorCode::parse_error, "key '" + std::string(key) + "' is not an integer: " + v);
    return out;
  }

  std::size_t get_count(std::string_view key) const {
    const auto v = get_int(key);
    if (v < 0) fail(ErrorCode::parse_error, "key '" + std::string(key) + "' must be non-negative");
    return static_cast<std::size_t>(v);
  }

  double get_double(std::string_view key) const { return parse_double(get(key)); }

  bool get_bool(std::string_view key) const {
    const std::string& v = get(key);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(ErrorCode::parse_error, "key '" + std::string(key) + "' is not a boolean: " + v);
  }

  std::vector<std::string> get_list(const std::string& prefix) const {
    const std::size_t n = get_count(prefix + ".count");
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(get(prefix + "." + std::to_string(i)));
    return out;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string to_string() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
      out += k;
      out += '=';
      out += escape(v);
      out += '\n';
    }
    return out;
  }

  static KvDocument parse(std::string_view text) {
    KvDocument doc;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos || eq == 0)
        fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + " is not key=value");
      std::string key(line.substr(0, eq));
      if (doc.has(key)) fail(ErrorCode::parse_error, "duplicate key '" + key + "'");
      doc.set(std::move(key), unescape(line.substr(eq + 1)));
    }
    return doc;
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
    const std::string text = to_string();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(ErrorCode::io_failure, "write to '" + path + "' failed");
  }

  static KvDocument read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io_failure, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  static std::string escape(std::string_view v) {
    std::string out;
    out.reserve(v.size());
    for (char ch : v) {
      switch (ch) {
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += ch;
      }
    }
    return out;
  }

  static std::string unescape(std::string_view v) {
    std::string out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != '\\') {
        out += v[i];
        continue;
      }
      if (++i == v.size()) fail(ErrorCode::parse_error, "dangling escape");
      switch (v[i]) {
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        default: fail(ErrorCode::parse_error, std::string("unknown escape \\") + v[i]);
      }
    }
    return out;
  }

 private:
  static void validate_key(std::string_view key) {
    if (key.empty() || key.front() == '#' || key.find_first_of("=\n\r") != std::string_view::npos)
      fail(ErrorCode::invalid_argument, "invalid key '" + std::string(key) + "'");
  }

  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace slotprobe
