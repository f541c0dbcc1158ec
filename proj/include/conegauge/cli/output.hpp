#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "conegauge/errors.hpp"
#include "conegauge/rational.hpp"

namespace conegauge::cli {

/// Shortest round-trip form; infinities and NaN get fixed spellings.
inline std::string format_real(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, end);
}

inline std::string format_point(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string format_point(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

template <class T>
std::string format_list(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
      s += v[i].get_str();
    else
      s += std::to_string(v[i]);
  }
  return s + ")";
}

/// CSV table kept in memory; fields with separators, quotes or line breaks are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : width_(header.size()) { row(header); }

  void row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw Error("csv: row width does not match the header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += quote(fields[i]);
    }
    text_ += "\r\n";
  }

  const std::string& text() const noexcept { return text_; }

  static std::string quote(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

 private:
  std::size_t width_;
  std::string text_;
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

struct OutputFile {
  std::string name;
  std::string content;
};

/// Writes every file or none: on any failure the files already written are removed.
inline void write_all(const std::filesystem::path& dir, const std::vector<OutputFile>& files) {
  std::vector<std::filesystem::path> written;
  try {
    std::filesystem::create_directories(dir);
    for (const auto& f : files) {
      auto p = dir / f.name;
      written.push_back(p);
      std::ofstream out(p, std::ios::binary | std::ios::trunc);
      out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
      out.close();
      if (!out) throw Error("cannot write " + p.string());
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) std::filesystem::remove(p, ec);
    throw;
  }
}

}  // namespace conegauge::cli
