#pragma once

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace textclust {

/// Fixed six-decimal rendering used for all reported floating-point values
/// (criterion values, entropies, CSV cells), so identical runs emit
/// identical bytes.
inline std::string format_fixed6(double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.6f", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

/// Shortest decimal form that parses back to the same double; used for
/// matrix files so written corpora round-trip exactly.
inline std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_shortest: conversion failed");
  }
  return std::string(buf, res.ptr);
}

/// RFC 4180 quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with embedded quotes doubled.
inline std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') {
      quoted += "\"\"";
    } else {
      quoted += c;
    }
  }
  quoted += '"';
  return quoted;
}

/// A clustering written to or read from disk: one `<doc_id> <cluster>` line
/// per document.
struct Assignment {
  std::vector<std::string> doc_ids;
  std::vector<std::size_t> clusters;
};

inline void write_assignment(const std::filesystem::path& path,
                             std::span<const std::string> doc_ids,
                             std::span<const std::size_t> clusters) {
  if (doc_ids.size() != clusters.size()) {
    throw std::invalid_argument("write_assignment: id/cluster count mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_assignment: cannot open " + path.string());
  }
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    out << doc_ids[i] << ' ' << clusters[i] << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_assignment: write failed for " +
                             path.string());
  }
}

/// Parses an assignment file; the cluster index is the final
/// space-separated token so doc ids may contain spaces.
inline Assignment read_assignment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_assignment: cannot open " + path.string());
  }
  Assignment result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto split = line.find_last_of(' ');
    if (split == std::string::npos || split == 0 ||
        split + 1 == line.size()) {
      throw std::runtime_error("read_assignment: malformed line " +
                               std::to_string(line_no) + " in " +
                               path.string());
    }
    std::size_t cluster = 0;
    const char* first = line.data() + split + 1;
    const char* last = line.data() + line.size();
    const auto res = std::from_chars(first, last, cluster);
    if (res.ec != std::errc() || res.ptr != last) {
      throw std::runtime_error("read_assignment: bad cluster index on line " +
                               std::to_string(line_no) + " in " +
                               path.string());
    }
    result.doc_ids.push_back(line.substr(0, split));
    result.clusters.push_back(cluster);
  }
  return result;
}

}  // namespace textclust
