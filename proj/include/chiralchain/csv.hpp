#pragma once

// Minimal deterministic CSV emission: '.' decimal point, %.12g formatting,
// newline-terminated rows. Output is byte-stable across runs and worker
// counts because callers assemble rows in index order.

#include <cstdio>
#include <fstream>
#include <string>

#include "chiralchain/config.hpp"

namespace chiralchain {

inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open output file: " + path);
    out_ << header << '\n';
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write_field(fields)), ...);
    out_ << '\n';
  }

  void close() {
    out_.flush();
    if (!out_) throw IoError("write failed: " + path_);
    out_.close();
  }

private:
  void write_field(double v) { out_ << csv_num(v); }
  void write_field(int v) { out_ << v; }
  void write_field(const std::string& v) { out_ << v; }
  void write_field(const char* v) { out_ << v; }

  std::string path_;
  std::ofstream out_;
};

} // namespace chiralchain
