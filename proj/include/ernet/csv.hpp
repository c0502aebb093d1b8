#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ernet {

/// Round-trippable decimal form (%.17g).
inline std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Comma-separated writer; callers push one row at a time.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : f_(path) {
    if (!f_) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
      f_ << (i ? "," : "") << header[i];
    f_ << '\n';
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i)
      f_ << (i ? "," : "") << fields[i];
    f_ << '\n';
  }

  void row_nums(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      f_ << (i ? "," : "") << num_str(vals[i]);
    f_ << '\n';
  }

 private:
  std::ofstream f_;
};

}  // namespace ernet
