#pragma once

#include <ostream>
#include <string>

#include "polydisk/bounds.hpp"

namespace polydisk {

enum class ReportFormat { json_lines, csv };

/// Streams reports one per line as they are produced. CSV columns:
/// z1_re, z1_im, ..., zn_re, zn_im, check_id, lhs, rhs, margin, pass.
class ReportWriter {
 public:
  ReportWriter(std::ostream& out, ReportFormat format, std::size_t n);

  void write(const BoundReport& r);
  std::size_t written() const { return written_; }
  std::size_t failed() const { return failed_; }

 private:
  std::ostream& out_;
  ReportFormat format_;
  std::size_t n_;
  std::size_t written_ = 0;
  std::size_t failed_ = 0;
};

/// csv for a ".csv" path, JSON lines otherwise.
ReportFormat format_for_path(const std::string& path);

}  // namespace polydisk
