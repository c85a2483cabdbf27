#include "polydisk/report_io.hpp"

#include <cstdio>

namespace polydisk {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ReportWriter::ReportWriter(std::ostream& out, ReportFormat format, std::size_t n)
    : out_(out), format_(format), n_(n) {
  if (format_ == ReportFormat::csv) {
    for (std::size_t j = 1; j <= n_; ++j) out_ << 'z' << j << "_re,z" << j << "_im,";
    out_ << "check_id,lhs,rhs,margin,pass\n";
  }
}

void ReportWriter::write(const BoundReport& r) {
  if (format_ == ReportFormat::json_lines) {
    out_ << to_json(r).dump() << '\n';
  } else {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j < r.point.size()) {
        out_ << num(r.point[j].real()) << ',' << num(r.point[j].imag()) << ',';
      } else {
        out_ << ",,";
      }
    }
    out_ << to_string(r.check_id) << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
         << num(r.margin) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  ++written_;
  if (!r.pass) ++failed_;
}

ReportFormat format_for_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? ReportFormat::csv
                                                                            : ReportFormat::json_lines;
}

}  // namespace polydisk
