#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "udw/cli/cli.hpp"

namespace udw::cli {

namespace {

// 17 significant digits round-trip every double.
std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string path_label(const ResultRow& row) {
  return row.converged ? row.path : row.path + ":nonconverged";
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << number(r.v) << ',' << number(r.t_over_ell) << ',' << number(r.omega_t) << ','
        << number(r.im_value) << ',' << number(r.err) << ',' << path_label(r) << ','
        << number(r.seconds) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const ResultRow> rows) {
  nlohmann::ordered_json doc;
  doc["format"] = "udw-covariance-rows";
  doc["version"] = kFormatVersion;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    doc["rows"].push_back({{"v", r.v},
                           {"t_over_ell", r.t_over_ell},
                           {"omega_t", r.omega_t},
                           {"im_value", r.im_value},
                           {"err", r.err},
                           {"path", path_label(r)},
                           {"seconds", r.seconds}});
  }
  out << doc.dump(2) << '\n';
}

void write_rows(std::ostream& out, std::span<const ResultRow> rows, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(out, rows);
  } else {
    write_csv(out, rows);
  }
}

}  // namespace udw::cli
