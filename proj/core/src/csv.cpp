#include "dbpca/csv.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace dbpca {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

long long parse_integer(const std::string& text) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed integer '" + text + "'");
  }
  return value;
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != header) {
    throw std::invalid_argument(std::string("CSV header mismatch, expected: ") +
                                header);
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed number '" + text + "'");
  }
  return value;
}

void write_raw_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kRawCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    out << r.cell.n_assets << ',' << format_double(r.cell.gamma) << ','
        << r.trial << ',' << to_string(r.estimator) << ','
        << format_double(r.report.tracking_error_annual) << ','
        << format_double(r.report.true_vol_annual) << ','
        << format_double(r.report.forecast_ratio_minvar) << ','
        << format_double(r.report.forecast_ratio_equal) << ','
        << format_double(r.rho) << ',' << format_double(r.psi_hat) << ','
        << format_double(r.delta2_hat) << ',' << (r.fallback ? 1 : 0) << '\n';
  }
}

std::vector<TrialRecord> read_raw_csv(std::istream& in) {
  expect_header(in, kRawCsvHeader);
  std::vector<TrialRecord> out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != 12) {
      throw std::invalid_argument("raw CSV line " + std::to_string(line_no) +
                                  ": expected 12 fields, got " +
                                  std::to_string(f.size()));
    }
    TrialRecord r{};
    r.cell.n_assets = static_cast<Index>(parse_integer(f[0]));
    r.cell.gamma = parse_double(f[1]);
    r.trial = static_cast<int>(parse_integer(f[2]));
    r.estimator = parse_estimator(f[3]);
    r.report.estimator_name = f[3];
    r.report.tracking_error_annual = parse_double(f[4]);
    r.report.true_vol_annual = parse_double(f[5]);
    r.report.forecast_ratio_minvar = parse_double(f[6]);
    r.report.forecast_ratio_equal = parse_double(f[7]);
    r.rho = parse_double(f[8]);
    r.psi_hat = parse_double(f[9]);
    r.delta2_hat = parse_double(f[10]);
    const long long fallback = parse_integer(f[11]);
    if (fallback != 0 && fallback != 1) {
      throw std::invalid_argument("raw CSV line " + std::to_string(line_no) +
                                  ": fallback must be 0 or 1");
    }
    r.fallback = fallback == 1;
    out.push_back(std::move(r));
  }
  return out;
}

void write_median_csv(std::ostream& out, const std::vector<MedianRow>& rows) {
  out << kMedianCsvHeader << '\n';
  for (const MedianRow& r : rows) {
    out << r.cell.n_assets << ',' << format_double(r.cell.gamma) << ','
        << to_string(r.estimator) << ',' << r.trials << ','
        << format_double(r.te_annual) << ',' << format_double(r.vol_annual)
        << ',' << format_double(r.fr_minvar) << ','
        << format_double(r.fr_equal) << '\n';
  }
}

std::vector<MedianRow> read_median_csv(std::istream& in) {
  expect_header(in, kMedianCsvHeader);
  std::vector<MedianRow> out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != 8) {
      throw std::invalid_argument("median CSV line " + std::to_string(line_no) +
                                  ": expected 8 fields");
    }
    MedianRow r{};
    r.cell.n_assets = static_cast<Index>(parse_integer(f[0]));
    r.cell.gamma = parse_double(f[1]);
    r.estimator = parse_estimator(f[2]);
    r.trials = static_cast<int>(parse_integer(f[3]));
    r.te_annual = parse_double(f[4]);
    r.vol_annual = parse_double(f[5]);
    r.fr_minvar = parse_double(f[6]);
    r.fr_equal = parse_double(f[7]);
    out.push_back(r);
  }
  return out;
}

}  // namespace dbpca
