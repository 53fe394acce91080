#include "dbpca/sweep_config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "dbpca/csv.h"

namespace dbpca {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
  }
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& value) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_real(key, item));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + value + "'");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

void apply_setting(SweepConfig& c, const std::string& key,
                   const std::string& value) {
  CalibrationConfig& cal = c.calibration;
  if (key == "axis") {
    c.axis = parse_axis(value);
  } else if (key == "values") {
    c.axis_values = parse_real_list(key, value);
  } else if (key == "gamma") {
    c.fixed_gamma = parse_real(key, value);
  } else if (key == "n_assets") {
    c.fixed_n_assets = parse_int<Index>(key, value);
  } else if (key == "n_obs") {
    cal.n_obs = parse_int<Index>(key, value);
  } else if (key == "trials") {
    c.trials = parse_int<int>(key, value);
  } else if (key == "seed") {
    c.master_seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "estimators") {
    c.estimators = parse_estimator_list(value);
  } else if (key == "threads") {
    c.threads = parse_int<unsigned>(key, value);
  } else if (key == "redraw_model") {
    c.redraw_model = parse_bool(key, value);
  } else if (key == "oracle_concentration") {
    if (value == "whitened") {
      c.oracle_concentration = OracleConcentration::Whitened;
    } else if (value == "plain") {
      c.oracle_concentration = OracleConcentration::Plain;
    } else {
      throw std::invalid_argument(key + ": expected whitened or plain");
    }
  } else if (key == "whitening") {
    if (value == "estimated_specific") {
      c.whitening = Whitening::EstimatedSpecific;
    } else if (value == "none") {
      c.whitening = Whitening::None;
    } else {
      throw std::invalid_argument(key + ": expected estimated_specific or none");
    }
  } else if (key == "market_annual_vol") {
    cal.market_annual_vol = parse_real(key, value);
  } else if (key == "style_annual_vols") {
    cal.style_annual_vols = parse_real_list(key, value);
    cal.n_factors = static_cast<Index>(cal.style_annual_vols.size()) + 1;
  } else if (key == "specific_vol_lo") {
    cal.specific_vol_lo = parse_real(key, value);
  } else if (key == "specific_vol_hi") {
    cal.specific_vol_hi = parse_real(key, value);
  } else if (key == "trading_days_per_year") {
    cal.trading_days_per_year = parse_real(key, value);
  } else if (key == "style_exposure_raw_variance") {
    cal.style_exposure_raw_variance = parse_real(key, value);
  } else if (key == "style_variance_scaling") {
    if (value == "none") {
      cal.style_variance_scaling = StyleVarianceScaling::None;
    } else if (value == "dimension") {
      cal.style_variance_scaling = StyleVarianceScaling::Dimension;
    } else {
      throw std::invalid_argument(key + ": expected none or dimension");
    }
  } else if (key == "specific_draw") {
    if (value == "volatility") {
      cal.specific_draw = SpecificDraw::Volatility;
    } else if (value == "variance") {
      cal.specific_draw = SpecificDraw::Variance;
    } else {
      throw std::invalid_argument(key + ": expected volatility or variance");
    }
  } else if (key == "output") {
    c.output_path = value;
  } else {
    throw std::invalid_argument("unknown configuration key '" + key + "'");
  }
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_setting(base, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return base;
}

SweepConfig load_sweep_config(const std::string& path, SweepConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_sweep_config(in, std::move(base));
}

void write_sweep_config(std::ostream& out, const SweepConfig& c) {
  const CalibrationConfig& cal = c.calibration;
  std::string estimators;
  for (std::size_t i = 0; i < c.estimators.size(); ++i) {
    if (i) estimators += ',';
    estimators += to_string(c.estimators[i]);
  }
  std::vector<double> values;
  for (const Cell& cell : c.cells()) {
    values.push_back(c.axis == SweepAxis::NAssets
                         ? static_cast<double>(cell.n_assets)
                         : cell.gamma);
  }
  out << "axis=" << to_string(c.axis) << '\n'
      << "values=" << join(values) << '\n'
      << "gamma=" << format_double(c.fixed_gamma) << '\n'
      << "n_assets=" << c.fixed_n_assets << '\n'
      << "n_obs=" << cal.n_obs << '\n'
      << "trials=" << c.trials << '\n'
      << "seed=" << c.master_seed << '\n'
      << "estimators=" << estimators << '\n'
      << "threads=" << c.threads << '\n'
      << "redraw_model=" << (c.redraw_model ? "true" : "false") << '\n'
      << "oracle_concentration="
      << (c.oracle_concentration == OracleConcentration::Whitened ? "whitened"
                                                                  : "plain")
      << '\n'
      << "whitening="
      << (c.whitening == Whitening::EstimatedSpecific ? "estimated_specific"
                                                      : "none")
      << '\n'
      << "market_annual_vol=" << format_double(cal.market_annual_vol) << '\n'
      << "style_annual_vols=" << join(cal.style_annual_vols) << '\n'
      << "specific_vol_lo=" << format_double(cal.specific_vol_lo) << '\n'
      << "specific_vol_hi=" << format_double(cal.specific_vol_hi) << '\n'
      << "trading_days_per_year=" << format_double(cal.trading_days_per_year)
      << '\n'
      << "style_exposure_raw_variance="
      << format_double(cal.style_exposure_raw_variance) << '\n'
      << "style_variance_scaling="
      << (cal.style_variance_scaling == StyleVarianceScaling::None ? "none"
                                                                   : "dimension")
      << '\n'
      << "specific_draw="
      << (cal.specific_draw == SpecificDraw::Volatility ? "volatility"
                                                        : "variance")
      << '\n';
  if (!c.output_path.empty()) out << "output=" << c.output_path << '\n';
}

}  // namespace dbpca
