#include "dbpca/stats.h"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbpca {

namespace {

std::vector<double> finite_sorted(std::vector<double> values) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return !std::isfinite(v); }),
               values.end());
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

double median(std::vector<double> values) {
  const std::vector<double> v = finite_sorted(std::move(values));
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

double quantile(std::vector<double> values, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile: p must lie in [0, 1]");
  }
  const std::vector<double> v = finite_sorted(std::move(values));
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

double sample_variance(const std::vector<double>& values) {
  double sum = 0.0;
  double count = 0.0;
  for (double x : values) {
    if (std::isfinite(x)) {
      sum += x;
      count += 1.0;
    }
  }
  if (count < 2.0) return std::numeric_limits<double>::quiet_NaN();
  const double mean = sum / count;
  double ss = 0.0;
  for (double x : values) {
    if (std::isfinite(x)) ss += (x - mean) * (x - mean);
  }
  return ss / (count - 1.0);
}

double chi_squared_median(double dof) {
  if (!(dof > 0.0)) {
    throw std::invalid_argument("chi_squared_median: dof must be > 0");
  }
  return boost::math::median(boost::math::chi_squared_distribution<double>(dof));
}

double sphere_coordinate_abs_median(Index n) {
  if (n < 2) {
    throw std::invalid_argument("sphere_coordinate_abs_median: n must be >= 2");
  }
  const boost::math::beta_distribution<double> dist(
      0.5, 0.5 * static_cast<double>(n - 1));
  return std::sqrt(boost::math::median(dist));
}

}  // namespace dbpca
