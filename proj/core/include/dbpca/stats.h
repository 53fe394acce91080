#pragma once

// Order statistics over trial results and exact reference medians.

#include <vector>

#include "dbpca/model.h"

namespace dbpca {

/// Median of the finite entries; midpoint of the two central order statistics
/// for an even count. NaN when no entry is finite.
double median(std::vector<double> values);

/// Linear-interpolation quantile (p in [0, 1]) of the finite entries.
double quantile(std::vector<double> values, double p);

/// Unbiased sample variance of the finite entries.
double sample_variance(const std::vector<double>& values);

/// Exact median of a chi-squared distribution with `dof` degrees of freedom.
double chi_squared_median(double dof);

/// Median of |x^T y| for x uniform on the unit sphere in R^n and y fixed unit:
/// (x^T y)^2 follows Beta(1/2, (n - 1) / 2).
double sphere_coordinate_abs_median(Index n);

}  // namespace dbpca
