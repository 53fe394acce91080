#pragma once

#include <stdexcept>

namespace dbpca {

/// The panel carries no usable variance (numerically zero leading eigenvalue).
class DegeneratePanelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A correction formula hit a vanishing denominator for this geometry.
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T lambda_1 <= N delta^2: the leading eigenvalue does not separate from the
/// noise bulk, so c1 cannot be estimated.
class WeakFactorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dbpca
