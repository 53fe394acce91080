#pragma once

// Monte Carlo study: for each (N, gamma) cell and trial, draw a calibrated
// K-factor model and a panel, fit each estimator, and score its
// minimum-variance portfolio against the truth.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbpca/correction.h"
#include "dbpca/metrics.h"
#include "dbpca/simgen.h"

namespace dbpca {

enum class EstimatorKind {
  Pca,
  Oracle,
  DataDriven,
  Truth,  // the true covariance; tracking error 0 and forecast ratio 1
};

std::string_view to_string(EstimatorKind kind);
std::string_view display_name(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view name);
/// Comma-separated list, e.g. "pca,oracle,data_driven".
std::vector<EstimatorKind> parse_estimator_list(std::string_view list);

enum class SweepAxis { NAssets, Gamma };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

/// Which true concentration the oracle estimator is handed.
enum class OracleConcentration {
  Whitened,  // gamma_{beta,z} in the d_hat^{-1/2}-weighted inner product
  Plain,     // gamma_{beta,z}
};

struct Cell {
  Index n_assets;
  double gamma;

  friend bool operator==(const Cell&, const Cell&) = default;
};

std::vector<Cell> default_cells(SweepAxis axis);

struct SweepConfig {
  CalibrationConfig calibration;
  SweepAxis axis = SweepAxis::NAssets;
  /// Values along the axis; defaults per axis when empty.
  std::vector<double> axis_values;
  /// The coordinate held fixed: gamma for the N axis, N for the gamma axis.
  double fixed_gamma = 0.9;
  Index fixed_n_assets = 500;
  int trials = 50;
  std::uint64_t master_seed = 20170907;
  std::vector<EstimatorKind> estimators{EstimatorKind::Pca, EstimatorKind::Oracle,
                                        EstimatorKind::DataDriven};
  unsigned threads = 0;  // 0: hardware concurrency
  bool redraw_model = true;
  OracleConcentration oracle_concentration = OracleConcentration::Whitened;
  Whitening whitening = Whitening::EstimatedSpecific;
  std::string output_path;

  std::vector<Cell> cells() const;
  void validate() const;
};

struct TrialRecord {
  Cell cell;
  int trial;
  EstimatorKind estimator;
  TrialReport report;
  double rho;
  double psi_hat;
  double delta2_hat;
  bool fallback;
};

struct MedianRow {
  Cell cell;
  EstimatorKind estimator;
  int trials;
  double te_annual;
  double vol_annual;
  double fr_minvar;
  double fr_equal;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by cell, estimator, trial
  std::vector<MedianRow> medians;    // sorted by cell, estimator
};

/// Seed used for (cell, trial); redraw_model=false draws the model from the
/// cell seed alone.
std::uint64_t trial_seed(const SweepConfig& config, const Cell& cell,
                         int trial_index);

/// One record per configured estimator. Estimator failures yield NaN metrics
/// with fallback set instead of throwing.
std::vector<TrialRecord> run_trial(const SweepConfig& config, const Cell& cell,
                                   int trial_index);

SweepResult run_sweep(const SweepConfig& config);

/// Per (cell, estimator) medians over trials, in record order.
std::vector<MedianRow> summarize(const std::vector<TrialRecord>& records);

/// Finds the median row for a cell and estimator.
std::optional<MedianRow> find_median(const std::vector<MedianRow>& rows,
                                     const Cell& cell, EstimatorKind estimator);

/// Four aligned text panels: (a) tracking error, (b) volatility,
/// (c) min-var forecast ratio, (d) equal-weight forecast ratio.
std::string format_tables(const std::vector<MedianRow>& rows, SweepAxis axis);

}  // namespace dbpca
