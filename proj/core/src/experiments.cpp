#include "dbpca/experiments.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dbpca/portfolio.h"
#include "dbpca/spectral.h"
#include "dbpca/stats.h"
#include "parallel.h"

namespace dbpca {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EstimatorName {
  EstimatorKind kind;
  std::string_view id;
  std::string_view display;
};

constexpr EstimatorName kEstimators[] = {
    {EstimatorKind::Pca, "pca", "PCA"},
    {EstimatorKind::Oracle, "oracle", "Oracle"},
    {EstimatorKind::DataDriven, "data_driven", "Data-Driven"},
    {EstimatorKind::Truth, "truth", "Truth"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

TrialRecord failed_record(const Cell& cell, int trial, EstimatorKind kind) {
  TrialRecord r{cell, trial, kind, TrialReport{}, kNaN, kNaN, kNaN, true};
  r.report.estimator_name = std::string(to_string(kind));
  r.report.tracking_error_annual = kNaN;
  r.report.true_vol_annual = kNaN;
  r.report.forecast_ratio_minvar = kNaN;
  r.report.forecast_ratio_equal = kNaN;
  return r;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  for (const auto& e : kEstimators) {
    if (e.kind == kind) return e.id;
  }
  return "unknown";
}

std::string_view display_name(EstimatorKind kind) {
  for (const auto& e : kEstimators) {
    if (e.kind == kind) return e.display;
  }
  return "Unknown";
}

EstimatorKind parse_estimator(std::string_view name) {
  const std::string cleaned = trim(name);
  for (const auto& e : kEstimators) {
    if (e.id == cleaned) return e.kind;
  }
  throw std::invalid_argument("unknown estimator '" + cleaned +
                              "' (expected pca, oracle, data_driven or truth)");
}

std::vector<EstimatorKind> parse_estimator_list(std::string_view list) {
  std::vector<EstimatorKind> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? list.size() : comma;
    const std::string item = trim(list.substr(start, end - start));
    if (!item.empty()) {
      const EstimatorKind kind = parse_estimator(item);
      for (EstimatorKind seen : out) {
        if (seen == kind) {
          throw std::invalid_argument("duplicate estimator '" + item + "'");
        }
      }
      out.push_back(kind);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("estimator list is empty");
  return out;
}

std::string_view to_string(SweepAxis axis) {
  return axis == SweepAxis::NAssets ? "n" : "gamma";
}

SweepAxis parse_axis(std::string_view name) {
  const std::string cleaned = trim(name);
  if (cleaned == "n") return SweepAxis::NAssets;
  if (cleaned == "gamma") return SweepAxis::Gamma;
  throw std::invalid_argument("unknown sweep axis '" + cleaned +
                              "' (expected n or gamma)");
}

std::vector<Cell> default_cells(SweepAxis axis) {
  std::vector<Cell> out;
  if (axis == SweepAxis::NAssets) {
    for (Index n : {500, 1000, 1500, 2000, 2500, 3000}) out.push_back({n, 0.9});
  } else {
    for (double g : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}) out.push_back({500, g});
  }
  return out;
}

std::vector<Cell> SweepConfig::cells() const {
  if (axis_values.empty()) {
    std::vector<Cell> out = default_cells(axis);
    for (Cell& c : out) {
      if (axis == SweepAxis::NAssets) {
        c.gamma = fixed_gamma;
      } else {
        c.n_assets = fixed_n_assets;
      }
    }
    return out;
  }
  std::vector<Cell> out;
  for (double v : axis_values) {
    if (axis == SweepAxis::NAssets) {
      out.push_back({static_cast<Index>(std::llround(v)), fixed_gamma});
    } else {
      out.push_back({fixed_n_assets, v});
    }
  }
  return out;
}

void SweepConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (estimators.empty()) throw std::invalid_argument("no estimators selected");
  for (const Cell& c : cells()) {
    CalibrationConfig cal = calibration;
    cal.n_assets = c.n_assets;
    cal.target_gamma = c.gamma;
    cal.validate();
  }
  if (axis == SweepAxis::NAssets) {
    for (double v : axis_values) {
      if (v != std::round(v)) {
        throw std::invalid_argument("N values must be integers");
      }
    }
  }
}

std::uint64_t trial_seed(const SweepConfig& config, const Cell& cell,
                         int trial_index) {
  return derive_seed(config.master_seed, cell_key(cell.n_assets, cell.gamma),
                     static_cast<std::uint64_t>(trial_index));
}

std::vector<TrialRecord> run_trial(const SweepConfig& config, const Cell& cell,
                                   int trial_index) {
  CalibrationConfig cal = config.calibration;
  cal.n_assets = cell.n_assets;
  cal.target_gamma = cell.gamma;

  Rng rng(trial_seed(config, cell, trial_index));
  std::optional<FactorModelSpec> model;
  if (config.redraw_model) {
    model.emplace(build_model(cal, rng));
  } else {
    Rng model_rng(derive_seed(config.master_seed,
                              cell_key(cell.n_assets, cell.gamma),
                              std::numeric_limits<std::uint64_t>::max()));
    model.emplace(build_model(cal, model_rng));
  }
  const ReturnsPanel panel = simulate_returns(*model, cal.n_obs, rng);

  const CovarianceModel truth = assemble_covariance(*model);
  const PortfolioWeights w_star = min_var_solve(truth);
  const PortfolioWeights w_equal = equal_weight(cell.n_assets);
  const Vector beta = model->market_exposures();
  const double days = cal.trading_days_per_year;
  const SampleCovariance cov(panel);

  std::optional<SpectralResult> spectral;
  std::string spectral_error;
  try {
    spectral.emplace(leading_eigenpair(cov));
  } catch (const std::exception& e) {
    spectral_error = e.what();
  }

  CorrectionOptions options;
  options.whitening = config.whitening;

  std::vector<TrialRecord> out;
  for (EstimatorKind kind : config.estimators) {
    try {
      std::optional<CovarianceModel> estimate;
      PortfolioWeights w_hat = w_star;
      TrialRecord rec{cell, trial_index, kind, TrialReport{}, 0.0, kNaN, kNaN, false};
      if (kind == EstimatorKind::Truth) {
        estimate.emplace(truth);
      } else {
        if (!spectral) throw std::runtime_error(spectral_error);
        if (kind == EstimatorKind::Pca) {
          const EstimatedFactorModel pca = pca_estimate(cov, *spectral);
          estimate.emplace(assemble_covariance(pca));
          w_hat = min_var_closed_form(pca);
        } else {
          CorrectionMode mode = mode::DataDriven{};
          if (kind == EstimatorKind::Oracle) {
            if (config.oracle_concentration == OracleConcentration::Whitened) {
              mode = mode::OracleWhitenedGamma{beta};
            } else {
              mode = mode::OracleGamma{concentration(beta, ReferenceVector(cell.n_assets))};
            }
          }
          const CorrectedEstimate est =
              corrected_estimator(cov, *spectral, mode, options);
          estimate.emplace(assemble_covariance(est.model));
          w_hat = min_var_closed_form(est.model);
          const CorrectionDiagnostics& d = est.correction.diagnostics;
          rec.rho = d.rho;
          rec.psi_hat = d.psi_hat;
          rec.delta2_hat = d.delta2_hat;
          rec.fallback = d.fallback;
        }
      }
      rec.report.estimator_name = std::string(to_string(kind));
      rec.report.tracking_error_annual =
          annualize_vol(tracking_error(w_hat, w_star, truth), days);
      rec.report.true_vol_annual = annualize_vol(
          std::sqrt(truth.quadratic_form(w_hat.weights())), days);
      rec.report.forecast_ratio_minvar = forecast_ratio(w_hat, *estimate, truth);
      rec.report.forecast_ratio_equal = forecast_ratio(w_equal, *estimate, truth);
      out.push_back(std::move(rec));
    } catch (const std::exception& e) {
      spdlog::warn("trial {} (N={}, gamma={}) estimator {} failed: {}",
                   trial_index, cell.n_assets, cell.gamma, to_string(kind),
                   e.what());
      out.push_back(failed_record(cell, trial_index, kind));
    }
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<Cell> cells = config.cells();
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t tasks = cells.size() * trials;
  spdlog::info("sweep over {} cells x {} trials ({} estimators)", cells.size(),
               trials, config.estimators.size());

  std::vector<std::vector<TrialRecord>> slots(tasks);
  detail::parallel_for(tasks, config.threads, [&](std::size_t task) {
    const Cell& cell = cells[task / trials];
    const int trial = static_cast<int>(task % trials);
    slots[task] = run_trial(config, cell, trial);
  });

  SweepResult result;
  result.records.reserve(tasks * config.estimators.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
      for (std::size_t t = 0; t < trials; ++t) {
        result.records.push_back(slots[c * trials + t][e]);
      }
    }
  }
  result.medians = summarize(result.records);
  return result;
}

std::vector<MedianRow> summarize(const std::vector<TrialRecord>& records) {
  struct Group {
    Cell cell;
    EstimatorKind estimator;
    std::vector<double> te, vol, frm, fre;
  };
  std::vector<Group> groups;
  for (const TrialRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.cell == r.cell && g.estimator == r.estimator;
    });
    if (it == groups.end()) {
      groups.push_back(Group{r.cell, r.estimator, {}, {}, {}, {}});
      it = std::prev(groups.end());
    }
    it->te.push_back(r.report.tracking_error_annual);
    it->vol.push_back(r.report.true_vol_annual);
    it->frm.push_back(r.report.forecast_ratio_minvar);
    it->fre.push_back(r.report.forecast_ratio_equal);
  }
  std::vector<MedianRow> out;
  out.reserve(groups.size());
  for (Group& g : groups) {
    const int count = static_cast<int>(g.te.size());
    out.push_back(MedianRow{g.cell, g.estimator, count, median(std::move(g.te)),
                            median(std::move(g.vol)), median(std::move(g.frm)),
                            median(std::move(g.fre))});
  }
  return out;
}

std::optional<MedianRow> find_median(const std::vector<MedianRow>& rows,
                                     const Cell& cell, EstimatorKind estimator) {
  for (const MedianRow& r : rows) {
    if (r.estimator == estimator && r.cell.n_assets == cell.n_assets &&
        std::abs(r.cell.gamma - cell.gamma) < 1e-9) {
      return r;
    }
  }
  return std::nullopt;
}

std::string format_tables(const std::vector<MedianRow>& rows, SweepAxis axis) {
  std::vector<Cell> cells;
  std::vector<EstimatorKind> estimators;
  for (const MedianRow& r : rows) {
    if (std::find(cells.begin(), cells.end(), r.cell) == cells.end()) {
      cells.push_back(r.cell);
    }
    if (std::find(estimators.begin(), estimators.end(), r.estimator) ==
        estimators.end()) {
      estimators.push_back(r.estimator);
    }
  }

  struct Panel {
    const char* title;
    double MedianRow::*field;
    bool percent;
  };
  const Panel panels[] = {
      {"(a) Annualized Tracking Error", &MedianRow::te_annual, true},
      {"(b) Annualized Volatility: Minimum Variance", &MedianRow::vol_annual, true},
      {"(c) Variance Forecast Ratio: Minimum Variance", &MedianRow::fr_minvar, false},
      {"(d) Variance Forecast Ratio: Equal Weighted", &MedianRow::fr_equal, false},
  };

  constexpr int kLabel = 13;
  constexpr int kColumn = 9;
  std::ostringstream out;
  for (const Panel& p : panels) {
    out << p.title << '\n';
    out << std::left << std::setw(kLabel)
        << (axis == SweepAxis::NAssets ? "N" : "gamma") << std::right;
    for (const Cell& c : cells) {
      std::ostringstream head;
      if (axis == SweepAxis::NAssets) {
        head << c.n_assets;
      } else {
        head << c.gamma;
      }
      out << std::setw(kColumn) << head.str();
    }
    out << '\n';
    for (EstimatorKind e : estimators) {
      out << std::left << std::setw(kLabel) << display_name(e) << std::right;
      for (const Cell& c : cells) {
        const auto row = find_median(rows, c, e);
        std::ostringstream cellText;
        if (!row || !std::isfinite((*row).*p.field)) {
          cellText << "-";
        } else if (p.percent) {
          cellText << std::fixed << std::setprecision(2)
                   << 100.0 * ((*row).*p.field) << '%';
        } else {
          cellText << std::fixed << std::setprecision(3) << (*row).*p.field;
        }
        out << std::setw(kColumn) << cellText.str();
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dbpca
