#include <benchmark/benchmark.h>

#include <Eigen/Eigenvalues>

#include "dbpca/correction.h"
#include "dbpca/experiments.h"
#include "dbpca/portfolio.h"
#include "dbpca/simgen.h"
#include "dbpca/spectral.h"

namespace {

using namespace dbpca;

ReturnsPanel calibrated_panel(Index n, Index t) {
  CalibrationConfig cfg;
  cfg.n_assets = n;
  cfg.n_obs = t;
  Rng rng(derive_seed(1, static_cast<std::uint64_t>(n), 0));
  return simulate_returns(build_model(cfg, rng), t, rng);
}

void BM_LeadingEigenpairGram(benchmark::State& state) {
  const ReturnsPanel panel = calibrated_panel(state.range(0), 250);
  const SampleCovariance cov(panel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(leading_eigenpair(cov).leading_eigenvalue);
  }
}
BENCHMARK(BM_LeadingEigenpairGram)->Arg(500)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_LeadingEigenpairDense(benchmark::State& state) {
  const ReturnsPanel panel = calibrated_panel(state.range(0), 250);
  const Matrix s = SampleCovariance(panel).materialize();
  for (auto _ : state) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    benchmark::DoNotOptimize(solver.eigenvalues()(s.rows() - 1));
  }
}
BENCHMARK(BM_LeadingEigenpairDense)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CorrectedEstimator(benchmark::State& state) {
  const ReturnsPanel panel = calibrated_panel(state.range(0), 250);
  const SampleCovariance cov(panel);
  const SpectralResult spectral = leading_eigenpair(cov);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        corrected_estimator(cov, spectral, mode::DataDriven{}).model.factor_variance());
  }
}
BENCHMARK(BM_CorrectedEstimator)->Arg(500)->Arg(3000)->Unit(benchmark::kMicrosecond);

void BM_MinVarClosedForm(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(2);
  const Vector b = build_market_beta(n, 0.9, rng);
  const Vector d = Vector::Constant(n, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_var_closed_form(0.05, b, d).weights().data());
  }
}
BENCHMARK(BM_MinVarClosedForm)->Arg(500)->Arg(3000);

void BM_MinVarSolveStructured(benchmark::State& state) {
  CalibrationConfig cfg;
  cfg.n_assets = state.range(0);
  Rng rng(3);
  const CovarianceModel cov = assemble_covariance(build_model(cfg, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_var_solve(cov).weights().data());
  }
}
BENCHMARK(BM_MinVarSolveStructured)->Arg(500)->Arg(3000);

void BM_SweepTrial(benchmark::State& state) {
  SweepConfig cfg;
  const Cell cell{state.range(0), 0.9};
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, cell, trial++).size());
  }
}
BENCHMARK(BM_SweepTrial)->Arg(500)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
