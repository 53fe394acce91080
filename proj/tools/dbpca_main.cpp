// Command line driver: single-cell simulations, table sweeps, convergence
// studies, and re-rendering of saved sweep output.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dbpca/asymptotics.h"
#include "dbpca/csv.h"
#include "dbpca/experiments.h"
#include "dbpca/sweep_config.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out;
  std::string estimators;
  std::uint64_t seed = 0;
  int trials = 0;
  long long n_obs = 0;
  unsigned threads = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key=value configuration file");
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_option("--estimators", o.estimators,
                  "comma list of pca, oracle, data_driven, truth");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--trials", o.trials, "trials per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--t", o.n_obs, "observations per panel")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

dbpca::SweepConfig build_config(const CommonOptions& o, CLI::App* cmd) {
  dbpca::SweepConfig config;
  if (!o.config_path.empty()) config = dbpca::load_sweep_config(o.config_path);
  if (!o.estimators.empty()) config.estimators = dbpca::parse_estimator_list(o.estimators);
  if (cmd->count("--seed")) config.master_seed = o.seed;
  if (cmd->count("--trials")) config.trials = o.trials;
  if (cmd->count("--t")) config.calibration.n_obs = o.n_obs;
  if (cmd->count("--threads")) config.threads = o.threads;
  if (!o.out.empty()) config.output_path = o.out;
  return config;
}

void write_outputs(const dbpca::SweepResult& result, const dbpca::SweepConfig& config) {
  const std::string tables = dbpca::format_tables(result.medians, config.axis);
  std::cout << tables;
  if (config.output_path.empty()) return;
  const std::string prefix = config.output_path;
  {
    std::ofstream raw(prefix + "_raw.csv");
    dbpca::write_raw_csv(raw, result.records);
  }
  {
    std::ofstream med(prefix + "_median.csv");
    dbpca::write_median_csv(med, result.medians);
  }
  {
    std::ofstream txt(prefix + "_tables.txt");
    txt << tables;
  }
  {
    std::ofstream cfg(prefix + "_config.txt");
    dbpca::write_sweep_config(cfg, config);
  }
  spdlog::info("wrote {}_raw.csv, {}_median.csv, {}_tables.txt", prefix, prefix, prefix);
}

std::vector<long long> parse_grid(const std::string& text) {
  std::vector<long long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion-bias-corrected PCA covariance estimation and Monte Carlo study"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "debug logging");

  CommonOptions sim_opts;
  long long sim_n = 500;
  double sim_gamma = 0.9;
  auto* simulate = app.add_subcommand("simulate", "run one (N, gamma) cell");
  add_common(simulate, sim_opts);
  simulate->add_option("--n", sim_n, "number of assets")->check(CLI::Range(2, 1 << 20));
  simulate->add_option("--gamma", sim_gamma, "target gamma_{beta,z}")->check(CLI::Range(0.0, 1.0));

  CommonOptions sweep_opts;
  std::string axis = "n";
  std::string values;
  long long sweep_n = 0;
  double sweep_gamma = -1.0;
  auto* sweep = app.add_subcommand("sweep", "reproduce a table sweep over N or gamma");
  add_common(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "n or gamma")->check(CLI::IsMember({"n", "gamma"}));
  sweep->add_option("--values", values, "comma list of axis values (default: standard grid)");
  sweep->add_option("--n", sweep_n, "N held fixed on the gamma axis");
  sweep->add_option("--gamma", sweep_gamma, "gamma held fixed on the N axis");

  std::string statistic = "bias_ratio";
  std::string grid = "500,1000,2000,4000";
  int conv_trials = 100;
  std::uint64_t conv_seed = 1;
  long long conv_t = 250;
  double conv_gamma = 0.9;
  double conv_psi = 1.25;
  double conv_tol = 0.03;
  unsigned conv_threads = 0;
  std::string conv_out;
  auto* convergence = app.add_subcommand("convergence", "large-N convergence study");
  convergence->add_option("--statistic", statistic,
                          "cos_angle_to_beta, eigenvalue_ratio, bias_ratio, sphere_dot, "
                          "angle_improvement, equal_weight_ratio");
  convergence->add_option("--grid", grid, "comma list of dimensions");
  convergence->add_option("--trials", conv_trials, "trials per grid point");
  convergence->add_option("--seed", conv_seed, "seed");
  convergence->add_option("--t", conv_t, "observations per panel");
  convergence->add_option("--gamma", conv_gamma, "gamma_{beta,z}");
  convergence->add_option("--psi", conv_psi, "target psi");
  convergence->add_option("--tolerance", conv_tol, "relative tolerance");
  convergence->add_option("--threads", conv_threads, "worker threads");
  convergence->add_option("--out", conv_out, "CSV output path");

  std::string tables_in;
  std::string tables_axis = "n";
  std::string tables_out;
  auto* tables = app.add_subcommand("tables", "render median tables from a raw CSV");
  tables->add_option("--in", tables_in, "raw trial CSV")->required();
  tables->add_option("--axis", tables_axis, "n or gamma")->check(CLI::IsMember({"n", "gamma"}));
  tables->add_option("--out", tables_out, "median CSV output path");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*simulate) {
      dbpca::SweepConfig config = build_config(sim_opts, simulate);
      config.axis = dbpca::SweepAxis::NAssets;
      config.axis_values = {static_cast<double>(sim_n)};
      config.fixed_gamma = sim_gamma;
      write_outputs(dbpca::run_sweep(config), config);
    } else if (*sweep) {
      dbpca::SweepConfig config = build_config(sweep_opts, sweep);
      if (sweep->count("--axis")) config.axis = dbpca::parse_axis(axis);
      if (!values.empty()) dbpca::apply_setting(config, "values", values);
      if (sweep->count("--n")) config.fixed_n_assets = sweep_n;
      if (sweep->count("--gamma")) config.fixed_gamma = sweep_gamma;
      write_outputs(dbpca::run_sweep(config), config);
    } else if (*convergence) {
      dbpca::ConvergenceConfig config;
      config.n_obs = conv_t;
      config.gamma = conv_gamma;
      config.psi = conv_psi;
      config.tolerance = conv_tol;
      config.threads = conv_threads;
      std::vector<dbpca::Index> points;
      for (long long v : parse_grid(grid)) points.push_back(v);
      const auto report = dbpca::run_convergence_study(
          dbpca::parse_statistic(statistic), points, conv_trials, config, conv_seed);
      std::ostringstream csv;
      csv << "statistic,n,median,lower,upper,target,relative_deviation,pass,auxiliary\n";
      for (const auto& p : report.points) {
        csv << report.statistic_name << ',' << p.n << ',' << dbpca::format_double(p.median)
            << ',' << dbpca::format_double(p.lower) << ','
            << dbpca::format_double(p.upper) << ',' << dbpca::format_double(p.target)
            << ',' << dbpca::format_double(p.relative_deviation) << ','
            << (p.pass ? 1 : 0) << ',' << dbpca::format_double(p.auxiliary) << '\n';
      }
      std::cout << csv.str();
      if (!conv_out.empty()) std::ofstream(conv_out) << csv.str();
      return report.all_pass() ? 0 : 2;
    } else if (*tables) {
      std::ifstream in(tables_in);
      if (!in) throw std::invalid_argument("cannot open " + tables_in);
      const auto medians = dbpca::summarize(dbpca::read_raw_csv(in));
      std::cout << dbpca::format_tables(medians, dbpca::parse_axis(tables_axis));
      if (!tables_out.empty()) {
        std::ofstream out(tables_out);
        dbpca::write_median_csv(out, medians);
      }
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
