#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "signtest/location_tests.hpp"

namespace signtest {

enum class Hypothesis { Null, PowerShift };

std::string hypothesis_name(Hypothesis h);

/// One Monte Carlo cell: an (n, p, rho, model, hypothesis) point of the grid
/// plus replication and calibration settings. The t and mixture parameters
/// default to the simulation-study instances (nu = 3, 0.2 / 9).
struct ExperimentConfig {
  int n = 40;
  int p = 100;
  double rho = 0.1;
  double sigma2 = 1.0;
  DistributionModel::Family family = DistributionModel::Family::Normal;
  double nu = 3.0;
  double mix_weight = 0.2;
  double mix_scale2 = 9.0;
  Hypothesis hypothesis = Hypothesis::Null;
  int reps = 2000;       // desk-scale default; the full study uses 10000
  int bootstrap_m = 200; // desk-scale default; the full study uses 500
  double alpha = 0.05;
  std::vector<Method> methods = {Method::WPL, Method::ZGCZ, Method::TR,
                                 Method::TN};
  std::uint64_t seed = 0;

  DistributionModel base_model() const;
  std::string model_tag() const;
};

struct MethodResult {
  Method method = Method::WPL;
  long long rejections = 0;
  double rejection_rate = 0.0;
  double mc_stderr = 0.0;  // sqrt(r(1-r)/reps)
  double seconds = 0.0;    // summed across replications
};

struct ExperimentReport {
  ExperimentConfig config;
  double delta = 0.0;  // 0 under the null
  std::vector<MethodResult> methods;
};

/// Run one cell. Every replication r draws its dataset from a stream keyed by
/// (seed, data-tag, r) and each bootstrap method from (seed, bootstrap-tag,
/// r, method-tag), so all methods see the same data, removing a method never
/// perturbs the others, and the result is bit-identical for a fixed seed
/// regardless of the worker count. workers <= 0 means hardware concurrency.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                int workers = 0);

/// Average relative error 100 * mean(|size_j - alpha|) / alpha.
double are_summary(const std::vector<double>& sizes, double alpha);

struct SuiteCell {
  ExperimentConfig config;
  std::optional<ExperimentReport> report;
  std::string error;  // non-empty when the cell failed
};

struct SuiteReport {
  std::vector<SuiteCell> cells;
};

/// Run a grid of cells; per-cell failures are recorded and the suite
/// continues. Progress lines go to `progress` when given.
SuiteReport run_suite(const std::vector<ExperimentConfig>& grid, int workers,
                      std::ostream* progress = nullptr);

// Report rendering. CSV schema (one row per cell and method):
//   n,p,rho,model,hypothesis,method,reps,bootstrap_M,alpha,
//   rejection_rate,stderr,seconds
// Numeric fields use 17 significant digits; rates are fractions. With timing
// disabled the seconds column is written as 0 so reruns are byte-identical.
std::string suite_csv(const SuiteReport& suite, bool with_timing);
std::string experiment_csv(const ExperimentReport& report, bool with_timing);

/// Markdown tables in the simulation-study layout: one table per
/// (model, hypothesis, rho) with (n, p) rows and method columns, rates as
/// percentages; null tables get an ARE row.
std::string suite_markdown(const SuiteReport& suite,
                           DistributionModel::Family family,
                           Hypothesis hypothesis);

std::string suite_json_lines(const SuiteReport& suite, bool with_timing);

}  // namespace signtest
