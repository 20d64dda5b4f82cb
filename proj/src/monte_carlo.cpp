#include "signtest/monte_carlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "signtest/io.hpp"

namespace signtest {

namespace {

// Stream-purpose tags; method tags are the stable per-method ids below, so
// adding or removing a method never perturbs the draws of the others.
constexpr std::uint64_t kTagData = 0x64617461;  // "data"
constexpr std::uint64_t kTagBoot = 0x626f6f74;  // "boot"

std::uint64_t method_tag(Method m) {
  switch (m) {
    case Method::WPL: return 1;
    case Method::ZGCZ: return 2;
    case Method::TR: return 3;
    case Method::TN: return 4;
  }
  return 0;
}

}  // namespace

std::string hypothesis_name(Hypothesis h) {
  return h == Hypothesis::Null ? "null" : "power";
}

DistributionModel ExperimentConfig::base_model() const {
  switch (family) {
    case DistributionModel::Family::Normal:
      return DistributionModel::normal();
    case DistributionModel::Family::StudentT:
      return DistributionModel::student_t(nu);
    case DistributionModel::Family::MixtureNormal:
      return DistributionModel::mixture_normal(mix_weight, mix_scale2);
  }
  throw std::logic_error("base_model: unknown family");
}

std::string ExperimentConfig::model_tag() const {
  return base_model().family_name();
}

ExperimentReport run_experiment(const ExperimentConfig& config, int workers) {
  if (config.reps < 1)
    throw std::domain_error("run_experiment: reps must be >= 1");
  if (config.bootstrap_m < 1)
    throw std::domain_error("run_experiment: bootstrap_m must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::domain_error("run_experiment: alpha must lie in (0, 1)");
  if (config.methods.empty())
    throw std::domain_error("run_experiment: no methods selected");

  const ScatterSpec scatter =
      ScatterSpec::equicorrelated(config.p, config.rho, config.sigma2);
  DistributionModel model = config.base_model();
  double delta = 0.0;
  if (config.hypothesis == Hypothesis::PowerShift) {
    delta = power_shift_delta(config.n, config.p, scatter, model);
    model = model.shifted(Vector::Constant(config.p, delta));
  }

  int w = workers > 0 ? workers
                      : int(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min(w, config.reps);

  const std::size_t nm = config.methods.size();
  std::vector<std::vector<long long>> rejections(
      std::size_t(w), std::vector<long long>(nm, 0));
  std::vector<std::vector<double>> seconds(std::size_t(w),
                                           std::vector<double>(nm, 0.0));

  std::atomic<int> next_rep{0};
  std::mutex error_mutex;
  std::string first_error;
  int first_error_rep = -1;

  const auto worker_body = [&](int wi) {
    for (;;) {
      const int r = next_rep.fetch_add(1);
      if (r >= config.reps) break;
      try {
        RngStream data_stream(config.seed, {kTagData, std::uint64_t(r)});
        const Dataset ds = sample(model, scatter, config.n, data_stream);
        for (std::size_t mi = 0; mi < nm; ++mi) {
          const Method method = config.methods[mi];
          const auto t0 = std::chrono::steady_clock::now();
          TestOutcome outcome;
          switch (method) {
            case Method::WPL:
              outcome = wpl_test(ds.x, config.alpha);
              break;
            case Method::ZGCZ:
              outcome = zgcz_test(ds.x, config.alpha);
              break;
            case Method::TR:
            case Method::TN: {
              RngStream boot_stream(
                  config.seed,
                  {kTagBoot, std::uint64_t(r), method_tag(method)});
              outcome = wild_bootstrap_test(
                  ds.x, config.alpha, config.bootstrap_m,
                  method == Method::TR ? Multiplier::Rademacher
                                       : Multiplier::Gaussian,
                  boot_stream);
              break;
            }
          }
          const auto t1 = std::chrono::steady_clock::now();
          seconds[std::size_t(wi)][mi] +=
              std::chrono::duration<double>(t1 - t0).count();
          if (outcome.reject) ++rejections[std::size_t(wi)][mi];
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error_rep < 0 || r < first_error_rep) {
          first_error_rep = r;
          first_error = e.what();
        }
        break;
      }
    }
  };

  if (w == 1) {
    worker_body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(w));
    for (int wi = 0; wi < w; ++wi) pool.emplace_back(worker_body, wi);
    for (auto& t : pool) t.join();
  }

  if (first_error_rep >= 0) {
    std::ostringstream msg;
    msg << "replication " << first_error_rep << ": " << first_error;
    throw std::runtime_error(msg.str());
  }

  ExperimentReport report;
  report.config = config;
  report.delta = delta;
  report.methods.resize(nm);
  for (std::size_t mi = 0; mi < nm; ++mi) {
    MethodResult& mr = report.methods[mi];
    mr.method = config.methods[mi];
    for (int wi = 0; wi < w; ++wi) {
      mr.rejections += rejections[std::size_t(wi)][mi];
      mr.seconds += seconds[std::size_t(wi)][mi];
    }
    const double r = double(mr.rejections) / double(config.reps);
    mr.rejection_rate = r;
    mr.mc_stderr = std::sqrt(r * (1.0 - r) / double(config.reps));
  }
  return report;
}

double are_summary(const std::vector<double>& sizes, double alpha) {
  if (sizes.empty()) throw std::domain_error("are_summary: empty size list");
  if (!(alpha > 0.0)) throw std::domain_error("are_summary: alpha must be > 0");
  double acc = 0.0;
  for (double s : sizes) acc += std::abs(s - alpha);
  return 100.0 * (acc / double(sizes.size())) / alpha;
}

SuiteReport run_suite(const std::vector<ExperimentConfig>& grid, int workers,
                      std::ostream* progress) {
  if (grid.empty()) throw std::domain_error("run_suite: empty grid");
  SuiteReport suite;
  suite.cells.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SuiteCell cell;
    cell.config = grid[i];
    try {
      cell.report = run_experiment(grid[i], workers);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    if (progress) {
      (*progress) << "[" << (i + 1) << "/" << grid.size() << "] "
                  << grid[i].model_tag() << " "
                  << hypothesis_name(grid[i].hypothesis)
                  << " rho=" << grid[i].rho << " n=" << grid[i].n
                  << " p=" << grid[i].p
                  << (cell.error.empty() ? "" : (" ERROR: " + cell.error))
                  << "\n";
      progress->flush();
    }
    suite.cells.push_back(std::move(cell));
  }
  return suite;
}

namespace {

void append_cell_csv(std::ostream& os, const SuiteCell& cell,
                     bool with_timing) {
  const ExperimentConfig& c = cell.config;
  if (!cell.report) {
    os << "# error: " << c.model_tag() << " " << hypothesis_name(c.hypothesis)
       << " rho=" << g17(c.rho) << " n=" << c.n << " p=" << c.p << ": "
       << cell.error << "\n";
    return;
  }
  for (const MethodResult& mr : cell.report->methods) {
    os << c.n << ',' << c.p << ',' << g17(c.rho) << ',' << c.model_tag() << ','
       << hypothesis_name(c.hypothesis) << ',' << method_name(mr.method) << ','
       << c.reps << ',' << c.bootstrap_m << ',' << g17(c.alpha) << ','
       << g17(mr.rejection_rate) << ',' << g17(mr.mc_stderr) << ','
       << (with_timing ? g17(mr.seconds) : std::string("0")) << "\n";
  }
}

}  // namespace

std::string suite_csv(const SuiteReport& suite, bool with_timing) {
  std::ostringstream os;
  os << "n,p,rho,model,hypothesis,method,reps,bootstrap_M,alpha,"
        "rejection_rate,stderr,seconds\n";
  for (const SuiteCell& cell : suite.cells)
    append_cell_csv(os, cell, with_timing);
  return os.str();
}

std::string experiment_csv(const ExperimentReport& report, bool with_timing) {
  SuiteReport one;
  SuiteCell cell;
  cell.config = report.config;
  cell.report = report;
  one.cells.push_back(std::move(cell));
  return suite_csv(one, with_timing);
}

std::string suite_markdown(const SuiteReport& suite,
                           DistributionModel::Family family,
                           Hypothesis hypothesis) {
  // rho -> (n, p) -> method results, in grid order
  std::map<double, std::map<std::pair<int, int>, const SuiteCell*>> blocks;
  std::vector<Method> methods;
  for (const SuiteCell& cell : suite.cells) {
    if (cell.config.family != family || cell.config.hypothesis != hypothesis)
      continue;
    blocks[cell.config.rho][{cell.config.n, cell.config.p}] = &cell;
    if (methods.empty()) methods = cell.config.methods;
  }

  std::ostringstream os;
  const char* kind = hypothesis == Hypothesis::Null ? "sizes" : "powers";
  std::string model_tag;
  {
    ExperimentConfig probe;
    probe.family = family;
    model_tag = probe.model_tag();
  }
  os << "# Empirical " << kind << " (%), " << model_tag << " model\n";
  for (const auto& [rho, rows] : blocks) {
    os << "\n## rho = " << rho << "\n\n";
    os << "| n | p |";
    for (Method m : methods) os << ' ' << method_name(m) << " |";
    os << "\n|---|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) os << "---|";
    os << "\n";

    std::map<Method, std::vector<double>> column;
    for (const auto& [np, cell] : rows) {
      os << "| " << np.first << " | " << np.second << " |";
      for (Method m : methods) {
        if (!cell->report) {
          os << " err |";
          continue;
        }
        bool found = false;
        for (const MethodResult& mr : cell->report->methods) {
          if (mr.method == m) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", 100.0 * mr.rejection_rate);
            os << ' ' << buf << " |";
            column[m].push_back(mr.rejection_rate);
            found = true;
            break;
          }
        }
        if (!found) os << " - |";
      }
      os << "\n";
    }
    if (hypothesis == Hypothesis::Null && !rows.empty()) {
      os << "| ARE (%) | |";
      const double alpha = rows.begin()->second->config.alpha;
      for (Method m : methods) {
        auto it = column.find(m);
        if (it == column.end() || it->second.empty()) {
          os << " - |";
        } else {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.2f",
                        are_summary(it->second, alpha));
          os << ' ' << buf << " |";
        }
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string suite_json_lines(const SuiteReport& suite, bool with_timing) {
  std::ostringstream os;
  for (const SuiteCell& cell : suite.cells) {
    const ExperimentConfig& c = cell.config;
    if (!cell.report) {
      nlohmann::ordered_json j;
      j["n"] = c.n;
      j["p"] = c.p;
      j["rho"] = c.rho;
      j["model"] = c.model_tag();
      j["hypothesis"] = hypothesis_name(c.hypothesis);
      j["error"] = cell.error;
      os << j.dump() << "\n";
      continue;
    }
    for (const MethodResult& mr : cell.report->methods) {
      nlohmann::ordered_json j;
      j["n"] = c.n;
      j["p"] = c.p;
      j["rho"] = c.rho;
      j["model"] = c.model_tag();
      j["hypothesis"] = hypothesis_name(c.hypothesis);
      j["method"] = method_name(mr.method);
      j["reps"] = c.reps;
      j["bootstrap_M"] = c.bootstrap_m;
      j["alpha"] = c.alpha;
      j["rejection_rate"] = mr.rejection_rate;
      j["stderr"] = mr.mc_stderr;
      j["seconds"] = with_timing ? mr.seconds : 0.0;
      if (cell.report->delta != 0.0) j["delta"] = cell.report->delta;
      os << j.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace signtest
