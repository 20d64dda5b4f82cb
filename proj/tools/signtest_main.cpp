// Command-line front end for the spatial-sign location tests, the wild
// bootstrap calibrations, the Monte Carlo harness and the limit-law samplers.
//
// Exit codes: 0 success, 2 usage/domain error, 3 internal numeric failure.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signtest/diagnostics.hpp"
#include "signtest/io.hpp"
#include "signtest/limit_laws.hpp"
#include "signtest/monte_carlo.hpp"

namespace st = signtest;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

st::DistributionModel::Family parse_family(const std::string& name) {
  const std::string m = lower(name);
  if (m == "normal" || m == "gaussian") return st::DistributionModel::Family::Normal;
  if (m == "t" || m == "student" || m == "student_t")
    return st::DistributionModel::Family::StudentT;
  if (m == "mixture" || m == "mixture_normal" || m == "mixnormal")
    return st::DistributionModel::Family::MixtureNormal;
  throw UsageError("unknown model '" + name + "' (expected normal, t or mixture)");
}

st::Hypothesis parse_hypothesis(const std::string& name) {
  const std::string h = lower(name);
  if (h == "null") return st::Hypothesis::Null;
  if (h == "power" || h == "powershift" || h == "shift")
    return st::Hypothesis::PowerShift;
  throw UsageError("unknown hypothesis '" + name + "' (expected null or power)");
}

st::Method parse_method(const std::string& name) {
  const std::string m = lower(name);
  if (m == "wpl") return st::Method::WPL;
  if (m == "zgcz") return st::Method::ZGCZ;
  if (m == "tr") return st::Method::TR;
  if (m == "tn") return st::Method::TN;
  throw UsageError("unknown method '" + name + "' (expected wpl, zgcz, tr or tn)");
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string tok;
  for (char c : csv) {
    if (c == ',' || c == ' ') {
      if (!tok.empty()) out.push_back(tok), tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  if (!tok.empty()) out.push_back(tok);
  if (out.empty()) throw UsageError("empty list value");
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw UsageError("value '" + s + "' for '" + key + "' is not a number");
  return v;
}

long long parse_int(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw UsageError("value '" + s + "' for '" + key + "' is not an integer");
  return v;
}

// Flat key = value config file; '#' comments. Flags override file keys.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    std::string key, value;
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw UsageError("config line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    }
    key = line.substr(0, eq);
    value = line.substr(eq + 1);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    key = trim(key);
    value = trim(value);
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) +
                                      ": empty key");
    kv[key] = value;
  }
  return kv;
}

const std::vector<std::string> kConfigKeys = {
    "command", "n",     "p",          "rho",   "model",   "hypothesis",
    "reps",    "bootstrap", "alpha",  "methods", "seed",  "workers",
    "format",  "out",   "nu",         "mix_weight", "mix_scale2", "sigma2",
    "data",    "weights", "draws",    "law",   "mode",    "pairs",
    "signs",   "timing"};

void validate_config_keys(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const auto& k : kConfigKeys)
      if (k == key) {
        known = true;
        break;
      }
    if (!known) throw UsageError("invalid config key '" + key + "'");
  }
}

struct CliValues {
  std::string command;
  std::string config_path;
  std::string data_path;
  std::string weights_path;
  std::string out_path;
  std::string format = "csv";
  std::string n = "40", p = "100", rho = "0.1";
  std::string model = "normal", hypothesis = "null";
  std::string methods = "wpl,zgcz,tr,tn";
  std::string reps = "2000", bootstrap = "200", alpha = "0.05";
  std::string nu = "3", mix_weight = "0.2", mix_scale2 = "9", sigma2 = "1";
  std::string draws = "100000", law = "tinf", mode = "spherical";
  std::string pairs = "1000000", signs = "100000";
  std::optional<std::uint64_t> seed;
  int workers = 0;
  bool no_timing = false;
};

// Merge config-file keys under explicit flags; flag wins when given.
void merge_config(CliValues& v, const std::map<std::string, std::string>& kv,
                  const CLI::App& app) {
  const auto given = [&](const std::string& flag) {
    return app.count("--" + flag) > 0;
  };
  const auto pick = [&](const char* key, std::string& slot) {
    auto it = kv.find(key);
    if (it != kv.end() && !given(key)) slot = it->second;
  };
  pick("command", v.command);
  pick("n", v.n);
  pick("p", v.p);
  pick("rho", v.rho);
  pick("model", v.model);
  pick("hypothesis", v.hypothesis);
  pick("methods", v.methods);
  pick("reps", v.reps);
  pick("bootstrap", v.bootstrap);
  pick("alpha", v.alpha);
  pick("nu", v.nu);
  pick("mix_weight", v.mix_weight);
  pick("mix_scale2", v.mix_scale2);
  pick("sigma2", v.sigma2);
  pick("format", v.format);
  pick("out", v.out_path);
  pick("data", v.data_path);
  pick("weights", v.weights_path);
  pick("draws", v.draws);
  pick("law", v.law);
  pick("mode", v.mode);
  pick("pairs", v.pairs);
  pick("signs", v.signs);
  if (auto it = kv.find("seed"); it != kv.end() && !given("seed"))
    v.seed = std::uint64_t(parse_int(it->second, "seed"));
  if (auto it = kv.find("workers"); it != kv.end() && !given("workers"))
    v.workers = int(parse_int(it->second, "workers"));
  if (auto it = kv.find("timing"); it != kv.end() && !given("no-timing"))
    v.no_timing = lower(it->second) == "off" || it->second == "0";
}

std::uint64_t resolve_seed(CliValues& v) {
  if (!v.seed) {
    std::random_device rd;
    v.seed = (std::uint64_t(rd()) << 32) ^ std::uint64_t(rd());
  }
  return *v.seed;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << text;
}

// Cross product of the (possibly list-valued) grid keys, in a fixed order so
// the suite layout is deterministic.
std::vector<st::ExperimentConfig> build_grid(const CliValues& v,
                                             std::uint64_t master_seed) {
  const auto models = split_list(v.model);
  const auto hyps = split_list(v.hypothesis);
  const auto rhos = split_list(v.rho);
  const auto ns = split_list(v.n);
  const auto ps = split_list(v.p);
  const auto method_names = split_list(v.methods);

  std::vector<st::Method> methods;
  for (const auto& mn : method_names) methods.push_back(parse_method(mn));

  std::vector<st::ExperimentConfig> grid;
  const st::RngStream cell_root(master_seed, {0x6365ll});
  for (std::size_t im = 0; im < models.size(); ++im)
    for (std::size_t ih = 0; ih < hyps.size(); ++ih)
      for (std::size_t ir = 0; ir < rhos.size(); ++ir)
        for (std::size_t in_ = 0; in_ < ns.size(); ++in_)
          for (std::size_t ip = 0; ip < ps.size(); ++ip) {
            st::ExperimentConfig c;
            c.family = parse_family(models[im]);
            c.hypothesis = parse_hypothesis(hyps[ih]);
            c.rho = parse_double(rhos[ir], "rho");
            c.n = int(parse_int(ns[in_], "n"));
            c.p = int(parse_int(ps[ip], "p"));
            c.reps = int(parse_int(v.reps, "reps"));
            c.bootstrap_m = int(parse_int(v.bootstrap, "bootstrap"));
            c.alpha = parse_double(v.alpha, "alpha");
            c.nu = parse_double(v.nu, "nu");
            c.mix_weight = parse_double(v.mix_weight, "mix_weight");
            c.mix_scale2 = parse_double(v.mix_scale2, "mix_scale2");
            c.sigma2 = parse_double(v.sigma2, "sigma2");
            c.methods = methods;
            c.seed = cell_root.child(im)
                         .child(ih)
                         .child(ir)
                         .child(in_)
                         .child(ip)
                         .stream_id();
            grid.push_back(std::move(c));
          }
  return grid;
}

int cmd_test(CliValues& v) {
  if (v.data_path.empty()) throw UsageError("test: --data <file> is required");
  const st::Matrix x = st::read_matrix_file(v.data_path);
  if (x.rows() < 4)
    throw UsageError("test: needs at least 4 observations, file has " +
                     std::to_string(x.rows()));
  const double alpha = parse_double(v.alpha, "alpha");
  const int m = int(parse_int(v.bootstrap, "bootstrap"));
  const std::uint64_t seed = resolve_seed(v);

  std::ostringstream os;
  os << "# seed=" << seed << "\n";
  for (const auto& name : split_list(v.methods)) {
    const st::Method method = parse_method(name);
    st::TestOutcome out;
    switch (method) {
      case st::Method::WPL: out = st::wpl_test(x, alpha); break;
      case st::Method::ZGCZ: out = st::zgcz_test(x, alpha); break;
      case st::Method::TR:
      case st::Method::TN: {
        st::RngStream stream(seed, {0xb007ull, std::uint64_t(method)});
        out = st::wild_bootstrap_test(x, alpha, m,
                                      method == st::Method::TR
                                          ? st::Multiplier::Rademacher
                                          : st::Multiplier::Gaussian,
                                      stream);
        break;
      }
    }
    os << "method=" << st::method_name(out.method)
       << " statistic=" << st::g17(out.statistic)
       << " critical_value=" << st::g17(out.critical_value)
       << " reject=" << (out.reject ? "true" : "false")
       << " alpha=" << st::g17(out.alpha);
    for (const auto& [k, val] : out.extras) os << ' ' << k << '=' << st::g17(val);
    os << "\n";
  }
  write_text(v.out_path, os.str());
  return 0;
}

int cmd_experiment(CliValues& v) {
  const std::uint64_t seed = resolve_seed(v);
  auto grid = build_grid(v, seed);
  if (grid.size() != 1)
    throw UsageError(
        "experiment: expected scalar grid values (use the suite command for "
        "lists)");
  grid[0].seed = seed;  // single cell runs directly off the master seed
  const st::ExperimentReport report = st::run_experiment(grid[0], v.workers);

  st::SuiteReport one;
  one.cells.push_back({grid[0], report, ""});
  std::ostringstream os;
  os << "# seed=" << seed << "\n";
  const std::string fmt = lower(v.format);
  if (fmt == "csv")
    os << st::suite_csv(one, !v.no_timing);
  else if (fmt == "markdown" || fmt == "md")
    os << st::suite_markdown(one, grid[0].family, grid[0].hypothesis);
  else if (fmt == "json-lines" || fmt == "jsonl")
    os << st::suite_json_lines(one, !v.no_timing);
  else
    throw UsageError("unknown format '" + v.format + "'");
  write_text(v.out_path, os.str());
  return 0;
}

int cmd_suite(CliValues& v) {
  if (v.out_path.empty())
    throw UsageError("suite: --out <basename> is required (writes CSV and "
                     "markdown next to it)");
  const std::uint64_t seed = resolve_seed(v);
  const auto grid = build_grid(v, seed);
  const st::SuiteReport suite = st::run_suite(grid, v.workers, &std::cerr);

  std::ostringstream csv;
  csv << "# seed=" << seed << "\n" << st::suite_csv(suite, !v.no_timing);
  const std::filesystem::path base(v.out_path);
  std::filesystem::path csv_path = base;
  if (csv_path.extension() != ".csv") csv_path += ".csv";
  write_text(csv_path.string(), csv.str());

  for (const auto& model : split_list(v.model)) {
    for (const auto& hyp : split_list(v.hypothesis)) {
      const auto family = parse_family(model);
      const auto hypothesis = parse_hypothesis(hyp);
      std::filesystem::path md = base;
      md += "_" + lower(model) + "_" + lower(hyp) + ".md";
      write_text(md.string(), st::suite_markdown(suite, family, hypothesis));
    }
  }
  return 0;
}

int cmd_limits(CliValues& v) {
  const std::uint64_t seed = resolve_seed(v);
  st::SpectralWeights weights;
  if (!v.weights_path.empty()) {
    st::Vector lam = st::read_vector_file(v.weights_path);
    if (lam.size() == 0 || lam.cwiseAbs().maxCoeff() == 0.0)
      throw UsageError("limits: spectrum in " + v.weights_path + " is zero");
    weights = st::spectral_weights_from_eigenvalues(std::move(lam));
  } else {
    // Monte Carlo sign scatter of the equicorrelated model
    const int p = int(parse_int(v.p, "p"));
    const double rho = parse_double(v.rho, "rho");
    const int count = int(parse_int(v.signs, "signs"));
    st::RngStream stream(seed, {0x5363ull});
    const auto scatter = st::ScatterSpec::equicorrelated(p, rho);
    const auto model = st::DistributionModel::normal();
    const st::Dataset ds = st::sample(model, scatter, count, stream);
    const st::Matrix u = st::sign_matrix(ds.x);
    const st::Matrix sigma_u = (u.transpose() * u) / double(count);
    weights = st::spectral_weights(sigma_u);
  }

  const std::size_t m = std::size_t(parse_int(v.draws, "draws"));
  st::RngStream stream(seed, {0x4c4dull});
  std::vector<double> draws;
  const std::string law = lower(v.law);
  if (law == "tinf" || law == "t_infinity" || law == "tinfinity")
    draws = st::sample_t_infinity(weights, m, stream);
  else if (law == "qp" || law == "q_p")
    draws = st::sample_qp(weights, m, stream);
  else
    throw UsageError("unknown law '" + v.law + "' (expected tinf or qp)");

  const st::MomentSummary mom = st::moment_summary(draws);
  std::ostringstream os;
  os << "# seed=" << seed << " law=" << law << " draws=" << m << "\n";
  for (double d : draws) os << st::g17(d) << "\n";
  os << "# mean=" << st::g17(mom.mean) << " variance=" << st::g17(mom.variance)
     << " skewness=" << st::g17(mom.skewness)
     << " third_central=" << st::g17(mom.third_central) << "\n";
  write_text(v.out_path, os.str());
  return 0;
}

int cmd_kappa4(CliValues& v) {
  const std::string mode = lower(v.mode);
  const int p = int(parse_int(v.p, "p"));
  std::ostringstream os;
  if (mode == "spherical") {
    os << "kappa4=" << st::g17(st::kappa4_spherical(p))
       << " method=spherical tau=" << st::g17(1.0 / p) << "\n";
  } else if (mode == "compound") {
    const double rho = parse_double(v.rho, "rho");
    const auto rep = st::kappa4_compound_symmetric(p, rho);
    os << "kappa4=" << st::g17(rep.value) << " method=compound"
       << " tau=" << st::g17(*rep.tau) << "\n";
  } else if (mode == "mc") {
    const double rho = parse_double(v.rho, "rho");
    const std::size_t pairs = std::size_t(parse_int(v.pairs, "pairs"));
    const std::uint64_t seed = resolve_seed(v);
    st::RngStream stream(seed, {0x6b34ull});
    const auto scatter = st::ScatterSpec::equicorrelated(p, rho);
    st::DistributionModel model = st::DistributionModel::normal();
    if (lower(v.model) != "normal") model = [&] {
      const auto fam = parse_family(v.model);
      if (fam == st::DistributionModel::Family::StudentT)
        return st::DistributionModel::student_t(parse_double(v.nu, "nu"));
      return st::DistributionModel::mixture_normal(
          parse_double(v.mix_weight, "mix_weight"),
          parse_double(v.mix_scale2, "mix_scale2"));
    }();
    const auto rep = st::kappa4_mc(model, scatter, pairs, stream);
    os << "# seed=" << seed << "\n";
    os << "kappa4=" << st::g17(rep.value) << " method=mc"
       << " stderr=" << st::g17(*rep.mc_stderr)
       << " tau=" << st::g17(*rep.tau) << "\n";
  } else {
    throw UsageError("unknown mode '" + v.mode +
                     "' (expected spherical, compound or mc)");
  }
  write_text(v.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliValues v;
  CLI::App app{
      "signtest - high-dimensional spatial-sign location tests with wild "
      "bootstrap calibration"};
  app.add_option("--command", v.command,
                 "one of: test, experiment, suite, limits, kappa4");
  app.add_option("--config", v.config_path, "flat key = value config file");
  app.add_option("--data", v.data_path, "data matrix file (test command)");
  app.add_option("--weights", v.weights_path,
                 "eigenvalue file for the limits command");
  app.add_option("--out", v.out_path, "output path (stdout when omitted)");
  app.add_option("--format", v.format, "csv | markdown | json-lines");
  app.add_option("--n", v.n, "sample size(s), comma list for suite");
  app.add_option("--p", v.p, "dimension(s), comma list for suite");
  app.add_option("--rho", v.rho, "equicorrelation(s), comma list for suite");
  app.add_option("--model", v.model, "normal | t | mixture (comma list)");
  app.add_option("--hypothesis", v.hypothesis, "null | power (comma list)");
  app.add_option("--methods", v.methods, "subset of wpl,zgcz,tr,tn");
  app.add_option("--reps", v.reps, "Monte Carlo replications");
  app.add_option("--bootstrap", v.bootstrap, "bootstrap replicates per test");
  app.add_option("--alpha", v.alpha, "nominal level");
  app.add_option("--nu", v.nu, "t degrees of freedom");
  app.add_option("--mix_weight", v.mix_weight, "mixture inflation probability");
  app.add_option("--mix_scale2", v.mix_scale2, "mixture variance inflation");
  app.add_option("--sigma2", v.sigma2, "scatter variance scale");
  app.add_option("--draws", v.draws, "limit-law draw count");
  app.add_option("--law", v.law, "tinf | qp (limits command)");
  app.add_option("--mode", v.mode, "spherical | compound | mc (kappa4)");
  app.add_option("--pairs", v.pairs, "MC pairs for kappa4");
  app.add_option("--signs", v.signs, "signs for the generated sign scatter");
  app.add_option("--seed", v.seed, "64-bit master seed (default: OS entropy)");
  app.add_option("--workers", v.workers, "worker thread cap (0 = hardware)");
  app.add_flag("--no-timing", v.no_timing,
               "write 0 in the seconds column for byte-reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!v.config_path.empty()) {
      const auto kv = parse_config_file(v.config_path);
      validate_config_keys(kv);
      merge_config(v, kv, app);
    }
    const std::string cmd = lower(v.command);
    if (cmd.empty())
      throw UsageError("--command is required (test, experiment, suite, "
                       "limits or kappa4)");
    if (cmd == "test") return cmd_test(v);
    if (cmd == "experiment") return cmd_experiment(v);
    if (cmd == "suite") return cmd_suite(v);
    if (cmd == "limits") return cmd_limits(v);
    if (cmd == "kappa4") return cmd_kappa4(v);
    throw UsageError("unknown command '" + v.command + "'");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const st::MatrixParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
