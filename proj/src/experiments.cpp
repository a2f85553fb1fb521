#include "rgg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rgg/concentration.hpp"
#include "rgg/distributions.hpp"
#include "rgg/parallel.hpp"
#include "rgg/samplers.hpp"
#include "rgg/triangles.hpp"

namespace rgg {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Schema {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"sample", {{"sampler", "n", "p", "trials"}, {"d"}}},
      {"power", {{"n", "p", "d", "z", "trials"}, {}}},
      {"tv_curve", {{"n", "p", "trials"}, {"d", "d_grid"}}},
      {"coupling", {{"n", "p", "d", "trials", "mc_budget"}, {"eps", "c2", "min_accept"}}},
      {"martingale", {{"k", "j", "p", "trials", "mc_samples"}, {"d", "d_grid"}}},
      {"diffusion", {{"d", "p", "particles", "steps", "z_samples"}, {"family"}}},
      {"anticap", {{"m", "p", "trials", "mc_samples"}, {"d", "d_grid"}}},
      {"qprobe", {{"d", "p", "trials"}, {}}},
  };
  return s;
}

bool is_uint(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

long get_long(const json& j, const std::string& key) { return j.at(key).get<long>(); }
double get_double(const json& j, const std::string& key) { return j.at(key).get<double>(); }

std::vector<long> dim_grid(const json& j) {
  std::vector<long> grid;
  if (j.contains("d_grid"))
    for (const auto& v : j.at("d_grid")) grid.push_back(v.get<long>());
  else if (j.contains("d"))
    grid.push_back(j.at("d").get<long>());
  return grid;
}

void check_range_long(std::vector<ValidationIssue>& issues, const json& j,
                      const std::string& key, long lo, long hi,
                      const std::string& why) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer() && !j.at(key).is_number_unsigned()) {
    issues.push_back({key, key + " must be an integer"});
    return;
  }
  const long v = j.at(key).get<long>();
  if (v < lo || v > hi) issues.push_back({key, why});
}

void check_range_double(std::vector<ValidationIssue>& issues, const json& j,
                        const std::string& key, double lo, double hi,
                        bool lo_open, bool hi_open, const std::string& why) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) {
    issues.push_back({key, key + " must be a number"});
    return;
  }
  const double v = j.at(key).get<double>();
  const bool bad = (lo_open ? v <= lo : v < lo) || (hi_open ? v >= hi : v > hi);
  if (bad) issues.push_back({key, why});
}

}  // namespace

std::vector<ValidationIssue> validate_config(const std::string& text) {
  std::vector<ValidationIssue> issues;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    issues.push_back({"experiment", "experiment missing"});
    return issues;
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    issues.push_back({"config", "config is not a JSON object"});
    return issues;
  }
  if (!j.contains("experiment")) {
    issues.push_back({"experiment", "experiment missing"});
    return issues;
  }
  if (!j.at("experiment").is_string()) {
    issues.push_back({"experiment", "experiment must be a string"});
    return issues;
  }
  const std::string exp = j.at("experiment").get<std::string>();
  auto it = schemas().find(exp);
  if (it == schemas().end()) {
    issues.push_back({"experiment", "unknown experiment '" + exp + "'"});
    return issues;
  }
  if (!j.contains("seed"))
    issues.push_back({"seed", "seed missing"});
  else if (!is_uint(j.at("seed")))
    issues.push_back({"seed", "seed must be a nonnegative integer"});
  if (j.contains("output_path") && !j.at("output_path").is_string())
    issues.push_back({"output_path", "output_path must be a string"});

  const Schema& sch = it->second;
  for (const std::string& key : sch.required)
    if (!j.contains(key)) issues.push_back({key, key + " missing"});
  static const std::set<std::string> common = {"experiment", "seed", "output_path"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!common.count(key) && !sch.required.count(key) && !sch.optional.count(key))
      issues.push_back({key, "unknown parameter '" + key + "' for " + exp});
  }

  check_range_long(issues, j, "n", 1, 1000000, "n must be >= 1");
  check_range_long(issues, j, "d", 2, 100000000, "d must be >= 2");
  check_range_long(issues, j, "trials", 1, 2000000000L, "trials must be >= 1");
  check_range_double(issues, j, "p", 0.0, 1.0, false, false, "p must lie in [0, 1]");
  if (j.contains("d_grid")) {
    if (!j.at("d_grid").is_array() || j.at("d_grid").empty())
      issues.push_back({"d_grid", "d_grid must be a nonempty array"});
    else
      for (const auto& v : j.at("d_grid"))
        if (!v.is_number_integer() && !v.is_number_unsigned())
          issues.push_back({"d_grid", "d_grid entries must be integers"});
        else if (v.get<long>() < 2)
          issues.push_back({"d_grid", "d_grid entries must be >= 2"});
  }

  if (exp == "sample") {
    if (j.contains("sampler")) {
      const std::string s = j.at("sampler").is_string() ? j.at("sampler").get<std::string>() : "";
      if (s != "er" && s != "geo")
        issues.push_back({"sampler", "sampler must be 'er' or 'geo'"});
      if (s == "geo") {
        if (!j.contains("d")) issues.push_back({"d", "d missing (geo sampler)"});
        check_range_double(issues, j, "p", 0.0, 1.0, true, true,
                           "p must lie in (0, 1) for the geo sampler");
      }
    }
  } else if (exp == "power") {
    check_range_long(issues, j, "n", 3, 1000000, "n must be >= 3");
    check_range_double(issues, j, "z", 0.0, 1e9, true, false, "z must be > 0");
    check_range_long(issues, j, "trials", 100, 2000000000L, "trials must be >= 100");
  } else if (exp == "tv_curve") {
    check_range_long(issues, j, "n", 1, 5, "n <= 5 required");
    if (!j.contains("d") && !j.contains("d_grid"))
      issues.push_back({"d", "d or d_grid required"});
    check_range_double(issues, j, "p", 0.0, 1.0, true, true, "p must lie in (0, 1)");
  } else if (exp == "coupling") {
    check_range_double(issues, j, "p", 0.0, 0.5, true, false,
                       "coupling requires 0 < p <= 1/2");
    check_range_double(issues, j, "eps", 0.0, 1e9, true, false, "eps must be > 0");
    check_range_double(issues, j, "c2", 0.0, 1e9, true, false, "c2 must be > 0");
    check_range_long(issues, j, "mc_budget", 10, 2000000000L, "mc_budget must be >= 10");
    check_range_long(issues, j, "min_accept", 1, 1000000000L, "min_accept must be >= 1");
  } else if (exp == "martingale") {
    check_range_long(issues, j, "k", 1, 100000, "k must be >= 1");
    if (j.contains("k") && j.contains("j") && is_uint(j.at("j")) && is_uint(j.at("k")) &&
        (get_long(j, "j") < 0 || get_long(j, "j") > get_long(j, "k")))
      issues.push_back({"j", "need 0 <= j <= k"});
    if (!j.contains("d") && !j.contains("d_grid"))
      issues.push_back({"d", "d or d_grid required"});
    check_range_double(issues, j, "p", 0.0, 1.0, true, true, "p must lie in (0, 1)");
    check_range_long(issues, j, "trials", 2, 1000000, "trials must be >= 2");
    check_range_long(issues, j, "mc_samples", 2, 2000000000L, "mc_samples must be >= 2");
  } else if (exp == "diffusion") {
    check_range_double(issues, j, "p", 0.0, 1.0, true, true, "p must lie in (0, 1)");
    check_range_long(issues, j, "particles", 100, 100000000, "particles must be >= 100");
    check_range_long(issues, j, "steps", 1, 10000, "steps must be >= 1");
    check_range_long(issues, j, "z_samples", 100, 2000000000L, "z_samples must be >= 100");
    if (j.contains("family")) {
      const std::string f = j.at("family").is_string() ? j.at("family").get<std::string>() : "";
      if (f != "uniform" && f != "point")
        issues.push_back({"family", "family must be 'uniform' or 'point'"});
    }
  } else if (exp == "anticap") {
    check_range_long(issues, j, "m", 0, 1000000, "m must be >= 0");
    if (!j.contains("d") && !j.contains("d_grid"))
      issues.push_back({"d", "d or d_grid required"});
    check_range_double(issues, j, "p", 0.0, 1.0, true, true, "p must lie in (0, 1)");
    check_range_long(issues, j, "trials", 2, 1000000, "trials must be >= 2");
    check_range_long(issues, j, "mc_samples", 2, 2000000000L, "mc_samples must be >= 2");
  } else if (exp == "qprobe") {
    check_range_double(issues, j, "p", 0.0, 1.0, true, true, "p must lie in (0, 1)");
    check_range_long(issues, j, "trials", 10000, 2000000000L, "trials must be >= 1e4");
  }
  return issues;
}

ExperimentConfig parse_config(const std::string& text) {
  auto issues = validate_config(text);
  if (!issues.empty()) {
    std::string msg = "invalid config:";
    for (const auto& i : issues) msg += " [" + i.parameter + "] " + i.message + ";";
    throw std::runtime_error(msg);
  }
  ExperimentConfig cfg;
  cfg.raw = json::parse(text);
  cfg.experiment = cfg.raw.at("experiment").get<std::string>();
  cfg.seed = cfg.raw.at("seed").get<std::uint64_t>();
  if (cfg.raw.contains("output_path"))
    cfg.output_path = cfg.raw.at("output_path").get<std::string>();
  return cfg;
}

namespace {

// Fan-out helper: runs one closure per trial on the pool, collecting
// results by index and rethrowing the first failure in index order.
template <typename T, typename F>
std::vector<T> run_trials(long trials, int threads, F&& fn) {
  std::vector<T> results(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  parallel_for_indexed(trials, threads, [&](long i) {
    try {
      results[std::size_t(i)] = fn(i);
    } catch (...) {
      errors[std::size_t(i)] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

RunArtifacts run_sample(const ExperimentConfig& cfg, int threads) {
  const json& j = cfg.raw;
  const std::string sampler = j.at("sampler").get<std::string>();
  const int n = int(get_long(j, "n"));
  const double p = get_double(j, "p");
  const long trials = get_long(j, "trials");
  const int d = sampler == "geo" ? int(get_long(j, "d")) : 0;
  auto graphs = run_trials<GraphSample>(trials, threads, [&](long i) {
    RngStream r(cfg.seed, substream_index(1, std::uint64_t(i)));
    return sampler == "geo" ? sample_geo(n, p, d, r).first : sample_er(n, p, r);
  });
  std::ostringstream csv, extra;
  csv << "trial,edges\n";
  for (long i = 0; i < trials; ++i) {
    csv << i << "," << graphs[std::size_t(i)].edge_count() << "\n";
    extra << graphs[std::size_t(i)].serialize();
  }
  RunArtifacts out;
  out.csv = csv.str();
  out.extra = extra.str();
  out.extra_name = cfg.experiment + "-" + std::to_string(cfg.seed) + ".graphs.txt";
  out.summary_line = "sample: " + std::to_string(trials) + " graphs (" + sampler + ")";
  return out;
}

RunArtifacts run_power(const ExperimentConfig& cfg, int threads) {
  (void)threads;  // detection_power parallelizes internally by substream
  const json& j = cfg.raw;
  const int n = int(get_long(j, "n"));
  const double p = get_double(j, "p");
  const int d = int(get_long(j, "d"));
  const double z = get_double(j, "z");
  const long trials = get_long(j, "trials");
  RngStream root(cfg.seed, 1);
  const PowerEstimate est = detection_power(n, p, d, trials, z, root);
  std::ostringstream csv;
  csv << "n,p,d,z,trials,power,fp,power_stderr,fp_stderr\n";
  csv << n << "," << fmt(p) << "," << d << "," << fmt(z) << "," << trials << ","
      << fmt(est.power) << "," << fmt(est.false_positive) << ","
      << fmt(est.power_stderr) << "," << fmt(est.fp_stderr) << "\n";
  RunArtifacts out;
  out.csv = csv.str();
  out.summary_line = "power=" + fmt(est.power) + " fp=" + fmt(est.false_positive);
  return out;
}

RunArtifacts run_tv_curve(const ExperimentConfig& cfg, int threads) {
  (void)threads;
  const json& j = cfg.raw;
  const int n = int(get_long(j, "n"));
  const double p = get_double(j, "p");
  const long trials = get_long(j, "trials");
  const std::vector<long> grid = dim_grid(j);
  RngStream root(cfg.seed, 1);
  const auto pts = tv_curve(n, p, grid, trials, root);
  std::ostringstream csv;
  csv << "n,p,d,trials,tv,bound,kl\n";
  for (const auto& pt : pts)
    csv << n << "," << fmt(p) << "," << pt.d << "," << trials << "," << fmt(pt.tv)
        << "," << fmt(pt.bound) << "," << fmt(pt.kl) << "\n";
  RunArtifacts out;
  out.csv = csv.str();
  out.summary_line = "tv_curve over " + std::to_string(grid.size()) + " dimensions";
  return out;
}

RunArtifacts run_coupling(const ExperimentConfig& cfg, int threads) {
  const json& j = cfg.raw;
  const int n = int(get_long(j, "n"));
  const double p = get_double(j, "p");
  const int d = int(get_long(j, "d"));
  const long trials = get_long(j, "trials");
  const long mc_budget = get_long(j, "mc_budget");
  const long min_accept = j.contains("min_accept") ? get_long(j, "min_accept") : 10;
  const double c2 = j.contains("c2") ? get_double(j, "c2") : kDefaultCouplingC2;
  const double eps =
      j.contains("eps") ? get_double(j, "eps") : default_coupling_eps(n, p, d, c2);
  auto triples = run_trials<CoupledTriple>(trials, threads, [&](long i) {
    RngStream r(cfg.seed, substream_index(1, std::uint64_t(i)));
    return coupled_triple_sample(n, p, d, eps, mc_budget, r, min_accept);
  });
  const long pairs = long(n) * (n - 1) / 2;
  std::vector<long> minus_freq(std::size_t(pairs), 0), plus_freq(std::size_t(pairs), 0);
  long sandwich = 0, edges_g = 0;
  std::ostringstream csv;
  csv << "trial,sandwich_ok,edges_minus,edges,edges_plus,mc_budget_used\n";
  for (long i = 0; i < trials; ++i) {
    const CoupledTriple& t = triples[std::size_t(i)];
    sandwich += t.sandwich_ok ? 1 : 0;
    edges_g += t.g.edge_count();
    for (long k = 0; k < pairs; ++k) {
      minus_freq[std::size_t(k)] += t.g_minus.edge_by_index(k) ? 1 : 0;
      plus_freq[std::size_t(k)] += t.g_plus.edge_by_index(k) ? 1 : 0;
    }
    csv << i << "," << (t.sandwich_ok ? 1 : 0) << "," << t.g_minus.edge_count()
        << "," << t.g.edge_count() << "," << t.g_plus.edge_count() << ","
        << t.mc_budget_used << "\n";
  }
  json summary;
  summary["eps"] = eps;
  summary["sandwich_rate"] = double(sandwich) / double(trials);
  summary["sandwich_rate_stderr"] = std::sqrt(std::max(
      0.0, (double(sandwich) / trials) * (1.0 - double(sandwich) / trials) / trials));
  summary["edge_density"] = double(edges_g) / double(trials * pairs);
  summary["edge_density_stderr"] =
      std::sqrt(summary["edge_density"].get<double>() *
                (1.0 - summary["edge_density"].get<double>()) / double(trials * pairs));
  json mf = json::array(), pf = json::array();
  for (long k = 0; k < pairs; ++k) {
    mf.push_back(double(minus_freq[std::size_t(k)]) / double(trials));
    pf.push_back(double(plus_freq[std::size_t(k)]) / double(trials));
  }
  summary["minus_pair_frequency"] = mf;
  summary["plus_pair_frequency"] = pf;
  summary["target_minus"] = (1.0 - eps) * p;
  summary["target_plus"] = std::min(1.0, (1.0 + eps) * p);
  RunArtifacts out;
  out.csv = csv.str();
  out.json = summary.dump(2) + "\n";
  out.summary_line = "coupling sandwich_rate=" + fmt(summary["sandwich_rate"].get<double>());
  return out;
}

RunArtifacts run_martingale(const ExperimentConfig& cfg, int threads) {
  const json& j = cfg.raw;
  const int k = int(get_long(j, "k"));
  const int jj = int(get_long(j, "j"));
  const double p = get_double(j, "p");
  const long traces = get_long(j, "trials");
  const long paths = get_long(j, "mc_samples");
  const std::vector<long> grid = dim_grid(j);
  std::ostringstream csv;
  csv << "d,k,j,p,traces,paths,mean_Rk,mean_Rk_stderr,std_Rk,std_Rk_stderr\n";
  std::vector<double> dims, stds;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const int d = int(grid[gi]);
    auto finals = run_trials<double>(traces, threads, [&](long i) {
      RngStream r(cfg.seed, substream_index(gi + 1, std::uint64_t(i)));
      const MartingaleTrace t = martingale_ratio_trace(k, jj, d, p, paths, r);
      return t.ratios.back();
    });
    double sum = 0, sumsq = 0;
    for (double v : finals) {
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / double(traces);
    const double var =
        std::max(0.0, (sumsq - traces * mean * mean) / double(traces - 1));
    const double sd = std::sqrt(var);
    csv << d << "," << k << "," << jj << "," << fmt(p) << "," << traces << ","
        << paths << "," << fmt(mean) << "," << fmt(sd / std::sqrt(double(traces)))
        << "," << fmt(sd) << "," << fmt(sd / std::sqrt(2.0 * double(traces - 1)))
        << "\n";
    dims.push_back(double(d));
    stds.push_back(sd);
  }
  RunArtifacts out;
  out.csv = csv.str();
  bool positive = grid.size() >= 2;
  for (double s : stds)
    if (!(s > 0.0)) positive = false;
  if (positive) {
    json summary;
    summary["std_Rk_loglog_slope_in_d"] = log_log_slope(dims, stds);
    // Jackknife over grid points for a slope confidence half-width.
    if (grid.size() >= 3) {
      std::vector<double> loo;
      for (std::size_t skip = 0; skip < grid.size(); ++skip) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < grid.size(); ++i)
          if (i != skip) {
            xs.push_back(dims[i]);
            ys.push_back(stds[i]);
          }
        loo.push_back(log_log_slope(xs, ys));
      }
      double mn = 0;
      for (double v : loo) mn += v;
      mn /= double(loo.size());
      double var = 0;
      for (double v : loo) var += (v - mn) * (v - mn);
      summary["slope_jackknife_halfwidth"] =
          std::sqrt(var * double(loo.size() - 1) / double(loo.size()));
    }
    out.json = summary.dump(2) + "\n";
  }
  out.summary_line = "martingale traces over " + std::to_string(grid.size()) + " dimensions";
  return out;
}

RunArtifacts run_diffusion(const ExperimentConfig& cfg, int threads) {
  (void)threads;
  const json& j = cfg.raw;
  const int d = int(get_long(j, "d"));
  const double p = get_double(j, "p");
  const int particles = int(get_long(j, "particles"));
  const int steps = int(get_long(j, "steps"));
  const long z_samples = get_long(j, "z_samples");
  const std::string family = j.contains("family") ? j.at("family").get<std::string>() : "point";
  const double tau = tau_of_p(d, p);
  RngStream init_rng(cfg.seed, 1);
  ParticleDistribution nu;
  if (family == "uniform") {
    nu = ParticleDistribution::uniform(particles, d, init_rng);
  } else {
    Vec v0 = Vec::Zero(d);
    v0[0] = 1.0;
    nu = ParticleDistribution::point_mass(v0, particles);
  }
  const double noise_floor = 5.0 / std::sqrt(double(particles));
  std::ostringstream csv;
  csv << "step,discrepancy,noise_floor,weight_sum\n";
  for (int s = 0; s <= steps; ++s) {
    RngStream zr(cfg.seed, substream_index(2, std::uint64_t(s)));
    const double disc = cap_discrepancy(nu, tau, z_samples, zr);
    csv << s << "," << fmt(disc) << "," << fmt(noise_floor) << ","
        << fmt(nu.weights.sum()) << "\n";
    if (s < steps) {
      RngStream pr(cfg.seed, substream_index(3, std::uint64_t(s)));
      nu = cap_convolution_push(nu, tau, pr);
    }
  }
  RunArtifacts out;
  out.csv = csv.str();
  out.summary_line = "diffusion " + family + " over " + std::to_string(steps) + " pushes";
  return out;
}

RunArtifacts run_anticap(const ExperimentConfig& cfg, int threads) {
  (void)threads;
  const json& j = cfg.raw;
  const int m = int(get_long(j, "m"));
  const double p = get_double(j, "p");
  const long trials = get_long(j, "trials");
  const long paths = get_long(j, "mc_samples");
  const std::vector<long> grid = dim_grid(j);
  std::ostringstream csv;
  csv << "d,m,p,trials,paths,mean,mean_stderr,std,q05,q50,q95\n";
  std::vector<double> dims, stds;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const int d = int(grid[gi]);
    RngStream root(cfg.seed, substream_index(gi + 1, 0));
    const AnticapSummary s = anticap_concentration_experiment(m, d, p, trials, paths, root);
    csv << d << "," << m << "," << fmt(p) << "," << trials << "," << paths << ","
        << fmt(s.mean) << "," << fmt(s.mean_stderr) << "," << fmt(s.stddev) << ","
        << fmt(s.q05) << "," << fmt(s.q50) << "," << fmt(s.q95) << "\n";
    dims.push_back(double(d));
    stds.push_back(s.stddev);
  }
  RunArtifacts out;
  out.csv = csv.str();
  bool positive = grid.size() >= 2;
  for (double s : stds)
    if (!(s > 0.0)) positive = false;
  if (positive) {
    json summary;
    summary["std_loglog_slope_in_d"] = log_log_slope(dims, stds);
    out.json = summary.dump(2) + "\n";
  }
  out.summary_line = "anticap summary over " + std::to_string(grid.size()) + " dimensions";
  return out;
}

RunArtifacts run_qprobe(const ExperimentConfig& cfg, int threads) {
  (void)threads;
  const json& j = cfg.raw;
  const int d = int(get_long(j, "d"));
  const double p = get_double(j, "p");
  const long trials = get_long(j, "trials");
  RngStream root(cfg.seed, 1);
  const auto [q, se] = conditional_triangle_prob(d, p, trials, root);
  std::ostringstream csv;
  csv << "d,p,trials,q,q_stderr,p_squared\n";
  csv << d << "," << fmt(p) << "," << trials << "," << fmt(q) << "," << fmt(se)
      << "," << fmt(p * p) << "\n";
  RunArtifacts out;
  out.csv = csv.str();
  out.summary_line = "qprobe q=" + fmt(q) + " vs p^2=" + fmt(p * p);
  return out;
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& cfg, int threads) {
  RunArtifacts out;
  if (cfg.experiment == "sample")
    out = run_sample(cfg, threads);
  else if (cfg.experiment == "power")
    out = run_power(cfg, threads);
  else if (cfg.experiment == "tv_curve")
    out = run_tv_curve(cfg, threads);
  else if (cfg.experiment == "coupling")
    out = run_coupling(cfg, threads);
  else if (cfg.experiment == "martingale")
    out = run_martingale(cfg, threads);
  else if (cfg.experiment == "diffusion")
    out = run_diffusion(cfg, threads);
  else if (cfg.experiment == "anticap")
    out = run_anticap(cfg, threads);
  else if (cfg.experiment == "qprobe")
    out = run_qprobe(cfg, threads);
  else
    throw std::runtime_error("unknown experiment " + cfg.experiment);
  const std::string base = cfg.experiment + "-" + std::to_string(cfg.seed);
  out.csv_name = base + ".csv";
  if (!out.json.empty()) out.json_name = base + ".json";
  return out;
}

std::vector<std::string> write_artifacts(const RunArtifacts& a, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> paths;
  auto write = [&](const std::string& name, const std::string& content) {
    if (name.empty()) return;
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    paths.push_back(path);
  };
  write(a.csv_name, a.csv);
  write(a.json_name, a.json);
  write(a.extra_name, a.extra);
  return paths;
}

}  // namespace rgg
