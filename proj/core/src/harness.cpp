// Copyright 2026 The ldpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpgraph/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ldpgraph/errors.hpp"

namespace ldpgraph {

const char* algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kLocalLapKstar: return "local-lap-kstar";
    case AlgorithmId::kCentralLapKstar: return "central-lap-kstar";
    case AlgorithmId::kLocalRrTriangle: return "local-rr-tri";
    case AlgorithmId::kLocalRrTriangleRaw: return "local-rr-tri-noemp";
    case AlgorithmId::kLocalTwoRoundsTriangle: return "local-2rounds-tri";
    case AlgorithmId::kCentralLapTriangle: return "central-lap-tri";
    case AlgorithmId::kClustering: return "clustering";
  }
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
  for (AlgorithmId id : {
           AlgorithmId::kLocalLapKstar,
           AlgorithmId::kCentralLapKstar,
           AlgorithmId::kLocalRrTriangle,
           AlgorithmId::kLocalRrTriangleRaw,
           AlgorithmId::kLocalTwoRoundsTriangle,
           AlgorithmId::kCentralLapTriangle,
           AlgorithmId::kClustering,
       }) {
    if (name == algorithm_name(id)) return id;
  }
  return std::nullopt;
}

bool algorithm_uses_k(AlgorithmId id) {
  return id == AlgorithmId::kLocalLapKstar ||
         id == AlgorithmId::kCentralLapKstar ||
         id == AlgorithmId::kClustering;
}

bool algorithm_uses_degree_cap(AlgorithmId id) {
  return id != AlgorithmId::kLocalRrTriangle &&
         id != AlgorithmId::kLocalRrTriangleRaw;
}

bool algorithm_is_two_round(AlgorithmId id) {
  return id == AlgorithmId::kLocalTwoRoundsTriangle ||
         id == AlgorithmId::kClustering;
}

const char* degree_cap_policy_name(DegreeCapPolicy::Kind kind) {
  switch (kind) {
    case DegreeCapPolicy::Kind::kExplicit: return "explicit";
    case DegreeCapPolicy::Kind::kTrueMax: return "true";
    case DegreeCapPolicy::Kind::kPrivate: return "private";
  }
  return "?";
}

std::array<double, 3> ExperimentConfig::default_split(
    AlgorithmId algorithm, DegreeCapPolicy::Kind kind) {
  const double f0 =
      kind == DegreeCapPolicy::Kind::kPrivate ? 0.1 : 0.0;
  const double rest = 1.0 - f0;
  if (algorithm_is_two_round(algorithm)) {
    return {f0, rest / 2.0, rest / 2.0};
  }
  return {f0, rest, 0.0};
}

void ExperimentConfig::validate() const {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (trials < 1) throw ConfigError("at least one trial is required");

  for (double f : split) {
    if (!(f >= 0.0)) throw ConfigError("split fractions must be non-negative");
  }
  if (std::abs(split[0] + split[1] + split[2] - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
  if (!(split[1] > 0.0)) {
    throw ConfigError("the first estimation round needs a positive share");
  }

  const bool two_round = algorithm_is_two_round(algorithm);
  if (two_round && !(split[2] > 0.0)) {
    throw ConfigError("two-round algorithms need a positive round-two share");
  }
  if (!two_round && split[2] != 0.0) {
    throw ConfigError("single-round algorithms cannot spend a round-two share");
  }

  const bool is_private =
      degree_cap.kind == DegreeCapPolicy::Kind::kPrivate;
  if (is_private && !(split[0] > 0.0)) {
    throw ConfigError("the private degree-cap policy needs a positive share");
  }
  if (!is_private && split[0] != 0.0) {
    throw ConfigError(
        "only the private degree-cap policy can spend a degree share");
  }
  if (!algorithm_uses_degree_cap(algorithm) && is_private) {
    throw ConfigError("this algorithm takes no degree cap");
  }
  if (degree_cap.kind == DegreeCapPolicy::Kind::kExplicit &&
      degree_cap.value < 0) {
    throw ConfigError("explicit degree cap must be non-negative");
  }

  if (algorithm_uses_k(algorithm)) {
    if (k < 1) throw ConfigError("star size must be at least 1");
    if (algorithm == AlgorithmId::kClustering && k != 2) {
      throw ConfigError("clustering always uses 2-stars");
    }
  }

  if (const auto* er = std::get_if<ErSpec>(&source)) {
    if (!(er->alpha >= 0.0 && er->alpha <= 1.0)) {
      throw ConfigError("edge probability must be in [0, 1]");
    }
  }
}

double l2_loss(double estimate, double truth) {
  const double diff = estimate - truth;
  return diff * diff;
}

double relative_error(double estimate, double truth, std::size_t n) {
  const double floor = 0.001 * static_cast<double>(n);
  return std::abs(estimate - truth) / std::max(truth, floor);
}

namespace {

double exact_value(const Graph& g, AlgorithmId algorithm, int k) {
  switch (algorithm) {
    case AlgorithmId::kLocalLapKstar:
    case AlgorithmId::kCentralLapKstar:
      return static_cast<double>(count_kstars(g, k));
    case AlgorithmId::kLocalRrTriangle:
    case AlgorithmId::kLocalRrTriangleRaw:
    case AlgorithmId::kLocalTwoRoundsTriangle:
    case AlgorithmId::kCentralLapTriangle:
      return static_cast<double>(count_triangles(g));
    case AlgorithmId::kClustering:
      return clustering_coefficient(
          static_cast<double>(count_triangles(g)),
          static_cast<double>(count_kstars(g, 2)));
  }
  return 0.0;
}

struct ResolvedCap {
  std::int64_t d_tilde = 0;
  PrivacyBudget budget;
};

ResolvedCap resolve_cap(const ExperimentConfig& config, const Graph& g,
                        std::int64_t true_max, const TrialRng& rng,
                        const NoiseModel& noise) {
  switch (config.degree_cap.kind) {
    case DegreeCapPolicy::Kind::kExplicit:
      return {config.degree_cap.value, {}};
    case DegreeCapPolicy::Kind::kTrueMax:
      return {true_max, {}};
    case DegreeCapPolicy::Kind::kPrivate: {
      const GraphSource users(g);
      const NoisyDegreeEstimate est =
          noisy_max_degree(users, config.split[0] * config.eps, rng, noise);
      return {est.d_tilde, est.budget_spent};
    }
  }
  return {};
}

TrialReport run_one_trial(const ExperimentConfig& config, const Graph& g,
                          std::int64_t true_max, double truth,
                          std::size_t trial, const NoiseModel& noise) {
  const TrialRng rng = RandomSource(config.master_seed).trial(trial);
  const double eps1 = config.split[1] * config.eps;
  const double eps2 = config.split[2] * config.eps;
  const GraphSource users(g);

  const auto start = std::chrono::steady_clock::now();
  EstimatorOutput out;
  switch (config.algorithm) {
    case AlgorithmId::kLocalLapKstar: {
      const ResolvedCap cap = resolve_cap(config, g, true_max, rng, noise);
      out = local_lap_kstar(users, eps1, cap.d_tilde, config.k, rng, noise);
      out.budget_spent = out.budget_spent + cap.budget;
      break;
    }
    case AlgorithmId::kCentralLapKstar: {
      const ResolvedCap cap = resolve_cap(config, g, true_max, rng, noise);
      out = central_lap_kstar(g, eps1, cap.d_tilde, config.k, rng, noise);
      out.budget_spent = out.budget_spent + cap.budget;
      break;
    }
    case AlgorithmId::kLocalRrTriangle:
    case AlgorithmId::kLocalRrTriangleRaw: {
      const bool empirical =
          config.algorithm == AlgorithmId::kLocalRrTriangle;
      out = local_rr_triangle(users, eps1, empirical, rng, noise);
      break;
    }
    case AlgorithmId::kLocalTwoRoundsTriangle: {
      const ResolvedCap cap = resolve_cap(config, g, true_max, rng, noise);
      TwoRoundsOptions options;
      options.tight_round2_noise = config.tight_round2_noise;
      out = local_two_rounds_triangle(users, eps1, eps2, cap.d_tilde, rng,
                                      options, noise);
      out.budget_spent = out.budget_spent + cap.budget;
      break;
    }
    case AlgorithmId::kCentralLapTriangle: {
      const ResolvedCap cap = resolve_cap(config, g, true_max, rng, noise);
      out = central_lap_triangle(g, eps1, cap.d_tilde, rng, noise);
      out.budget_spent = out.budget_spent + cap.budget;
      break;
    }
    case AlgorithmId::kClustering: {
      // Two full sub-protocols, each on its own stream lane and each backed
      // by the whole eps; the combined spend is reported as their sum.
      const TrialRng star_rng = rng.with_lane(1);
      const ResolvedCap tri_cap = resolve_cap(config, g, true_max, rng, noise);
      TwoRoundsOptions options;
      options.tight_round2_noise = config.tight_round2_noise;
      EstimatorOutput tri = local_two_rounds_triangle(
          users, eps1, eps2, tri_cap.d_tilde, rng, options, noise);
      tri.budget_spent = tri.budget_spent + tri_cap.budget;

      const ResolvedCap star_cap =
          resolve_cap(config, g, true_max, star_rng, noise);
      EstimatorOutput star = local_lap_kstar(
          users, (config.split[1] + config.split[2]) * config.eps,
          star_cap.d_tilde, 2, star_rng, noise);
      star.budget_spent = star.budget_spent + star_cap.budget;

      out = estimate_clustering(tri, star);
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialReport report;
  report.trial = trial;
  report.truth = truth;
  report.estimate = out.estimate;
  report.l2 = l2_loss(out.estimate, truth);
  report.relative_error = relative_error(out.estimate, truth, g.node_count());
  report.seconds = std::chrono::duration<double>(stop - start).count();
  report.budget_spent = out.budget_spent;
  report.d_tilde_used = algorithm_uses_degree_cap(config.algorithm)
                            ? out.d_tilde
                            : -1;
  report.n = g.node_count();
  return report;
}

std::uint64_t sample_seed(const ExperimentConfig& config, std::size_t trial) {
  const std::uint64_t t = config.fix_node_sample ? 0 : trial;
  return RandomSource(config.master_seed)
      .trial(t)
      .stream(Role::kNodeSample, 1)
      .next_u64();
}

}  // namespace

RunResult run_trials(const ExperimentConfig& config, const NoiseModel& noise) {
  config.validate();

  Graph population;
  if (const auto* path = std::get_if<std::filesystem::path>(&config.source)) {
    population = load_edge_list(*path);
  } else {
    const auto& er = std::get<ErSpec>(config.source);
    population = generate_er(er.n, er.alpha, config.master_seed);
  }

  const std::size_t pop_n = population.node_count();
  const std::size_t sample_n = config.sample_n.value_or(pop_n);
  if (sample_n > pop_n) {
    throw ConfigError("sample size exceeds the population");
  }
  const bool resample = sample_n < pop_n && !config.fix_node_sample;

  // With a fixed trial graph the exact statistic and true max degree are
  // shared across trials.
  Graph fixed_graph;
  if (!resample) {
    fixed_graph = sample_n < pop_n
                      ? sample_induced(population, sample_n,
                                       sample_seed(config, 0))
                      : std::move(population);
  }
  std::optional<double> fixed_truth;
  std::int64_t fixed_max = 0;
  if (!resample) {
    fixed_truth = exact_value(fixed_graph, config.algorithm, config.k);
    fixed_max = max_degree(fixed_graph);
  }

  RunResult result;
  result.config = config;
  result.trials.resize(config.trials);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= config.trials) return;
      try {
        if (resample) {
          const Graph g =
              sample_induced(population, sample_n, sample_seed(config, t));
          const double truth = exact_value(g, config.algorithm, config.k);
          result.trials[t] = run_one_trial(config, g, max_degree(g), truth,
                                           t, noise);
        } else {
          result.trials[t] = run_one_trial(config, fixed_graph, fixed_max,
                                           *fixed_truth, t, noise);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), config.trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunSummary& s = result.summary;
  s.trials = config.trials;
  for (const TrialReport& r : result.trials) {
    s.mean_l2 += r.l2;
    s.mean_relative_error += r.relative_error;
  }
  s.mean_l2 /= static_cast<double>(config.trials);
  s.mean_relative_error /= static_cast<double>(config.trials);
  if (config.trials > 1) {
    double ss = 0.0;
    for (const TrialReport& r : result.trials) {
      const double d = r.l2 - s.mean_l2;
      ss += d * d;
    }
    s.stddev_l2 = std::sqrt(ss / static_cast<double>(config.trials - 1));
  }
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void write_csv(const RunResult& result, std::ostream& out) {
  const ExperimentConfig& c = result.config;
  out << "algorithm,n,k,eps0,eps1,eps2,eps_edge_total,eps_entire_total,"
         "d_tilde_policy,d_tilde_used,trial,truth,estimate,l2,"
         "relative_error,seconds\n";
  const bool uses_k = algorithm_uses_k(c.algorithm);
  const bool uses_cap = algorithm_uses_degree_cap(c.algorithm);
  for (const TrialReport& r : result.trials) {
    const PrivacyBudget& b = r.budget_spent;
    out << algorithm_name(c.algorithm) << ',' << r.n << ',';
    if (uses_k) out << c.k;
    out << ',' << format_double(b.eps0) << ',' << format_double(b.eps1) << ','
        << format_double(b.eps2) << ',' << format_double(b.edge_ldp_total())
        << ',' << format_double(b.entire_edge_ldp_total()) << ','
        << (uses_cap ? degree_cap_policy_name(c.degree_cap.kind) : "none")
        << ',';
    if (r.d_tilde_used >= 0) out << r.d_tilde_used;
    out << ',' << r.trial << ',' << format_double(r.truth) << ','
        << format_double(r.estimate) << ',' << format_double(r.l2) << ','
        << format_double(r.relative_error) << ",0\n";
  }
}

void write_summary_json(const RunResult& result, std::ostream& out) {
  const ExperimentConfig& c = result.config;
  nlohmann::ordered_json config;
  config["algorithm"] = algorithm_name(c.algorithm);
  config["eps"] = c.eps;
  config["split"] = c.split;
  if (algorithm_uses_k(c.algorithm)) config["k"] = c.k;
  if (algorithm_uses_degree_cap(c.algorithm)) {
    config["d_tilde_policy"] = degree_cap_policy_name(c.degree_cap.kind);
    if (c.degree_cap.kind == DegreeCapPolicy::Kind::kExplicit) {
      config["d_tilde"] = c.degree_cap.value;
    }
  }
  config["trials"] = c.trials;
  config["master_seed"] = c.master_seed;
  if (const auto* path = std::get_if<std::filesystem::path>(&c.source)) {
    config["input"] = path->string();
  } else {
    const auto& er = std::get<ErSpec>(c.source);
    config["er"] = {{"n", er.n}, {"alpha", er.alpha}};
  }
  if (c.sample_n) config["sample_n"] = *c.sample_n;
  config["fix_node_sample"] = c.fix_node_sample;
  config["tight_round2_noise"] = c.tight_round2_noise;

  nlohmann::ordered_json doc;
  doc["config"] = std::move(config);
  doc["mean_l2"] = result.summary.mean_l2;
  doc["mean_relative_error"] = result.summary.mean_relative_error;
  doc["stddev_l2"] = result.summary.stddev_l2;
  doc["trials"] = result.summary.trials;
  out << doc.dump(2) << '\n';
}

double predict_bound(const BoundQuery& q) {
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d_tilde);
  switch (q.algorithm) {
    case AlgorithmId::kLocalLapKstar:
      return n * predict_bound({AlgorithmId::kCentralLapKstar, q.n, q.d_tilde,
                                q.k, q.eps1, q.eps2, q.alpha});
    case AlgorithmId::kCentralLapKstar: {
      if (q.k < 1) throw std::invalid_argument("star size must be at least 1");
      return std::pow(d, 2 * q.k - 2) / (q.eps1 * q.eps1);
    }
    case AlgorithmId::kLocalRrTriangle:
    case AlgorithmId::kLocalRrTriangleRaw: {
      if (!q.alpha) {
        throw std::invalid_argument("edge density is required for this bound");
      }
      const double p = rr_flip_prob(q.eps1);
      const double beta = *q.alpha * (1.0 - p) + (1.0 - *q.alpha) * p;
      const double em1 = std::exp(q.eps1) - 1.0;
      return std::exp(6.0 * q.eps1) / std::pow(em1, 6) * beta * n * n * n * n;
    }
    case AlgorithmId::kLocalTwoRoundsTriangle: {
      const double e = std::exp(q.eps1);
      const double em1 = e - 1.0;
      return e / (em1 * em1) *
             (d * d * d * n + e / (q.eps2 * q.eps2) * d * d * n);
    }
    case AlgorithmId::kCentralLapTriangle:
      return d * d / (q.eps1 * q.eps1);
    case AlgorithmId::kClustering:
      throw std::invalid_argument("no closed-form bound for clustering");
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace ldpgraph
