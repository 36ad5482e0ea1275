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

#ifndef LDPGRAPH_HARNESS_HPP_
#define LDPGRAPH_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ldpgraph/estimators.hpp"
#include "ldpgraph/graph.hpp"
#include "ldpgraph/mechanisms.hpp"

namespace ldpgraph {

enum class AlgorithmId {
  kLocalLapKstar,
  kCentralLapKstar,
  kLocalRrTriangle,
  kLocalRrTriangleRaw,
  kLocalTwoRoundsTriangle,
  kCentralLapTriangle,
  kClustering,
};

// The CLI spelling of each algorithm.
const char* algorithm_name(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

bool algorithm_uses_k(AlgorithmId id);
bool algorithm_uses_degree_cap(AlgorithmId id);
bool algorithm_is_two_round(AlgorithmId id);

struct DegreeCapPolicy {
  enum class Kind { kExplicit, kTrueMax, kPrivate };
  Kind kind = Kind::kTrueMax;
  std::int64_t value = 0;  // used by kExplicit

  static DegreeCapPolicy explicit_cap(std::int64_t v) {
    return {Kind::kExplicit, v};
  }
  static DegreeCapPolicy true_max() { return {Kind::kTrueMax, 0}; }
  static DegreeCapPolicy private_estimate() { return {Kind::kPrivate, 0}; }
};

const char* degree_cap_policy_name(DegreeCapPolicy::Kind kind);

struct ErSpec {
  std::size_t n = 0;
  double alpha = 0.0;
};

struct ExperimentConfig {
  AlgorithmId algorithm = AlgorithmId::kLocalTwoRoundsTriangle;
  double eps = 1.0;
  // Fractions of eps spent on (degree cap, round one, round two); must sum
  // to 1. Round two must be 0 for single-round algorithms, and the degree
  // fraction is positive exactly when the cap policy is private.
  std::array<double, 3> split{0.0, 0.5, 0.5};
  int k = 2;
  DegreeCapPolicy degree_cap;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  // Population graph: a file to load or an on-the-fly random graph.
  std::variant<std::filesystem::path, ErSpec> source = ErSpec{};
  // Number of users per trial, drawn uniformly from the population without
  // replacement; absent means the whole population.
  std::optional<std::size_t> sample_n;
  // Draw the node sample once and reuse it across trials instead of
  // redrawing it together with the noise.
  bool fix_node_sample = false;
  bool tight_round2_noise = false;

  // Throws ConfigError when the pieces are inconsistent.
  void validate() const;
  // The split used when none was given: all estimation weight on round one
  // for single-round algorithms, an even round split for two-round ones,
  // with a tenth carved out for the degree release under the private policy.
  static std::array<double, 3> default_split(AlgorithmId algorithm,
                                             DegreeCapPolicy::Kind kind);
};

struct TrialReport {
  std::size_t trial = 0;
  double truth = 0.0;
  double estimate = 0.0;
  double l2 = 0.0;
  double relative_error = 0.0;
  double seconds = 0.0;  // wall time; reported but excluded from the CSV
  PrivacyBudget budget_spent;
  std::int64_t d_tilde_used = -1;
  std::size_t n = 0;
};

struct RunSummary {
  double mean_l2 = 0.0;
  double mean_relative_error = 0.0;
  double stddev_l2 = 0.0;
  std::size_t trials = 0;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<TrialReport> trials;
  RunSummary summary;
};

// Squared error of a single estimate.
double l2_loss(double estimate, double truth);

// |estimate - truth| / max(truth, 0.001 * n). The floor keeps tiny true
// counts from exploding the ratio.
double relative_error(double estimate, double truth, std::size_t n);

// Runs config.trials independent trials. Each trial t derives all of its
// randomness from (master_seed, t), so results are reproducible and
// independent of execution order. Deterministic bit for bit given the
// config, except for the measured wall times.
RunResult run_trials(const ExperimentConfig& config,
                     const NoiseModel& noise = real_noise());

// Canonical flat-file outputs. Every numeric field is printed as its
// shortest round-trip decimal form, so equal results give equal bytes. The
// CSV's seconds column is pinned to zero to keep repeated runs
// byte-identical; measured times live in TrialReport::seconds.
void write_csv(const RunResult& result, std::ostream& out);
void write_summary_json(const RunResult& result, std::ostream& out);

// Order-of-magnitude variance predictor for each protocol; the leading
// constant is pinned to 1, so only ratios and trends are meaningful.
struct BoundQuery {
  AlgorithmId algorithm = AlgorithmId::kLocalTwoRoundsTriangle;
  std::size_t n = 0;
  std::int64_t d_tilde = 0;
  int k = 2;
  double eps1 = 1.0;
  double eps2 = 0.0;
  // Edge density of the input graph; required by the one-round
  // randomized-response bound, ignored elsewhere.
  std::optional<double> alpha;
};

double predict_bound(const BoundQuery& query);

}  // namespace ldpgraph

#endif  // LDPGRAPH_HARNESS_HPP_
