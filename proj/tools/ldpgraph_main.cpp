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
//
// Command-line driver: `run` simulates an estimation protocol over repeated
// trials, `gen` writes a random edge list, `stats` prints exact statistics
// of an edge list. Exit codes: 0 success, 1 I/O failure, 2 usage error.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ldpgraph/errors.hpp"
#include "ldpgraph/estimators.hpp"
#include "ldpgraph/graph.hpp"
#include "ldpgraph/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

std::string int128_to_string(ldpgraph::Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag =
      negative ? -static_cast<unsigned __int128>(v)
               : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

ldpgraph::ErSpec parse_er_spec(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ldpgraph::ConfigError("--er expects N,ALPHA");
  }
  ldpgraph::ErSpec er;
  try {
    er.n = std::stoull(text.substr(0, comma));
    er.alpha = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw ldpgraph::ConfigError("--er expects N,ALPHA");
  }
  return er;
}

std::array<double, 3> parse_split(const std::string& text) {
  std::array<double, 3> split{};
  std::stringstream ss(text);
  std::string part;
  for (double& slot : split) {
    if (!std::getline(ss, part, ',')) {
      throw ldpgraph::ConfigError("--split expects three fractions a,b,c");
    }
    try {
      slot = std::stod(part);
    } catch (const std::exception&) {
      throw ldpgraph::ConfigError("--split expects three fractions a,b,c");
    }
  }
  if (std::getline(ss, part, ',')) {
    throw ldpgraph::ConfigError("--split expects three fractions a,b,c");
  }
  return split;
}

ldpgraph::DegreeCapPolicy parse_degree_cap(const std::string& text) {
  using ldpgraph::DegreeCapPolicy;
  if (text == "true") return DegreeCapPolicy::true_max();
  if (text == "private") return DegreeCapPolicy::private_estimate();
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) {
    throw ldpgraph::ConfigError("--dmax expects a non-negative integer, "
                                "\"true\", or \"private\"");
  }
  return DegreeCapPolicy::explicit_cap(value);
}

struct RunArgs {
  std::string algo;
  double eps = 0.0;
  std::string split;
  int k = 2;
  std::string dmax = "true";
  std::size_t trials = 1;
  std::optional<std::size_t> sample_n;
  std::string input;
  std::string er;
  std::uint64_t seed = 0;
  std::string out;
  bool tight_round2_noise = false;
  bool fix_sample = false;
};

int cmd_run(const RunArgs& args) {
  ldpgraph::ExperimentConfig config;
  const auto algo = ldpgraph::parse_algorithm(args.algo);
  if (!algo) {
    throw ldpgraph::ConfigError("unknown algorithm \"" + args.algo + "\"");
  }
  config.algorithm = *algo;
  config.eps = args.eps;
  config.k = args.k;
  config.degree_cap = parse_degree_cap(args.dmax);
  config.split = args.split.empty()
                     ? ldpgraph::ExperimentConfig::default_split(
                           config.algorithm, config.degree_cap.kind)
                     : parse_split(args.split);
  config.trials = args.trials;
  config.master_seed = args.seed;
  config.sample_n = args.sample_n;
  config.fix_node_sample = args.fix_sample;
  config.tight_round2_noise = args.tight_round2_noise;
  if (args.input.empty() == args.er.empty()) {
    throw ldpgraph::ConfigError("exactly one of --input or --er is required");
  }
  if (!args.input.empty()) {
    config.source = std::filesystem::path(args.input);
  } else {
    config.source = parse_er_spec(args.er);
  }

  const ldpgraph::RunResult result = ldpgraph::run_trials(config);

  const std::filesystem::path prefix(args.out);
  if (prefix.has_parent_path()) {
    std::filesystem::create_directories(prefix.parent_path());
  }
  const auto csv_path = prefix.string() + ".csv";
  const auto json_path = prefix.string() + ".summary.json";
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    ldpgraph::write_csv(result, csv);
    if (!csv) throw std::runtime_error("write failed on " + csv_path);
  }
  {
    std::ofstream json(json_path, std::ios::binary);
    if (!json) throw std::runtime_error("cannot write " + json_path);
    ldpgraph::write_summary_json(result, json);
    if (!json) throw std::runtime_error("write failed on " + json_path);
  }

  double mean_seconds = 0.0;
  for (const auto& trial : result.trials) mean_seconds += trial.seconds;
  mean_seconds /= static_cast<double>(result.trials.size());

  std::cout << "algorithm: " << ldpgraph::algorithm_name(config.algorithm)
            << "\ntrials: " << result.summary.trials
            << "\nmean_l2: " << result.summary.mean_l2
            << "\nmean_relative_error: " << result.summary.mean_relative_error
            << "\nstddev_l2: " << result.summary.stddev_l2
            << "\nmean_trial_seconds: " << mean_seconds
            << "\nwrote: " << csv_path << ' ' << json_path << '\n';
  return kExitOk;
}

struct GenArgs {
  std::string er;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  const ldpgraph::ErSpec er = parse_er_spec(args.er);
  const ldpgraph::Graph g = ldpgraph::generate_er(er.n, er.alpha, args.seed);
  if (args.out.empty() || args.out == "-") {
    ldpgraph::save_edge_list(g, std::cout);
    return kExitOk;
  }
  const std::filesystem::path path(args.out);
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  ldpgraph::save_edge_list(g, out);
  if (!out) throw std::runtime_error("write failed on " + path.string());
  return kExitOk;
}

struct StatsArgs {
  std::string input;
  std::optional<int> k;
};

int cmd_stats(const StatsArgs& args) {
  ldpgraph::EdgeListSummary summary;
  const ldpgraph::Graph g = ldpgraph::load_edge_list(args.input, &summary);
  const std::size_t n = g.node_count();
  const auto edges = static_cast<double>(g.edge_count());
  const auto triangles = ldpgraph::count_triangles(g);
  const auto two_stars = ldpgraph::count_kstars(g, 2);

  std::cout << "nodes: " << n << "\nedges: " << g.edge_count()
            << "\nmax_degree: " << ldpgraph::max_degree(g)
            << "\navg_degree_edges_per_node: "
            << (n > 0 ? edges / static_cast<double>(n) : 0.0)
            << "\navg_degree_endpoint_sum: "
            << (n > 0 ? 2.0 * edges / static_cast<double>(n) : 0.0)
            << "\nself_loops_dropped: " << summary.self_loops_dropped
            << "\nduplicate_edges_dropped: " << summary.duplicate_edges_dropped
            << "\ntriangles: " << triangles
            << "\ntwo_stars: " << int128_to_string(two_stars) << '\n';
  if (args.k) {
    std::cout << "k_stars[k=" << *args.k
              << "]: " << int128_to_string(ldpgraph::count_kstars(g, *args.k))
              << '\n';
  }
  std::cout << "clustering_coefficient: "
            << ldpgraph::clustering_coefficient(
                   static_cast<double>(triangles),
                   static_cast<double>(two_stars))
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private triangle and star counting simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Simulate an estimation protocol");
  run->add_option("--algo", run_args.algo,
                  "Algorithm: local-lap-kstar, central-lap-kstar, "
                  "local-rr-tri, local-rr-tri-noemp, local-2rounds-tri, "
                  "central-lap-tri, clustering")
      ->required();
  run->add_option("--eps", run_args.eps, "Total privacy budget")->required();
  run->add_option("--split", run_args.split,
                  "Budget fractions a,b,c for degree cap, round one, round "
                  "two (default depends on the algorithm and --dmax)");
  run->add_option("--k", run_args.k, "Star size for k-star algorithms");
  run->add_option("--dmax", run_args.dmax,
                  "Degree cap: a number, \"true\", or \"private\"");
  run->add_option("--trials", run_args.trials, "Number of independent trials");
  run->add_option("--n", run_args.sample_n,
                  "Users sampled per trial (default: whole graph)");
  run->add_option("--input", run_args.input, "Edge-list file");
  run->add_option("--er", run_args.er, "Random graph N,ALPHA");
  run->add_option("--seed", run_args.seed, "Master seed");
  run->add_option("--out", run_args.out, "Output prefix")->required();
  run->add_flag("--tight-round2-noise", run_args.tight_round2_noise,
                "Scale second-round noise by (1 - p1)");
  run->add_flag("--fix-sample", run_args.fix_sample,
                "Reuse one node sample across trials");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Write a random edge list");
  gen->add_option("--er", gen_args.er, "Random graph N,ALPHA")->required();
  gen->add_option("--seed", gen_args.seed, "Seed");
  gen->add_option("--out", gen_args.out, "Output path (default: stdout)");

  StatsArgs stats_args;
  int stats_k = 0;
  CLI::App* stats =
      app.add_subcommand("stats", "Print exact statistics of an edge list");
  stats->add_option("--input", stats_args.input, "Edge-list file")->required();
  CLI::Option* k_opt =
      stats->add_option("--k", stats_k, "Also report k-star count");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (k_opt->count() > 0) stats_args.k = stats_k;
    return cmd_stats(stats_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const ldpgraph::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ldpgraph::ConditioningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
