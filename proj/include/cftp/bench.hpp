#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cftp/cftp.hpp"
#include "cftp/graph.hpp"
#include "cftp/hardcore.hpp"

namespace cftp {

enum class SamplerKind { gibbs, dg, oracle };

std::string to_string(SamplerKind k);
SamplerKind parse_sampler(const std::string& name);

// Graph specs: "star:n", "ba:n", "ba:n:seed", "file:path". A ba spec without
// its own seed derives one from the run seed, so a whole run is reproducible
// from (spec, seed) alone.
Graph make_graph(const std::string& spec, std::uint64_t run_seed);

struct ExperimentConfig {
  std::string graph_spec = "star:100";
  std::vector<SamplerKind> samplers = {SamplerKind::gibbs, SamplerKind::dg, SamplerKind::oracle};
  std::vector<double> lambdas = {1, 10, 100};
  double swap_prob = 1.0;
  std::uint64_t replications = 100;
  std::uint64_t base_seed = 1;
  std::string out_path;  // empty: stdout
};

ExperimentConfig parse_config_file(const std::string& path);

struct ResultRow {
  std::string graph;
  SamplerKind sampler = SamplerKind::gibbs;
  double lambda = 1;
  std::uint64_t reps = 0;
  double mean_letters = 0, se_letters = 0;
  double mean_updates = 0, se_updates = 0;
  double mean_tau_b = 0, se_tau_b = 0;
  std::uint64_t failures = 0;  // budget-exhausted replications, excluded from the means
};

struct SamplerRun {
  HardcoreState state;
  CftpStats stats;
};

SamplerRun run_sampler_once(SamplerKind kind, const Graph& g, const Fugacities& fug,
                            double swap_prob, Rng& rng,
                            std::uint64_t max_letters = kDefaultLetterBudget);

// One row per (sampler, lambda). Replication i draws from substream
// (base_seed, i); the parallel and serial paths give identical rows.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, bool parallel = true);

std::string to_csv(const std::vector<ResultRow>& rows);

// The experiment sweeps behind the three figures: star:100 with all three
// samplers at 1000 reps, star:1000 with the two fast samplers at 100 reps,
// and the preferential-attachment graph with all three at 100 reps. The scale
// factor shrinks the replication counts.
std::vector<ResultRow> reproduce_figure(const std::string& figure, double scale,
                                        std::uint64_t base_seed, bool parallel = true);

const std::vector<double>& figure_lambdas();

}  // namespace cftp
