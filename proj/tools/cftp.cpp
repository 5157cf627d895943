// Command-line front end: exact sampling of weighted independent sets,
// distribution verification against enumeration, figure-style benchmark
// sweeps, and graph generation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cftp/bench.hpp"
#include "cftp/skipping.hpp"
#include "cftp/verify.hpp"

namespace {

using namespace cftp;

Fugacities parse_lambda(const std::string& spec, std::uint32_t n) {
  try {
    std::size_t used = 0;
    const double l = std::stod(spec, &used);
    if (used == spec.size()) return Fugacities::uniform(n, l);
  } catch (const std::exception&) {
    // not a number: treat as a per-vertex weight file
  }
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open fugacity file " + spec);
  std::vector<double> lambda(n, 0.0);
  std::vector<char> seen(n, 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long v = -1;
    double l = 0;
    if (!(ls >> v >> l) || v < 0 || v >= n)
      throw std::runtime_error(spec + ":" + std::to_string(lineno) + ": expected 'v lambda'");
    if (seen[v])
      throw std::runtime_error(spec + ":" + std::to_string(lineno) + ": duplicate vertex");
    lambda[v] = l;
    seen[v] = 1;
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (!seen[v])
      throw std::runtime_error(spec + ": no fugacity for vertex " + std::to_string(v));
  return Fugacities(std::move(lambda));
}

std::string format_state(const HardcoreState& s) {
  if (s.empty()) return "-";
  std::string out;
  s.for_each([&](std::uint32_t v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  });
  return out;
}

int cmd_sample(const std::string& graph_spec, const std::string& lambda_spec,
               const std::string& sampler_name, double ps, std::uint64_t count,
               std::uint64_t seed, bool stats) {
  const Graph g = make_graph(graph_spec, seed);
  const Fugacities fug = parse_lambda(lambda_spec, g.vertex_count());
  const SamplerKind kind = parse_sampler(sampler_name);
  for (std::uint64_t i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, i);
    const SamplerRun r = run_sampler_once(kind, g, fug, ps, rng);
    std::cout << format_state(r.state) << "\n";
    if (stats)
      std::fprintf(stderr,
                   "{\"letters_drawn\":%llu,\"bound_updates\":%llu,"
                   "\"doubling_rounds\":%llu,\"backward_time\":%llu}\n",
                   static_cast<unsigned long long>(r.stats.letters_drawn),
                   static_cast<unsigned long long>(r.stats.bound_updates),
                   static_cast<unsigned long long>(r.stats.doubling_rounds),
                   static_cast<unsigned long long>(r.stats.backward_time));
  }
  return 0;
}

int cmd_verify(const std::string& graph_spec, const std::string& lambda_spec,
               const std::string& sampler_name, double ps, std::uint64_t reps,
               std::uint64_t seed) {
  const Graph g = make_graph(graph_spec, seed);
  const Fugacities fug = parse_lambda(lambda_spec, g.vertex_count());
  const SamplerKind kind = parse_sampler(sampler_name);
  const DistributionTable exact = stationary_distribution(g, fug);
  const DistributionTable empirical = empirical_distribution(
      [&](Rng& rng) { return run_sampler_once(kind, g, fug, ps, rng).state; }, reps, seed);
  const double tv = tv_distance(exact, empirical);
  const double threshold = tv_threshold(exact.prob.size(), reps);
  const bool pass = tv <= threshold;
  std::printf("%s tv=%.6f threshold=%.6f support=%zu reps=%llu\n", pass ? "PASS" : "FAIL", tv,
              threshold, exact.prob.size(), static_cast<unsigned long long>(reps));
  return pass ? 0 : 1;
}

int cmd_bench(const std::string& figure, const std::string& config_path, double scale,
              const std::string& out_path, std::uint64_t seed) {
  std::vector<ResultRow> rows;
  std::string out = out_path;
  if (!config_path.empty()) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (out.empty()) out = cfg.out_path;
    rows = run_experiment(cfg);
  } else {
    rows = reproduce_figure(figure, scale, seed);
  }
  const std::string csv = to_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out + " for writing");
    f << csv;
  }
  return 0;
}

int cmd_graph(const std::string& gen_spec, std::uint64_t seed, const std::string& out_path) {
  const Graph g = make_graph(gen_spec, seed);
  write_edge_list(g, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sampler for weighted independent sets (coupling from the past)"};
  app.require_subcommand(1);

  std::string graph_spec, lambda_spec, sampler_name = "oracle", config_path, figure, out_path,
              gen_spec;
  double ps = 1.0, scale = 1.0;
  std::uint64_t count = 1, reps = 10000, seed = 1;
  bool stats = false;

  CLI::App* sample = app.add_subcommand("sample", "draw exact stationary samples");
  sample->add_option("--graph", graph_spec, "graph spec: star:n|ba:n[:seed]|file:path")
      ->required();
  sample->add_option("--lambda", lambda_spec, "fugacity: number, or file of 'v lambda' lines")
      ->required();
  sample->add_option("--sampler", sampler_name, "gibbs|dg|oracle")->required();
  sample->add_option("--ps", ps, "swap probability for the dg sampler (default 1)");
  sample->add_option("--count", count, "number of samples");
  sample->add_option("--seed", seed, "base seed");
  sample->add_flag("--stats", stats, "print one JSON stats line per sample on stderr");

  CLI::App* verify = app.add_subcommand("verify", "compare a sampler against enumeration");
  verify->add_option("--graph", graph_spec)->required();
  verify->add_option("--lambda", lambda_spec)->required();
  verify->add_option("--sampler", sampler_name)->required();
  verify->add_option("--ps", ps);
  verify->add_option("--reps", reps, "number of samples")->required();
  verify->add_option("--seed", seed);

  CLI::App* bench = app.add_subcommand("bench", "run an event-count experiment sweep");
  bench->add_option("--figure", figure, "fig3|fig4|fig5");
  bench->add_option("--config", config_path, "key=value experiment file");
  bench->add_option("--scale", scale, "replication scale factor in (0,1]");
  bench->add_option("--out", out_path, "CSV output path (default stdout)");
  bench->add_option("--seed", seed);

  CLI::App* graph = app.add_subcommand("graph", "generate a graph file");
  graph->add_option("--gen", gen_spec, "star:n|ba:n[:seed]")->required();
  graph->add_option("--seed", seed);
  graph->add_option("--out", out_path, "edge-list output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sample))
      return cmd_sample(graph_spec, lambda_spec, sampler_name, ps, count, seed, stats);
    if (app.got_subcommand(verify))
      return cmd_verify(graph_spec, lambda_spec, sampler_name, ps, reps, seed);
    if (app.got_subcommand(bench)) {
      if (figure.empty() == config_path.empty()) {
        std::fprintf(stderr, "bench needs exactly one of --figure or --config\n");
        return 2;
      }
      return cmd_bench(figure, config_path, scale, out_path, seed);
    }
    if (app.got_subcommand(graph)) return cmd_graph(gen_spec, seed, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
