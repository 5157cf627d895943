#include "cftp/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cftp/skipping.hpp"
#include "cftp/verify.hpp"

namespace cftp {

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::gibbs: return "gibbs";
    case SamplerKind::dg: return "dg";
    case SamplerKind::oracle: return "oracle";
  }
  return "?";
}

SamplerKind parse_sampler(const std::string& name) {
  if (name == "gibbs") return SamplerKind::gibbs;
  if (name == "dg") return SamplerKind::dg;
  if (name == "oracle") return SamplerKind::oracle;
  throw std::domain_error("unknown sampler '" + name + "' (expected gibbs|dg|oracle)");
}

Graph make_graph(const std::string& spec, std::uint64_t run_seed) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_u64 = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::domain_error("bad number in graph spec: " + spec);
    return static_cast<std::uint64_t>(v);
  };
  if (head == "star") {
    if (rest.empty()) throw std::domain_error("star spec needs a size: star:n");
    return star(static_cast<std::uint32_t>(parse_u64(rest)));
  }
  if (head == "ba") {
    if (rest.empty()) throw std::domain_error("ba spec needs a size: ba:n[:seed]");
    const auto colon2 = rest.find(':');
    const std::uint64_t n = parse_u64(rest.substr(0, colon2));
    const std::uint64_t seed = colon2 == std::string::npos
                                   ? run_seed ^ 0x6261677261706853ULL  // spec-less ba: derive
                                   : parse_u64(rest.substr(colon2 + 1));
    Rng rng = Rng::substream(seed, 0);
    return barabasi_albert(static_cast<std::uint32_t>(n), rng);
  }
  if (head == "file") {
    if (rest.empty()) throw std::domain_error("file spec needs a path: file:path");
    return read_edge_list(rest);
  }
  throw std::domain_error("unknown graph spec '" + spec + "' (expected star:n|ba:n[:seed]|file:path)");
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ExperimentConfig cfg;
  cfg.samplers.clear();
  cfg.lambdas.clear();
  std::string line;
  std::size_t lineno = 0;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "graph") {
      cfg.graph_spec = value;
    } else if (key == "sampler") {
      for (const auto& s : split_list(value)) cfg.samplers.push_back(parse_sampler(s));
    } else if (key == "lambda") {
      for (const auto& s : split_list(value)) cfg.lambdas.push_back(std::stod(s));
    } else if (key == "ps") {
      cfg.swap_prob = std::stod(value);
    } else if (key == "reps") {
      cfg.replications = std::stoull(value);
    } else if (key == "seed") {
      cfg.base_seed = std::stoull(value);
    } else if (key == "out") {
      cfg.out_path = value;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (cfg.samplers.empty())
    cfg.samplers = {SamplerKind::gibbs, SamplerKind::dg, SamplerKind::oracle};
  if (cfg.lambdas.empty()) cfg.lambdas = {1, 10, 100};
  if (cfg.replications < 1) throw std::runtime_error(path + ": reps must be >= 1");
  return cfg;
}

SamplerRun run_sampler_once(SamplerKind kind, const Graph& g, const Fugacities& fug,
                            double swap_prob, Rng& rng, std::uint64_t max_letters) {
  switch (kind) {
    case SamplerKind::gibbs: {
      GibbsAutomaton a(g, fug);
      auto r = cftp_bounded(a, rng, max_letters);
      return {std::move(r.state), r.stats};
    }
    case SamplerKind::dg: {
      DyerGreenhillAutomaton a(g, fug, swap_prob);
      auto r = cftp_bounded(a, rng, max_letters);
      return {std::move(r.state), r.stats};
    }
    case SamplerKind::oracle: {
      GibbsAutomaton a(g, fug);
      auto r = cftp_oracle(a, rng, max_letters);
      return {std::move(r.state), r.stats};
    }
  }
  throw std::domain_error("unknown sampler kind");
}

namespace {

struct MeanSe {
  double mean = 0, se = 0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe r;
  if (xs.empty()) return r;
  KahanSum s;
  for (double x : xs) s.add(x);
  r.mean = s.value() / xs.size();
  if (xs.size() > 1) {
    KahanSum ss;
    for (double x : xs) ss.add((x - r.mean) * (x - r.mean));
    r.se = std::sqrt(ss.value() / (xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return r;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, bool parallel) {
  const Graph g = make_graph(config.graph_spec, config.base_seed);
  std::vector<ResultRow> rows;
  for (SamplerKind kind : config.samplers) {
    for (double lambda : config.lambdas) {
      if (!(lambda > 0)) throw std::domain_error("lambda must be positive");
      const Fugacities fug = Fugacities::uniform(g.vertex_count(), lambda);
      const std::int64_t reps = static_cast<std::int64_t>(config.replications);
      std::vector<CftpStats> stats(config.replications);
      std::vector<char> failed(config.replications, 0);
      const auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
      for (std::int64_t i = 0; i < reps; ++i) {
        Rng rng = Rng::substream(config.base_seed, static_cast<std::uint64_t>(i));
        try {
          stats[i] = run_sampler_once(kind, g, fug, config.swap_prob, rng).stats;
        } catch (const BudgetExhausted&) {
          failed[i] = 1;
        }
      }
      ResultRow row;
      row.graph = config.graph_spec;
      row.sampler = kind;
      row.lambda = lambda;
      row.reps = config.replications;
      std::vector<double> letters, updates, tau;
      for (std::int64_t i = 0; i < reps; ++i) {
        if (failed[i]) {
          ++row.failures;
          continue;
        }
        letters.push_back(static_cast<double>(stats[i].letters_drawn));
        updates.push_back(static_cast<double>(stats[i].bound_updates));
        tau.push_back(static_cast<double>(stats[i].backward_time));
      }
      const MeanSe ml = mean_se(letters), mu = mean_se(updates), mt = mean_se(tau);
      row.mean_letters = ml.mean;
      row.se_letters = ml.se;
      row.mean_updates = mu.mean;
      row.se_updates = mu.se;
      row.mean_tau_b = mt.mean;
      row.se_tau_b = mt.se;
      rows.push_back(row);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::fprintf(stderr, "[bench] %s %s lambda=%g reps=%llu done in %.2fs%s\n",
                   config.graph_spec.c_str(), to_string(kind).c_str(), lambda,
                   static_cast<unsigned long long>(config.replications), secs,
                   row.failures ? (" (" + std::to_string(row.failures) + " budget failures)").c_str()
                                : "");
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "graph,sampler,lambda,reps,mean_letters,se_letters,mean_updates,se_updates,"
      "mean_tau_b,se_tau_b\n";
  char buf[512];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  r.graph.c_str(), to_string(r.sampler).c_str(), r.lambda,
                  static_cast<unsigned long long>(r.reps), r.mean_letters, r.se_letters,
                  r.mean_updates, r.se_updates, r.mean_tau_b, r.se_tau_b);
    out += buf;
  }
  return out;
}

const std::vector<double>& figure_lambdas() {
  static const std::vector<double> ls = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
  return ls;
}

std::vector<ResultRow> reproduce_figure(const std::string& figure, double scale,
                                        std::uint64_t base_seed, bool parallel) {
  if (!(scale > 0 && scale <= 1)) throw std::domain_error("scale must lie in (0,1]");
  ExperimentConfig cfg;
  cfg.base_seed = base_seed;
  cfg.lambdas = figure_lambdas();
  auto scaled = [&](std::uint64_t full) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(full * scale)));
  };
  if (figure == "fig3") {
    cfg.graph_spec = "star:100";
    cfg.replications = scaled(1000);
  } else if (figure == "fig4") {
    cfg.graph_spec = "star:1000";
    cfg.samplers = {SamplerKind::dg, SamplerKind::oracle};
    cfg.replications = scaled(100);
  } else if (figure == "fig5") {
    cfg.graph_spec = "ba:100";
    cfg.replications = scaled(100);
  } else {
    throw std::domain_error("unknown figure '" + figure + "' (expected fig3|fig4|fig5)");
  }
  return run_experiment(cfg, parallel);
}

}  // namespace cftp
