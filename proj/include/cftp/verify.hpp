#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cftp/graph.hpp"
#include "cftp/hardcore.hpp"
#include "cftp/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cftp {

// Exact probability map over independent sets.
struct DistributionTable {
  std::unordered_map<VertexSet, double, VertexSetHash> prob;
  double normalization = 0.0;  // Z for stationary tables, sample count for empirical ones
};

// Compensated accumulator; Z spans many orders of magnitude at large
// fugacities, so plain summation is not good enough for the 1e-10 invariant.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0, c_ = 0;
};

// All independent sets, each once, empty set included. Guarded to n <= 25.
std::vector<VertexSet> enumerate_independent_sets(const Graph& g);

DistributionTable stationary_distribution(const Graph& g, const Fugacities& fug);

double tv_distance(const DistributionTable& p, const DistributionTable& q);

// Acceptance threshold for empirical-vs-exact TV: four binomial standard
// errors with a 0.02 floor.
double tv_threshold(std::size_t support, std::uint64_t reps);

// Frequency table over `reps` independent sampler calls, one RNG substream per
// replication. The parallel and serial paths produce identical tables.
template <typename SampleFn>
DistributionTable empirical_distribution(SampleFn&& sample, std::uint64_t reps,
                                         std::uint64_t base_seed, bool parallel = true) {
  std::unordered_map<VertexSet, std::uint64_t, VertexSetHash> counts;
#ifdef _OPENMP
  if (parallel) {
    std::exception_ptr error;
#pragma omp parallel
    {
      std::unordered_map<VertexSet, std::uint64_t, VertexSetHash> local;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps); ++i) {
        try {
          Rng rng = Rng::substream(base_seed, static_cast<std::uint64_t>(i));
          ++local[sample(rng)];
        } catch (...) {
#pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
#pragma omp critical
      for (const auto& [k, v] : local) counts[k] += v;
    }
    if (error) std::rethrow_exception(error);
  } else
#endif
  {
    (void)parallel;
    for (std::uint64_t i = 0; i < reps; ++i) {
      Rng rng = Rng::substream(base_seed, i);
      ++counts[sample(rng)];
    }
  }
  DistributionTable t;
  t.normalization = static_cast<double>(reps);
  t.prob.reserve(counts.size());
  for (const auto& [k, v] : counts)
    t.prob.emplace(k, static_cast<double>(v) / static_cast<double>(reps));
  return t;
}

// Analytic side of the star-graph birth-and-death chain: transition
// probabilities, stationary law, and the expected hitting time of 0 from n,
// together with the two hitting-time bounds used by the coupling analysis.
struct BirthDeathStar {
  std::vector<double> up;    // p(i -> i+1)
  std::vector<double> down;  // p(i -> i-1)
  std::vector<double> pi;
  double hit_time_n_to_0 = 0;
  double tau1_mean = 0;   // (n+1)/pi(0)
  double tau1_bound = 0;  // 2e(n+1)
  double tau2_mean = 0;   // ((1+lambda)/lambda)^n + n
  double tau2_bound = 0;  // n + exp(n/lambda)
};

BirthDeathStar birth_death_star(std::uint32_t n, double lambda);

}  // namespace cftp
