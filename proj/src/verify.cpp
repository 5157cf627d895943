#include "cftp/verify.hpp"

#include <algorithm>
#include <cmath>

namespace cftp {

std::vector<VertexSet> enumerate_independent_sets(const Graph& g) {
  return enumerate_independent_sets_impl(g);
}

DistributionTable stationary_distribution(const Graph& g, const Fugacities& fug) {
  std::vector<VertexSet> sets = enumerate_independent_sets(g);
  // summing small sets first keeps Z accurate when weights span many decades
  std::stable_sort(sets.begin(), sets.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.count() < b.count(); });
  std::vector<double> weights;
  weights.reserve(sets.size());
  KahanSum z;
  for (const VertexSet& s : sets) {
    double w = 1.0;
    s.for_each([&](std::uint32_t v) { w *= fug.lambda(v); });
    weights.push_back(w);
    z.add(w);
  }
  DistributionTable t;
  t.normalization = z.value();
  t.prob.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    t.prob.emplace(sets[i], weights[i] / t.normalization);
  return t;
}

double tv_distance(const DistributionTable& p, const DistributionTable& q) {
  KahanSum l1;
  for (const auto& [k, v] : p.prob) {
    const auto it = q.prob.find(k);
    l1.add(std::abs(v - (it == q.prob.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, v] : q.prob)
    if (!p.prob.count(k)) l1.add(v);
  return 0.5 * l1.value();
}

double tv_threshold(std::size_t support, std::uint64_t reps) {
  return std::max(0.02, 2.0 * std::sqrt(static_cast<double>(support) /
                                        static_cast<double>(reps)));
}

namespace {

double log_choose(std::uint32_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

BirthDeathStar birth_death_star(std::uint32_t n, double lambda) {
  if (n < 1 || !(lambda > 0)) throw std::domain_error("birth_death_star needs n >= 1, lambda > 0");
  BirthDeathStar r;
  r.up.resize(n + 1);
  r.down.resize(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) {
    const double ni = static_cast<double>(n - i);
    const double il = static_cast<double>(i) * lambda;
    r.up[i] = (i == n) ? 0.0 : ni / (ni + il);
    r.down[i] = (i == 0) ? 0.0 : il / (ni + il);
  }

  // pi(i) proportional to C(n-1,i-1) lambda^-(i-1) + C(n-1,i) lambda^-i
  r.pi.resize(n + 1);
  const double log_l = std::log(lambda);
  KahanSum norm;
  for (std::uint32_t i = 0; i <= n; ++i) {
    const double t1 = std::exp(log_choose(n - 1, static_cast<std::int64_t>(i) - 1) -
                               (static_cast<double>(i) - 1) * log_l);
    const double t2 = std::exp(log_choose(n - 1, i) - static_cast<double>(i) * log_l);
    r.pi[i] = t1 + t2;
    norm.add(r.pi[i]);
  }
  for (double& p : r.pi) p /= norm.value();

  // expected time j -> j-1, downward recursion, then sum over the ladder
  std::vector<double> step(n + 1, 0.0);
  step[n] = 1.0 / r.down[n];
  for (std::uint32_t j = n - 1; j >= 1; --j)
    step[j] = (1.0 + r.up[j] * step[j + 1]) / r.down[j];
  KahanSum hit;
  for (std::uint32_t j = 1; j <= n; ++j) hit.add(step[j]);
  r.hit_time_n_to_0 = hit.value();

  r.tau1_mean = (n + 1.0) / r.pi[0];
  r.tau1_bound = 2.0 * std::exp(1.0) * (n + 1.0);
  r.tau2_mean = std::pow((1.0 + lambda) / lambda, static_cast<double>(n)) + n;
  r.tau2_bound = n + std::exp(static_cast<double>(n) / lambda);
  return r;
}

}  // namespace cftp
