#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cftp/verify.hpp"

using namespace cftp;

namespace {

VertexSet make_state(std::uint32_t n, std::initializer_list<std::uint32_t> vs) {
  VertexSet s(n);
  for (auto v : vs) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("independent-set enumeration") {
  CHECK(enumerate_independent_sets(star(2)).size() == 5);
  const Graph triangle(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(enumerate_independent_sets(triangle).size() == 4);
  for (std::uint32_t n : {1u, 4u, 10u, 16u})
    CHECK(enumerate_independent_sets(star(n)).size() == (std::uint64_t{1} << n) + 1);
  CHECK_THROWS_AS(enumerate_independent_sets(star(30)), std::domain_error);
}

TEST_CASE("stationary distribution on small graphs") {
  const Graph single(1, {});
  const DistributionTable t1 = stationary_distribution(single, Fugacities::uniform(1, 3));
  CHECK(t1.prob.at(make_state(1, {})) == doctest::Approx(0.25));
  CHECK(t1.prob.at(make_state(1, {0})) == doctest::Approx(0.75));

  const Graph s2 = star(2);
  const DistributionTable uniform = stationary_distribution(s2, Fugacities::uniform(3, 1));
  for (const auto& [k, p] : uniform.prob) CHECK(p == doctest::Approx(0.2));

  const DistributionTable t2 = stationary_distribution(s2, Fugacities::uniform(3, 2));
  CHECK(t2.normalization == doctest::Approx(11.0));
  CHECK(t2.prob.at(make_state(3, {1, 2})) == doctest::Approx(4.0 / 11.0));

  double total = 0;
  for (const auto& [k, p] : t2.prob) total += p;
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("star normalization has the closed form lambda + (1+lambda)^n") {
  for (std::uint32_t n : {2u, 6u, 12u, 20u}) {
    for (double lambda : {0.5, 2.0, 1000.0}) {
      const DistributionTable t =
          stationary_distribution(star(n), Fugacities::uniform(n + 1, lambda));
      const double closed = lambda + std::pow(1 + lambda, static_cast<double>(n));
      CHECK(t.normalization == doctest::Approx(closed).epsilon(1e-9));
    }
  }
}

TEST_CASE("total variation distance") {
  const Graph s2 = star(2);
  const DistributionTable p = stationary_distribution(s2, Fugacities::uniform(3, 2));
  CHECK(tv_distance(p, p) == doctest::Approx(0.0));

  DistributionTable x, y;
  x.prob.emplace(make_state(2, {0}), 1.0);
  y.prob.emplace(make_state(2, {1}), 1.0);
  CHECK(tv_distance(x, y) == doctest::Approx(1.0));
  CHECK(tv_distance(x, x) == doctest::Approx(0.0));
}

TEST_CASE("tv threshold keeps the 0.02 floor") {
  CHECK(tv_threshold(5, 1000000) == doctest::Approx(0.02));
  CHECK(tv_threshold(1000, 10000) == doctest::Approx(2 * std::sqrt(0.1)));
}

TEST_CASE("empirical distribution: parallel equals serial") {
  const Graph g = star(3);
  auto sample = [&](Rng& rng) {
    VertexSet s(4);
    for (std::uint32_t v = 0; v < 4; ++v)
      if (rng.bernoulli(0.3)) s.insert(v);
    return s;
  };
  const DistributionTable par = empirical_distribution(sample, 20000, 5, true);
  const DistributionTable ser = empirical_distribution(sample, 20000, 5, false);
  REQUIRE(par.prob.size() == ser.prob.size());
  for (const auto& [k, p] : ser.prob) REQUIRE(par.prob.at(k) == p);
  CHECK(tv_distance(par, ser) == doctest::Approx(0.0));
}

TEST_CASE("birth-and-death transition probabilities match the closed form") {
  const BirthDeathStar bd4 = birth_death_star(4, 1);
  CHECK(bd4.up[0] == doctest::Approx(1.0));

  const BirthDeathStar bd = birth_death_star(4, 4);
  CHECK(bd.up[2] == doctest::Approx(2.0 / (2.0 + 8.0)));
  for (std::uint32_t i = 0; i <= 4; ++i) CHECK(bd.up[i] + bd.down[i] == doctest::Approx(1.0));
}

TEST_CASE("birth-and-death stationary law: normalization, balance, tail ratio") {
  for (std::uint32_t n : {4u, 9u, 16u}) {
    const double lambda = 2.0 * n;
    const BirthDeathStar bd = birth_death_star(n, lambda);
    double total = 0;
    for (double p : bd.pi) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);

    // detailed balance product as an independent route to pi
    std::vector<double> ratio(n + 1, 1.0);
    double norm = 1.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      ratio[i + 1] = ratio[i] * bd.up[i] / bd.down[i + 1];
      norm += ratio[i + 1];
    }
    for (std::uint32_t i = 0; i <= n; ++i)
      CHECK(bd.pi[i] == doctest::Approx(ratio[i] / norm).epsilon(1e-9));

    // the closed form puts pi(n)/pi(0) at lambda^-(n-1) exactly
    CHECK(bd.pi[n] / bd.pi[0] ==
          doctest::Approx(std::pow(lambda, -(static_cast<double>(n) - 1))).epsilon(1e-9));
    CHECK(bd.pi[0] >= 0.5 * std::pow(1 + 1 / lambda, -static_cast<double>(n)));

    CHECK(bd.tau1_mean <= bd.tau1_bound);
    CHECK(bd.tau2_mean <= bd.tau2_bound + 1e-9);
  }
}

TEST_CASE("birth-and-death hitting time matches simulation") {
  const std::uint32_t n = 5;
  const BirthDeathStar bd = birth_death_star(n, 10);
  Rng rng(12);
  const std::uint64_t reps = 100000;
  double total = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    std::uint32_t state = n;
    std::uint64_t steps = 0;
    while (state != 0) {
      state += rng.bernoulli(bd.up[state]) ? 1 : -1;
      ++steps;
    }
    total += static_cast<double>(steps);
  }
  const double mc = total / reps;
  CHECK(std::abs(mc - bd.hit_time_n_to_0) / bd.hit_time_n_to_0 < 0.05);
}
