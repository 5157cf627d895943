#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cftp/cftp.hpp"
#include "cftp/verify.hpp"

using namespace cftp;

namespace {

const Graph kSingle(1, {});

double frequency_of(const DistributionTable& t, const VertexSet& s) {
  const auto it = t.prob.find(s);
  return it == t.prob.end() ? 0.0 : it->second;
}

}  // namespace

TEST_CASE("naive sampler hits the single-vertex stationary law") {
  for (const double lambda : {1.0, 3.0}) {
    const GibbsAutomaton a(kSingle, Fugacities::uniform(1, lambda));
    const DistributionTable t = empirical_distribution(
        [&](Rng& rng) { return cftp_naive(a, rng).state; }, 100000, 1234);
    VertexSet occupied(1);
    occupied.insert(0);
    CHECK(std::abs(frequency_of(t, occupied) - lambda / (1 + lambda)) < 0.01);
  }
}

TEST_CASE("naive sampler is uniform over the five independent sets of star(2)") {
  const Graph g = star(2);
  const GibbsAutomaton a(g, Fugacities::uniform(3, 1));
  const DistributionTable t = empirical_distribution(
      [&](Rng& rng) { return cftp_naive(a, rng).state; }, 100000, 99);
  REQUIRE(t.prob.size() == 5);
  for (const auto& [set, p] : t.prob) CHECK(std::abs(p - 0.2) < 0.01);
}

TEST_CASE("naive sampler refuses domains it cannot enumerate") {
  const Graph g = star(30);
  const GibbsAutomaton a(g, Fugacities::uniform(31, 1));
  Rng rng(1);
  CHECK_THROWS_AS(cftp_naive(a, rng), UnsupportedDomain);
}

TEST_CASE("bounded sampler matches the stationary law") {
  const GibbsAutomaton single(kSingle, Fugacities::uniform(1, 1));
  const DistributionTable t = empirical_distribution(
      [&](Rng& rng) { return cftp_bounded(single, rng).state; }, 100000, 7);
  VertexSet occupied(1);
  occupied.insert(0);
  CHECK(std::abs(frequency_of(t, occupied) - 0.5) < 0.01);

  const Graph g = star(4);
  const Fugacities fug = Fugacities::uniform(5, 2);
  const GibbsAutomaton a(g, fug);
  const DistributionTable emp = empirical_distribution(
      [&](Rng& rng) { return cftp_bounded(a, rng).state; }, 100000, 8);
  CHECK(tv_distance(emp, stationary_distribution(g, fug)) <= 0.02);
}

TEST_CASE("bounded sampler with the swap chain matches the stationary law") {
  const Graph g = star(4);
  const Fugacities fug = Fugacities::uniform(5, 2);
  const DyerGreenhillAutomaton a(g, fug, 1.0);
  const DistributionTable emp = empirical_distribution(
      [&](Rng& rng) { return cftp_bounded(a, rng).state; }, 100000, 21);
  CHECK(tv_distance(emp, stationary_distribution(g, fug)) <= 0.02);
}

TEST_CASE("bounded sampler is deterministic under a fixed seed") {
  const Graph g = star(6);
  const GibbsAutomaton a(g, Fugacities::uniform(7, 2));
  Rng r1(55), r2(55);
  const auto s1 = cftp_bounded(a, r1);
  const auto s2 = cftp_bounded(a, r2);
  CHECK(s1.state == s2.state);
  CHECK(s1.stats.letters_drawn == s2.stats.letters_drawn);
}

TEST_CASE("doubling keeps every old letter as a suffix") {
  const Graph g = star(8);
  const GibbsAutomaton a(g, Fugacities::uniform(9, 3));
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::substream(31, trial);
    std::vector<EventWord> words;
    const BoundedRoundObserver observer = [&](std::uint64_t, const EventWord& w) {
      words.push_back(w);
    };
    const auto r = cftp_bounded(a, rng, kDefaultLetterBudget, &observer);
    REQUIRE(words.size() == r.stats.doubling_rounds);
    for (std::size_t k = 0; k + 1 < words.size(); ++k) {
      const EventWord& shorter = words[k];
      const EventWord& longer = words[k + 1];
      REQUIRE(longer.size() == 2 * shorter.size() + 1);
      // the previous word is the bit-identical suffix of the next one
      for (std::size_t i = 0; i < shorter.size(); ++i)
        REQUIRE(longer[longer.size() - shorter.size() + i] == shorter[i]);
    }
  }
}

TEST_CASE("doubling stats are consistent") {
  const Graph g = star(6);
  const GibbsAutomaton a(g, Fugacities::uniform(7, 2));
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::substream(77, trial);
    const auto r = cftp_bounded(a, rng);
    // blocks 1,2,4,... make the word after r rounds 2^r - 1 letters long
    REQUIRE(r.stats.backward_time == r.stats.letters_drawn);
    REQUIRE(r.stats.doubling_rounds ==
            static_cast<std::uint64_t>(std::llround(std::log2(r.stats.backward_time + 1.0))));
    REQUIRE(r.stats.bound_updates >= r.stats.backward_time);
  }
}

TEST_CASE("bounded sampler reports budget exhaustion without a partial sample") {
  const Graph g = star(40);
  const GibbsAutomaton a(g, Fugacities::uniform(41, 50));
  Rng rng(5);
  CHECK_THROWS_AS(cftp_bounded(a, rng, 16), BudgetExhausted);
}
