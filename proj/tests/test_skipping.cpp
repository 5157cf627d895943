#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "cftp/skipping.hpp"
#include "cftp/verify.hpp"

using namespace cftp;

namespace {

const Graph kEdge(2, {{0, 1}});
const Graph kSingle(1, {});

GibbsAutomaton edge_automaton() { return GibbsAutomaton(kEdge, Fugacities::uniform(2, 1)); }

std::vector<Letter> sharp_alphabet(const GibbsAutomaton& a) {
  std::vector<Letter> ls;
  a.for_each_letter([&](const Letter& l) { ls.push_back(l); });
  ls.push_back(Letter::make_sharp());
  return ls;
}

Letter draw_dq(const GibbsAutomaton& a, double q, Rng& rng) {
  if (rng.bernoulli(q)) return Letter::make_sharp();
  return a.draw_base(rng);
}

std::string word_key(const EventWord& w) {
  std::string k;
  for (const Letter& l : w) k += to_string(l) + ".";
  return k;
}

}  // namespace

TEST_CASE("skip distribution masses total one") {
  const GibbsAutomaton a = edge_automaton();
  for (double q : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const SkipDistribution dq(q);
    double total = dq.mass(a, Letter::make_sharp());
    a.for_each_letter([&](const Letter& l) { total += dq.mass(a, l); });
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(SkipDistribution(1.5), std::domain_error);
}

TEST_CASE("contraction keeps exactly the active letters") {
  const GibbsAutomaton a = edge_automaton();

  // at the top of the edge graph only the removals are active
  const EventWord u = {Letter::make_add(0), Letter::make_remove(0)};
  const EventWord c = contract(a.tracker(), u);
  REQUIRE(c.size() == 1);
  CHECK(c.front() == Letter::make_remove(0));

  // a context where every letter of the word is active keeps it unchanged
  GibbsTracker ctx = a.tracker();
  ctx.apply(Letter::make_remove(0));  // <{},{1}>: both adds and rem(1) active
  const EventWord all_active = {Letter::make_add(1), Letter::make_remove(1),
                                Letter::make_sharp()};
  CHECK(contract(ctx, all_active) == all_active);
}

TEST_CASE("contraction is idempotent on random words") {
  const GibbsAutomaton a = edge_automaton();
  Rng rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    EventWord u;
    const auto letters = sharp_alphabet(a);
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) u.push_back(letters[rng.below(letters.size())]);
    const EventWord once = contract(a.tracker(), u);
    CHECK(contract(a.tracker(), once) == once);
  }
}

TEST_CASE("expansion with no passive letters is the identity") {
  const GibbsAutomaton single(kSingle, Fugacities::uniform(1, 1));
  // every letter is active at the top, and this word never leaves the top, so
  // the insertion probability is zero at each slot
  GibbsTracker ctx = single.tracker();
  REQUIRE(!ctx.has_inactive());
  const EventWord u = {Letter::make_sharp(), Letter::make_sharp(), Letter::make_add(0)};
  Rng rng(5);
  for (int i = 0; i < 50; ++i) CHECK(expand(single, ctx, 0.5, u, rng) == u);
}

TEST_CASE("expand then contract reproduces the contracted word") {
  const GibbsAutomaton a = edge_automaton();
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    EventWord u;
    for (int i = 0; i < 8; ++i) u.push_back(draw_dq(a, 0.5, rng));
    const EventWord c = contract(a.tracker(), u);
    const EventWord e = expand(a, a.tracker(), 0.5, c, rng);
    CHECK(contract(a.tracker(), e) == c);
    // the contracted word is a subsequence of its expansion, in order
    std::size_t pos = 0;
    for (const Letter& l : e)
      if (pos < c.size() && l == c[pos]) ++pos;
    CHECK(pos == c.size());
  }
}

TEST_CASE("equivalence laws by exhaustive enumeration of short words") {
  const GibbsAutomaton a = edge_automaton();
  const auto letters = sharp_alphabet(a);  // 5 letters
  std::map<std::string, HardcoreBound> bound_by_contraction;
  std::uint64_t words = 0;
  for (std::size_t len = 0; len <= 4; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      EventWord u;
      for (std::size_t i = 0; i < len; ++i) u.push_back(letters[idx[i]]);
      ++words;

      const EventWord cu = contract(a.tracker(), u);
      // reading u and reading its contraction end in the same bound
      const HardcoreBound bu = bound_word(a, a.top(), u);
      REQUIRE(bound_word(a, a.top(), cu) == bu);
      // all words with the same contraction end in the same bound
      const auto [it, fresh] = bound_by_contraction.emplace(word_key(cu), bu);
      if (!fresh) REQUIRE(it->second == bu);

      std::size_t k = 0;
      while (k < len && ++idx[k] == letters.size()) idx[k++] = 0;
      if (k == len) break;
      if (len == 0) break;
    }
    if (len == 0) continue;
  }
  CHECK(words == 1 + 5 + 25 + 125 + 625);
}

TEST_CASE("g-word stops at the first delimiter and is its own contraction") {
  const GibbsAutomaton a = edge_automaton();
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = g_word(a, 0.3, rng);
    REQUIRE(!r.word.empty());
    REQUIRE(r.word.back() == Letter::make_sharp());
    std::size_t sharps = 0;
    for (const Letter& l : r.word) sharps += l.is_sharp();
    REQUIRE(sharps == 1);
    REQUIRE(contract(a.tracker(), r.word) == r.word);
    REQUIRE(bound_word(a, a.top(), r.word) == r.tracker.bound());
  }
}

TEST_CASE("g-word length law on the single-vertex graph") {
  // all base letters are active at the top there, so the delimiter arrives
  // with probability exactly q at every draw
  const GibbsAutomaton single(kSingle, Fugacities::uniform(1, 1));
  const double q = 0.5;
  Rng rng(3);
  std::uint64_t len1 = 0;
  const std::uint64_t trials = 1000000;
  for (std::uint64_t i = 0; i < trials; ++i) len1 += g_word(single, q, rng).word.size() == 1;
  CHECK(std::abs(static_cast<double>(len1) / trials - q) < 0.005);
}

TEST_CASE("g-word at q near one is almost always just the delimiter") {
  const GibbsAutomaton a = edge_automaton();
  Rng rng(9);
  std::uint64_t bare = 0;
  for (int i = 0; i < 10000; ++i) bare += g_word(a, 0.999, rng).word.size() == 1;
  CHECK(bare >= 9950);
}

TEST_CASE("double-history with an empty word is exactly a g-word") {
  const Graph g = star(3);
  const GibbsAutomaton a(g, Fugacities::uniform(4, 2));
  for (int trial = 0; trial < 100; ++trial) {
    Rng r1 = Rng::substream(13, trial), r2 = Rng::substream(13, trial);
    const auto d = double_history(a, {}, 1, r1);
    const auto gw = g_word(a, 0.5, r2);
    REQUIRE(d.word == gw.word);
    REQUIRE(d.tracker.bound() == gw.tracker.bound());
  }
}

TEST_CASE("double-history keeps one delimiter per round") {
  const Graph g = star(5);
  const GibbsAutomaton a(g, Fugacities::uniform(6, 2));
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    EventWord w;
    for (std::uint64_t n = 1; n <= 6; ++n) {
      auto r = double_history(a, std::move(w), n, rng);
      std::uint64_t sharps = 0;
      for (const Letter& l : r.word) sharps += l.is_sharp();
      REQUIRE(sharps == n);
      REQUIRE(r.word.back() == Letter::make_sharp());
      w = std::move(r.word);
    }
  }
}

TEST_CASE("double-history rejects a word that is passive for the old chain") {
  const Graph g = star(2);
  const GibbsAutomaton a(g, Fugacities::uniform(3, 1));
  Rng rng(2);
  // adds are passive at the top, so this word cannot be a contracted history
  EventWord bogus = {Letter::make_add(1), Letter::make_sharp()};
  CHECK_THROWS_AS(double_history(a, std::move(bogus), 2, rng), std::logic_error);
}

TEST_CASE("oracle sampler matches the stationary law") {
  const GibbsAutomaton single(kSingle, Fugacities::uniform(1, 1));
  std::uint64_t occupied = 0;
  const std::uint64_t reps = 30000;
  for (std::uint64_t i = 0; i < reps; ++i) {
    Rng rng = Rng::substream(4, i);
    occupied += cftp_oracle(single, rng).state.count();
  }
  CHECK(std::abs(static_cast<double>(occupied) / reps - 0.5) < 0.015);

  const Graph g = star(4);
  const Fugacities fug = Fugacities::uniform(5, 2);
  const GibbsAutomaton a(g, fug);
  const DistributionTable emp = empirical_distribution(
      [&](Rng& rng) { return cftp_oracle(a, rng).state; }, 30000, 6);
  CHECK(tv_distance(emp, stationary_distribution(g, fug)) < tv_threshold(17, 30000) + 0.01);
}

TEST_CASE("oracle sampler is deterministic and embedding-checked") {
  const Graph g = star(6);
  const GibbsAutomaton a(g, Fugacities::uniform(7, 5));
  Rng r1(91), r2(91);
  const auto s1 = cftp_oracle(a, r1);
  const auto s2 = cftp_oracle(a, r2);
  CHECK(s1.state == s2.state);
  CHECK(s1.stats.letters_drawn == s2.stats.letters_drawn);
  CHECK(s1.stats.backward_time > 0);
  CHECK(s1.stats.doubling_rounds > 0);
  // the debug build runs the round-embedding and delimiter-count checks on
  // every round of every one of these runs
  for (int i = 0; i < 200; ++i) {
    Rng rng = Rng::substream(17, i);
    CHECK_NOTHROW(cftp_oracle(a, rng));
  }
}

TEST_CASE("oracle sampler reports budget exhaustion") {
  const Graph g = star(30);
  const GibbsAutomaton a(g, Fugacities::uniform(31, 100));
  Rng rng(3);
  CHECK_THROWS_AS(cftp_oracle(a, rng, 10), BudgetExhausted);
}

TEST_CASE("forward oracle coupling resolves the single vertex in one step") {
  const GibbsAutomaton single(kSingle, Fugacities::uniform(1, 1));
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::substream(7, i);
    REQUIRE(forward_oracle_coupling(single, rng) == 1);
    Rng rng2 = Rng::substream(8, i);
    REQUIRE(forward_incremental_coupling(single, rng2) == 1);
  }
}

TEST_CASE("oracle and incremental forward couplings obey the cardinality bracket") {
  const GibbsAutomaton a = edge_automaton();  // |A| = 4
  const std::uint64_t reps = 10000;
  double sum_o = 0, sum_i = 0;
  for (std::uint64_t i = 0; i < reps; ++i) {
    Rng ro = Rng::substream(100, i), ri = Rng::substream(200, i);
    sum_o += static_cast<double>(forward_oracle_coupling(a, ro));
    sum_i += static_cast<double>(forward_incremental_coupling(a, ri));
  }
  const double mean_o = sum_o / reps, mean_i = sum_i / reps;
  CHECK(mean_o <= mean_i * 1.02);
  CHECK(mean_i <= 4 * mean_o * 1.02);
}

TEST_CASE("round count tracks the log of the plain backward coupling time") {
  const Graph g = star(8);
  const Fugacities fug = Fugacities::uniform(9, 2);
  const GibbsAutomaton a(g, fug);
  const int reps = 200;
  double mean_rounds = 0, mean_log_tau = 0;
  for (int i = 0; i < reps; ++i) {
    Rng ro = Rng::substream(300, i), rb = Rng::substream(400, i);
    mean_rounds += static_cast<double>(cftp_oracle(a, ro).stats.doubling_rounds);
    mean_log_tau += std::log2(static_cast<double>(cftp_bounded(a, rb).stats.backward_time));
  }
  mean_rounds /= reps;
  mean_log_tau /= reps;
  CHECK(mean_rounds <= 2 * mean_log_tau);
  CHECK(mean_log_tau <= 2 * mean_rounds);
}
