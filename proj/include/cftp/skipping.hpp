#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cftp/automaton.hpp"
#include "cftp/cftp.hpp"

namespace cftp {

// D_q over the sharp-extended alphabet: the delimiter gets mass q, every base
// letter keeps (1-q) times its base weight.
struct SkipDistribution {
  double sharp_weight;

  explicit SkipDistribution(double q) : sharp_weight(q) {
    if (!(q >= 0 && q <= 1)) throw std::domain_error("sharp weight must lie in [0,1]");
  }

  template <MarkovAutomaton A>
  double mass(const A& a, const Letter& l) const {
    return l.is_sharp() ? sharp_weight : (1 - sharp_weight) * a.base_weight(l);
  }
};

// Removes the letters that are passive for the bounding chain at their
// position; the context advances on kept letters only. Idempotent.
template <typename Tracker>
EventWord contract(Tracker ctx, const EventWord& u) {
  EventWord kept;
  for (const Letter& l : u) {
    if (ctx.is_active(l)) {
      kept.push_back(l);
      ctx.apply(l);
    }
  }
  return kept;
}

// Reinserts passive letters into a contracted word: before each kept letter,
// a geometric number of draws from D_q restricted to the currently passive
// letters. Inserted letters leave the bound alone, so the context advances on
// the original letters only.
template <MarkovAutomaton A>
EventWord expand(const A& a, typename A::Tracker ctx, double q, const EventWord& u, Rng& rng) {
  EventWord out;
  for (const Letter& l : u) {
    while (ctx.has_inactive()) {
      const double active_mass = q + (1 - q) * ctx.active_mass();
      if (rng.uniform01() < active_mass) break;
      Letter p = a.draw_base(rng);
      while (ctx.is_active(p)) p = a.draw_base(rng);
      out.push_back(p);
    }
    CFTP_CHECK(ctx.is_active(l), "expansion input must be a contracted word");
    out.push_back(l);
    ctx.apply(l);
  }
  return out;
}

template <MarkovAutomaton A>
struct GWordResult {
  typename A::Tracker tracker;
  EventWord word;
};

// Draws letters from D_q conditioned on the active set until the first
// delimiter (included). The word comes out already contracted, and the
// returned tracker holds the bound and active set it leads to.
template <MarkovAutomaton A>
GWordResult<A> g_word(const A& a, double q, Rng& rng, CftpStats* stats = nullptr,
                      std::uint64_t max_letters = kDefaultLetterBudget) {
  GWordResult<A> r{a.tracker(), {}};
  while (true) {
    if (stats) {
      if (stats->letters_drawn >= max_letters) throw BudgetExhausted(max_letters);
      ++stats->letters_drawn;
    }
    const Letter l = r.tracker.draw_active(q, rng);
    r.word.push_back(l);
    r.tracker.apply(l);
    if (stats) ++stats->bound_updates;
    if (l.is_sharp()) return r;
  }
}

template <MarkovAutomaton A>
struct DoubleHistoryResult {
  typename A::Tracker tracker;
  EventWord word;
};

// One backward-doubling pass, with expansion and contraction fused so that
// only letters active for at least one of the two chains are ever drawn.
// Draws a fresh contracted segment at rate 2^-n, then walks the previous word
// w (which carries n-1 delimiters): each draw restricted to the union of the
// two active sets either certifies an old-active slot (pop w, advance the old
// chain, reuse the popped letter) or inserts a letter that has become active
// for the new chain. Kept letters feed the new chain; the per-segment rate
// 2^-m steps down at every delimiter that enters the new word.
template <MarkovAutomaton A>
DoubleHistoryResult<A> double_history(const A& a, EventWord w, std::uint64_t n, Rng& rng,
                                      CftpStats* stats = nullptr,
                                      std::uint64_t max_letters = kDefaultLetterBudget) {
  std::int64_t m = static_cast<std::int64_t>(n);
  GWordResult<A> fresh = g_word(a, std::ldexp(1.0, -static_cast<int>(m)), rng, stats, max_letters);
  typename A::Tracker new_chain = std::move(fresh.tracker);
  EventWord out = std::move(fresh.word);
  typename A::Tracker old_chain = a.tracker();
  typename A::PairView pair(new_chain, old_chain);
  std::vector<ActivityFlip> flips;
  --m;
  while (!w.empty()) {
    CFTP_CHECK(m >= 1, "segment rate exhausted before the old word");
    if (stats) {
      if (stats->letters_drawn >= max_letters) throw BudgetExhausted(max_letters);
      ++stats->letters_drawn;
    }
    Letter l = pair.draw_active(std::ldexp(1.0, -static_cast<int>(m)), rng);
    if (old_chain.is_active(l)) {
      // an old-active slot: the drawn letter only decided the position,
      // the letter itself is the next one of the old word
      l = w.front();
      w.pop_front();
      if (!old_chain.is_active(l))
        throw std::logic_error("old word letter is passive for the old chain");
      flips.clear();
      old_chain.apply(l, &flips);
      if (stats) ++stats->bound_updates;
      pair.absorb(flips);
    }
    if (new_chain.is_active(l)) {
      out.push_back(l);
      flips.clear();
      new_chain.apply(l, &flips);
      if (stats) ++stats->bound_updates;
      pair.absorb(flips);
      if (l.is_sharp()) --m;
    }
  }
  CFTP_CHECK(m == 0, "unconsumed segment after the old word was read");
  return {std::move(new_chain), std::move(out)};
}

template <MarkovAutomaton A>
using OracleRoundObserver =
    std::function<void(std::uint64_t round, const EventWord& word, const typename A::Bound&)>;

// Backward scheme built on double_history: iterate n = 1, 2, ... until the
// word couples the bounding chain from the full space. The returned state is
// exactly stationary. stats.doubling_rounds is the iteration count N,
// stats.backward_time the final word length.
template <MarkovAutomaton A>
SampleResult<A> cftp_oracle(const A& a, Rng& rng,
                            std::uint64_t max_letters = kDefaultLetterBudget,
                            const OracleRoundObserver<A>* observer = nullptr) {
  CftpStats stats;
  EventWord w;
  std::uint64_t n = 0;
#ifdef CFTP_DEBUG_CHECKS
  std::optional<typename A::Bound> prev;
#endif
  while (true) {
    ++n;
    DoubleHistoryResult<A> round = double_history(a, std::move(w), n, rng, &stats, max_letters);
    stats.doubling_rounds = n;
#ifdef CFTP_DEBUG_CHECKS
    std::uint64_t sharps = 0;
    for (const Letter& l : round.word) sharps += l.is_sharp();
    CFTP_CHECK(sharps == n, "word must carry one delimiter per round");
    if (prev) {
      const auto& cur = round.tracker.bound();
      const bool embedded =
          prev->sure().is_subset_of(cur.sure()) &&
          cur.sure().union_with(cur.uncertain())
              .is_subset_of(prev->sure().union_with(prev->uncertain()));
      CFTP_CHECK(embedded, "round bounds must be embedded");
    }
    prev = round.tracker.bound();
#endif
    if (observer) (*observer)(n, round.word, round.tracker.bound());
    if (auto s = a.as_singleton(round.tracker.bound())) {
      stats.backward_time = round.word.size();
      return {std::move(*s), stats};
    }
    w = std::move(round.word);
  }
}

// Forward bounding chain fed by base letters conditioned on being active.
template <MarkovAutomaton A>
std::uint64_t forward_oracle_coupling(const A& a, Rng& rng,
                                      std::uint64_t max_steps = kDefaultLetterBudget) {
  typename A::Tracker t = a.tracker();
  std::uint64_t steps = 0;
  while (!t.bound().is_singleton()) {
    if (steps >= max_steps) throw BudgetExhausted(max_steps);
    const Letter l = t.draw_active(0.0, rng);
    t.apply(l);
    ++steps;
  }
  return steps;
}

// Forward bounding chain with the one-at-a-time variant: each passive letter
// seen is struck from the proposal distribution, which resets to the full base
// distribution whenever an active letter lands.
template <MarkovAutomaton A>
std::uint64_t forward_incremental_coupling(const A& a, Rng& rng,
                                           std::uint64_t max_steps = kDefaultLetterBudget) {
  typename A::Tracker t = a.tracker();
  std::unordered_set<Letter, LetterHash> removed;
  std::uint64_t steps = 0;
  while (!t.bound().is_singleton()) {
    if (steps >= max_steps) throw BudgetExhausted(max_steps);
    if (removed.size() >= a.alphabet_size()) throw StuckChainError();
    Letter l = a.draw_base(rng);
    while (removed.contains(l)) l = a.draw_base(rng);
    ++steps;
    if (t.is_active(l)) {
      t.apply(l);
      removed.clear();
    } else {
      removed.insert(l);
    }
  }
  return steps;
}

}  // namespace cftp
