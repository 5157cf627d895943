#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cftp/automaton.hpp"

namespace cftp {

struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("letter budget exhausted (" + std::to_string(budget) +
                           ") before coupling") {}
};

struct UnsupportedDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// letters_drawn: random events generated. bound_updates: applications of the
// action/bound operator (replays included). backward_time: length of the
// coupling word on exit. doubling_rounds: rounds of the doubling scheme (the
// iteration count N for the skipping sampler).
struct CftpStats {
  std::uint64_t letters_drawn = 0;
  std::uint64_t bound_updates = 0;
  std::uint64_t doubling_rounds = 0;
  std::uint64_t backward_time = 0;
};

template <MarkovAutomaton A>
struct SampleResult {
  typename A::State state;
  CftpStats stats;
};

// Classic from-the-past sampler over an explicitly enumerated state space:
// maintains the composed map S and prepends one letter per iteration via
// S'(x) = S(x.a). Exact but linear in |S| per step; kept as an oracle for
// small domains.
template <MarkovAutomaton A>
SampleResult<A> cftp_naive(const A& a, Rng& rng,
                           std::uint64_t max_letters = kDefaultLetterBudget) {
  std::vector<typename A::State> states;
  try {
    states = a.enumerate_states();
  } catch (const std::domain_error& e) {
    throw UnsupportedDomain(std::string("state enumeration unavailable: ") + e.what());
  }
  if (states.size() > 2'000'000)
    throw UnsupportedDomain("state space too large for the naive sampler");

  std::unordered_map<typename A::State, std::uint32_t> index;
  index.reserve(states.size());
  for (std::uint32_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);

  std::vector<std::uint32_t> composed(states.size());
  for (std::uint32_t i = 0; i < composed.size(); ++i) composed[i] = i;

  CftpStats stats;
  std::vector<std::uint32_t> next(states.size());
  std::vector<char> seen(states.size());
  while (true) {
    if (composed.size() <= 1) break;
    std::uint32_t distinct = 0;
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t img : composed) {
      if (!seen[img]) {
        seen[img] = 1;
        ++distinct;
      }
    }
    if (distinct == 1) break;
    if (stats.letters_drawn >= max_letters) throw BudgetExhausted(max_letters);
    const Letter l = a.draw_base(rng);
    ++stats.letters_drawn;
    for (std::uint32_t i = 0; i < states.size(); ++i) {
      next[i] = composed[index.at(a.act(states[i], l))];
      ++stats.bound_updates;
    }
    composed.swap(next);
  }
  stats.backward_time = stats.letters_drawn;
  return {states[composed.empty() ? 0 : composed[0]], stats};
}

using BoundedRoundObserver = std::function<void(std::uint64_t round, const EventWord& word)>;

// Doubling sampler on the bounding chain. Each round draws a fresh block of
// 2^(r-1) letters that goes in front of the kept word (the new letters sit
// deeper in the past), then replays the whole word from the full space. The
// suffix reuse is what makes the output exact.
template <MarkovAutomaton A>
SampleResult<A> cftp_bounded(const A& a, Rng& rng,
                             std::uint64_t max_letters = kDefaultLetterBudget,
                             const BoundedRoundObserver* observer = nullptr) {
  std::vector<std::vector<Letter>> blocks;  // blocks[r] read before blocks[r-1]
  CftpStats stats;
  std::uint64_t block_size = 1;
  while (true) {
    if (stats.letters_drawn + block_size > max_letters) throw BudgetExhausted(max_letters);
    std::vector<Letter> block;
    block.reserve(block_size);
    for (std::uint64_t i = 0; i < block_size; ++i) block.push_back(a.draw_base(rng));
    stats.letters_drawn += block_size;
    blocks.push_back(std::move(block));
    ++stats.doubling_rounds;
    block_size *= 2;

    typename A::Bound b = a.top();
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
      for (const Letter& l : *it) {
        a.bound_apply(b, l);
        ++stats.bound_updates;
      }
    if (observer) {
      EventWord word;
      for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        word.insert(word.end(), it->begin(), it->end());
      (*observer)(stats.doubling_rounds, word);
    }
    if (auto s = a.as_singleton(b)) {
      stats.backward_time = stats.letters_drawn;
      return {std::move(*s), stats};
    }
  }
}

}  // namespace cftp
