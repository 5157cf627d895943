#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <vector>

#include "cftp/hardcore.hpp"
#include "cftp/rng.hpp"

namespace cftp {

// The contract every sampler engine is written against: a finite-state
// automaton whose letters act deterministically on states, plus a bound
// operator over a representable family of state sets. The delimiter letter
// (Letter::make_sharp) is neutral for both.
template <typename A>
concept MarkovAutomaton = requires(const A& a, const typename A::State& x,
                                   typename A::Bound& b, const Letter& l, Rng& rng) {
  { a.in_alphabet(l) } -> std::convertible_to<bool>;
  { a.alphabet_size() } -> std::convertible_to<std::size_t>;
  { a.base_weight(l) } -> std::convertible_to<double>;
  { a.act(x, l) } -> std::convertible_to<typename A::State>;
  { a.top() } -> std::convertible_to<typename A::Bound>;
  { a.bound_apply(b, l) };
  { a.as_singleton(b) } -> std::convertible_to<std::optional<typename A::State>>;
  { a.draw_base(rng) } -> std::convertible_to<Letter>;
};

template <MarkovAutomaton A>
typename A::State apply_word(const A& a, typename A::State x, const EventWord& w) {
  for (const Letter& l : w) {
    if (!a.in_alphabet(l)) throw std::domain_error("letter not in alphabet: " + to_string(l));
    x = a.act(std::move(x), l);
  }
  return x;
}

template <MarkovAutomaton A>
typename A::Bound bound_word(const A& a, typename A::Bound b, const EventWord& w) {
  for (const Letter& l : w) {
    if (!a.in_alphabet(l)) throw std::domain_error("letter not in alphabet: " + to_string(l));
    a.bound_apply(b, l);
  }
  return b;
}

// Act(B) by direct enumeration: the letters whose bound action moves B, plus
// the delimiter. Reference implementation for the incremental trackers.
template <MarkovAutomaton A>
std::vector<Letter> active_letters(const A& a, const typename A::Bound& b) {
  std::vector<Letter> act;
  a.for_each_letter([&](const Letter& l) {
    typename A::Bound moved = b;
    a.bound_apply(moved, l);
    if (!(moved == b)) act.push_back(l);
  });
  act.push_back(Letter::make_sharp());
  return act;
}

template <MarkovAutomaton A>
struct ForwardCouplingResult {
  std::uint64_t steps = 0;
  std::optional<typename A::State> state;  // empty when the budget ran out
};

inline constexpr std::uint64_t kDefaultLetterBudget = 1'000'000'000ULL;

// Runs the bounding chain from the full space on i.i.d. base-distributed
// letters until it pins down a single trajectory; the step count is the
// forward coupling time of the bounding chain.
template <MarkovAutomaton A>
ForwardCouplingResult<A> forward_coupling(const A& a, Rng& rng,
                                          std::uint64_t max_steps = kDefaultLetterBudget) {
  ForwardCouplingResult<A> r;
  typename A::Bound b = a.top();
  if (auto s = a.as_singleton(b)) {  // zero-vertex corner
    r.state = std::move(s);
    return r;
  }
  while (r.steps < max_steps) {
    a.bound_apply(b, a.draw_base(rng));
    ++r.steps;
    if (auto s = a.as_singleton(b)) {
      r.state = std::move(s);
      return r;
    }
  }
  return r;
}

}  // namespace cftp
