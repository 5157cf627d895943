#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cftp/graph.hpp"
#include "cftp/rng.hpp"
#include "cftp/vertex_set.hpp"

// Debug-mode consistency checks. CFTP_DEBUG_CHECKS turns on the cheap
// per-round invariants (segment counter, delimiter counts, round embedding);
// CFTP_EXPENSIVE_CHECKS additionally recounts the neighbor counters after
// every bound update. Both compile out of release builds.
#ifdef CFTP_DEBUG_CHECKS
#define CFTP_CHECK(cond, msg)                          \
  do {                                                 \
    if (!(cond)) ::cftp::debug_check_failed(msg);      \
  } while (0)
#else
#define CFTP_CHECK(cond, msg) ((void)0)
#endif

namespace cftp {

[[noreturn]] inline void debug_check_failed(const char* msg) {
  throw std::logic_error(std::string("consistency check failed: ") + msg);
}

struct StuckChainError : std::runtime_error {
  StuckChainError() : std::runtime_error("no active event and no delimiter mass to draw") {}
};

// ---------------------------------------------------------------------------
// Event alphabet

enum class LetterKind : std::uint8_t { remove, add, add_swap, sharp };

// One letter of the extended alphabet. The swap chain folds its coin into the
// letter so that the action stays a deterministic function of (state, letter).
struct Letter {
  LetterKind kind = LetterKind::sharp;
  std::uint32_t vertex = 0;
  bool swap = false;

  static Letter make_remove(std::uint32_t v) { return {LetterKind::remove, v, false}; }
  static Letter make_add(std::uint32_t v) { return {LetterKind::add, v, false}; }
  static Letter make_add_swap(std::uint32_t v, bool coin) {
    return {LetterKind::add_swap, v, coin};
  }
  static Letter make_sharp() { return {LetterKind::sharp, 0, false}; }

  bool is_sharp() const { return kind == LetterKind::sharp; }

  friend bool operator==(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == LetterKind::sharp) return true;
    return a.vertex == b.vertex && (a.kind != LetterKind::add_swap || a.swap == b.swap);
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

std::string to_string(const Letter& a);

struct LetterHash {
  std::size_t operator()(const Letter& a) const {
    return (static_cast<std::size_t>(a.kind) << 34) ^ (std::size_t{a.vertex} << 1) ^
           static_cast<std::size_t>(a.swap);
  }
};

// Words are FIFO: push_back fresh letters, pop_front when replaying history.
using EventWord = std::deque<Letter>;

// ---------------------------------------------------------------------------
// Fugacities

// Per-vertex weights lambda(v) > 0 of the product-form target measure.
// Caches the per-letter base weights lambda/(lambda+1) and 1/(lambda+1) that
// every drawing routine normalizes over.
class Fugacities {
 public:
  explicit Fugacities(std::vector<double> lambda);
  static Fugacities uniform(std::uint32_t n, double lambda) {
    return Fugacities(std::vector<double>(n, lambda));
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(lambda_.size()); }
  double lambda(std::uint32_t v) const { return lambda_[v]; }
  double add_weight(std::uint32_t v) const { return add_w_[v]; }  // lambda/(lambda+1)
  double remove_weight(std::uint32_t v) const { return rem_w_[v]; }  // 1/(lambda+1)
  double max_add_weight() const { return max_add_w_; }
  double max_remove_weight() const { return max_rem_w_; }
  double total_add_weight() const { return total_add_w_; }
  double total_remove_weight() const { return total_rem_w_; }

 private:
  std::vector<double> lambda_, add_w_, rem_w_;
  double max_add_w_ = 0, max_rem_w_ = 0, total_add_w_ = 0, total_rem_w_ = 0;
};

// ---------------------------------------------------------------------------
// State and bound

// States are independent sets as vertex bitsets.
using HardcoreState = VertexSet;

enum class Zone : std::uint8_t { sure, uncertain, absent };

// Interval bound <B,D>: `sure` vertices lie in every candidate set, `uncertain`
// in some but not all; the complement C is absent from all. Per-vertex counts
// of sure/uncertain neighbors make the update rules and the active-event
// queries O(deg) and O(1).
class HardcoreBound {
 public:
  explicit HardcoreBound(const Graph& g);  // top: everything uncertain

  Zone zone(std::uint32_t v) const {
    if (sure_.contains(v)) return Zone::sure;
    if (uncertain_.contains(v)) return Zone::uncertain;
    return Zone::absent;
  }
  const VertexSet& sure() const { return sure_; }
  const VertexSet& uncertain() const { return uncertain_; }
  std::uint32_t sure_neighbors(std::uint32_t v) const { return n_sure_[v]; }
  std::uint32_t uncertain_neighbors(std::uint32_t v) const { return n_uncertain_[v]; }
  std::uint32_t uncertain_count() const { return uncertain_count_; }

  bool is_singleton() const { return uncertain_count_ == 0; }
  std::optional<HardcoreState> as_singleton() const {
    if (!is_singleton()) return std::nullopt;
    return sure_;
  }

  // Moves v to zone z, updating neighbor counters. Returns false if already there.
  bool set_zone(const Graph& g, std::uint32_t v, Zone z);

  void check_counters(const Graph& g) const;  // brute-force recount (tests/debug)

  friend bool operator==(const HardcoreBound& a, const HardcoreBound& b) {
    return a.sure_ == b.sure_ && a.uncertain_ == b.uncertain_;
  }
  friend bool operator!=(const HardcoreBound& a, const HardcoreBound& b) { return !(a == b); }

 private:
  VertexSet sure_, uncertain_;
  std::vector<std::uint16_t> n_sure_, n_uncertain_;
  std::uint32_t uncertain_count_ = 0;
};

// ---------------------------------------------------------------------------
// Chain actions (single-site heat bath and the swap variant)

HardcoreState gibbs_apply(const Graph& g, HardcoreState state, const Letter& a);
HardcoreState dg_apply(const Graph& g, HardcoreState state, const Letter& a);

// Bound updates. Return the vertices whose zone changed (at most two), so
// trackers can refresh activity locally.
struct BoundDelta {
  std::uint32_t changed[2] = {0, 0};
  std::uint32_t count = 0;
  void record(std::uint32_t v) { changed[count++] = v; }
};

BoundDelta gibbs_bound_apply(const Graph& g, HardcoreBound& b, const Letter& a);
BoundDelta dg_bound_apply(const Graph& g, HardcoreBound& b, const Letter& a);

// ---------------------------------------------------------------------------
// Active events

// Scratch recomputation of the active-event partition of a Gibbs bound:
// removal is active off C, addition is active for C-vertices without sure
// neighbors and for uncertain vertices whose whole neighborhood is absent.
struct ActivePartition {
  std::vector<std::uint32_t> removal;  // V_r
  std::vector<std::uint32_t> addition;  // V_a
};
ActivePartition active_partition(const Graph& g, const HardcoreBound& b);

struct ActivityFlip {
  std::uint32_t vertex;
  bool addition;    // which urn
  bool active_now;  // new flag value
};

// Active-event urns with exact per-letter weights; the two-urn conditional
// draw (sharp mass q, then addition vs removal urn by restricted base weight)
// lives here.
struct ActiveUrns {
  IndexedSet addition, removal;
  double addition_mass = 0;  // sum of add_weight over the addition urn
  double removal_mass = 0;   // sum of remove_weight over the removal urn
};

Letter draw_conditional(const Fugacities& fug, const ActiveUrns& urns, double sharp_q, Rng& rng);

// Bound plus incrementally-maintained active partition for the Gibbs chain.
// apply() advances the bound by one letter and refreshes the activity flags of
// the changed vertex and its neighbors only; an optional sink receives the
// flag flips so a union view over two trackers can stay in sync. The graph is
// borrowed and must outlive the tracker; the fugacities are owned.
class GibbsTracker {
 public:
  GibbsTracker(const Graph& g, Fugacities fug);

  const HardcoreBound& bound() const { return bound_; }
  const ActiveUrns& urns() const { return urns_; }
  const Graph& graph() const { return *g_; }
  const Fugacities& fugacities() const { return fug_; }

  bool is_active(const Letter& a) const {
    switch (a.kind) {
      case LetterKind::sharp: return true;
      case LetterKind::add: return urns_.addition.contains(a.vertex);
      case LetterKind::remove: return urns_.removal.contains(a.vertex);
      default: throw std::domain_error("letter not in the Gibbs alphabet");
    }
  }

  // D(Act \ {sharp}): base mass of the active non-delimiter letters.
  double active_mass() const {
    return (urns_.addition_mass + urns_.removal_mass) / g_->vertex_count();
  }

  bool has_inactive() const {
    const std::uint32_t n = g_->vertex_count();
    return urns_.addition.size() < n || urns_.removal.size() < n;
  }

  Letter draw_active(double sharp_q, Rng& rng) const {
    return draw_conditional(fug_, urns_, sharp_q, rng);
  }

  void apply(const Letter& a, std::vector<ActivityFlip>* sink = nullptr);

 private:
  void refresh(std::uint32_t v, std::vector<ActivityFlip>* sink);

  const Graph* g_;
  Fugacities fug_;
  HardcoreBound bound_;
  ActiveUrns urns_;
};

// Union of the active sets of two trackers (the old and new chains of the
// doubling pass), maintained from their flip streams. Vertices are
// refcounted per urn; the draw normalizes over the union exactly.
class GibbsPairView {
 public:
  GibbsPairView(const GibbsTracker& a, const GibbsTracker& b);

  void absorb(const std::vector<ActivityFlip>& flips);
  Letter draw_active(double sharp_q, Rng& rng) const {
    return draw_conditional(*fug_, urns_, sharp_q, rng);
  }

 private:
  void bump(std::uint32_t v, bool addition, int delta);

  const Fugacities* fug_;
  std::uint32_t n_;
  std::vector<std::uint8_t> add_refs_, rem_refs_;
  ActiveUrns urns_;
};

// ---------------------------------------------------------------------------
// Automata

// Both samplers expose the same contract: deterministic action x.a, bound
// operator, base event distribution, alphabet enumeration, and (for the Gibbs
// chain) the tracker used by the skipping engines.
class GibbsAutomaton {
 public:
  using State = HardcoreState;
  using Bound = HardcoreBound;
  using Tracker = GibbsTracker;
  using PairView = GibbsPairView;

  GibbsAutomaton(const Graph& g, Fugacities fug);

  const Graph& graph() const { return *g_; }
  const Fugacities& fugacities() const { return fug_; }

  bool in_alphabet(const Letter& a) const {
    if (a.kind == LetterKind::sharp) return true;
    if (a.vertex >= g_->vertex_count()) return false;
    return a.kind == LetterKind::add || a.kind == LetterKind::remove;
  }
  std::size_t alphabet_size() const { return 2 * g_->vertex_count(); }
  template <typename F>
  void for_each_letter(F&& f) const {
    for (std::uint32_t v = 0; v < g_->vertex_count(); ++v) {
      f(Letter::make_add(v));
      f(Letter::make_remove(v));
    }
  }
  double base_weight(const Letter& a) const;

  State act(State x, const Letter& a) const { return gibbs_apply(*g_, std::move(x), a); }
  Bound top() const { return HardcoreBound(*g_); }
  void bound_apply(Bound& b, const Letter& a) const { gibbs_bound_apply(*g_, b, a); }
  std::optional<State> as_singleton(const Bound& b) const { return b.as_singleton(); }

  Letter draw_base(Rng& rng) const;
  Tracker tracker() const { return GibbsTracker(*g_, fug_); }

  std::vector<State> enumerate_states() const;

 private:
  const Graph* g_;
  Fugacities fug_;
};

class DyerGreenhillAutomaton {
 public:
  using State = HardcoreState;
  using Bound = HardcoreBound;

  DyerGreenhillAutomaton(const Graph& g, Fugacities fug, double swap_prob);

  const Graph& graph() const { return *g_; }
  const Fugacities& fugacities() const { return fug_; }
  double swap_prob() const { return swap_prob_; }

  bool in_alphabet(const Letter& a) const {
    if (a.kind == LetterKind::sharp) return true;
    if (a.vertex >= g_->vertex_count()) return false;
    if (a.kind == LetterKind::remove) return true;
    if (a.kind != LetterKind::add_swap) return false;
    // zero-weight letters are reduced out of the alphabet
    return a.swap ? swap_prob_ > 0 : swap_prob_ < 1;
  }
  std::size_t alphabet_size() const {
    const std::size_t swap_kinds = (swap_prob_ > 0 ? 1 : 0) + (swap_prob_ < 1 ? 1 : 0);
    return (1 + swap_kinds) * g_->vertex_count();
  }
  template <typename F>
  void for_each_letter(F&& f) const {
    for (std::uint32_t v = 0; v < g_->vertex_count(); ++v) {
      f(Letter::make_remove(v));
      if (swap_prob_ > 0) f(Letter::make_add_swap(v, true));
      if (swap_prob_ < 1) f(Letter::make_add_swap(v, false));
    }
  }
  double base_weight(const Letter& a) const;

  State act(State x, const Letter& a) const { return dg_apply(*g_, std::move(x), a); }
  Bound top() const { return HardcoreBound(*g_); }
  void bound_apply(Bound& b, const Letter& a) const { dg_bound_apply(*g_, b, a); }
  std::optional<State> as_singleton(const Bound& b) const { return b.as_singleton(); }

  Letter draw_base(Rng& rng) const;

  std::vector<State> enumerate_states() const;

 private:
  const Graph* g_;
  Fugacities fug_;
  double swap_prob_;
};

// Backtracking enumeration of all independent sets (guarded: n <= 25).
std::vector<HardcoreState> enumerate_independent_sets_impl(const Graph& g);

}  // namespace cftp
