#include "cftp/hardcore.hpp"

#include <cmath>

namespace cftp {

std::string to_string(const Letter& a) {
  switch (a.kind) {
    case LetterKind::remove: return "rem(" + std::to_string(a.vertex) + ")";
    case LetterKind::add: return "add(" + std::to_string(a.vertex) + ")";
    case LetterKind::add_swap:
      return "swap(" + std::to_string(a.vertex) + (a.swap ? ",s)" : ",n)");
    case LetterKind::sharp: return "#";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Fugacities

Fugacities::Fugacities(std::vector<double> lambda) : lambda_(std::move(lambda)) {
  add_w_.reserve(lambda_.size());
  rem_w_.reserve(lambda_.size());
  for (double l : lambda_) {
    if (!(l > 0) || !std::isfinite(l))
      throw std::domain_error("fugacities must be positive and finite");
    const double aw = l / (l + 1);
    const double rw = 1 / (l + 1);
    add_w_.push_back(aw);
    rem_w_.push_back(rw);
    total_add_w_ += aw;
    total_rem_w_ += rw;
    if (aw > max_add_w_) max_add_w_ = aw;
    if (rw > max_rem_w_) max_rem_w_ = rw;
  }
}

// ---------------------------------------------------------------------------
// Bound

HardcoreBound::HardcoreBound(const Graph& g)
    : sure_(g.vertex_count()),
      uncertain_(g.vertex_count()),
      n_sure_(g.vertex_count(), 0),
      n_uncertain_(g.vertex_count(), 0),
      uncertain_count_(g.vertex_count()) {
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    uncertain_.insert(v);
    n_uncertain_[v] = static_cast<std::uint16_t>(g.degree(v));
  }
}

bool HardcoreBound::set_zone(const Graph& g, std::uint32_t v, Zone z) {
  const Zone from = zone(v);
  if (from == z) return false;
  if (from == Zone::sure) sure_.erase(v);
  if (from == Zone::uncertain) {
    uncertain_.erase(v);
    --uncertain_count_;
  }
  if (z == Zone::sure) sure_.insert(v);
  if (z == Zone::uncertain) {
    uncertain_.insert(v);
    ++uncertain_count_;
  }
  for (std::uint32_t w : g.neighbors(v)) {
    if (from == Zone::sure) --n_sure_[w];
    if (from == Zone::uncertain) --n_uncertain_[w];
    if (z == Zone::sure) ++n_sure_[w];
    if (z == Zone::uncertain) ++n_uncertain_[w];
  }
  return true;
}

void HardcoreBound::check_counters(const Graph& g) const {
  if (sure_.intersects(uncertain_)) debug_check_failed("sure and uncertain overlap");
  std::uint32_t dcount = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    std::uint32_t ns = 0, nd = 0;
    for (std::uint32_t w : g.neighbors(v)) {
      if (sure_.contains(w)) ++ns;
      if (uncertain_.contains(w)) ++nd;
    }
    if (ns != n_sure_[v] || nd != n_uncertain_[v]) debug_check_failed("stale neighbor counter");
    if (sure_.contains(v)) {
      if (ns != 0) debug_check_failed("sure set is not independent");
    } else if (uncertain_.contains(v)) {
      ++dcount;
    }
  }
  if (dcount != uncertain_count_) debug_check_failed("stale uncertain cardinality");
}

// ---------------------------------------------------------------------------
// Actions

HardcoreState gibbs_apply(const Graph& g, HardcoreState state, const Letter& a) {
  switch (a.kind) {
    case LetterKind::sharp:
      return state;
    case LetterKind::remove:
      state.erase(a.vertex);
      return state;
    case LetterKind::add:
      if (!g.neighbor_set(a.vertex).intersects(state)) state.insert(a.vertex);
      return state;
    default:
      throw std::domain_error("letter not in the Gibbs alphabet: " + to_string(a));
  }
}

HardcoreState dg_apply(const Graph& g, HardcoreState state, const Letter& a) {
  switch (a.kind) {
    case LetterKind::sharp:
      return state;
    case LetterKind::remove:
      state.erase(a.vertex);
      return state;
    case LetterKind::add_swap: {
      std::uint32_t occupied = 0, unique_nbr = 0;
      for (std::uint32_t w : g.neighbors(a.vertex)) {
        if (state.contains(w)) {
          if (++occupied > 1) break;
          unique_nbr = w;
        }
      }
      if (occupied == 0) {
        state.insert(a.vertex);
      } else if (occupied == 1 && a.swap) {
        state.erase(unique_nbr);
        state.insert(a.vertex);
      }
      return state;
    }
    default:
      throw std::domain_error("letter not in the swap-chain alphabet: " + to_string(a));
  }
}

// ---------------------------------------------------------------------------
// Bound updates

BoundDelta gibbs_bound_apply(const Graph& g, HardcoreBound& b, const Letter& a) {
  BoundDelta d;
  switch (a.kind) {
    case LetterKind::sharp:
      break;
    case LetterKind::remove:
      if (b.set_zone(g, a.vertex, Zone::absent)) d.record(a.vertex);
      break;
    case LetterKind::add: {
      const std::uint32_t v = a.vertex;
      if (b.sure_neighbors(v) == 0 && b.uncertain_neighbors(v) == 0) {
        // every candidate set gains v
        if (b.set_zone(g, v, Zone::sure)) d.record(v);
      } else if (b.sure_neighbors(v) == 0 && b.zone(v) == Zone::absent) {
        // the addition succeeds for some candidates only
        b.set_zone(g, v, Zone::uncertain);
        d.record(v);
      }
      break;
    }
    default:
      throw std::domain_error("letter not in the Gibbs alphabet: " + to_string(a));
  }
#ifdef CFTP_EXPENSIVE_CHECKS
  b.check_counters(g);
#endif
  return d;
}

BoundDelta dg_bound_apply(const Graph& g, HardcoreBound& b, const Letter& a) {
  BoundDelta d;
  switch (a.kind) {
    case LetterKind::sharp:
      break;
    case LetterKind::remove:
      if (b.set_zone(g, a.vertex, Zone::absent)) d.record(a.vertex);
      break;
    case LetterKind::add_swap: {
      const std::uint32_t v = a.vertex;
      const std::uint32_t ks = b.sure_neighbors(v);
      const std::uint32_t ku = b.uncertain_neighbors(v);
      if (!a.swap) {
        // no-swap branch behaves exactly like a Gibbs addition
        if (ks == 0 && ku == 0) {
          if (b.set_zone(g, v, Zone::sure)) d.record(v);
        } else if (ks == 0 && b.zone(v) == Zone::absent) {
          b.set_zone(g, v, Zone::uncertain);
          d.record(v);
        }
        break;
      }
      auto find_neighbor_in = [&](Zone z) {
        for (std::uint32_t w : g.neighbors(v))
          if (b.zone(w) == z) return w;
        debug_check_failed("neighbor counters disagree with zones");
      };
      if (ks == 0 && ku == 0) {
        if (b.set_zone(g, v, Zone::sure)) d.record(v);
      } else if (ks == 1 && ku == 0) {
        // unique sure neighbor: every candidate swaps it for v
        const std::uint32_t u = find_neighbor_in(Zone::sure);
        b.set_zone(g, u, Zone::absent);
        d.record(u);
        b.set_zone(g, v, Zone::sure);
        d.record(v);
      } else if (ks == 0 && ku == 1) {
        // unique uncertain neighbor u: candidates without u add v, candidates
        // with u swap it out, so v is in all and u in none afterwards
        const std::uint32_t u = find_neighbor_in(Zone::uncertain);
        b.set_zone(g, u, Zone::absent);
        d.record(u);
        b.set_zone(g, v, Zone::sure);
        d.record(v);
      } else if (ks == 0) {  // ku >= 2
        if (b.zone(v) == Zone::absent) {
          b.set_zone(g, v, Zone::uncertain);
          d.record(v);
        }
      } else if (ks == 1) {  // ku >= 1
        // the swap fires only for candidates whose sole occupied neighbor is
        // the sure one, so both u and v end up uncertain
        const std::uint32_t u = find_neighbor_in(Zone::sure);
        b.set_zone(g, u, Zone::uncertain);
        d.record(u);
        if (b.zone(v) == Zone::absent) {
          b.set_zone(g, v, Zone::uncertain);
          d.record(v);
        }
      }
      // ks >= 2: blocked for every candidate
      break;
    }
    default:
      throw std::domain_error("letter not in the swap-chain alphabet: " + to_string(a));
  }
#ifdef CFTP_EXPENSIVE_CHECKS
  b.check_counters(g);
#endif
  return d;
}

// ---------------------------------------------------------------------------
// Active events

ActivePartition active_partition(const Graph& g, const HardcoreBound& b) {
  ActivePartition p;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const Zone z = b.zone(v);
    if (z != Zone::absent) p.removal.push_back(v);
    const bool add_active = (z == Zone::absent && b.sure_neighbors(v) == 0) ||
                            (z == Zone::uncertain && b.sure_neighbors(v) == 0 &&
                             b.uncertain_neighbors(v) == 0);
    if (add_active) p.addition.push_back(v);
  }
  return p;
}

Letter draw_conditional(const Fugacities& fug, const ActiveUrns& urns, double sharp_q, Rng& rng) {
  const double active = (urns.addition_mass + urns.removal_mass) / fug.size();
  const double z = sharp_q + (1 - sharp_q) * active;
  if (!(z > 0)) throw StuckChainError();
  if (sharp_q > 0 && rng.uniform01() * z < sharp_q) return Letter::make_sharp();
  const double total = urns.addition_mass + urns.removal_mass;
  if (!(total > 0)) throw StuckChainError();
  if (rng.uniform01() * total < urns.addition_mass) {
    while (true) {
      const std::uint32_t v = urns.addition.pick(rng);
      if (rng.uniform01() * fug.max_add_weight() < fug.add_weight(v)) return Letter::make_add(v);
    }
  }
  while (true) {
    const std::uint32_t v = urns.removal.pick(rng);
    if (rng.uniform01() * fug.max_remove_weight() < fug.remove_weight(v))
      return Letter::make_remove(v);
  }
}

GibbsTracker::GibbsTracker(const Graph& g, Fugacities fug)
    : g_(&g), fug_(std::move(fug)), bound_(g),
      urns_{IndexedSet(g.vertex_count()), IndexedSet(g.vertex_count())} {
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) refresh(v, nullptr);
}

void GibbsTracker::refresh(std::uint32_t v, std::vector<ActivityFlip>* sink) {
  const Zone z = bound_.zone(v);
  const bool add_now = (z == Zone::absent && bound_.sure_neighbors(v) == 0) ||
                       (z == Zone::uncertain && bound_.sure_neighbors(v) == 0 &&
                        bound_.uncertain_neighbors(v) == 0);
  const bool rem_now = z != Zone::absent;
  if (add_now != urns_.addition.contains(v)) {
    if (add_now) {
      urns_.addition.insert(v);
      urns_.addition_mass += fug_.add_weight(v);
    } else {
      urns_.addition.erase(v);
      urns_.addition_mass -= fug_.add_weight(v);
    }
    if (sink) sink->push_back({v, true, add_now});
  }
  if (rem_now != urns_.removal.contains(v)) {
    if (rem_now) {
      urns_.removal.insert(v);
      urns_.removal_mass += fug_.remove_weight(v);
    } else {
      urns_.removal.erase(v);
      urns_.removal_mass -= fug_.remove_weight(v);
    }
    if (sink) sink->push_back({v, false, rem_now});
  }
}

void GibbsTracker::apply(const Letter& a, std::vector<ActivityFlip>* sink) {
  const BoundDelta d = gibbs_bound_apply(*g_, bound_, a);
  for (std::uint32_t i = 0; i < d.count; ++i) {
    const std::uint32_t v = d.changed[i];
    refresh(v, sink);
    for (std::uint32_t w : g_->neighbors(v)) refresh(w, sink);
  }
}

GibbsPairView::GibbsPairView(const GibbsTracker& a, const GibbsTracker& b)
    : fug_(&a.fugacities()),
      n_(a.graph().vertex_count()),
      add_refs_(n_, 0),
      rem_refs_(n_, 0),
      urns_{IndexedSet(n_), IndexedSet(n_)} {
  for (const GibbsTracker* t : {&a, &b}) {
    const ActiveUrns& u = t->urns();
    for (std::uint32_t i = 0; i < u.addition.size(); ++i) bump(u.addition.at(i), true, +1);
    for (std::uint32_t i = 0; i < u.removal.size(); ++i) bump(u.removal.at(i), false, +1);
  }
}

void GibbsPairView::bump(std::uint32_t v, bool addition, int delta) {
  std::uint8_t& ref = addition ? add_refs_[v] : rem_refs_[v];
  const std::uint8_t before = ref;
  ref = static_cast<std::uint8_t>(ref + delta);
  if (addition) {
    if (before == 0 && ref > 0) {
      urns_.addition.insert(v);
      urns_.addition_mass += fug_->add_weight(v);
    } else if (before > 0 && ref == 0) {
      urns_.addition.erase(v);
      urns_.addition_mass -= fug_->add_weight(v);
    }
  } else {
    if (before == 0 && ref > 0) {
      urns_.removal.insert(v);
      urns_.removal_mass += fug_->remove_weight(v);
    } else if (before > 0 && ref == 0) {
      urns_.removal.erase(v);
      urns_.removal_mass -= fug_->remove_weight(v);
    }
  }
}

void GibbsPairView::absorb(const std::vector<ActivityFlip>& flips) {
  for (const ActivityFlip& f : flips) bump(f.vertex, f.addition, f.active_now ? +1 : -1);
}

// ---------------------------------------------------------------------------
// Automata

GibbsAutomaton::GibbsAutomaton(const Graph& g, Fugacities fug) : g_(&g), fug_(std::move(fug)) {
  if (fug_.size() != g.vertex_count())
    throw std::domain_error("fugacity vector size does not match the graph");
}

double GibbsAutomaton::base_weight(const Letter& a) const {
  if (a.kind == LetterKind::sharp) return 0.0;
  if (!in_alphabet(a)) throw std::domain_error("letter not in the Gibbs alphabet: " + to_string(a));
  const double n = g_->vertex_count();
  return a.kind == LetterKind::add ? fug_.add_weight(a.vertex) / n
                                   : fug_.remove_weight(a.vertex) / n;
}

Letter GibbsAutomaton::draw_base(Rng& rng) const {
  const double total = fug_.total_add_weight() + fug_.total_remove_weight();
  if (rng.uniform01() * total < fug_.total_add_weight()) {
    while (true) {
      const std::uint32_t v = static_cast<std::uint32_t>(rng.below(g_->vertex_count()));
      if (rng.uniform01() * fug_.max_add_weight() < fug_.add_weight(v)) return Letter::make_add(v);
    }
  }
  while (true) {
    const std::uint32_t v = static_cast<std::uint32_t>(rng.below(g_->vertex_count()));
    if (rng.uniform01() * fug_.max_remove_weight() < fug_.remove_weight(v))
      return Letter::make_remove(v);
  }
}

std::vector<HardcoreState> GibbsAutomaton::enumerate_states() const {
  return enumerate_independent_sets_impl(*g_);
}

DyerGreenhillAutomaton::DyerGreenhillAutomaton(const Graph& g, Fugacities fug, double swap_prob)
    : g_(&g), fug_(std::move(fug)), swap_prob_(swap_prob) {
  if (fug_.size() != g.vertex_count())
    throw std::domain_error("fugacity vector size does not match the graph");
  if (!(swap_prob >= 0 && swap_prob <= 1))
    throw std::domain_error("swap probability must lie in [0,1]");
}

double DyerGreenhillAutomaton::base_weight(const Letter& a) const {
  if (a.kind == LetterKind::sharp) return 0.0;
  if (!in_alphabet(a))
    throw std::domain_error("letter not in the swap-chain alphabet: " + to_string(a));
  const double n = g_->vertex_count();
  if (a.kind == LetterKind::remove) return fug_.remove_weight(a.vertex) / n;
  const double coin = a.swap ? swap_prob_ : 1 - swap_prob_;
  return coin * fug_.add_weight(a.vertex) / n;
}

Letter DyerGreenhillAutomaton::draw_base(Rng& rng) const {
  const double total = fug_.total_add_weight() + fug_.total_remove_weight();
  if (rng.uniform01() * total < fug_.total_add_weight()) {
    while (true) {
      const std::uint32_t v = static_cast<std::uint32_t>(rng.below(g_->vertex_count()));
      if (rng.uniform01() * fug_.max_add_weight() < fug_.add_weight(v))
        return Letter::make_add_swap(v, rng.bernoulli(swap_prob_));
    }
  }
  while (true) {
    const std::uint32_t v = static_cast<std::uint32_t>(rng.below(g_->vertex_count()));
    if (rng.uniform01() * fug_.max_remove_weight() < fug_.remove_weight(v))
      return Letter::make_remove(v);
  }
}

std::vector<HardcoreState> DyerGreenhillAutomaton::enumerate_states() const {
  return enumerate_independent_sets_impl(*g_);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void enumerate_rec(const Graph& g, std::uint32_t v, std::uint32_t mask, std::uint32_t blocked,
                   const std::vector<std::uint32_t>& nbr_masks,
                   std::vector<HardcoreState>& out) {
  if (v == g.vertex_count()) {
    HardcoreState s(g.vertex_count());
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
      if ((mask >> i) & 1u) s.insert(i);
    out.push_back(std::move(s));
    return;
  }
  enumerate_rec(g, v + 1, mask, blocked, nbr_masks, out);
  if (!((blocked >> v) & 1u))
    enumerate_rec(g, v + 1, mask | (1u << v), blocked | nbr_masks[v], nbr_masks, out);
}

}  // namespace

std::vector<HardcoreState> enumerate_independent_sets_impl(const Graph& g) {
  if (g.vertex_count() > 25)
    throw std::domain_error("independent-set enumeration limited to 25 vertices, got " +
                            std::to_string(g.vertex_count()));
  std::vector<std::uint32_t> nbr_masks(g.vertex_count(), 0);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t w : g.neighbors(v)) nbr_masks[v] |= 1u << w;
  std::vector<HardcoreState> out;
  enumerate_rec(g, 0, 0, 0, nbr_masks, out);
  return out;
}

}  // namespace cftp
