#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

#include "cftp/rng.hpp"

namespace cftp {

// Fixed-universe bitset over vertex ids 0..n-1. States and bounds of the
// hard-core chains are held in these; membership and popcount are the inner
// loop, so everything stays word-based.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::uint32_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::uint32_t universe() const { return universe_; }

  bool contains(std::uint32_t v) const {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void insert(std::uint32_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(std::uint32_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  VertexSet union_with(const VertexSet& other) const {
    VertexSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<std::uint32_t>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = universe_;
    for (std::uint64_t w : words_) h = h * 0x100000001b3ULL ^ w;
    return h;
  }

 private:
  std::uint32_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// Dynamic vertex subset with O(1) insert/erase/uniform pick: a packed array
// plus a position index. Backs the active-event urns.
class IndexedSet {
 public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  IndexedSet() = default;
  explicit IndexedSet(std::uint32_t universe) : pos_(universe, npos) {}

  bool contains(std::uint32_t v) const { return pos_[v] != npos; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(items_.size()); }
  bool empty() const { return items_.empty(); }
  std::uint32_t at(std::uint32_t i) const { return items_[i]; }

  void insert(std::uint32_t v) {
    if (pos_[v] != npos) return;
    pos_[v] = size();
    items_.push_back(v);
  }
  void erase(std::uint32_t v) {
    const std::uint32_t p = pos_[v];
    if (p == npos) return;
    const std::uint32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[v] = npos;
  }

  std::uint32_t pick(Rng& rng) const {
    return items_[rng.below(items_.size())];
  }

 private:
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace cftp

template <>
struct std::hash<cftp::VertexSet> {
  std::size_t operator()(const cftp::VertexSet& s) const { return s.hash(); }
};
