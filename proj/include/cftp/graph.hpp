#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cftp/rng.hpp"
#include "cftp/vertex_set.hpp"

namespace cftp {

// Simple undirected graph, vertex ids 0..n-1. Adjacency is kept both as
// sorted neighbor lists (counter updates walk them) and as bitset rows
// (independence tests intersect them).
class Graph {
 public:
  static constexpr std::uint32_t kMaxVertices = 4096;

  Graph(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::uint32_t vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return edge_count_; }
  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(neighbors_[v].size());
  }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return neighbors_[v]; }
  const VertexSet& neighbor_set(std::uint32_t v) const { return neighbor_sets_[v]; }
  bool has_edge(std::uint32_t u, std::uint32_t v) const { return neighbor_sets_[u].contains(v); }

  // Edges once each, u < v, sorted; this is the wire order of the edge-list file.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::uint32_t n_ = 0;
  std::uint64_t edge_count_ = 0;
  std::vector<std::vector<std::uint32_t>> neighbors_;
  std::vector<VertexSet> neighbor_sets_;
};

// Hub 0 joined to leaves 1..n; star(0) degenerates to one isolated vertex.
Graph star(std::uint32_t n);

// Preferential attachment: 5-clique seed, then each new vertex attaches two
// edges to distinct targets drawn degree-proportionally (degrees frozen while
// the vertex places its own edges). Requires n >= 5.
Graph barabasi_albert(std::uint32_t n, Rng& rng);

// Edge-list file: header "n <count>", then one "u v" line per edge with
// u < v, LF terminated. Parse failures report the offending line number.
Graph read_edge_list(const std::string& path);
void write_edge_list(const Graph& g, const std::string& path);

Graph parse_edge_list_text(const std::string& text, const std::string& origin);
std::string format_edge_list(const Graph& g);

}  // namespace cftp
