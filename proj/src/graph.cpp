#include "cftp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cftp {

Graph::Graph(std::uint32_t n,
             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges)
    : n_(n) {
  if (n > kMaxVertices)
    throw std::domain_error("graph too large: " + std::to_string(n) + " vertices (max " +
                            std::to_string(kMaxVertices) + ")");
  neighbors_.resize(n);
  neighbor_sets_.assign(n, VertexSet(n));
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw std::domain_error("edge endpoint out of range: " + std::to_string(u) + " " +
                              std::to_string(v));
    if (u == v) throw std::domain_error("self-loop at vertex " + std::to_string(u));
    if (neighbor_sets_[u].contains(v))
      throw std::domain_error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    neighbor_sets_[u].insert(v);
    neighbor_sets_[v].insert(u);
    neighbors_[u].push_back(v);
    neighbors_[v].push_back(u);
    ++edge_count_;
  }
  for (auto& adj : neighbors_) std::sort(adj.begin(), adj.end());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count_);
  for (std::uint32_t u = 0; u < n_; ++u)
    for (std::uint32_t v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph star(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) edges.emplace_back(0, i);
  return Graph(n + 1, edges);
}

Graph barabasi_albert(std::uint32_t n, Rng& rng) {
  if (n < 5) throw std::domain_error("barabasi_albert requires n >= 5");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint64_t> degree(n, 0);
  for (std::uint32_t u = 0; u < 5; ++u)
    for (std::uint32_t v = u + 1; v < 5; ++v) {
      edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  std::uint64_t degree_sum = 20;
  for (std::uint32_t v = 5; v < n; ++v) {
    // Two distinct targets, each degree-proportional among vertices 0..v-1;
    // redraw on collision, degrees updated only after both edges are placed.
    auto draw_target = [&]() {
      std::uint64_t t = rng.below(degree_sum);
      std::uint32_t w = 0;
      while (t >= degree[w]) t -= degree[w++];
      return w;
    };
    const std::uint32_t w1 = draw_target();
    std::uint32_t w2 = draw_target();
    while (w2 == w1) w2 = draw_target();
    edges.emplace_back(std::min(v, w1), std::max(v, w1));
    edges.emplace_back(std::min(v, w2), std::max(v, w2));
    degree[v] += 2;
    degree[w1] += 1;
    degree[w2] += 1;
    degree_sum += 4;
  }
  return Graph(n, edges);
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_edge_list_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::uint32_t n = 0;
  bool have_header = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      long long count = -1;
      if (!(ls >> tag >> count) || tag != "n" || count < 0)
        parse_fail(origin, lineno, "expected header 'n <vertex-count>'");
      std::string extra;
      if (ls >> extra) parse_fail(origin, lineno, "trailing tokens after header");
      n = static_cast<std::uint32_t>(count);
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    if (!(ls >> u >> v) || u < 0 || v < 0) parse_fail(origin, lineno, "malformed edge line");
    std::string extra;
    if (ls >> extra) parse_fail(origin, lineno, "trailing tokens after edge");
    if (u >= n || v >= n) parse_fail(origin, lineno, "vertex id out of range");
    if (u == v) parse_fail(origin, lineno, "self-loop");
    for (const auto& e : edges)
      if ((e.first == u && e.second == v) || (e.first == v && e.second == u))
        parse_fail(origin, lineno, "duplicate edge");
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  if (!have_header) parse_fail(origin, 1, "missing header 'n <vertex-count>'");
  return Graph(n, edges);
}

std::string format_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (auto [u, v] : g.edges())
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list_text(ss.str(), path);
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_edge_list(g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cftp
