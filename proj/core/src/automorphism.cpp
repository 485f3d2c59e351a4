#include <algorithm>
#include <limits>
#include <queue>

#include "lackawalk/graph.hpp"

namespace lackawalk {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs_distances(const RegularGraph& g, Vertex source) {
  std::vector<std::size_t> dist(g.size(), kUnassigned);
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop();
    for (auto y : g.neighbors(x)) {
      if (dist[y] == kUnassigned) {
        dist[y] = dist[x] + 1;
        frontier.push(y);
      }
    }
  }
  return dist;
}

class AutomorphismSearch {
 public:
  AutomorphismSearch(const RegularGraph& g, Vertex fixed)
      : g_(g), n_(g.size()), adjacent_(n_ * n_, false), dist_(bfs_distances(g, fixed)) {
    for (Vertex x = 0; x < n_; ++x)
      for (auto y : g.neighbors(x)) adjacent_[x * n_ + y] = true;
    // BFS order from the fixed vertex: every later vertex has an earlier neighbor.
    order_.reserve(n_);
    std::vector<Vertex> by_dist(n_);
    for (Vertex v = 0; v < n_; ++v) by_dist[v] = v;
    std::stable_sort(by_dist.begin(), by_dist.end(),
                     [&](Vertex a, Vertex b) { return dist_[a] < dist_[b]; });
    order_ = std::move(by_dist);
  }

  std::optional<std::vector<Vertex>> run(Vertex fixed, Vertex from, Vertex to) {
    if (dist_[from] != dist_[to]) return std::nullopt;
    image_.assign(n_, kUnassigned);
    used_.assign(n_, false);
    assign(fixed, fixed);
    if (from != fixed) {
      if (to == fixed) return std::nullopt;
      if (!consistent(from, to)) return std::nullopt;
      assign(from, to);
    }
    if (!extend(0)) return std::nullopt;
    return image_;
  }

 private:
  bool adj(Vertex a, Vertex b) const { return adjacent_[a * n_ + b]; }

  void assign(Vertex v, Vertex w) {
    image_[v] = w;
    used_[w] = true;
  }
  void unassign(Vertex v) {
    used_[image_[v]] = false;
    image_[v] = kUnassigned;
  }

  bool consistent(Vertex v, Vertex w) const {
    if (used_[w] || dist_[v] != dist_[w]) return false;
    for (Vertex u = 0; u < n_; ++u) {
      if (image_[u] == kUnassigned) continue;
      if (adj(u, v) != adj(image_[u], w)) return false;
    }
    return true;
  }

  bool extend(std::size_t pos) {
    while (pos < n_ && image_[order_[pos]] != kUnassigned) ++pos;
    if (pos == n_) return true;
    const Vertex v = order_[pos];

    // Candidates: neighbors of the image of some assigned neighbor of v.
    std::span<const Vertex> candidates;
    std::vector<Vertex> all;
    for (auto u : g_.neighbors(v)) {
      if (image_[u] != kUnassigned) {
        candidates = g_.neighbors(image_[u]);
        break;
      }
    }
    if (candidates.empty()) {
      all.resize(n_);
      for (Vertex w = 0; w < n_; ++w) all[w] = w;
      candidates = all;
    }

    for (auto w : candidates) {
      if (!consistent(v, w)) continue;
      assign(v, w);
      if (extend(pos + 1)) return true;
      unassign(v);
    }
    return false;
  }

  const RegularGraph& g_;
  std::size_t n_;
  std::vector<bool> adjacent_;
  std::vector<std::size_t> dist_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<bool> used_;
};

}  // namespace

bool is_automorphism(const RegularGraph& g, std::span<const Vertex> perm) {
  const auto n = g.size();
  if (perm.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto v : perm) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (Vertex x = 0; x < n; ++x)
    for (auto y : g.neighbors(x))
      if (!g.adjacent(perm[x], perm[y])) return false;
  return true;
}

std::optional<std::vector<Vertex>> find_automorphism(const RegularGraph& g, Vertex fixed,
                                                     Vertex from, Vertex to) {
  if (fixed >= g.size() || from >= g.size() || to >= g.size())
    throw std::out_of_range("find_automorphism: vertex out of range");
  AutomorphismSearch search(g, fixed);
  return search.run(fixed, from, to);
}

bool is_locally_arc_transitive(const RegularGraph& g, std::optional<Vertex> at,
                               std::size_t brute_force_limit) {
  if (at && *at >= g.size()) throw std::out_of_range("is_locally_arc_transitive: vertex out of range");
  if (g.size() > brute_force_limit) {
    if (const auto cert = g.arc_transitive_certificate()) return *cert;
    throw UndecidableError(g.name() + ": " + std::to_string(g.size()) +
                           " vertices exceeds the brute-force limit of " +
                           std::to_string(brute_force_limit) +
                           " and the graph has no arc-transitivity certificate; "
                           "undecidable at desk scale");
  }

  auto transitive_at = [&](Vertex u) {
    AutomorphismSearch search(g, u);
    const Vertex first = g.neighbor(u, 0);
    // Orbits partition the neighborhood, so reaching every neighbor from the
    // first one is enough.
    for (std::size_t i = 1; i < g.degree(); ++i) {
      const auto sigma = search.run(u, first, g.neighbor(u, i));
      if (!sigma || !is_automorphism(g, *sigma)) return false;
    }
    return true;
  };

  if (at) return transitive_at(*at);
  for (Vertex u = 0; u < g.size(); ++u)
    if (!transitive_at(u)) return false;
  return true;
}

}  // namespace lackawalk
