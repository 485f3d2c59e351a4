#include "lackawalk/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace lackawalk {

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

[[noreturn]] void fail(const std::string& what) { throw GraphError(what); }

bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}

Adjacency cycle_adjacency(std::size_t n) {
  if (n < 3) fail("cycle(n) needs n >= 3, got n=" + std::to_string(n));
  Adjacency adj(n);
  for (Vertex x = 0; x < n; ++x) adj[x] = {(x + 1) % n, (x + n - 1) % n};
  return adj;
}

Adjacency torus_adjacency(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3)
    fail("torus(rows,cols) needs rows, cols >= 3 to stay simple and 4-regular");
  Adjacency adj(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      adj[r * cols + c] = {((r + 1) % rows) * cols + c, ((r + rows - 1) % rows) * cols + c,
                           r * cols + (c + 1) % cols, r * cols + (c + cols - 1) % cols};
    }
  }
  return adj;
}

Adjacency complete_adjacency(std::size_t n) {
  if (n < 2) fail("complete(n) needs n >= 2");
  Adjacency adj(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (x != y) adj[x].push_back(y);
  return adj;
}

Adjacency complete_bipartite_adjacency(std::size_t side) {
  if (side < 1) fail("complete_bipartite(n) needs n >= 1");
  Adjacency adj(2 * side);
  for (Vertex x = 0; x < side; ++x) {
    for (Vertex y = side; y < 2 * side; ++y) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  }
  return adj;
}

Adjacency hypercube_adjacency(std::size_t dim) {
  if (dim < 1 || dim > 20) fail("hypercube(dim) needs 1 <= dim <= 20");
  const std::size_t n = std::size_t{1} << dim;
  Adjacency adj(n);
  for (Vertex x = 0; x < n; ++x)
    for (std::size_t b = 0; b < dim; ++b) adj[x].push_back(x ^ (std::size_t{1} << b));
  return adj;
}

// k-subsets of {0..n-1} in lexicographic order, adjacent iff they share k-1 elements.
Adjacency johnson_adjacency(std::size_t n, std::size_t k) {
  if (k > n) fail("johnson(n,k) needs k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  if (n > 63) fail("johnson(n,k) supports n <= 63");
  if (k == 0 || k == n) fail("johnson(n,k) with k in {0,n} is a single vertex");
  std::vector<std::uint64_t> subsets;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (auto i : idx) mask |= std::uint64_t{1} << i;
    subsets.push_back(mask);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  Adjacency adj(subsets.size());
  for (Vertex x = 0; x < subsets.size(); ++x)
    for (Vertex y = 0; y < subsets.size(); ++y)
      if (x != y && static_cast<std::size_t>(std::popcount(subsets[x] & subsets[y])) == k - 1)
        adj[x].push_back(y);
  return adj;
}

Adjacency paley_adjacency(std::size_t q) {
  if (!is_prime(q))
    fail("paley(q) is built over prime fields only; q=" + std::to_string(q) + " is not prime");
  if (q % 4 != 1) fail("paley(q) needs q = 1 mod 4, got q=" + std::to_string(q));
  std::vector<bool> residue(q, false);
  for (std::size_t a = 1; a < q; ++a) residue[(a * a) % q] = true;
  Adjacency adj(q);
  for (Vertex x = 0; x < q; ++x)
    for (Vertex y = 0; y < q; ++y)
      if (x != y && residue[(x + q - y) % q]) adj[x].push_back(y);
  return adj;
}

Adjacency moebius_adjacency(std::size_t n) {
  if (n < 4 || n % 2 != 0) fail("moebius_ladder(n) needs even n >= 4");
  Adjacency adj(n);
  for (Vertex x = 0; x < n; ++x) adj[x] = {(x + 1) % n, (x + n - 1) % n, (x + n / 2) % n};
  return adj;
}

Adjacency edge_list_adjacency(const GraphFamilySpec& spec) {
  if (spec.n < 2) fail("edge list needs at least 2 vertices");
  Adjacency adj(spec.n);
  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto [u, v] : spec.edges) {
    if (u >= spec.n || v >= spec.n)
      fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) fail("self-loop at vertex " + std::to_string(u) + " in edge list");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      fail("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (spec.declared_degree != 0) {
    for (Vertex x = 0; x < spec.n; ++x)
      if (adj[x].size() != spec.declared_degree)
        fail("vertex " + std::to_string(x) + " has degree " + std::to_string(adj[x].size()) +
             ", header declares " + std::to_string(spec.declared_degree));
  }
  return adj;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::cycle: return "cycle";
    case Family::torus: return "torus";
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::hypercube: return "hypercube";
    case Family::johnson: return "johnson";
    case Family::paley: return "paley";
    case Family::moebius_ladder: return "moebius_ladder";
    case Family::edge_list: return "edge_list";
  }
  return "unknown";
}

std::optional<Family> family_from_string(const std::string& name) {
  for (auto f : {Family::cycle, Family::torus, Family::complete, Family::complete_bipartite,
                 Family::hypercube, Family::johnson, Family::paley, Family::moebius_ladder,
                 Family::edge_list}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

GraphFamilySpec GraphFamilySpec::cycle(std::size_t n) {
  GraphFamilySpec s;
  s.family = Family::cycle;
  s.n = n;
  return s;
}
GraphFamilySpec GraphFamilySpec::torus(std::size_t rows, std::size_t cols) {
  GraphFamilySpec s;
  s.family = Family::torus;
  s.rows = rows;
  s.cols = cols;
  return s;
}
GraphFamilySpec GraphFamilySpec::complete(std::size_t n) {
  GraphFamilySpec s;
  s.family = Family::complete;
  s.n = n;
  return s;
}
GraphFamilySpec GraphFamilySpec::complete_bipartite(std::size_t side) {
  GraphFamilySpec s;
  s.family = Family::complete_bipartite;
  s.n = side;
  return s;
}
GraphFamilySpec GraphFamilySpec::hypercube(std::size_t dim) {
  GraphFamilySpec s;
  s.family = Family::hypercube;
  s.dim = dim;
  return s;
}
GraphFamilySpec GraphFamilySpec::johnson(std::size_t n, std::size_t k) {
  GraphFamilySpec s;
  s.family = Family::johnson;
  s.n = n;
  s.k = k;
  return s;
}
GraphFamilySpec GraphFamilySpec::paley(std::size_t q) {
  GraphFamilySpec s;
  s.family = Family::paley;
  s.q = q;
  return s;
}
GraphFamilySpec GraphFamilySpec::moebius_ladder(std::size_t n) {
  GraphFamilySpec s;
  s.family = Family::moebius_ladder;
  s.n = n;
  return s;
}
GraphFamilySpec GraphFamilySpec::edge_list(std::size_t n,
                                           std::vector<std::pair<Vertex, Vertex>> edges,
                                           std::size_t declared_degree) {
  GraphFamilySpec s;
  s.family = Family::edge_list;
  s.n = n;
  s.edges = std::move(edges);
  s.declared_degree = declared_degree;
  return s;
}

std::string GraphFamilySpec::describe() const {
  const auto f = to_string(family);
  switch (family) {
    case Family::torus: return f + "(" + std::to_string(rows) + "," + std::to_string(cols) + ")";
    case Family::hypercube: return f + "(" + std::to_string(dim) + ")";
    case Family::johnson: return f + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
    case Family::paley: return f + "(" + std::to_string(q) + ")";
    case Family::edge_list:
      return f + "(" + std::to_string(n) + " vertices, " + std::to_string(edges.size()) + " edges)";
    default: return f + "(" + std::to_string(n) + ")";
  }
}

RegularGraph::RegularGraph(std::vector<std::vector<Vertex>> neighbors, std::string name,
                           std::optional<bool> arc_transitive_certificate)
    : neighbors_(std::move(neighbors)), name_(std::move(name)), certificate_(arc_transitive_certificate) {
  const std::size_t n = neighbors_.size();
  if (n < 2) fail(name_ + ": need at least 2 vertices");
  degree_ = neighbors_[0].size();
  if (degree_ == 0) fail(name_ + ": degree must be positive");

  for (Vertex x = 0; x < n; ++x) {
    auto& list = neighbors_[x];
    std::sort(list.begin(), list.end());
    if (list.size() != degree_)
      fail(name_ + ": not regular (vertex " + std::to_string(x) + " has degree " +
           std::to_string(list.size()) + ", expected " + std::to_string(degree_) + ")");
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      fail(name_ + ": repeated neighbor at vertex " + std::to_string(x));
    for (auto y : list) {
      if (y >= n) fail(name_ + ": neighbor index out of range at vertex " + std::to_string(x));
      if (y == x) fail(name_ + ": self-loop at vertex " + std::to_string(x));
    }
  }

  reverse_.resize(n * degree_);
  for (Vertex x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < degree_; ++i) {
      const auto back = slot_of(neighbors_[x][i], x);
      if (!back)
        fail(name_ + ": adjacency not symmetric between " + std::to_string(x) + " and " +
             std::to_string(neighbors_[x][i]));
      reverse_[x * degree_ + i] = *back;
    }
  }

  std::vector<bool> seen(n, false);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop();
    for (auto y : neighbors_[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        frontier.push(y);
      }
    }
  }
  if (reached != n)
    fail(name_ + ": disconnected (" + std::to_string(reached) + " of " + std::to_string(n) +
         " vertices reachable from 0)");
}

std::optional<std::size_t> RegularGraph::slot_of(Vertex x, Vertex y) const {
  const auto& list = neighbors_[x];
  const auto it = std::lower_bound(list.begin(), list.end(), y);
  if (it == list.end() || *it != y) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

RegularGraph RegularGraph::relabeled(std::span<const Vertex> perm) const {
  const std::size_t n = size();
  if (perm.size() != n) fail("relabel: permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto v : perm) {
    if (v >= n || hit[v]) fail("relabel: not a permutation");
    hit[v] = true;
  }
  Adjacency adj(n);
  for (Vertex x = 0; x < n; ++x)
    for (auto y : neighbors_[x]) adj[perm[x]].push_back(perm[y]);
  return RegularGraph(std::move(adj), name_ + "[relabeled]", certificate_);
}

RegularGraph build_graph(const GraphFamilySpec& spec) {
  const auto name = spec.describe();
  switch (spec.family) {
    case Family::cycle: return RegularGraph(cycle_adjacency(spec.n), name, true);
    case Family::torus:
      // Square tori are arc-transitive; rectangular ones generally are not.
      return RegularGraph(torus_adjacency(spec.rows, spec.cols), name,
                          spec.rows == spec.cols ? std::optional<bool>(true) : std::nullopt);
    case Family::complete: return RegularGraph(complete_adjacency(spec.n), name, true);
    case Family::complete_bipartite:
      return RegularGraph(complete_bipartite_adjacency(spec.n), name, true);
    case Family::hypercube: return RegularGraph(hypercube_adjacency(spec.dim), name, true);
    case Family::johnson: return RegularGraph(johnson_adjacency(spec.n, spec.k), name, true);
    case Family::paley: return RegularGraph(paley_adjacency(spec.q), name, true);
    case Family::moebius_ladder: return RegularGraph(moebius_adjacency(spec.n), name);
    case Family::edge_list: return RegularGraph(edge_list_adjacency(spec), name);
  }
  fail("unknown graph family");
}

GraphFamilySpec read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line(line)) fail("edge list: missing \"N d\" header");
  std::size_t n = 0, d = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> d)) fail("edge list: malformed header \"" + line + "\"");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (next_line(line)) {
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) fail("edge list: malformed edge line \"" + line + "\"");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (d == 0) fail("edge list: declared degree must be positive");
  if (edges.size() * 2 != n * d)
    fail("edge list: " + std::to_string(edges.size()) + " edges do not match N*d/2 = " +
         std::to_string(n * d / 2));
  return GraphFamilySpec::edge_list(n, std::move(edges), d);
}

GraphFamilySpec read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open edge list file " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const RegularGraph& g) {
  out << g.size() << ' ' << g.degree() << '\n';
  for (Vertex x = 0; x < g.size(); ++x)
    for (auto y : g.neighbors(x))
      if (x < y) out << x << ' ' << y << '\n';
}

MarkedInstance::MarkedInstance(std::shared_ptr<const RegularGraph> g, Vertex m)
    : graph(std::move(g)), marked(m) {
  if (!graph) throw std::invalid_argument("MarkedInstance: null graph");
  if (marked >= graph->size())
    throw std::out_of_range("MarkedInstance: marked vertex " + std::to_string(marked) +
                            " out of range for N=" + std::to_string(graph->size()));
}

MarkedInstance::MarkedInstance(RegularGraph g, Vertex m)
    : MarkedInstance(std::make_shared<const RegularGraph>(std::move(g)), m) {}

std::string MarkedInstance::describe() const {
  return graph->name() + " mark=" + std::to_string(marked);
}

double marked_arc_spread(std::span<const std::complex<double>> amplitudes,
                         const MarkedInstance& inst) {
  const std::size_t d = inst.degree();
  if (amplitudes.size() != inst.size() * (d + 1))
    throw std::invalid_argument("marked_arc_spread: state has dimension " +
                                std::to_string(amplitudes.size()) + ", expected N(d+1) = " +
                                std::to_string(inst.size() * (d + 1)));
  const auto block = amplitudes.subspan(inst.marked * (d + 1), d);
  double spread = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) spread = std::max(spread, std::abs(block[i] - block[j]));
  return spread;
}

bool verify_marked_arc_symmetry(std::span<const std::complex<double>> amplitudes,
                                const MarkedInstance& inst, double tol) {
  return marked_arc_spread(amplitudes, inst) <= tol;
}

}  // namespace lackawalk
