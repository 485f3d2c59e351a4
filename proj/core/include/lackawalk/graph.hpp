#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lackawalk {

using Vertex = std::size_t;

/// Raised when a family's parameters cannot produce a connected regular graph.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a structural question cannot be settled by brute force at the
/// configured size limit and the graph carries no certificate.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family {
  cycle,
  torus,
  complete,
  complete_bipartite,
  hypercube,
  johnson,
  paley,
  moebius_ladder,
  edge_list,
};

std::string to_string(Family family);
std::optional<Family> family_from_string(const std::string& name);

/// Parameters for one graph family instance. Only the fields relevant to the
/// family are read; use the named constructors.
struct GraphFamilySpec {
  Family family = Family::cycle;
  std::size_t n = 0;     // cycle, complete, complete_bipartite (side), johnson, moebius_ladder, edge_list
  std::size_t rows = 0;  // torus
  std::size_t cols = 0;  // torus
  std::size_t k = 0;     // johnson subset size
  std::size_t dim = 0;   // hypercube
  std::size_t q = 0;     // paley
  std::size_t declared_degree = 0;  // edge_list, 0 when not declared
  std::vector<std::pair<Vertex, Vertex>> edges;  // edge_list

  static GraphFamilySpec cycle(std::size_t n);
  static GraphFamilySpec torus(std::size_t rows, std::size_t cols);
  static GraphFamilySpec complete(std::size_t n);
  static GraphFamilySpec complete_bipartite(std::size_t side);
  static GraphFamilySpec hypercube(std::size_t dim);
  static GraphFamilySpec johnson(std::size_t n, std::size_t k);
  static GraphFamilySpec paley(std::size_t q);
  static GraphFamilySpec moebius_ladder(std::size_t n);
  static GraphFamilySpec edge_list(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges,
                                   std::size_t declared_degree = 0);

  /// Short human-readable label, e.g. "torus(4,4)".
  std::string describe() const;
};

/// Connected d-regular simple graph with ascending neighbor order.
///
/// Slot i of vertex x is its i-th neighbor; reverse_index(x, i) is the slot of
/// x in the neighbor list of that neighbor, which is what the flip-flop shift
/// needs. Immutable after construction.
class RegularGraph {
 public:
  /// Validates symmetry, simplicity, regularity and connectivity. Neighbor
  /// lists are sorted ascending regardless of input order.
  RegularGraph(std::vector<std::vector<Vertex>> neighbors, std::string name = "graph",
               std::optional<bool> arc_transitive_certificate = std::nullopt);

  std::size_t size() const noexcept { return neighbors_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t arc_count() const noexcept { return size() * degree_; }

  std::span<const Vertex> neighbors(Vertex x) const { return neighbors_[x]; }
  Vertex neighbor(Vertex x, std::size_t slot) const { return neighbors_[x][slot]; }
  std::size_t reverse_index(Vertex x, std::size_t slot) const {
    return reverse_[x * degree_ + slot];
  }
  /// Slot of y in the neighbor list of x, if adjacent.
  std::optional<std::size_t> slot_of(Vertex x, Vertex y) const;
  bool adjacent(Vertex x, Vertex y) const { return slot_of(x, y).has_value(); }

  const std::string& name() const noexcept { return name_; }

  /// Known answer to "is this graph locally arc-transitive", attached by the
  /// family generator. Empty for graphs without a family-level argument.
  std::optional<bool> arc_transitive_certificate() const noexcept { return certificate_; }

  /// Same graph with vertex v renamed to perm[v]. The certificate carries over.
  RegularGraph relabeled(std::span<const Vertex> perm) const;

 private:
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::size_t> reverse_;
  std::size_t degree_ = 0;
  std::string name_;
  std::optional<bool> certificate_;
};

RegularGraph build_graph(const GraphFamilySpec& spec);

/// Plain-text edge list: first line "N d", then one "u v" pair per line,
/// 0-indexed, each undirected edge listed once. Blank lines and lines starting
/// with '#' are ignored.
GraphFamilySpec read_edge_list(std::istream& in);
GraphFamilySpec read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const RegularGraph& g);

/// A graph with its unique marked vertex.
struct MarkedInstance {
  std::shared_ptr<const RegularGraph> graph;
  Vertex marked = 0;

  MarkedInstance(std::shared_ptr<const RegularGraph> g, Vertex m);
  MarkedInstance(RegularGraph g, Vertex m);

  std::size_t size() const noexcept { return graph->size(); }
  std::size_t degree() const noexcept { return graph->degree(); }
  std::string describe() const;
};

// --- automorphisms -------------------------------------------------------

inline constexpr std::size_t kDefaultBruteForceLimit = 16;

bool is_automorphism(const RegularGraph& g, std::span<const Vertex> perm);

/// Backtracking search for an automorphism with sigma(fixed) = fixed and
/// sigma(from) = to. Pruned by distance from the fixed vertex and adjacency
/// consistency with already assigned vertices.
std::optional<std::vector<Vertex>> find_automorphism(const RegularGraph& g, Vertex fixed,
                                                     Vertex from, Vertex to);

/// True iff for every tested vertex u, the stabilizer of u acts transitively
/// on its neighbors. Only `at` is tested when given. Above `brute_force_limit`
/// vertices the family certificate is returned; without one this throws
/// UndecidableError.
bool is_locally_arc_transitive(const RegularGraph& g, std::optional<Vertex> at = std::nullopt,
                               std::size_t brute_force_limit = kDefaultBruteForceLimit);

// --- marked-arc amplitude symmetry ----------------------------------------

/// Largest pairwise difference |a(m,i) - a(m,j)| over the d non-loop arcs of
/// the marked vertex, for a coin-space amplitude vector of length N(d+1).
double marked_arc_spread(std::span<const std::complex<double>> amplitudes,
                         const MarkedInstance& inst);

bool verify_marked_arc_symmetry(std::span<const std::complex<double>> amplitudes,
                                const MarkedInstance& inst, double tol);

}  // namespace lackawalk
