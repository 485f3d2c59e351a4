#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lackawalk/coined_walk.hpp"
#include "lackawalk/graph.hpp"

namespace lackawalk::cli {

/// Everything a subcommand needs. Unset optionals take the derived defaults
/// below, so s = 1 - ell/d holds exactly unless both are given.
struct ExperimentConfig {
  std::string family = "cycle";
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t k = 0;
  std::size_t dim = 0;
  std::size_t q = 0;
  std::string edges;  // edge-list file, implies family edge_list

  Vertex mark = 0;
  std::optional<double> ell;
  std::optional<double> s;
  std::optional<std::size_t> t_max;
  double c = 1.0;
  std::size_t stride = 1;

  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  std::size_t trials = 0;  // Monte Carlo trials for hitting-time, 0 = skip
  std::size_t n_random = 50;
  std::string out;         // empty = stdout
  std::string distances;   // optional CSV of walk distances (simulate)
  std::vector<std::string> claims;
  std::vector<std::size_t> sizes;
};

/// Family spec from the config; `size` overrides the family's size
/// parameter (n, k x k torus, hypercube dim, Paley q).
GraphFamilySpec family_spec(const ExperimentConfig& cfg, std::optional<std::size_t> size = std::nullopt);

MarkedInstance build_instance(const ExperimentConfig& cfg, std::optional<std::size_t> size = std::nullopt);

double resolved_ell(const ExperimentConfig& cfg, const MarkedInstance& inst);
double resolved_s(const ExperimentConfig& cfg, const MarkedInstance& inst);
CoinConfig coin_config(const ExperimentConfig& cfg, const MarkedInstance& inst);

std::vector<std::string> all_claims();

}  // namespace lackawalk::cli
