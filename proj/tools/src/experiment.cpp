#include "lackawalk_cli/experiment.hpp"

#include <stdexcept>

namespace lackawalk::cli {

GraphFamilySpec family_spec(const ExperimentConfig& cfg, std::optional<std::size_t> size) {
  if (!cfg.edges.empty()) {
    if (size) throw std::invalid_argument("--sizes cannot be combined with --edges");
    return read_edge_list_file(cfg.edges);
  }
  const auto family = family_from_string(cfg.family);
  if (!family) throw std::invalid_argument("unknown family '" + cfg.family + "'");
  const auto pick = [&](std::size_t value) { return size.value_or(value); };
  switch (*family) {
    case Family::cycle: return GraphFamilySpec::cycle(pick(cfg.n));
    case Family::torus:
      return size ? GraphFamilySpec::torus(*size, *size) : GraphFamilySpec::torus(cfg.rows, cfg.cols);
    case Family::complete: return GraphFamilySpec::complete(pick(cfg.n));
    case Family::complete_bipartite: return GraphFamilySpec::complete_bipartite(pick(cfg.n));
    case Family::hypercube: return GraphFamilySpec::hypercube(pick(cfg.dim));
    case Family::johnson: return GraphFamilySpec::johnson(pick(cfg.n), cfg.k);
    case Family::paley: return GraphFamilySpec::paley(pick(cfg.q));
    case Family::moebius_ladder: return GraphFamilySpec::moebius_ladder(pick(cfg.n));
    case Family::edge_list: throw std::invalid_argument("family edge_list needs --edges FILE");
  }
  throw std::invalid_argument("unknown family '" + cfg.family + "'");
}

MarkedInstance build_instance(const ExperimentConfig& cfg, std::optional<std::size_t> size) {
  auto g = build_graph(family_spec(cfg, size));
  if (cfg.mark >= g.size())
    throw std::invalid_argument("--mark " + std::to_string(cfg.mark) + " is not a vertex of a graph with " +
                                std::to_string(g.size()) + " vertices");
  return MarkedInstance(std::move(g), cfg.mark);
}

double resolved_ell(const ExperimentConfig& cfg, const MarkedInstance& inst) {
  if (cfg.ell) return *cfg.ell;
  return static_cast<double>(inst.degree()) / static_cast<double>(inst.size());
}

double resolved_s(const ExperimentConfig& cfg, const MarkedInstance& inst) {
  if (cfg.s) return *cfg.s;
  return 1.0 - resolved_ell(cfg, inst) / static_cast<double>(inst.degree());
}

CoinConfig coin_config(const ExperimentConfig& cfg, const MarkedInstance& inst) {
  return CoinConfig(inst.degree(), resolved_ell(cfg, inst));
}

std::vector<std::string> all_claims() { return {"thm1", "lem1", "lem2", "lem3", "facts", "thm2"}; }

}  // namespace lackawalk::cli
