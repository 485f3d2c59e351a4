// lackawalk: batch runner for lackadaisical and interpolated quantum walks.
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "lackawalk_cli/commands.hpp"

using namespace lackawalk::cli;

int main(int argc, char** argv) {
  CLI::App app{"Lackadaisical and interpolated quantum walk experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");

  ExperimentConfig cfg;
  app.add_option("--family", cfg.family,
                 "cycle, torus, complete, complete_bipartite, hypercube, johnson, paley, moebius_ladder, edge_list");
  app.add_option("--n", cfg.n, "size for cycle, complete, complete_bipartite (side), johnson, moebius_ladder");
  app.add_option("--rows", cfg.rows, "torus rows");
  app.add_option("--cols", cfg.cols, "torus columns");
  app.add_option("--k", cfg.k, "johnson subset size");
  app.add_option("--dim", cfg.dim, "hypercube dimension");
  app.add_option("--q", cfg.q, "Paley prime power");
  app.add_option("--edges", cfg.edges, "edge-list file (first line 'N d', then 'u v' pairs)");
  app.add_option("--mark", cfg.mark, "marked vertex");
  app.add_option("--ell", cfg.ell, "self-loop weight (default d/N)");
  app.add_option("--s", cfg.s, "interpolation parameter (default 1 - ell/d)");
  app.add_option("--t-max", cfg.t_max, "last step (default ceil(2 sqrt(HT)))");
  app.add_option("--c", cfg.c, "multiplier in T0 = floor(c sqrt(HT))")->capture_default_str();
  app.add_option("--stride", cfg.stride, "trajectory rows every this many steps")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads")->envname("LACKAWALK_JOBS")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Monte Carlo trials for hitting-time (0 skips)");
  app.add_option("--random-states", cfg.n_random, "random states for lem2")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--distances", cfg.distances, "simulate: also write t,d_exact,d_embed,d_total here");
  app.add_option("--claims", cfg.claims, "thm1,lem1,lem2,lem3,facts,thm2")->delimiter(',');
  app.add_option("--sizes", cfg.sizes, "size list for sweep and thm2 (n, torus side, hypercube dim, Paley q)")
      ->delimiter(',');

  using Command = std::function<int(const ExperimentConfig&, std::ostream&, std::ostream&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"simulate", {"success probability trajectory as CSV", cmd_simulate}},
      {"verify", {"numerical checks as a JSON report array", cmd_verify}},
      {"spectrum", {"discriminant spectra and overlaps as JSON", cmd_spectrum}},
      {"sweep", {"per-size summary CSV", cmd_sweep}},
      {"hitting-time", {"classical and interpolated hitting times as JSON", cmd_hitting_time}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  CLI11_PARSE(app, argc, argv);

  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    if (cfg.jobs == 0) cfg.jobs = 1;
    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw std::runtime_error("cannot open " + cfg.out);
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;
    return commands.at(chosen).second(cfg, out, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "lackawalk " << chosen << ": " << e.what() << '\n';
    return 2;
  }
}
