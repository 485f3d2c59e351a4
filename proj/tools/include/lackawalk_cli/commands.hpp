#pragma once

#include <iosfwd>
#include <vector>

#include "lackawalk_cli/experiment.hpp"
#include "lackawalk_cli/reports.hpp"

namespace lackawalk::cli {

// Each cmd_* writes its product to `out`, progress and summaries to `log`,
// and returns the process exit code.

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
/// Exit code 0 iff every claim whose hypothesis is met passes.
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_spectrum(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_hitting_time(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);

std::vector<ClaimReport> run_claims(const ExperimentConfig& cfg);
Json spectrum_report(const ExperimentConfig& cfg);
Json hitting_time_report(const ExperimentConfig& cfg);
/// One row per entry of cfg.sizes, computed on up to cfg.jobs threads.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

}  // namespace lackawalk::cli
