#ifndef STAP_CLI_COMMANDS_HPP
#define STAP_CLI_COMMANDS_HPP

#include <ostream>
#include <string>

#include "stap/cli/config.hpp"

namespace stap::cli {

// Trajectory CSV (t, one column per basis and derived label, fidelity) plus a
// final_fidelity=<value> line on `out`.
int cmd_simulate(const RunConfig& config, std::ostream& out);

// (t, omega1/lambda, omega2/lambda) CSV with `samples` rows.
int cmd_pulses(const RunConfig& config, std::ostream& out);

// Grid CSV: one row per grid point, axis columns first, then one column per
// (protocol, observable, decay channel) combination. Cell results are computed
// by `workers` threads but written in grid order, so the bytes never depend on
// the worker count.
int cmd_sweep(const SweepConfig& config, int workers, std::ostream& out);

// Self-checks over the analytic layer, printed one PASS/FAIL line each.
// perturb_hcf flips the sign of one cavity-fiber coupling before the block
// consistency check; the check must then fail (mutation probe for the suite).
int cmd_verify(bool perturb_hcf, std::ostream& out);

}  // namespace stap::cli

#endif
