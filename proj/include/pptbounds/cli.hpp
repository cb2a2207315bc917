#ifndef PPTBOUNDS_CLI_HPP
#define PPTBOUNDS_CLI_HPP

#include <iosfwd>
#include <string>

#include "pptbounds/measures.hpp"

namespace pptbounds {

// Entry point behind tools/main.cpp, separated so tests can drive the
// commands in-process. Exit codes: 0 ok, 2 input error, 3 solver
// failure, 4 certificate failure.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// `name[:p1,p2]` grammar (rho_v, rho_alpha:a, ranktwo:p,theta, antisym3,
// maxent:d, ground:d) or a state-file path.
NamedState resolve_state_spec(const std::string &spec, double support_cutoff = 1e-10);

// Deterministic renderings (9 significant digits in machine formats).
std::string bounds_table(const BoundReport &rep);
std::string bounds_json(const BoundReport &rep);
std::string scan_alpha_csv(double from, double to, int steps, const SolveOptions &opts,
                           bool &any_solver_failure);

} // namespace pptbounds

#endif
