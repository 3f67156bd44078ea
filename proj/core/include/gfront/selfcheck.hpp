#pragma once

#include <iosfwd>

namespace gfront {

/// Compact invariant/property battery behind the `check` CLI subcommand:
/// ghost rules, flow Jacobians and the phase-form cross-check, WENO linear
/// exactness and convergence order, Hamiltonian consistency/monotonicity,
/// planar-front exactness and rerun determinism. Prints one line per check;
/// returns true when everything passes.
bool run_self_checks(std::ostream& out);

}  // namespace gfront
