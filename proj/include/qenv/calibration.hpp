#pragma once

namespace qenv {

// Reference residual floors for the two-Pauli infeasibility evidence,
// measured once with tools/calibrate (2000 restarts, default budgets,
// seed 1234) and recorded here. Acceptance checks use half these values.

/// Floor of the d=2 dilation objective over the two-Pauli targets
/// x in {0.1, 0.5, 0.9} (minimum across the three, attained at x=0.9).
inline constexpr double kTwoPauliDilationFloor = 3.825815e-5;

/// Floor of the g1..g11 polynomial-system residual.
inline constexpr double kTwoPauliPolyFloor = 2.706380e-1;

} // namespace qenv
