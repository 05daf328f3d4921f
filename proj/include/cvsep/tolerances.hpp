#pragma once

// Default numeric tolerances used across the library. Every comparison
// routine takes an explicit tolerance parameter; these are the defaults.

namespace cvsep::tol {

// One-sided / two-sided Jacobi sweeps stop once every off-diagonal
// coupling falls below this relative threshold.
inline constexpr double jacobi_convergence = 1e-13;

// A criterion counts as violated (entanglement detected) only when the
// violation exceeds this margin.
inline constexpr double detection = 1e-10;

// Slack allowed when testing positivity of gamma + i*Omega and related
// physicality conditions.
inline constexpr double physicality = 1e-9;

// Maximum allowed asymmetry |m_ij - m_ji| relative to the matrix scale.
inline constexpr double symmetry = 1e-12;

// Closed-form vs series agreement required of the Fock-family
// normalization constant (relative).
inline constexpr double normalization_crosscheck = 1e-10;

} // namespace cvsep::tol
