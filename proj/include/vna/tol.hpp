#pragma once

// Numerical tolerances used throughout the library. All structural
// identity checks are absolute in the operator norm unless noted.

namespace vna::tol {

// structural identities (self-adjointness, idempotence, resummation)
inline constexpr double eq = 1e-9;

// orthogonality of projections / cone positivity slack
inline constexpr double zero = 1e-10;

// eigenvalue clustering gap when merging near-degenerate spectra
inline constexpr double cluster = 1e-8;

// slack added to the large side of every inequality assertion
inline constexpr double ineq = 1e-9;

// support-rank cutoff, relative to the largest eigenvalue of the density
inline constexpr double rank_rel = 1e-10;

// threshold below which a transition probability counts as zero
inline constexpr double zero_pair = 1e-8;

// residual thresholds for reconstruction reports
inline constexpr double residual = 1e-7;

// agreement required between a canonicalized map and its source
inline constexpr double canon = 1e-7;

// equality of Jordan isomorphisms via their basis action
inline constexpr double iso_eq = 1e-8;

} // namespace vna::tol
