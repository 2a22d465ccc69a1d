#pragma once

#include "vna/states.hpp"

// The three transition probabilities on the normal state space and the
// metrics they induce. All functions are pure and safe to evaluate
// concurrently.

namespace vna {

// asymmetric transition probability mu(s_nu); not symmetric in general
double p0(const NormalState& mu, const NormalState& nu);

// Raggio transition probability <xi_mu, xi_nu> = tr(sqrt(rho) sqrt(sigma))
double p_r(const NormalState& mu, const NormalState& nu);

// Uhlmann transition probability, the fidelity (tr sqrt(sqrt(rho) sigma
// sqrt(rho)))^2, computed as the squared nuclear norm of sqrt(rho) sqrt(sigma)
double p_u(const NormalState& mu, const NormalState& nu);

// Bures distance sqrt(2 - 2 sqrt(P_U))
double d_b(const NormalState& mu, const NormalState& nu);

// cone metric ||xi_mu - xi_nu|| = sqrt(2 - 2 P_R)
double d2(const NormalState& mu, const NormalState& nu);

struct PairReport {
  double p0_fwd = 0;
  double p0_bwd = 0;
  double p_r = 0;
  double p_u = 0;
  double d1 = 0;
  double d2 = 0;
  double d_b = 0;
  bool chain_ok = false;       // P_U <= P_R <= sqrt(P_U) within slack
  bool zero_consistent = false; // the four zero predicates agree
};

PairReport audit_pair(const NormalState& mu, const NormalState& nu);

} // namespace vna
