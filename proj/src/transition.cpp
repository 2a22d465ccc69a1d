#include "vna/transition.hpp"

#include <algorithm>

namespace vna {

namespace {

void require_same(const NormalState& mu, const NormalState& nu) {
  if (!(mu.algebra == nu.algebra))
    throw std::invalid_argument("transition probability: states on different algebras");
}

} // namespace

double p0(const NormalState& mu, const NormalState& nu) {
  require_same(mu, nu);
  return evaluate(mu, support_projection(nu).elem).real();
}

double p_r(const NormalState& mu, const NormalState& nu) {
  require_same(mu, nu);
  double s = 0.0;
  for (size_t k = 0; k < mu.blocks.size(); ++k)
    s += (sqrt_psd(mu.blocks[k]) * sqrt_psd(nu.blocks[k])).trace().real();
  return s;
}

double p_u(const NormalState& mu, const NormalState& nu) {
  require_same(mu, nu);
  double s = 0.0;
  for (size_t k = 0; k < mu.blocks.size(); ++k)
    s += nuclear_norm(sqrt_psd(mu.blocks[k]) * sqrt_psd(nu.blocks[k]));
  return s * s;
}

double d_b(const NormalState& mu, const NormalState& nu) {
  double f = std::clamp(p_u(mu, nu), 0.0, 1.0);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(f)));
}

double d2(const NormalState& mu, const NormalState& nu) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * p_r(mu, nu)));
}

PairReport audit_pair(const NormalState& mu, const NormalState& nu) {
  require_same(mu, nu);
  PairReport r;
  r.p0_fwd = p0(mu, nu);
  r.p0_bwd = p0(nu, mu);
  r.p_r = p_r(mu, nu);
  r.p_u = p_u(mu, nu);
  r.d1 = d1(mu, nu);
  r.d2 = d2(mu, nu);
  r.d_b = d_b(mu, nu);
  r.chain_ok = r.p_u <= r.p_r + tol::ineq &&
               r.p_r <= std::sqrt(std::max(0.0, r.p_u)) + tol::ineq;
  bool z_supp = are_orthogonal(support_projection(mu), support_projection(nu));
  bool z_pu = r.p_u <= tol::zero_pair;
  bool z_pr = r.p_r <= tol::zero_pair;
  bool z_p0 = r.p0_fwd <= tol::zero_pair;
  r.zero_consistent = (z_supp == z_pu) && (z_pu == z_pr) && (z_pr == z_p0);
  return r;
}

} // namespace vna
