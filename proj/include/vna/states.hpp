#pragma once

#include <optional>

#include "vna/algebra.hpp"

// Normal states as block density matrices: PSD blocks with total trace 1.
// The functional action is evaluate(mu, x) = sum_k tr(rho_k x_k).

namespace vna {

struct NormalState {
  BlockAlgebra algebra;
  std::vector<Mat> blocks;
};

// validates PSD blocks and unit trace; error message names the first
// violated invariant
NormalState make_state(const BlockAlgebra& a, std::vector<Mat> blocks);

cplx evaluate(const NormalState& mu, const AlgebraElement& x);

// range projection of the density; eigenvalues below rank_rel * lambda_max
// count as kernel
Projection support_projection(const NormalState& mu);

// vector state omega_xi on one block: density = xi xi^*
NormalState pure_state(const BlockAlgebra& a, int block, const Vec& xi);

// trace-norm distance ||mu - nu||, computed from the Hermitian
// eigendecomposition of the density difference
double d1(const NormalState& mu, const NormalState& nu);

// membership in the face F_0(p) = { nu : nu(p) = 0 }
bool in_face_f0(const NormalState& nu, const Projection& p);

// Density GG^* from a complex Gaussian G of the requested rank, trace
// normalized; rank spread over blocks at random. Deterministic for a fixed
// generator state.
NormalState random_state(const BlockAlgebra& a, std::optional<int> rank, Rng& rng);
NormalState random_state(const BlockAlgebra& a, Rng& rng);

AlgebraElement density_of(const NormalState& mu);
NormalState state_from_density(const AlgebraElement& rho);

} // namespace vna
