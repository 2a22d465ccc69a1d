#pragma once

#include <functional>

#include "vna/states.hpp"

// Concrete standard form for a block algebra: the Hilbert space is the
// direct sum of Hilbert-Schmidt spaces, the self-dual cone is the set of
// PSD block matrices, the modular conjugation is the blockwise adjoint,
// and the algebra acts by left multiplication.

namespace vna {

struct ConeVector {
  BlockAlgebra algebra;
  std::vector<Mat> blocks;
  bool in_cone = false; // cached PSD check

  AlgebraElement as_element() const { return {algebra, blocks}; }
};

// builds the vector and caches the PSD check
ConeVector make_cone_vector(const BlockAlgebra& a, std::vector<Mat> blocks);
ConeVector cone_vector_from_element(const AlgebraElement& x);

// canonical cone representative xi_mu = rho^(1/2)
ConeVector embed(const NormalState& mu);

// the state omega_xi represented by a unit cone vector; density = xi^2
NormalState state_of_cone_vector(const ConeVector& xi);

// inner product of the standard-form Hilbert space, linear in the first
// argument
cplx hs_inner(const ConeVector& xi, const ConeVector& eta);
double cone_norm(const ConeVector& xi);

// modular conjugation: blockwise adjoint (conjugate-linear involution
// fixing the cone)
ConeVector j_operator(const ConeVector& xi);

struct ConeDecomposition {
  ConeVector positive_part;
  ConeVector negative_part;
};

// unique decomposition xi = xi+ - xi- with orthogonal cone parts; input
// blocks must be Hermitian
ConeDecomposition cone_decompose(const ConeVector& xi);

using ConeMap = std::function<ConeVector(const ConeVector&)>;

// thrown when a user-supplied cone map emits a vector outside the cone
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConeExtensionOptions {
  std::uint64_t seed = 0;
  int metric_samples = 64;
  int decomposition_samples = 32;
};

struct ConeIsometryExtension {
  bool dims_ok = false;
  bool metric_preserving = false;
  double max_metric_violation = 0.0;
  bool decomposition_consistent = false;
  double max_decomposition_residual = 0.0;
  // surjectivity of an oracle map is semi-decidable; never claimed
  bool surjectivity_checked = false;
  std::string failure;
  // the assembled real-linear map on the self-adjoint part, valid when
  // dims_ok
  SelfAdjointMap map;

  bool ok() const { return dims_ok && metric_preserving && decomposition_consistent; }
};

// Assembles the real-linear extension of a cone map by evaluating it on the
// PSD spanning set (diagonal units and rank-1 projections onto
// (e_j + e_l)/sqrt(2) and (e_j + i e_l)/sqrt(2)), then samples metric
// preservation and consistency with the positive/negative decomposition.
ConeIsometryExtension extend_cone_isometry(const ConeMap& phi,
                                           const BlockAlgebra& a1,
                                           const BlockAlgebra& a2,
                                           const ConeExtensionOptions& opts = {});

// complexification of a self-adjoint map applied to an arbitrary vector
ConeVector apply_complexified(const SelfAdjointMap& map, const ConeVector& xi);

// random Hermitian-block cone-space vector, and a random cone (PSD) vector
ConeVector random_hermitian_vector(const BlockAlgebra& a, Rng& rng);
ConeVector random_cone_vector(const BlockAlgebra& a, Rng& rng);

} // namespace vna
