#pragma once

#include <optional>

#include "vna/states.hpp"

// Concrete Jordan *-isomorphisms between block algebras: a dimension
// preserving block permutation, a unitary per source block, and a
// per-block transpose flag. apply() maps x_k to u_k x_k u_k^* or
// u_k x_k^T u_k^*.

namespace vna {

struct JordanIso {
  BlockAlgebra source;
  BlockAlgebra target;
  std::vector<int> perm;       // source block k -> target block perm[k]
  std::vector<Mat> unitaries;  // u_k, sized by the source block
  std::vector<bool> transposed;
};

// validates the permutation, dimension matching and unitarity
JordanIso make_jordan_iso(const BlockAlgebra& source, const BlockAlgebra& target,
                          std::vector<int> perm, std::vector<Mat> unitaries,
                          std::vector<bool> transposed);

JordanIso identity_iso(const BlockAlgebra& a);
JordanIso transpose_iso(const BlockAlgebra& a);
JordanIso random_jordan_iso(const BlockAlgebra& a, Rng& rng);

AlgebraElement apply(const JordanIso& theta, const AlgebraElement& x);

// state on the target pulled back to the source: evaluate(predual(theta,
// mu), x) = evaluate(mu, apply(theta, x))
NormalState predual(const JordanIso& theta, const NormalState& mu);

// convenience forward direction: predual of the inverse
NormalState push(const JordanIso& theta, const NormalState& mu);

JordanIso inverse(const JordanIso& theta);

// equality through the basis action; unitaries are compared only through
// their conjugation action, never entrywise
bool jordan_equal(const JordanIso& a, const JordanIso& b, double tol = tol::iso_eq);

SelfAdjointMap samap_from_jordan(const JordanIso& theta);

struct JordanVerifyReport {
  bool dims_ok = false;
  bool linear_bijective = false;
  bool unital = false;
  bool star_preserving = false;
  bool squares_preserved = false;
  bool order_preserving = false;
  double unital_residual = 0.0;
  double star_residual = 0.0;
  double worst_square_residual = 0.0;
  double worst_order_violation = 0.0;
  int samples = 0;

  bool ok() const {
    return dims_ok && linear_bijective && unital && star_preserving &&
           squares_preserved && order_preserving;
  }
};

// checks the defining properties of a Jordan *-isomorphism on random
// samples: bijectivity (rank), unitality, *-preservation, preservation of
// squares and of positivity
JordanVerifyReport verify_jordan(const SelfAdjointMap& map, Rng& rng,
                                 int samples = 200);
JordanVerifyReport verify_jordan(const BlockAlgebra& source,
                                 const BlockAlgebra& target,
                                 const std::vector<AlgebraElement>& basis_images,
                                 Rng& rng, int samples = 200);

struct CanonicalizeResult {
  std::optional<JordanIso> iso;
  std::string error;
  double max_basis_residual = 0.0;
};

// Recovers the canonical (permutation, unitary, transpose) form of a
// verified Jordan map: the block permutation from images of minimal
// central projections, the transpose flag from multiplicativity on a
// non-commuting pair, the unitary from images of first-row matrix units
// with the phase gauge fixed.
CanonicalizeResult canonicalize(const SelfAdjointMap& map);

} // namespace vna
