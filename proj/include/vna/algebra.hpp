#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vna/linalg.hpp"
#include "vna/tol.hpp"

// Finite-dimensional von Neumann algebra model: a direct sum of full
// complex matrix blocks. Elements are block-diagonal matrices stored as
// one dense matrix per block. All values are immutable after construction
// and all operations are pure.

namespace vna {

struct BlockAlgebra {
  std::vector<int> block_dims;

  int num_blocks() const { return static_cast<int>(block_dims.size()); }
  // real dimension of the self-adjoint part, sum of n_k^2
  int dim_sa() const;
  // total Hilbert space dimension, sum of n_k
  int total_dim() const;

  bool operator==(const BlockAlgebra&) const = default;
};

BlockAlgebra make_algebra(const std::vector<int>& block_dims);

struct AlgebraElement {
  BlockAlgebra algebra;
  std::vector<Mat> blocks;
};

// --- element constructors -------------------------------------------------

AlgebraElement zero_element(const BlockAlgebra& a);
AlgebraElement identity_element(const BlockAlgebra& a);
// matrix unit E_ij supported on one block
AlgebraElement basis_unit(const BlockAlgebra& a, int block, int i, int j);
AlgebraElement make_element(const BlockAlgebra& a, std::vector<Mat> blocks);

// --- element arithmetic ---------------------------------------------------

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(cplx c, const AlgebraElement& x);
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement adjoint(const AlgebraElement& x);
AlgebraElement transpose_element(const AlgebraElement& x);
cplx trace(const AlgebraElement& x);
// direct-sum operator norm: max over blocks of the largest singular value
double op_norm(const AlgebraElement& x);
// Hilbert-Schmidt inner product, linear in the first argument
cplx hs_dot(const AlgebraElement& x, const AlgebraElement& y);
double hs_norm(const AlgebraElement& x);
bool is_self_adjoint(const AlgebraElement& x, double tol = tol::eq);
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y);

// --- projections ----------------------------------------------------------

struct Projection {
  AlgebraElement elem;

  int rank() const;
};

// validates self-adjointness and idempotence
Projection make_projection(const AlgebraElement& x);
Projection zero_projection(const BlockAlgebra& a);
Projection identity_projection(const BlockAlgebra& a);
Projection complement(const Projection& p);

bool are_orthogonal(const Projection& p, const Projection& q);
std::vector<Projection> minimal_central_projections(const BlockAlgebra& a);

// --- spectral calculus ----------------------------------------------------

struct SpectralDecomposition {
  std::vector<double> eigenvalues; // strictly decreasing after clustering
  std::vector<Projection> projections;

  AlgebraElement resum(const BlockAlgebra& a) const;
};

// Full spectral decomposition of a self-adjoint element. Eigenvalues closer
// than the clustering gap are merged into one eigenprojection; the kernel,
// when present, appears as the eigenvalue-0 entry. Projections sum to the
// identity.
SpectralDecomposition spectral_decompose(const AlgebraElement& x);

AlgebraElement jordan_product(const AlgebraElement& x, const AlgebraElement& y);

// --- self-adjoint part as a real Hilbert space ------------------------------

// Orthonormal basis of the self-adjoint part: per block the diagonal units
// E_jj, then (E_jl + E_lj)/sqrt(2) and i(E_jl - E_lj)/sqrt(2) for j < l.
// Order is deterministic; coordinates below refer to this basis.
const std::vector<AlgebraElement>& hermitian_basis(const BlockAlgebra& a);

RealVec sa_coords(const AlgebraElement& x);
AlgebraElement sa_from_coords(const BlockAlgebra& a, const RealVec& v);

// Real-linear map between self-adjoint parts, stored in hermitian-basis
// coordinates. Complexified application splits the argument into its
// Hermitian and anti-Hermitian parts.
struct SelfAdjointMap {
  BlockAlgebra source;
  BlockAlgebra target;
  Eigen::MatrixXd mat; // dim_sa(target) x dim_sa(source)

  AlgebraElement apply_sa(const AlgebraElement& x) const;
  AlgebraElement apply(const AlgebraElement& x) const;
};

SelfAdjointMap samap_identity(const BlockAlgebra& a);
// columns are the coordinates of the images of the hermitian basis
SelfAdjointMap samap_from_images(const BlockAlgebra& source,
                                 const BlockAlgebra& target,
                                 const std::vector<AlgebraElement>& images);

} // namespace vna
