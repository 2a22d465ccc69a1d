#include "vna/standard_form.hpp"

#include <algorithm>

namespace vna {

namespace {

bool psd_check(const std::vector<Mat>& blocks) {
  for (const auto& b : blocks) {
    if (!is_hermitian(b, tol::eq)) return false;
    if (min_eigenvalue(b) < -tol::zero) return false;
  }
  return true;
}

} // namespace

ConeVector make_cone_vector(const BlockAlgebra& a, std::vector<Mat> blocks) {
  AlgebraElement x = make_element(a, std::move(blocks));
  bool in_cone = psd_check(x.blocks);
  return {a, std::move(x.blocks), in_cone};
}

ConeVector cone_vector_from_element(const AlgebraElement& x) {
  return make_cone_vector(x.algebra, x.blocks);
}

ConeVector embed(const NormalState& mu) {
  std::vector<Mat> blocks;
  blocks.reserve(mu.blocks.size());
  for (const auto& b : mu.blocks) blocks.push_back(sqrt_psd(b));
  return {mu.algebra, std::move(blocks), true};
}

NormalState state_of_cone_vector(const ConeVector& xi) {
  if (!xi.in_cone)
    throw std::invalid_argument("state_of_cone_vector: vector is not in the cone");
  std::vector<Mat> blocks;
  blocks.reserve(xi.blocks.size());
  for (const auto& b : xi.blocks) blocks.push_back(b * b);
  return make_state(xi.algebra, std::move(blocks));
}

cplx hs_inner(const ConeVector& xi, const ConeVector& eta) {
  if (!(xi.algebra == eta.algebra))
    throw std::invalid_argument("hs_inner: vectors on different algebras");
  cplx s = 0.0;
  for (size_t k = 0; k < xi.blocks.size(); ++k)
    s += (eta.blocks[k].adjoint() * xi.blocks[k]).trace();
  return s;
}

double cone_norm(const ConeVector& xi) {
  double s = 0.0;
  for (const auto& b : xi.blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

ConeVector j_operator(const ConeVector& xi) {
  std::vector<Mat> blocks;
  blocks.reserve(xi.blocks.size());
  for (const auto& b : xi.blocks) blocks.push_back(b.adjoint());
  return make_cone_vector(xi.algebra, std::move(blocks));
}

ConeDecomposition cone_decompose(const ConeVector& xi) {
  for (const auto& b : xi.blocks)
    if (!is_hermitian(b, tol::eq))
      throw std::invalid_argument("cone_decompose: block is not Hermitian");
  std::vector<Mat> pos, neg;
  pos.reserve(xi.blocks.size());
  neg.reserve(xi.blocks.size());
  for (const auto& b : xi.blocks) {
    Eigh e = eigh(b);
    Mat p = Mat::Zero(b.rows(), b.cols());
    Mat n = Mat::Zero(b.rows(), b.cols());
    for (int c = 0; c < e.values.size(); ++c) {
      Vec v = e.vectors.col(c);
      if (e.values(c) > 0)
        p += e.values(c) * (v * v.adjoint());
      else if (e.values(c) < 0)
        n += -e.values(c) * (v * v.adjoint());
    }
    pos.push_back(std::move(p));
    neg.push_back(std::move(n));
  }
  return {ConeVector{xi.algebra, std::move(pos), true},
          ConeVector{xi.algebra, std::move(neg), true}};
}

ConeVector apply_complexified(const SelfAdjointMap& map, const ConeVector& xi) {
  AlgebraElement image = map.apply(xi.as_element());
  return cone_vector_from_element(image);
}

ConeVector random_hermitian_vector(const BlockAlgebra& a, Rng& rng) {
  std::vector<Mat> blocks;
  blocks.reserve(a.block_dims.size());
  for (int n : a.block_dims) blocks.push_back(gaussian_hermitian(n, rng));
  return make_cone_vector(a, std::move(blocks));
}

ConeVector random_cone_vector(const BlockAlgebra& a, Rng& rng) {
  std::vector<Mat> blocks;
  blocks.reserve(a.block_dims.size());
  for (int n : a.block_dims) {
    Mat g = gaussian_matrix(n, n, rng);
    blocks.push_back(g * g.adjoint());
  }
  return make_cone_vector(a, std::move(blocks));
}

namespace {

ConeVector call_cone_map(const ConeMap& phi, const ConeVector& xi) {
  ConeVector out = phi(xi);
  if (!out.in_cone)
    throw ContractViolation("cone map returned a vector outside the cone");
  return out;
}

} // namespace

ConeIsometryExtension extend_cone_isometry(const ConeMap& phi,
                                           const BlockAlgebra& a1,
                                           const BlockAlgebra& a2,
                                           const ConeExtensionOptions& opts) {
  ConeIsometryExtension ext;
  if (a1.dim_sa() != a2.dim_sa()) {
    ext.failure = "real dimensions of the self-adjoint parts differ";
    return ext;
  }
  ext.dims_ok = true;

  const int d = a1.dim_sa();
  Eigen::MatrixXd m(d, d);

  // evaluate phi on the spanning set and convert to images of the
  // orthonormal hermitian basis:
  //   E_jj          -> phi(E_jj)
  //   X_jl (real)   -> sqrt(2) (phi(S_jl) - (phi(E_jj)+phi(E_ll))/2)
  //   Y_jl (imag)   -> -sqrt(2) (phi(T_jl) - (phi(E_jj)+phi(E_ll))/2)
  // where S_jl, T_jl are the projections onto (e_j+e_l)/sqrt(2) and
  // (e_j + i e_l)/sqrt(2); T_jl = (E_jj+E_ll)/2 - Y_jl/sqrt(2).
  int col = 0;
  for (int k = 0; k < a1.num_blocks(); ++k) {
    int n = a1.block_dims[k];
    std::vector<RealVec> diag_images(n);
    for (int j = 0; j < n; ++j) {
      AlgebraElement e = basis_unit(a1, k, j, j);
      ConeVector img = call_cone_map(phi, cone_vector_from_element(e));
      diag_images[j] = sa_coords(img.as_element());
    }
    for (int j = 0; j < n; ++j) m.col(col++) = diag_images[j];
    for (int j = 0; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        AlgebraElement s = zero_element(a1);
        s.blocks[k](j, j) = 0.5;
        s.blocks[k](l, l) = 0.5;
        s.blocks[k](j, l) = 0.5;
        s.blocks[k](l, j) = 0.5;
        RealVec s_img = sa_coords(call_cone_map(phi, cone_vector_from_element(s)).as_element());

        AlgebraElement t = zero_element(a1);
        t.blocks[k](j, j) = 0.5;
        t.blocks[k](l, l) = 0.5;
        t.blocks[k](j, l) = cplx(0.0, -0.5);
        t.blocks[k](l, j) = cplx(0.0, 0.5);
        RealVec t_img = sa_coords(call_cone_map(phi, cone_vector_from_element(t)).as_element());

        RealVec mid = 0.5 * (diag_images[j] + diag_images[l]);
        m.col(col++) = std::sqrt(2.0) * (s_img - mid);
        m.col(col++) = -std::sqrt(2.0) * (t_img - mid);
      }
  }
  ext.map = SelfAdjointMap{a1, a2, std::move(m)};

  Rng rng(opts.seed);

  // metric preservation on sampled cone pairs, including mixed-rank pairs
  ext.max_metric_violation = 0.0;
  for (int s = 0; s < opts.metric_samples; ++s) {
    ConeVector xi = random_cone_vector(a1, rng);
    ConeVector eta = random_cone_vector(a1, rng);
    if (s % 3 == 1) {
      // rank-1 against full rank
      NormalState pure = random_state(a1, 1, rng);
      xi = embed(pure);
    } else if (s % 3 == 2) {
      NormalState low = random_state(a1, std::max(1, a1.total_dim() / 2), rng);
      eta = embed(low);
    }
    double dist_before = 0.0;
    for (size_t k = 0; k < xi.blocks.size(); ++k)
      dist_before += (xi.blocks[k] - eta.blocks[k]).squaredNorm();
    dist_before = std::sqrt(dist_before);
    ConeVector fxi = call_cone_map(phi, xi);
    ConeVector feta = call_cone_map(phi, eta);
    double dist_after = 0.0;
    for (size_t k = 0; k < fxi.blocks.size(); ++k)
      dist_after += (fxi.blocks[k] - feta.blocks[k]).squaredNorm();
    dist_after = std::sqrt(dist_after);
    ext.max_metric_violation =
        std::max(ext.max_metric_violation, std::abs(dist_after - dist_before));
    // norms must be preserved as well (distance to phi(0) = 0)
    ext.max_metric_violation = std::max(
        ext.max_metric_violation, std::abs(cone_norm(fxi) - cone_norm(xi)));
  }
  ext.metric_preserving = ext.max_metric_violation <= tol::eq;

  // the assembled linear map must agree with phi(xi+) - phi(xi-) pointwise
  ext.max_decomposition_residual = 0.0;
  for (int s = 0; s < opts.decomposition_samples; ++s) {
    ConeVector xi = random_hermitian_vector(a1, rng);
    ConeDecomposition dec = cone_decompose(xi);
    ConeVector fplus = call_cone_map(phi, dec.positive_part);
    ConeVector fminus = call_cone_map(phi, dec.negative_part);
    AlgebraElement via_parts = sub(fplus.as_element(), fminus.as_element());
    AlgebraElement via_map = ext.map.apply_sa(xi.as_element());
    ext.max_decomposition_residual = std::max(
        ext.max_decomposition_residual, hs_norm(sub(via_parts, via_map)));
  }
  ext.decomposition_consistent = ext.max_decomposition_residual <= tol::eq * 10;

  if (!ext.metric_preserving) ext.failure = "map is not metric preserving on samples";
  else if (!ext.decomposition_consistent)
    ext.failure = "linear extension disagrees with the cone decomposition";
  return ext;
}

} // namespace vna
