#include "vna/jordan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace vna {

JordanIso make_jordan_iso(const BlockAlgebra& source, const BlockAlgebra& target,
                          std::vector<int> perm, std::vector<Mat> unitaries,
                          std::vector<bool> transposed) {
  const int nb = source.num_blocks();
  if (target.num_blocks() != nb)
    throw std::invalid_argument("make_jordan_iso: block counts differ");
  if (static_cast<int>(perm.size()) != nb ||
      static_cast<int>(unitaries.size()) != nb ||
      static_cast<int>(transposed.size()) != nb)
    throw std::invalid_argument("make_jordan_iso: per-block data sizes differ");
  std::vector<bool> hit(nb, false);
  for (int k = 0; k < nb; ++k) {
    int a = perm[k];
    if (a < 0 || a >= nb || hit[a])
      throw std::invalid_argument("make_jordan_iso: perm is not a permutation");
    hit[a] = true;
    if (target.block_dims[a] != source.block_dims[k])
      throw std::invalid_argument("make_jordan_iso: perm does not preserve block dims");
    int n = source.block_dims[k];
    if (unitaries[k].rows() != n || unitaries[k].cols() != n)
      throw std::invalid_argument("make_jordan_iso: unitary size mismatch");
    Mat res = unitaries[k] * unitaries[k].adjoint() - Mat::Identity(n, n);
    if (op_norm(res) > tol::eq)
      throw std::invalid_argument("make_jordan_iso: block map is not unitary");
  }
  return {source, target, std::move(perm), std::move(unitaries), std::move(transposed)};
}

JordanIso identity_iso(const BlockAlgebra& a) {
  std::vector<int> perm(a.block_dims.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mat> us;
  for (int n : a.block_dims) us.push_back(Mat::Identity(n, n));
  return {a, a, std::move(perm), std::move(us),
          std::vector<bool>(a.block_dims.size(), false)};
}

JordanIso transpose_iso(const BlockAlgebra& a) {
  JordanIso t = identity_iso(a);
  t.transposed.assign(a.block_dims.size(), true);
  return t;
}

JordanIso random_jordan_iso(const BlockAlgebra& a, Rng& rng) {
  const int nb = a.num_blocks();
  // random permutation among blocks of equal dimension
  std::vector<int> perm(nb);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<int, std::vector<int>> by_dim;
  for (int k = 0; k < nb; ++k) by_dim[a.block_dims[k]].push_back(k);
  for (auto& [dim, idx] : by_dim) {
    std::vector<int> shuffled = idx;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (size_t i = 0; i < idx.size(); ++i) perm[idx[i]] = shuffled[i];
  }
  std::vector<Mat> us;
  std::vector<bool> flags;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < nb; ++k) {
    us.push_back(haar_unitary(a.block_dims[k], rng));
    flags.push_back(a.block_dims[k] >= 2 && coin(rng) == 1);
  }
  return {a, a, std::move(perm), std::move(us), std::move(flags)};
}

AlgebraElement apply(const JordanIso& theta, const AlgebraElement& x) {
  if (!(x.algebra == theta.source))
    throw std::invalid_argument("apply: element not in the source algebra");
  AlgebraElement y = zero_element(theta.target);
  for (int k = 0; k < theta.source.num_blocks(); ++k) {
    const Mat& u = theta.unitaries[k];
    Mat xi = theta.transposed[k] ? x.blocks[k].transpose() : x.blocks[k];
    y.blocks[theta.perm[k]] = u * xi * u.adjoint();
  }
  return y;
}

NormalState predual(const JordanIso& theta, const NormalState& mu) {
  if (!(mu.algebra == theta.target))
    throw std::invalid_argument("predual: state not on the target algebra");
  std::vector<Mat> blocks(theta.source.num_blocks());
  for (int k = 0; k < theta.source.num_blocks(); ++k) {
    const Mat& u = theta.unitaries[k];
    Mat conj = u.adjoint() * mu.blocks[theta.perm[k]] * u;
    blocks[k] = theta.transposed[k] ? conj.transpose().eval() : conj;
  }
  return make_state(theta.source, std::move(blocks));
}

NormalState push(const JordanIso& theta, const NormalState& mu) {
  return predual(inverse(theta), mu);
}

JordanIso inverse(const JordanIso& theta) {
  const int nb = theta.source.num_blocks();
  std::vector<int> perm(nb);
  std::vector<Mat> us(nb);
  std::vector<bool> flags(nb);
  for (int k = 0; k < nb; ++k) {
    int a = theta.perm[k];
    perm[a] = k;
    us[a] = theta.transposed[k] ? theta.unitaries[k].transpose()
                                : theta.unitaries[k].adjoint().eval();
    flags[a] = theta.transposed[k];
  }
  return {theta.target, theta.source, std::move(perm), std::move(us),
          std::move(flags)};
}

bool jordan_equal(const JordanIso& a, const JordanIso& b, double tol) {
  if (!(a.source == b.source) || !(a.target == b.target)) return false;
  for (const AlgebraElement& e : hermitian_basis(a.source))
    if (op_norm(sub(apply(a, e), apply(b, e))) > tol) return false;
  return true;
}

SelfAdjointMap samap_from_jordan(const JordanIso& theta) {
  const auto& basis = hermitian_basis(theta.source);
  Eigen::MatrixXd m(theta.target.dim_sa(), theta.source.dim_sa());
  for (size_t b = 0; b < basis.size(); ++b)
    m.col(static_cast<int>(b)) = sa_coords(apply(theta, basis[b]));
  return {theta.source, theta.target, std::move(m)};
}

JordanVerifyReport verify_jordan(const SelfAdjointMap& map, Rng& rng, int samples) {
  JordanVerifyReport rep;
  rep.samples = samples;
  rep.dims_ok = map.source.dim_sa() == map.target.dim_sa() &&
                map.mat.rows() == map.target.dim_sa() &&
                map.mat.cols() == map.source.dim_sa();
  if (!rep.dims_ok) return rep;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(map.mat);
  lu.setThreshold(1e-10);
  rep.linear_bijective = lu.rank() == map.mat.cols();

  rep.unital_residual =
      op_norm(sub(map.apply_sa(identity_element(map.source)),
                  identity_element(map.target)));
  rep.unital = rep.unital_residual <= tol::eq;

  // the complexified map satisfies L(x*) = L(x)* by construction; measure
  // it on random non-Hermitian samples anyway
  rep.star_residual = 0.0;
  for (int s = 0; s < 8; ++s) {
    AlgebraElement x = zero_element(map.source);
    for (int k = 0; k < map.source.num_blocks(); ++k)
      x.blocks[k] = gaussian_matrix(map.source.block_dims[k],
                                    map.source.block_dims[k], rng);
    AlgebraElement lhs = map.apply(adjoint(x));
    AlgebraElement rhs = adjoint(map.apply(x));
    rep.star_residual = std::max(rep.star_residual, op_norm(sub(lhs, rhs)));
  }
  rep.star_preserving = rep.star_residual <= tol::eq;

  rep.worst_square_residual = 0.0;
  rep.worst_order_violation = 0.0;
  for (int s = 0; s < samples; ++s) {
    AlgebraElement x = zero_element(map.source);
    for (int k = 0; k < map.source.num_blocks(); ++k)
      x.blocks[k] = gaussian_hermitian(map.source.block_dims[k], rng);
    double scale_norm = std::max(1.0, op_norm(x));
    x = scale(1.0 / scale_norm, x);
    AlgebraElement lx = map.apply_sa(x);
    AlgebraElement lx2 = map.apply_sa(jordan_product(x, x));
    rep.worst_square_residual = std::max(
        rep.worst_square_residual, op_norm(sub(lx2, jordan_product(lx, lx))));

    // positivity on a PSD sample derived from x
    AlgebraElement psd = jordan_product(x, x);
    AlgebraElement lpsd = map.apply_sa(psd);
    double min_ev = 0.0;
    for (const auto& b : lpsd.blocks) min_ev = std::min(min_ev, min_eigenvalue(b));
    rep.worst_order_violation = std::max(rep.worst_order_violation, -min_ev);
  }
  rep.squares_preserved = rep.worst_square_residual <= tol::eq;
  rep.order_preserving = rep.worst_order_violation <= tol::eq;
  return rep;
}

JordanVerifyReport verify_jordan(const BlockAlgebra& source,
                                 const BlockAlgebra& target,
                                 const std::vector<AlgebraElement>& basis_images,
                                 Rng& rng, int samples) {
  if (static_cast<int>(basis_images.size()) != source.dim_sa()) {
    JordanVerifyReport rep;
    rep.dims_ok = false;
    return rep;
  }
  double star_residual = 0.0;
  for (const auto& img : basis_images)
    star_residual = std::max(star_residual, op_norm(sub(img, adjoint(img))));
  SelfAdjointMap map = samap_from_images(source, target, basis_images);
  JordanVerifyReport rep = verify_jordan(map, rng, samples);
  rep.star_residual = std::max(rep.star_residual, star_residual);
  rep.star_preserving = rep.star_residual <= tol::eq;
  return rep;
}

namespace {

// complexified action on a matrix unit E_jl of one source block
Mat image_of_unit(const SelfAdjointMap& map, int block, int j, int l, int target_block) {
  AlgebraElement e = basis_unit(map.source, block, j, l);
  AlgebraElement img = map.apply(e);
  return img.blocks[target_block];
}

} // namespace

CanonicalizeResult canonicalize(const SelfAdjointMap& map) {
  CanonicalizeResult res;
  const BlockAlgebra& src = map.source;
  const BlockAlgebra& tgt = map.target;
  if (src.num_blocks() != tgt.num_blocks()) {
    res.error = "block counts differ";
    return res;
  }
  const int nb = src.num_blocks();

  // block permutation from images of minimal central projections
  std::vector<Projection> centrals_src = minimal_central_projections(src);
  std::vector<Projection> centrals_tgt = minimal_central_projections(tgt);
  std::vector<int> perm(nb, -1);
  std::vector<bool> taken(nb, false);
  for (int k = 0; k < nb; ++k) {
    AlgebraElement img = map.apply_sa(centrals_src[k].elem);
    int match = -1;
    for (int a = 0; a < nb; ++a) {
      if (taken[a]) continue;
      if (op_norm(sub(img, centrals_tgt[a].elem)) <= tol::canon) {
        match = a;
        break;
      }
    }
    if (match < 0) {
      res.error = "image of a minimal central projection is not a minimal central projection";
      return res;
    }
    if (tgt.block_dims[match] != src.block_dims[k]) {
      res.error = "central projection image lands in a block of different dimension";
      return res;
    }
    perm[k] = match;
    taken[match] = true;
  }

  std::vector<Mat> us(nb);
  std::vector<bool> flags(nb, false);
  for (int k = 0; k < nb; ++k) {
    const int n = src.block_dims[k];
    const int a = perm[k];
    if (n == 1) {
      us[k] = Mat::Identity(1, 1);
      continue;
    }

    // transpose flag from multiplicativity on the non-commuting pair
    // (E_01, E_10)
    Mat a01 = image_of_unit(map, k, 0, 1, a);
    Mat a10 = image_of_unit(map, k, 1, 0, a);
    Mat a00 = image_of_unit(map, k, 0, 0, a);
    double res_iso = op_norm(Mat(a01 * a10 - a00));
    double res_anti = op_norm(Mat(a10 * a01 - a00));
    bool transposed = res_anti < res_iso;
    flags[k] = transposed;

    // unitary from the images of the first-row matrix units
    Eigh e00 = eigh(a00);
    Vec v1 = e00.vectors.col(e00.values.size() - 1); // eigenvector of the top eigenvalue
    Mat u(n, n);
    u.col(0) = v1;
    for (int j = 1; j < n; ++j) {
      Mat m0j = image_of_unit(map, k, 0, j, a);
      u.col(j) = transposed ? Vec(m0j * v1) : Vec(m0j.adjoint() * v1);
    }
    // clean numerical noise: closest unitary via the polar decomposition
    Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU() * svd.matrixV().adjoint();
    // phase gauge: make the largest entry of the first column real positive,
    // preferring the (0,0) entry when it is not negligible
    cplx anchor = u(0, 0);
    if (std::abs(anchor) <= 1e-8) {
      int best = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(u(i, 0)) > std::abs(u(best, 0))) best = i;
      anchor = u(best, 0);
    }
    u *= std::conj(anchor) / std::abs(anchor);
    us[k] = u;
  }

  JordanIso iso{src, tgt, perm, std::move(us), std::move(flags)};

  // final agreement check against the input map
  double worst = 0.0;
  for (const AlgebraElement& b : hermitian_basis(src))
    worst = std::max(worst, op_norm(sub(apply(iso, b), map.apply_sa(b))));
  res.max_basis_residual = worst;
  if (worst > tol::canon) {
    res.error = "map is not expressible in canonical form within tolerance";
    return res;
  }
  res.iso = std::move(iso);
  return res;
}

} // namespace vna
