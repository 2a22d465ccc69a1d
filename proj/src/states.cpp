#include "vna/states.hpp"

#include <algorithm>
#include <numeric>

namespace vna {

NormalState make_state(const BlockAlgebra& a, std::vector<Mat> blocks) {
  AlgebraElement rho = make_element(a, std::move(blocks));
  for (int k = 0; k < a.num_blocks(); ++k) {
    if (!is_hermitian(rho.blocks[k], tol::eq))
      throw std::invalid_argument("make_state: block " + std::to_string(k) +
                                  " is not Hermitian");
    if (min_eigenvalue(rho.blocks[k]) < -tol::zero)
      throw std::invalid_argument("make_state: block " + std::to_string(k) +
                                  " is not positive semidefinite");
  }
  double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > tol::eq)
    throw std::invalid_argument("make_state: total trace is " + std::to_string(tr) +
                                ", expected 1");
  return {a, std::move(rho.blocks)};
}

AlgebraElement density_of(const NormalState& mu) {
  return {mu.algebra, mu.blocks};
}

NormalState state_from_density(const AlgebraElement& rho) {
  return make_state(rho.algebra, rho.blocks);
}

cplx evaluate(const NormalState& mu, const AlgebraElement& x) {
  if (!(mu.algebra == x.algebra))
    throw std::invalid_argument("evaluate: state and element algebras differ");
  cplx s = 0.0;
  for (size_t k = 0; k < mu.blocks.size(); ++k) s += (mu.blocks[k] * x.blocks[k]).trace();
  return s;
}

Projection support_projection(const NormalState& mu) {
  std::vector<Eigh> eigs;
  eigs.reserve(mu.blocks.size());
  double lambda_max = 0.0;
  for (const auto& b : mu.blocks) {
    eigs.push_back(eigh(b));
    lambda_max = std::max(lambda_max, eigs.back().values.maxCoeff());
  }
  double cutoff = tol::rank_rel * lambda_max;
  AlgebraElement p = zero_element(mu.algebra);
  for (size_t k = 0; k < eigs.size(); ++k) {
    for (int c = 0; c < eigs[k].values.size(); ++c)
      if (eigs[k].values(c) > cutoff) {
        Vec v = eigs[k].vectors.col(c);
        p.blocks[k] += v * v.adjoint();
      }
  }
  return Projection{std::move(p)};
}

NormalState pure_state(const BlockAlgebra& a, int block, const Vec& xi) {
  if (block < 0 || block >= a.num_blocks())
    throw std::invalid_argument("pure_state: block index out of range");
  if (xi.size() != a.block_dims[block])
    throw std::invalid_argument("pure_state: vector length does not match block");
  if (std::abs(xi.norm() - 1.0) > tol::eq)
    throw std::invalid_argument("pure_state: vector is not normalized");
  AlgebraElement rho = zero_element(a);
  rho.blocks[block] = xi * xi.adjoint();
  return {a, std::move(rho.blocks)};
}

double d1(const NormalState& mu, const NormalState& nu) {
  if (!(mu.algebra == nu.algebra))
    throw std::invalid_argument("d1: states on different algebras");
  double s = 0.0;
  for (size_t k = 0; k < mu.blocks.size(); ++k)
    s += trace_norm_hermitian(mu.blocks[k] - nu.blocks[k]);
  return s;
}

bool in_face_f0(const NormalState& nu, const Projection& p) {
  if (!(nu.algebra == p.elem.algebra))
    throw std::invalid_argument("in_face_f0: algebra mismatch");
  return evaluate(nu, p.elem).real() <= tol::zero;
}

NormalState random_state(const BlockAlgebra& a, std::optional<int> rank, Rng& rng) {
  int total = a.total_dim();
  int r = rank.value_or(total);
  if (r < 1 || r > total)
    throw std::invalid_argument("random_state: rank out of range");

  // spread the rank over blocks, capped by each block dimension
  std::vector<int> block_rank(a.block_dims.size(), 0);
  int remaining = r;
  std::vector<int> order(a.block_dims.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k : order) {
    if (remaining == 0) break;
    int cap = a.block_dims[k];
    std::uniform_int_distribution<int> pick(remaining > 0 ? 1 : 0, std::min(cap, remaining));
    block_rank[k] = pick(rng);
    remaining -= block_rank[k];
  }
  // distribute any remainder greedily
  for (int k : order) {
    if (remaining == 0) break;
    int room = a.block_dims[k] - block_rank[k];
    int take = std::min(room, remaining);
    block_rank[k] += take;
    remaining -= take;
  }

  AlgebraElement rho = zero_element(a);
  double total_trace = 0.0;
  for (int k = 0; k < a.num_blocks(); ++k) {
    if (block_rank[k] == 0) continue;
    Mat g = gaussian_matrix(a.block_dims[k], block_rank[k], rng);
    rho.blocks[k] = g * g.adjoint();
    total_trace += rho.blocks[k].trace().real();
  }
  for (auto& b : rho.blocks) b /= total_trace;
  return {a, std::move(rho.blocks)};
}

NormalState random_state(const BlockAlgebra& a, Rng& rng) {
  return random_state(a, std::nullopt, rng);
}

} // namespace vna
