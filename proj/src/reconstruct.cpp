#include "vna/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vna {

namespace {

NormalState checked_forward(const StateMapOracle& phi, const NormalState& mu) {
  NormalState out = phi.forward(mu);
  if (!(out.algebra == phi.target))
    throw ContractViolation("oracle '" + phi.label +
                            "' produced a state on the wrong algebra");
  try {
    return make_state(out.algebra, out.blocks);
  } catch (const std::invalid_argument& e) {
    throw ContractViolation("oracle '" + phi.label +
                            "' produced an invalid state: " + e.what());
  }
}

NormalState checked_backward(const StateMapOracle& phi, const NormalState& nu) {
  NormalState out = phi.backward(nu);
  try {
    return make_state(out.algebra, out.blocks);
  } catch (const std::invalid_argument& e) {
    throw ContractViolation("oracle '" + phi.label +
                            "' produced an invalid state: " + e.what());
  }
}

// first two coordinates of the algebra in (block, index) order; these span
// the face used by the deterministic test battery
std::pair<std::pair<int, int>, std::pair<int, int>> first_two_coords(
    const BlockAlgebra& a) {
  if (a.total_dim() < 2)
    throw std::logic_error("first_two_coords: algebra has a single coordinate");
  if (a.block_dims[0] >= 2) return {{0, 0}, {0, 1}};
  return {{0, 0}, {1, 0}};
}

NormalState coord_pure_state(const BlockAlgebra& a, std::pair<int, int> c) {
  Vec v = Vec::Zero(a.block_dims[c.first]);
  v(c.second) = 1.0;
  return pure_state(a, c.first, v);
}

// t on the first coordinate, 1 - t on the second, exactly representable
NormalState segment_state(const BlockAlgebra& a, double t) {
  auto [c1, c2] = first_two_coords(a);
  AlgebraElement rho = zero_element(a);
  rho.blocks[c1.first](c1.second, c1.second) = t;
  rho.blocks[c2.first](c2.second, c2.second) = 1.0 - t;
  return make_state(a, rho.blocks);
}

// deterministic boundary battery: pure basis states, two-point segments,
// in-block superpositions, the maximally mixed state
std::vector<NormalState> state_battery(const BlockAlgebra& a) {
  std::vector<NormalState> out;
  for (int k = 0; k < a.num_blocks(); ++k)
    for (int i = 0; i < a.block_dims[k]; ++i) out.push_back(coord_pure_state(a, {k, i}));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < a.num_blocks(); ++k) {
    int n = a.block_dims[k];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (double t : {0.25, 0.5}) {
          AlgebraElement rho = zero_element(a);
          rho.blocks[k](i, i) = t;
          rho.blocks[k](j, j) = 1.0 - t;
          out.push_back(make_state(a, rho.blocks));
        }
        Vec v = Vec::Zero(n);
        v(i) = inv_sqrt2;
        v(j) = inv_sqrt2;
        v.normalize();
        out.push_back(pure_state(a, k, v));
      }
  }
  for (int k = 1; k < a.num_blocks(); ++k) {
    AlgebraElement rho = zero_element(a);
    rho.blocks[k - 1](0, 0) = 0.25;
    rho.blocks[k](0, 0) = 0.75;
    out.push_back(make_state(a, rho.blocks));
  }
  AlgebraElement mixed = scale(1.0 / a.total_dim(), identity_element(a));
  out.push_back(make_state(a, mixed.blocks));
  return out;
}

std::vector<NormalState> residual_sample_states(const BlockAlgebra& a, Rng& rng,
                                                int n_random) {
  std::vector<NormalState> out = state_battery(a);
  int total = a.total_dim();
  for (int s = 0; s < n_random; ++s) {
    int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total));
    out.push_back(random_state(a, rank, rng));
  }
  return out;
}

} // namespace

// --- oracles ----------------------------------------------------------------

StateMapOracle oracle_from_jordan(const JordanIso& theta) {
  JordanIso inv = inverse(theta);
  return {theta.target,
          theta.source,
          [theta](const NormalState& mu) { return predual(theta, mu); },
          [inv](const NormalState& nu) { return predual(inv, nu); },
          "jordan-predual",
          true};
}

StateMapOracle identity_oracle(const BlockAlgebra& a) {
  auto id = [](const NormalState& mu) { return mu; };
  return {a, a, id, id, "identity", true};
}

StateMapOracle counterexample_map(int n) {
  if (n < 2)
    throw std::invalid_argument("counterexample_map: dimension must be >= 2");
  BlockAlgebra a = make_algebra({n});
  auto forward = [](const NormalState& mu) {
    const Mat& rho = mu.blocks[0];
    const int n = static_cast<int>(rho.rows());
    // detect the diagonal two-point segment on the first two basis vectors
    bool on_segment = rho(0, 0).real() > 0.0 && rho(1, 1).real() > 0.0 &&
                      rho(0, 0).imag() == 0.0 && rho(1, 1).imag() == 0.0;
    if (on_segment) {
      for (int i = 0; i < n && on_segment; ++i)
        for (int j = 0; j < n && on_segment; ++j) {
          if (i == j && i < 2) continue;
          if (rho(i, j) != cplx(0.0, 0.0)) on_segment = false;
        }
    }
    if (!on_segment) return mu;
    NormalState out = mu;
    std::swap(out.blocks[0](0, 0), out.blocks[0](1, 1));
    return out;
  };
  return {a, a, forward, forward, "counterexample", true};
}

// --- support lift -----------------------------------------------------------

Projection ortho_lift(const StateMapOracle& phi, const Projection& p) {
  if (!(p.elem.algebra == phi.source))
    throw std::invalid_argument("ortho_lift: projection not in the source algebra");
  double tr = trace(p.elem).real();
  if (tr < 0.5) return zero_projection(phi.target);
  NormalState normalized = state_from_density(scale(1.0 / tr, p.elem));
  return support_projection(checked_forward(phi, normalized));
}

// --- reconstruction ---------------------------------------------------------

namespace {

// max over sampled states and basis elements x of
// |lhs_state(fwd(x)) - rhs_state(x)|, the executable form of the pairing
// identities
double pairing_residual_max(
    const SelfAdjointMap& fwd,
    const std::vector<std::pair<NormalState, NormalState>>& lhs_rhs_states) {
  const auto& basis = hermitian_basis(fwd.source);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(fwd.apply_sa(b));
  double worst = 0.0;
  for (const auto& [lhs_state, rhs_state] : lhs_rhs_states) {
    for (size_t b = 0; b < basis.size(); ++b) {
      double lhs = evaluate(lhs_state, images[b]).real();
      double rhs = evaluate(rhs_state, basis[b]).real();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

ReconstructionReport finish_reconstruction(const StateMapOracle& phi,
                                           const SelfAdjointMap& fwd,
                                           ReconstructionReport rep,
                                           const ReconstructOptions& opts) {
  Rng rng(opts.seed + 0x9e3779b97f4a7c15ull);

  // residual of nu(fwd(x)) = backward(nu)(x), when the inverse is available
  if (phi.has_backward()) {
    Rng sample_rng(opts.seed + 1);
    std::vector<std::pair<NormalState, NormalState>> samples;
    for (NormalState& nu :
         residual_sample_states(phi.target, sample_rng, opts.residual_samples)) {
      NormalState back = checked_backward(phi, nu);
      samples.emplace_back(std::move(nu), std::move(back));
    }
    rep.well_definedness_checked = true;
    rep.well_definedness_residual = pairing_residual_max(fwd, samples);
  }

  // residual of forward(mu)(fwd(x)) = mu(x)
  {
    Rng sample_rng(opts.seed + 2);
    std::vector<std::pair<NormalState, NormalState>> samples;
    for (NormalState& mu :
         residual_sample_states(phi.source, sample_rng, opts.residual_samples)) {
      NormalState img = checked_forward(phi, mu);
      samples.emplace_back(std::move(img), std::move(mu));
    }
    rep.pairing_residual = pairing_residual_max(fwd, samples);
  }

  // invert, verify, canonicalize
  Eigen::FullPivLU<Eigen::MatrixXd> lu(fwd.mat);
  lu.setThreshold(1e-10);
  if (lu.rank() < fwd.mat.cols()) {
    rep.jordan_residual = std::numeric_limits<double>::infinity();
    rep.failure_reason = "linear extension is not injective on self-adjoint elements";
    return rep;
  }
  SelfAdjointMap theta_map{phi.target, phi.source, lu.inverse()};
  JordanVerifyReport verify = verify_jordan(theta_map, rng, opts.verify_samples);
  rep.jordan_residual =
      std::max({verify.worst_square_residual, verify.unital_residual,
                verify.star_residual, verify.worst_order_violation});
  if (!verify.ok()) {
    rep.failure_reason = "inverse of the linear extension is not a Jordan isomorphism";
    return rep;
  }
  CanonicalizeResult canon = canonicalize(theta_map);
  if (!canon.iso.has_value()) {
    rep.failure_reason = "canonicalization failed: " + canon.error;
    return rep;
  }
  rep.jordan_residual = std::max(rep.jordan_residual, canon.max_basis_residual);

  bool wd_ok = !rep.well_definedness_checked ||
               rep.well_definedness_residual <= tol::residual;
  if (!wd_ok) {
    rep.failure_reason = "well-definedness residual exceeds threshold";
    return rep;
  }
  if (rep.pairing_residual > tol::residual) {
    rep.failure_reason = "pairing residual exceeds threshold";
    return rep;
  }
  if (rep.jordan_residual > tol::residual) {
    rep.failure_reason = "Jordan residual exceeds threshold";
    return rep;
  }
  rep.result = std::move(canon.iso);
  return rep;
}

} // namespace

ReconstructionReport reconstruct_from_p0(const StateMapOracle& phi,
                                         const ReconstructOptions& opts) {
  ReconstructionReport rep;
  rep.mode = "p0";
  if (phi.source.dim_sa() != phi.target.dim_sa()) {
    rep.failure_reason = "source and target dimension profiles differ";
    rep.jordan_residual = std::numeric_limits<double>::infinity();
    return rep;
  }

  const auto& basis = hermitian_basis(phi.source);
  Eigen::MatrixXd m(phi.target.dim_sa(), phi.source.dim_sa());
  for (size_t b = 0; b < basis.size(); ++b) {
    SpectralDecomposition sd = spectral_decompose(basis[b]);
    AlgebraElement img = zero_element(phi.target);
    for (size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      double r = sd.eigenvalues[i];
      if (std::abs(r) <= 1e-12) continue;
      img = add(img, scale(r, ortho_lift(phi, sd.projections[i]).elem));
    }
    m.col(static_cast<int>(b)) = sa_coords(img);
  }
  SelfAdjointMap fwd{phi.source, phi.target, std::move(m)};
  return finish_reconstruction(phi, fwd, std::move(rep), opts);
}

ReconstructionReport reconstruct_from_pr(const StateMapOracle& phi,
                                         const ReconstructOptions& opts) {
  ReconstructionReport rep;
  rep.mode = "pr";
  if (phi.source.dim_sa() != phi.target.dim_sa()) {
    rep.failure_reason = "source and target dimension profiles differ";
    rep.jordan_residual = std::numeric_limits<double>::infinity();
    return rep;
  }

  ConeMap cone_map = [&phi](const ConeVector& xi) {
    double norm = cone_norm(xi);
    if (norm <= 1e-14) {
      return ConeVector{phi.target,
                        zero_element(phi.target).blocks,
                        true};
    }
    std::vector<Mat> unit_blocks;
    unit_blocks.reserve(xi.blocks.size());
    for (const auto& b : xi.blocks) unit_blocks.push_back(b / norm);
    ConeVector unit{xi.algebra, std::move(unit_blocks), xi.in_cone};
    NormalState mu = state_of_cone_vector(unit);
    ConeVector out = embed(checked_forward(phi, mu));
    for (auto& b : out.blocks) b *= norm;
    return out;
  };

  ConeExtensionOptions ext_opts;
  ext_opts.seed = opts.seed + 3;
  ConeIsometryExtension ext =
      extend_cone_isometry(cone_map, phi.source, phi.target, ext_opts);
  if (!ext.dims_ok) {
    rep.failure_reason = "cone spaces have different dimensions";
    rep.jordan_residual = std::numeric_limits<double>::infinity();
    return rep;
  }
  if (!ext.ok()) {
    rep.failure_reason =
        "Raggio transition probability not preserved: " + ext.failure;
    rep.jordan_residual = std::max(ext.max_metric_violation,
                                   ext.max_decomposition_residual);
    return rep;
  }
  return finish_reconstruction(phi, ext.map, std::move(rep), opts);
}

// --- Wigner route -----------------------------------------------------------

namespace {

// deterministic orthonormal basis of the range of a projection:
// Gram-Schmidt of the projected standard basis vectors in the given order
std::vector<Vec> deterministic_range_basis(const Mat& proj, int rank,
                                           bool reverse_order) {
  const int n = static_cast<int>(proj.rows());
  std::vector<Vec> basis;
  for (int step = 0; step < n && static_cast<int>(basis.size()) < rank; ++step) {
    int j = reverse_order ? n - 1 - step : step;
    Vec w = proj.col(j); // proj * e_j
    for (const Vec& b : basis) w -= b.dot(w) * b;
    double norm = w.norm();
    if (norm > 1e-8) basis.push_back(w / norm);
  }
  if (static_cast<int>(basis.size()) != rank)
    throw std::logic_error("deterministic_range_basis: rank mismatch");
  return basis;
}

// extend a pure-state bijection to a mixed state via its eigendecomposition
NormalState extend_pure_map(
    const std::function<NormalState(const NormalState&)>& pure_map,
    const BlockAlgebra& a, const NormalState& mu, bool secondary_ordering) {
  const Mat& rho = mu.blocks[0];
  const int n = static_cast<int>(rho.rows());
  Eigh e = eigh(rho);

  // cluster eigenvalues (ascending from the solver)
  struct Cluster {
    double weight_each; // eigenvalue shared by the cluster
    Mat proj;
    int size;
  };
  std::vector<Cluster> clusters;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && e.values(j) - e.values(j - 1) <= tol::cluster) ++j;
    Mat p = Mat::Zero(n, n);
    double sum = 0.0;
    for (int c = i; c < j; ++c) {
      Vec v = e.vectors.col(c);
      p += v * v.adjoint();
      sum += e.values(c);
    }
    clusters.push_back({sum / (j - i), std::move(p), j - i});
    i = j;
  }
  if (secondary_ordering) std::reverse(clusters.begin(), clusters.end());

  double cutoff = tol::rank_rel * e.values.maxCoeff();
  Mat out = Mat::Zero(n, n);
  double mass = 0.0;
  for (const Cluster& cl : clusters) {
    if (cl.weight_each <= cutoff) continue;
    auto vectors = deterministic_range_basis(cl.proj, cl.size, secondary_ordering);
    for (const Vec& v : vectors) {
      NormalState image = pure_map(pure_state(a, 0, v));
      out += cl.weight_each * image.blocks[0];
      mass += cl.weight_each;
    }
  }
  out /= mass;
  return make_state(a, {out});
}

} // namespace

ReconstructionReport reconstruct_wigner(
    const std::function<NormalState(const NormalState&)>& pure_map, int n,
    const ReconstructOptions& opts) {
  ReconstructionReport rep;
  rep.mode = "wigner";
  if (n < 2)
    throw std::invalid_argument("reconstruct_wigner: dimension must be >= 2");
  BlockAlgebra a = make_algebra({n});
  Rng rng(opts.seed + 4);

  // symmetry audit: the transition probability of sampled pure pairs must
  // be preserved
  double audit_worst = 0.0;
  auto audit_pair_of_vectors = [&](const Vec& xi, const Vec& eta) {
    NormalState mu = pure_state(a, 0, xi);
    NormalState nu = pure_state(a, 0, eta);
    double before = std::norm((xi.adjoint() * eta)(0));
    double after = p_u(pure_map(mu), pure_map(nu));
    audit_worst = std::max(audit_worst, std::abs(after - before));
  };
  for (int s = 0; s < opts.audit_samples; ++s) {
    Vec xi = gaussian_matrix(n, 1, rng).col(0);
    xi.normalize();
    Vec eta = gaussian_matrix(n, 1, rng).col(0);
    eta.normalize();
    audit_pair_of_vectors(xi, eta);
  }
  // structured pairs: orthogonal and half-overlap
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
      ei(i) = 1.0;
      ej(j) = 1.0;
      audit_pair_of_vectors(ei, ej);
      Vec mix = (ei + ej) / std::sqrt(2.0);
      audit_pair_of_vectors(ei, mix);
    }
  if (audit_worst > tol::zero_pair) {
    rep.failure_reason = "pure-state map does not preserve the transition probability";
    rep.jordan_residual = audit_worst;
    return rep;
  }

  // well-definedness of the eigendecomposition extension: recompute with a
  // second ordering and a reversed deterministic basis choice
  double wd_worst = 0.0;
  {
    Rng wd_rng(opts.seed + 5);
    auto states = state_battery(a);
    for (int s = 0; s < opts.ordering_checks; ++s) {
      int rank = 1 + static_cast<int>(wd_rng() % static_cast<std::uint64_t>(n));
      states.push_back(random_state(a, rank, wd_rng));
    }
    for (const NormalState& mu : states) {
      NormalState first = extend_pure_map(pure_map, a, mu, false);
      NormalState second = extend_pure_map(pure_map, a, mu, true);
      wd_worst = std::max(wd_worst, d1(first, second));
    }
  }

  StateMapOracle oracle{
      a, a,
      [pure_map, a](const NormalState& mu) {
        return extend_pure_map(pure_map, a, mu, false);
      },
      nullptr, "wigner-extension", true};
  rep = reconstruct_from_p0(oracle, opts);
  rep.mode = "wigner";
  rep.well_definedness_checked = true;
  rep.well_definedness_residual = wd_worst;
  if (rep.result.has_value() && wd_worst > tol::residual) {
    rep.result.reset();
    rep.failure_reason = "extension is not well-defined across eigen-orderings";
  }
  return rep;
}

// --- preserver audit ----------------------------------------------------------

void PreserverProperty::record(double violation, bool bad, const NormalState& mu,
                               const NormalState& nu) {
  ++checked;
  if (bad) {
    ++violations;
    if (violation >= worst_violation) witness = std::make_pair(mu, nu);
  }
  worst_violation = std::max(worst_violation, violation);
}

namespace {

std::vector<std::pair<NormalState, NormalState>> battery_pairs(const BlockAlgebra& a) {
  std::vector<std::pair<NormalState, NormalState>> out;
  if (a.total_dim() < 2) {
    NormalState only = state_from_density(identity_element(a));
    out.emplace_back(only, only);
    return out;
  }
  auto [c1, c2] = first_two_coords(a);
  NormalState pure1 = coord_pure_state(a, c1);
  NormalState pure2 = coord_pure_state(a, c2);
  out.emplace_back(pure1, pure2);
  for (double t : {0.1, 0.25, 0.5}) out.emplace_back(pure1, segment_state(a, t));
  out.emplace_back(segment_state(a, 0.25), segment_state(a, 0.7));
  return out;
}

NormalState random_state_supported_in(const BlockAlgebra& a, const Projection& q,
                                      Rng& rng) {
  NormalState sigma = random_state(a, rng);
  AlgebraElement compressed = mul(mul(q.elem, density_of(sigma)), q.elem);
  double tr = trace(compressed).real();
  return state_from_density(scale(1.0 / tr, compressed));
}

std::pair<NormalState, NormalState> orthogonal_pair(const BlockAlgebra& a, Rng& rng) {
  int total = a.total_dim();
  if (total < 2) {
    NormalState only = random_state(a, rng);
    return {only, only};
  }
  int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total - 1));
  NormalState mu = random_state(a, rank, rng);
  Projection q = complement(support_projection(mu));
  return {mu, random_state_supported_in(a, q, rng)};
}

std::pair<NormalState, NormalState> shared_face_pair(const BlockAlgebra& a, Rng& rng) {
  // choose a two-dimensional face: inside one block (Haar or standard
  // basis) or across two blocks
  std::vector<int> big_blocks;
  for (int k = 0; k < a.num_blocks(); ++k)
    if (a.block_dims[k] >= 2) big_blocks.push_back(k);

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool in_block = !big_blocks.empty() && (a.num_blocks() == 1 || unif(rng) < 0.7);
  if (in_block) {
    int k = big_blocks[rng() % big_blocks.size()];
    int n = a.block_dims[k];
    Mat frame(n, 2);
    if (unif(rng) < 0.5) {
      int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
      if (j >= i) ++j;
      frame.setZero();
      frame(i, 0) = 1.0;
      frame(j, 1) = 1.0;
    } else {
      frame = haar_unitary(n, rng).leftCols(2);
    }
    BlockAlgebra two = make_algebra({2});
    auto lift = [&](const NormalState& w) {
      AlgebraElement rho = zero_element(a);
      rho.blocks[k] = frame * w.blocks[0] * frame.adjoint();
      return state_from_density(rho);
    };
    return {lift(random_state(two, rng)), lift(random_state(two, rng))};
  }
  // cross-block face: diagonal mixtures of two pure states in different blocks
  auto [c1, c2] = first_two_coords(a);
  auto mix = [&](double t) {
    AlgebraElement rho = zero_element(a);
    rho.blocks[c1.first](c1.second, c1.second) = t;
    rho.blocks[c2.first](c2.second, c2.second) = 1.0 - t;
    return state_from_density(rho);
  };
  std::uniform_real_distribution<double> tdist(0.05, 0.95);
  return {mix(tdist(rng)), mix(tdist(rng))};
}

struct PairOutcome {
  double d1_violation, p0_violation, pr_violation, pu_violation;
  bool zero_p0_bad, zero_pr_bad, zero_pu_bad, biorth_bad;
};

PairOutcome evaluate_preservation(const StateMapOracle& phi, const NormalState& mu,
                                  const NormalState& nu) {
  NormalState mu2 = checked_forward(phi, mu);
  NormalState nu2 = checked_forward(phi, nu);
  PairOutcome o{};
  o.d1_violation = std::abs(d1(mu2, nu2) - d1(mu, nu));
  double p0_f = p0(mu, nu), p0_b = p0(nu, mu);
  double p0_f2 = p0(mu2, nu2), p0_b2 = p0(nu2, mu2);
  o.p0_violation = std::max(std::abs(p0_f2 - p0_f), std::abs(p0_b2 - p0_b));
  double pr_before = p_r(mu, nu), pr_after = p_r(mu2, nu2);
  o.pr_violation = std::abs(pr_after - pr_before);
  double pu_before = p_u(mu, nu), pu_after = p_u(mu2, nu2);
  o.pu_violation = std::abs(pu_after - pu_before);
  o.zero_p0_bad = (p0_f <= tol::zero_pair) != (p0_f2 <= tol::zero_pair);
  o.zero_pr_bad = (pr_before <= tol::zero_pair) != (pr_after <= tol::zero_pair);
  o.zero_pu_bad = (pu_before <= tol::zero_pair) != (pu_after <= tol::zero_pair);
  o.biorth_bad = are_orthogonal(support_projection(mu), support_projection(nu)) !=
                 are_orthogonal(support_projection(mu2), support_projection(nu2));
  return o;
}

} // namespace

PreserverReport audit_preserver(const StateMapOracle& phi, int sample_size,
                                std::uint64_t seed, int jobs) {
  const BlockAlgebra& a = phi.source;
  Rng rng(seed);

  std::vector<std::pair<NormalState, NormalState>> pairs = battery_pairs(a);
  int remaining = std::max(0, sample_size - static_cast<int>(pairs.size()));
  int n_orth = remaining / 4;
  int n_face = remaining / 4;
  int n_random = remaining - n_orth - n_face;
  for (int s = 0; s < n_random; ++s)
    pairs.emplace_back(random_state(a, rng), random_state(a, rng));
  for (int s = 0; s < n_orth; ++s) pairs.push_back(orthogonal_pair(a, rng));
  for (int s = 0; s < n_face; ++s) pairs.push_back(shared_face_pair(a, rng));

  std::vector<PairOutcome> outcomes(pairs.size());
  const bool parallel = phi.reentrant && jobs != 1;
#ifdef _OPENMP
  if (parallel) {
    if (jobs > 1) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i)
      outcomes[i] = evaluate_preservation(phi, pairs[i].first, pairs[i].second);
  } else
#endif
  {
    (void)parallel;
    for (size_t i = 0; i < pairs.size(); ++i)
      outcomes[i] = evaluate_preservation(phi, pairs[i].first, pairs[i].second);
  }

  PreserverReport rep;
  rep.sample_size = static_cast<long>(pairs.size());
  rep.seed = seed;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& [mu, nu] = pairs[i];
    const PairOutcome& o = outcomes[i];
    rep.d1_isometry.record(o.d1_violation, o.d1_violation > tol::ineq, mu, nu);
    rep.p0_preserved.record(o.p0_violation, o.p0_violation > tol::ineq, mu, nu);
    rep.p_r_preserved.record(o.pr_violation, o.pr_violation > tol::ineq, mu, nu);
    rep.p_u_preserved.record(o.pu_violation, o.pu_violation > tol::ineq, mu, nu);
    rep.zero_pair_p0.record(o.zero_p0_bad ? 1.0 : 0.0, o.zero_p0_bad, mu, nu);
    rep.zero_pair_pr.record(o.zero_pr_bad ? 1.0 : 0.0, o.zero_pr_bad, mu, nu);
    rep.zero_pair_pu.record(o.zero_pu_bad ? 1.0 : 0.0, o.zero_pu_bad, mu, nu);
    rep.biorthogonality.record(o.biorth_bad ? 1.0 : 0.0, o.biorth_bad, mu, nu);
  }
  return rep;
}

Assessment assess(const StateMapOracle& phi, int sample_size, std::uint64_t seed) {
  Assessment out;
  out.audit = audit_preserver(phi, sample_size, seed);
  ReconstructOptions opts;
  opts.seed = seed;
  if (out.audit.p0_preserved.passed()) {
    out.reconstruction = reconstruct_from_p0(phi, opts);
    out.conclusion = out.reconstruction->succeeded()
                         ? "asymmetric transition probability preserved; inducing "
                           "Jordan isomorphism reconstructed"
                         : "asymmetric transition probability preserved on samples "
                           "but reconstruction failed";
  } else if (out.audit.p_r_preserved.passed()) {
    out.reconstruction = reconstruct_from_pr(phi, opts);
    out.conclusion = out.reconstruction->succeeded()
                         ? "Raggio transition probability preserved; inducing Jordan "
                           "isomorphism reconstructed"
                         : "Raggio transition probability preserved on samples but "
                           "reconstruction failed";
  } else if (out.audit.zero_pairs_preserved() && out.audit.biorthogonality.passed()) {
    out.conclusion =
        "only zero transition-probability pairs are preserved: the algebras are "
        "Jordan isomorphic, but no constructive map is attempted";
  } else {
    out.conclusion = "the map does not preserve transition probabilities on samples";
  }
  return out;
}

} // namespace vna
