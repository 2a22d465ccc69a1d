#pragma once

#include <functional>
#include <optional>
#include <string>

#include "vna/jordan.hpp"
#include "vna/standard_form.hpp"
#include "vna/transition.hpp"

// Reconstruction of the inducing Jordan *-isomorphism from a state
// bijection: lift supports to a projection map, extend linearly over
// spectral decompositions, verify and canonicalize. Also the preserver
// audits and the metric counterexample map.

namespace vna {

struct StateMapOracle {
  BlockAlgebra source;
  BlockAlgebra target;
  std::function<NormalState(const NormalState&)> forward;
  std::function<NormalState(const NormalState&)> backward; // may be empty
  std::string label;
  // whether forward/backward may be called from several threads at once
  bool reentrant = false;

  bool has_backward() const { return static_cast<bool>(backward); }
};

// predual of a Jordan isomorphism as an oracle; maps states on
// theta.target to states on theta.source
StateMapOracle oracle_from_jordan(const JordanIso& theta);
StateMapOracle identity_oracle(const BlockAlgebra& a);

// The bijection on the states of a single matrix block that fixes every
// state except the diagonal segment spanned by the first two basis
// vectors, where it swaps the two weights. Biorthogonality preserving but
// not a metric isometry.
StateMapOracle counterexample_map(int n);

// support lift: p != 0 maps to the support of the image of the normalized
// state p / tr(p); 0 maps to 0
Projection ortho_lift(const StateMapOracle& phi, const Projection& p);

struct ReconstructOptions {
  std::uint64_t seed = 0;
  int residual_samples = 120;
  int verify_samples = 200;
  int audit_samples = 200;   // used by the pure-state symmetry audit
  int ordering_checks = 20;  // eigen-ordering stability re-checks
};

struct ReconstructionReport {
  std::string mode;
  std::optional<JordanIso> result;
  bool well_definedness_checked = false;
  double well_definedness_residual = 0.0;
  double jordan_residual = 0.0;
  double pairing_residual = 0.0;
  std::string failure_reason;

  bool succeeded() const { return result.has_value(); }
};

// linear extension of the lifted projection map, its inverse verified and
// canonicalized
ReconstructionReport reconstruct_from_p0(const StateMapOracle& phi,
                                         const ReconstructOptions& opts = {});

// cone-isometry route: embed, extend the induced cone map, reuse the same
// verification tail
ReconstructionReport reconstruct_from_pr(const StateMapOracle& phi,
                                         const ReconstructOptions& opts = {});

// Wigner route on a single matrix block: a bijection of pure states that
// preserves the transition probability extends over eigendecompositions to
// the whole state space and reconstructs to a unitary or antiunitary
// symmetry.
ReconstructionReport reconstruct_wigner(
    const std::function<NormalState(const NormalState&)>& pure_map, int n,
    const ReconstructOptions& opts = {});

struct PreserverProperty {
  long checked = 0;
  long violations = 0;
  double worst_violation = 0.0;
  std::optional<std::pair<NormalState, NormalState>> witness;

  bool passed() const { return violations == 0; }
  void record(double violation, bool bad, const NormalState& mu,
              const NormalState& nu);
};

struct PreserverReport {
  long sample_size = 0;
  std::uint64_t seed = 0;
  PreserverProperty d1_isometry;
  PreserverProperty p0_preserved;
  PreserverProperty p_r_preserved;
  PreserverProperty p_u_preserved;
  PreserverProperty zero_pair_p0;
  PreserverProperty zero_pair_pr;
  PreserverProperty zero_pair_pu;
  PreserverProperty biorthogonality;

  bool zero_pairs_preserved() const {
    return zero_pair_p0.passed() && zero_pair_pr.passed() && zero_pair_pu.passed();
  }
};

// Samples pairs (random, constructed orthogonal, shared low-rank face, and
// a deterministic boundary battery) and records, per property, how often
// the oracle preserves it. Failures are data, not errors.
PreserverReport audit_preserver(const StateMapOracle& phi, int sample_size,
                                std::uint64_t seed, int jobs = 1);

struct Assessment {
  PreserverReport audit;
  std::optional<ReconstructionReport> reconstruction;
  std::string conclusion;
};

// audit, then reconstruct through the strongest preserved structure; a map
// preserving only zero pairs is reported as such without a constructive
// attempt
Assessment assess(const StateMapOracle& phi, int sample_size, std::uint64_t seed);

} // namespace vna
