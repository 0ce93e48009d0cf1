#pragma once

#include <optional>
#include <vector>

#include "qchaos/core.hpp"

namespace qchaos::tomography {

// Measurement-driving dynamics for the continuous weak-measurement protocol:
// the observable record M_n = tr(O_n rho) is generated by conjugating O_0
// with an evolving unitary, and the policy decides how that unitary is built.
enum class PolicyKind {
  haar_each_step,        // fresh Haar sample every step
  repeated_haar,         // one Haar sample, repeated
  diagonal_fixed_basis,  // fresh random phases every step, shared eigenbasis
  repeated_floquet,      // one kicked-top map, repeated
  hybrid,                // eigenvalues of one map, eigenvectors of another
};

struct UnitaryPolicy {
  PolicyKind kind = PolicyKind::haar_each_step;
  int dim = 0;
  // diagonal_fixed_basis: eigenbasis (drawn Haar-random at generation time
  // when absent).  repeated_haar: the repeated map (drawn when absent).
  std::optional<core::Unitary> basis;
  double kappa0 = 0.0;  // repeated_floquet
  std::optional<core::Unitary> eig_source;  // hybrid
  std::optional<core::Unitary> vec_source;  // hybrid
};

UnitaryPolicy haarEachStep(int dim);
UnitaryPolicy repeatedHaar(int dim);
UnitaryPolicy diagonalFixedBasis(int dim);
UnitaryPolicy diagonalFixedBasis(core::Unitary basis);
UnitaryPolicy repeatedFloquet(int dim, double kappa0);
UnitaryPolicy hybridPolicy(core::Unitary eig_source, core::Unitary vec_source);

// Kicked-top map used for the tomography experiments,
//   U = exp(-i 1.4 Jx) exp(-i kappa0 Jz^2 / (dim-1)),
// acting on a spin j = (dim-1)/2.
core::Unitary tomographyFloquet(int dim, double kappa0);

// Eigenphases of eig_source on the eigenvectors of vec_source: both are
// diagonalized, phases sorted ascending in (-pi, pi], vec_source's columns
// ordered by its own sorted phases, and V diag(e^{i theta}) V^dag returned.
// Throws if eig_source has a circular eigenphase gap below 1e-10.
core::Unitary hybridUnitary(const core::Unitary& eig_source,
                            const core::Unitary& vec_source);

// The per-step increments U_1, ..., U_n applied by the policy.
std::vector<core::Unitary> generateSequence(const UnitaryPolicy& policy,
                                            int n_steps,
                                            core::RngStream& rng);

// Row n = coordinates of O_n = (U_1 ... U_n)^dag O_0 (U_1 ... U_n) in the
// orthonormal traceless basis; the cumulative product is built incrementally.
RMat evolveObservables(const Mat& o0, const std::vector<core::Unitary>& seq,
                       const core::OperatorBasis& basis);

// One weak-measurement record: M_n = sum_a r_a Obs_na + sigma W_n with W
// iid standard normal and r the traceless coordinates of the true state.
struct MeasurementEnsemble {
  int dim = 0;
  RMat obs;       // N x (d^2 - 1)
  RVec record;    // N
  double sigma = 0.0;
  RVec r_true;    // hidden ground truth, kept for scoring
  std::optional<Vec> psi_true;  // set when the truth is pure
};

MeasurementEnsemble simulateRecord(const core::DensityMatrix& rho0,
                                   const RMat& obs, double sigma,
                                   core::RngStream& rng);
MeasurementEnsemble simulateRecordPure(const Vec& psi, const RMat& obs,
                                       double sigma, core::RngStream& rng);

enum class PositivityMode {
  ClipRenormalize,   // clip negative eigenvalues, renormalize the trace
  MetricProjection,  // minimize (r - r_ml)^T O^T O (r - r_ml) over states
};

struct TomographyEstimate {
  RVec r_ml;
  Mat rho_ml;                 // direct inversion, possibly unphysical
  core::DensityMatrix rho_bar;
  double fidelity = 0.0;      // overlap for pure truth, Uhlmann for mixed
  bool informative = true;    // false when the observable matrix is zero
};

// Least-squares inversion r_ml = (O^T O + ridge I)^{-1} O^T M followed by a
// positivity projection.  The ridge defaults to d^2 sigma^2 times a small
// machine-scale factor, so noiseless records invert exactly.
TomographyEstimate estimateState(
    const MeasurementEnsemble& ens,
    std::optional<double> ridge = std::nullopt,
    PositivityMode mode = PositivityMode::ClipRenormalize);

// Spectrum of the inverse covariance C^{-1} = O^T O / sigma^2 of the
// record-averaged estimator, with the scalar summaries used throughout the
// tomography analysis.  The Fisher information uses measurement records in
// units where the basis matrices have squared norm 2 (so the information
// matrix is twice the stored one) plus the additive d^2 regularizer:
//   FI = 1 / sum_a 1 / (2 lambda_a + d^2).
struct CovarianceSpectrum {
  RVec eigenvalues;  // ascending, length d^2 - 1
  int rank = 0;      // eigenvalues above 1e-8 * max
  double fisher_info = 0.0;
  double shannon_entropy = 0.0;  // of the normalized eigenvalues
};

CovarianceSpectrum covarianceSpectrum(const RMat& obs, double sigma);

// Tr[S^T S] for the alignment matrix S_na = r_a Obs_na: how much of the
// measured operators lies along the state with coordinates r.
double alignmentTrace(const RMat& obs, const RVec& r_state);

// Diagnostic: builds C^{-1} = sum_n c_n c_n^T over the full d^2-dimensional
// operator basis (identity component included) and reports the fraction of
// entries with magnitude above 1e-10 times the largest.
double superoperatorSparsity(const Mat& o0,
                             const std::vector<core::Unitary>& seq);

}  // namespace qchaos::tomography
