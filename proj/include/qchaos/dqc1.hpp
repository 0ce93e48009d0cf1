#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qchaos/core.hpp"

namespace qchaos::dqc1 {

// System register fed to the one-clean-qubit circuit: maximally mixed
// (the standard setting) or a pure state.
struct SystemState {
  std::optional<Vec> psi;  // empty = I / 2^n
};

SystemState maximallyMixed();
SystemState pureState(Vec psi);

// Readout of the probe qubit.  p0/p1 refer to the computational-basis
// measurement whose bias encodes Re T; the sigma_y readout encodes Im T.
// Exact mode reports the trace functional itself (shots = 0, std_error = 0);
// shots mode reports empirical frequencies from L Bernoulli draws per basis,
// with std_error = 1 / (alpha sqrt(L)).
struct Dqc1Result {
  double p0 = 0.0;
  double p1 = 0.0;
  double re_estimate = 0.0;
  double im_estimate = 0.0;
  long shots = 0;
  double std_error = 0.0;
};

// T = <psi|U|psi> or Tr(U)/2^n.  The probe may be partially pure,
// alpha |0><0| + (1 - alpha) I/2, which scales the signal by alpha:
//   p0 = (1 + alpha Re T) / 2.
Dqc1Result dqc1Trace(const core::Unitary& u, const SystemState& state,
                     double alpha = 1.0);
Dqc1Result dqc1TraceShots(const core::Unitary& u, const SystemState& state,
                          long shots, core::RngStream& rng,
                          double alpha = 1.0);

// W_tau^dag V^dag W_tau V with W_tau = U_tau^dag W U_tau: the unitary whose
// trace against the system state is the out-of-time-order correlator.
core::Unitary otocUnitary(const core::Unitary& w, const core::Unitary& v,
                          const core::Unitary& u_tau);

Dqc1Result dqc1Otoc(const core::Unitary& w, const core::Unitary& v,
                    const core::Unitary& u_tau, const SystemState& state,
                    double alpha = 1.0);
Dqc1Result dqc1OtocShots(const core::Unitary& w, const core::Unitary& v,
                         const core::Unitary& u_tau, const SystemState& state,
                         long shots, core::RngStream& rng, double alpha = 1.0);

// Phase-estimation readout over n2 ancilla qubits (N2 = 2^n2):
//   f(u) = (1/N2) sum_{s=0}^{N2-1} e^{i 4 pi u s / N2} Tr[U^s rho0].
// Powers come from one eigendecomposition.  Note the doubled kernel: f has
// period N2/2 in u, and summing over a full integer grid u = 0..N2-1 yields
// 1 + Tr[U^{N2/2} rho0] (the s = N2/2 alias), not 1 in general.
std::vector<cplx> dqc1SpectralDensity(const core::Unitary& otoc_unitary,
                                      int n2, const std::vector<int>& u_grid,
                                      const SystemState& state);

struct DepolarizingChannel {
  double p = 1.0;  // survival probability: p rho + (1 - p) I/d
  int dim = 0;
};

core::DensityMatrix applyDepolarizing(const core::DensityMatrix& rho,
                                      const DepolarizingChannel& channel);

using KrausList = std::vector<Mat>;
using Noise = std::variant<DepolarizingChannel, KrausList>;

// F_g = <psi| U^dag Lambda(U |psi><psi| U^dag) U |psi>.  Kraus lists must be
// trace preserving to 1e-10.
double dqc1GateFidelity(const core::Unitary& u_target, const Noise& noise,
                        const Vec& psi);

// Haar average of the above for a depolarizing channel: p + (1 - p)/d.
double dqc1GateFidelityHaar(const DepolarizingChannel& channel);

// Repetitions needed to resolve the trace to epsilon with failure
// probability p_error: ceil(ln(1/p_error) / epsilon^2).
long shotsRequired(double epsilon, double p_error);

}  // namespace qchaos::dqc1
