#pragma once

#include <vector>

#include "qchaos/core.hpp"

namespace qchaos::chaosdiag {

struct OtocSeries {
  std::vector<int> times;      // 0, 1, ..., n_max
  std::vector<double> values;  // c2 - c4
  std::vector<double> c2;      // tr(A(n)^2 A^2) / dim
  std::vector<double> c4;      // tr(A(n) A A(n) A) / dim
};

// Infinite-temperature out-of-time-order correlator of a hermitian A under
// the map U: C(n) = -tr([A(n), A]^2) / (2 dim), A(n) = U^-n A U^n.
OtocSeries otocInfinite(const core::Unitary& u, const Mat& a, int n_max);

// Closed forms for the Jz correlator of the 3- and 4-qubit kicked top at
// p = pi/2 (kappa0 arbitrary).
double otocExactSmall(int nqubits, double kappa0, int n);
OtocSeries otocExactSeries(int nqubits, double kappa0, int n_max);

// Integer j kicked at kappa0 = pi j: C(1) = j(j+1)/6 and
// C(2) = (2/15) j(j+1)(3j^2+3j-1); only n = 1, 2 have closed values.
double otocPiJ(int two_j, int n);

// Trace correlator of two fixed unitaries under the map U:
//   G(n) = tr(W_n^dag V^dag W_n V) / dim,  W_n = U^-n W U^n,
// for n = 0, ..., n_max.
std::vector<cplx> otocOfUnitaries(const core::Unitary& w,
                                  const core::Unitary& v,
                                  const core::Unitary& u, int n_max);

// Least-squares slope of 0.5 ln C(n) over n in [n_lo, n_hi]; points with
// C(n) <= 1e-14 are excluded from the fit.
double quantumLyapunovSlope(const OtocSeries& s, int n_lo, int n_hi);

struct EchoSeries {
  std::vector<int> times;
  std::vector<double> values;
  double kappa0 = 0.0;
  double kappa0p = 0.0;
};

// Fidelity decay under imperfect reversal, averaged over pure states:
//   F(n) = (d + |tr(U(kappa0)^-n U(kappa0p)^n)|^2) / (d(d+1)).
// Works for any two_j via one-time eigendecomposition of both maps.
EchoSeries echoAveraged(int two_j, double kappa0, double kappa0p, int n_max);

// Printed-block closed form of the same quantity for 3 or 4 qubits.
double echoAveragedClosed(int nqubits, double kappa0, double kappa0p, int n);

enum class EchoInput { ZeroString, PlusYString };

// |<psi0| U(kappa0)^-n U(kappa0p)^n |psi0>|^2 for an arbitrary initial state.
EchoSeries echoState(int two_j, const Vec& psi0, double kappa0, double kappa0p,
                     int n_max);

// 3-qubit closed forms for |000> and the +y product state.
double echoStateClosed(EchoInput which, double kappa0, double kappa0p, int n);

Vec echoInputState(EchoInput which, int two_j);

}  // namespace qchaos::chaosdiag
