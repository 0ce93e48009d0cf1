#pragma once

#include <optional>
#include <vector>

#include "qchaos/core.hpp"

namespace qchaos::kickedtop {

// Denominator of the torsion term: exp(-i kappa0 Jz^2 / two_j) or /(two_j+1).
enum class TorsionNorm { TwoJ, Dim };

struct KickedTopParams {
  int two_j = 4;
  double kappa0 = 0.0;
  double p = 0.5 * kPi;  // linear kick angle about y
  TorsionNorm norm = TorsionNorm::TwoJ;
  // The same map written for a chain of two_j qubits,
  //   exp(-i kappa0/(2 two_j) sum_{l<l'} sz_l sz_l') exp(-i p/2 sum_l sy_l),
  // differs from the spin form by the constant e^{+i kappa0/4}.  The closed
  // 3- and 4-qubit propagator blocks are written in the chain gauge.
  bool chain_phase = false;
};

// One kick period: rotation about y first, torsion about z second.
core::Unitary floquet(const KickedTopParams& params);

enum class Axis { X, Y, Z };

// exp(-i pi J_axis); commutes with a Floquet map whose linear kick is about
// the same axis (torsion is even under Jz -> -Jz).
Mat rotationPi(const core::SpinSystem& spin, Axis axis);

// --------------------------------------------------------------------------
// Classical limit: unit sphere map
//   X' =  Z cos(k X) + Y sin(k X)
//   Y' = -Z sin(k X) + Y cos(k X)
//   Z' = -X

struct ClassicalPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

ClassicalPoint classicalStep(const ClassicalPoint& p, double kappa0);

// n_steps iterations; the returned orbit includes the initial point.
std::vector<ClassicalPoint> classicalOrbit(const ClassicalPoint& p0,
                                           double kappa0, int n_steps);

// Largest Lyapunov exponent by the two-trajectory method: companion offset
// 1e-8, renormalized after every step, averaged over random initial points.
double classicalLyapunov(double kappa0, core::RngStream& rng,
                         int n_init = 100, int n_steps = 10000);

// --------------------------------------------------------------------------
// Parity-adapted bases of the symmetric subspace (m descending).
//
// 3 qubits, basis {|000>, |W>, |Wbar>, |111>}: columns are
//   phi1+ = (|000> - i|111>)/sqrt(2),  phi2+ = (|W> + i|Wbar>)/sqrt(2),
//   phi1- = (|000> + i|111>)/sqrt(2),  phi2- = (|W> - i|Wbar>)/sqrt(2).
// 4 qubits, basis {|0000>, |W>, |m=0>, |Wbar>, |1111>}: columns are
//   phi1+ = (|W> - |Wbar>)/sqrt(2),    phi2+ = (|0000> + |1111>)/sqrt(2),
//   phi3+ = |m=0>,
//   phi1- = (|W> + |Wbar>)/sqrt(2),    phi2- = (|0000> - |1111>)/sqrt(2),
// ordered [phi1+, phi2+, phi3+, phi1-, phi2-].
core::Unitary parityBasis(int nqubits);

double chebyshevT(int n, double x);
double chebyshevU(int n, double x);

// Closed form for the n-th power of the chain-gauge Floquet map at p = pi/2,
// restricted to the parity blocks.  chi = cos(theta) is the Chebyshev
// argument; alpha, beta solve |alpha|^2 + |beta|^2 = 1.
// In the parityBasis frame, 3 qubits split as uplus (0,0) + uminus (2,2);
// 4 qubits split as the scalar u0 on phi1+, then uplus on {phi2+, phi3+}
// and uminus on {phi1-, phi2-}.
struct ChebyshevBlocks {
  int nqubits = 3;
  int n = 0;
  double kappa = 0.0;  // kappa0/6 (3 qubits) or kappa0/2 (4 qubits)
  double chi = 0.0;
  cplx alpha, beta;
  Eigen::Matrix2cd uplus, uminus;
  std::optional<cplx> u0;  // 4 qubits: the 1-dim block, (-1)^n
};

ChebyshevBlocks chebyshevPropagator(int nqubits, double kappa0, int n);

// --------------------------------------------------------------------------
// Quadratic Gauss sums: for coprime r, s the torsion exp(-i pi r Jz^2 / s) on
// an integer Jz spectrum equals sum_{l=0}^{2s-1} a_l exp(-i pi l Jz / s) with
//   a_l = (1/2s) sum_{m=0}^{2s-1} exp(-i pi m l / s) exp(-i pi r m^2 / s).

struct GaussSumCoefficients {
  int r = 1, s = 1;
  std::vector<cplx> a;  // length 2s
};

GaussSumCoefficients gaussSumCoefficients(int r, int s);

// Max deviation of the rotation-sum identity on the spin-j torsion; requires
// integer j (even two_j).
double verifyGaussSum(const GaussSumCoefficients& g, int two_j);

}  // namespace qchaos::kickedtop
