#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace qchaos {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

namespace core {

// Eigenvalues below this floor are treated as zero before taking logs.
inline constexpr double kEigFloor = 1e-12;

// Deterministic splittable RNG.  Every stream is identified by a 64-bit key;
// child(i) derives an independent stream from (key, i), so parallel loops can
// hand one stream per work item and stay reproducible regardless of thread
// count or execution order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  RngStream(const RngStream&) = delete;
  RngStream& operator=(const RngStream&) = delete;
  RngStream(RngStream&&) = default;
  RngStream& operator=(RngStream&&) = default;

  RngStream child(std::uint64_t index) const;

  double uniform();                  // [0, 1)
  double normal();                   // N(0, 1)
  double exponential();              // Exp(1)
  std::uint64_t integer(std::uint64_t n);  // uniform on {0, ..., n-1}
  cplx complexNormal();              // (N + iN)/sqrt(2), unit variance

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 gen_;
};

// Worker cap for parallelFor; honours the QCHAOS_THREADS environment variable.
int parallelThreadCount();

// Runs body(i) for i in [0, n).  Results must be written to per-index slots;
// under that discipline output is identical for any thread count.
void parallelFor(int n, const std::function<void(int)>& body);

// ---------------------------------------------------------------------------
// Matrix-valued domain types.  Thin wrappers: the payload is public, the
// factory checks the invariant.

struct Unitary {
  Mat m;
  int dim() const { return static_cast<int>(m.rows()); }
};

double unitarityDefect(const Mat& u);      // max |(U^dag U - I)_ab|
Unitary makeUnitary(Mat m);                // throws if defect > 1e-10

struct DensityMatrix {
  Mat m;
  int dim() const { return static_cast<int>(m.rows()); }
};

DensityMatrix makeDensityMatrix(Mat m);    // hermitian, unit trace, psd check

// Angular momentum operators for a spin j = two_j/2 in the |j,m> basis with
// m descending (index 0 is m=+j).
struct SpinSystem {
  int two_j = 0;
  int dim = 0;
  Mat jx, jy, jz;
  double j() const { return 0.5 * two_j; }
};

SpinSystem spinOperators(int two_j);

// exp(-i t H) for hermitian H, via full diagonalization.
Mat expiHermitian(const Mat& h, double t);

Unitary haarUnitary(int dim, RngStream& rng);

// basis * diag(exp(i phi_k)) * basis^dag with phi_k ~ U[0, 2pi).
Unitary randomDiagonalUnitary(const Unitary& basis, RngStream& rng);

// Product state (cos(t/2)|0> + e^{-i phi} sin(t/2)|1>)^{x 2j} expressed in the
// symmetric |j,m> basis.
Vec spinCoherentState(int two_j, double theta0, double phi0);

Vec randomPureState(int dim, RngStream& rng);

// G G^dag / tr(G G^dag) with G a square complex Ginibre matrix.
DensityMatrix randomMixedState(int dim, RngStream& rng);

double vonNeumannEntropy(const DensityMatrix& rho);

// -sum w_k log w_k after normalizing w to unit sum; entries at or below the
// floor are dropped.
double shannonEntropy(const RVec& weights);

double stateFidelity(const Vec& psi, const DensityMatrix& rho);
double uhlmannFidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Reduced state of the first factor of a pure state on H_A x H_B (A-major
// index layout).
DensityMatrix partialTraceSecond(const Vec& psi, int dim_a, int dim_b);

// ---------------------------------------------------------------------------
// Weak measurement of an observable with pointer resolution sigma and
// measurement strength g: a Gaussian pointer is displaced by g times the
// eigenvalue, so outcome q has Kraus operator
//   M_q = sum_i (2 pi sigma^2)^{-1/4} exp(-(q - g o_i)^2 / (4 sigma^2)) P_i.

struct WeakMeasurementModel {
  Mat observable;
  double g = 1.0;
  double sigma = 1.0;
};

struct KrausPair {
  Mat kraus;  // M_q
  Mat povm;   // E_q = M_q^dag M_q
};

KrausPair weakMeasurementKraus(const WeakMeasurementModel& model, double q);

// M_q rho M_q^dag / tr(...), with the outcome probability returned alongside.
struct MeasurementUpdate {
  DensityMatrix state;
  double probability = 0.0;
};
MeasurementUpdate weakMeasurementUpdate(const WeakMeasurementModel& model,
                                        const DensityMatrix& rho, double q);

// ---------------------------------------------------------------------------
// Orthonormal traceless hermitian basis (generalized Gell-Mann matrices):
// d(d-1)/2 symmetric pairs, then d(d-1)/2 antisymmetric pairs (both in
// lexicographic (j,k) order, j < k), then d-1 diagonal matrices
//   D_l = (|0><0| + ... + |l-1><l-1| - l |l><l|) / sqrt(l(l+1)).
// Together with I/sqrt(d) they form an orthonormal basis of hermitian
// operators: tr(E_a E_b) = delta_ab, tr(E_a) = 0.

struct OperatorBasis {
  int dim = 0;
  std::vector<Mat> elems;
  int size() const { return dim * dim - 1; }
};

OperatorBasis hermitianBasis(int dim);

// r_a = tr(E_a O) for hermitian O (computed directly, not via elems).
RVec operatorCoordinates(const OperatorBasis& basis, const Mat& op);

// trace/d * I + sum_a r_a E_a.
Mat matrixFromCoordinates(const OperatorBasis& basis, const RVec& r,
                          double trace);

}  // namespace core
}  // namespace qchaos
