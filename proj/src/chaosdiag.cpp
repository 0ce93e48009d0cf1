#include "qchaos/chaosdiag.hpp"

#include <cmath>
#include <stdexcept>

#include "qchaos/kickedtop.hpp"

namespace qchaos::chaosdiag {

namespace {

// tr(X Y) for hermitian X, Y of the same size.
double traceProductHermitian(const Mat& x, const Mat& y) {
  return (x.array() * y.array().conjugate()).sum().real();
}

// Unit-modulus eigenvalues and orthonormal eigenvectors of a unitary; the
// Schur form of a normal matrix is diagonal, so the Schur vectors serve.
void unitaryEigensystem(const Mat& u, Vec& phases, Mat& vectors) {
  Eigen::ComplexSchur<Mat> schur(u);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("unitaryEigensystem: Schur decomposition failed");
  }
  vectors = schur.matrixU();
  phases = schur.matrixT().diagonal();
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) /= std::abs(phases(k));
  }
}

kickedtop::KickedTopParams topParams(int two_j, double kappa0) {
  kickedtop::KickedTopParams p;
  p.two_j = two_j;
  p.kappa0 = kappa0;
  return p;
}

}  // namespace

OtocSeries otocInfinite(const core::Unitary& u, const Mat& a, int n_max) {
  if (n_max < 0) throw std::invalid_argument("otocInfinite: n_max must be >= 0");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("otocInfinite: observable must be hermitian");
  }
  const int d = u.dim();
  const Mat a2 = a * a;
  OtocSeries s;
  Mat an = a;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) an = (u.m.adjoint() * an * u.m).eval();
    const Mat an2 = an * an;
    const Mat m = an * a;
    const double c2 = traceProductHermitian(an2, a2) / d;
    const double c4 = (m.array() * m.transpose().array()).sum().real() / d;
    s.times.push_back(n);
    s.c2.push_back(c2);
    s.c4.push_back(c4);
    s.values.push_back(c2 - c4);
  }
  return s;
}

double otocExactSmall(int nqubits, double kappa0, int n) {
  if (n < 0) throw std::invalid_argument("otocExactSmall: n must be >= 0");
  const auto b = kickedtop::chebyshevPropagator(nqubits, kappa0, n);
  const double bb = std::norm(b.beta);
  if (nqubits == 3) {
    const double c2 = (41.0 - 32.0 * bb) / 16.0;
    const double c4 =
        (n % 2 == 0 ? 1.0 : -1.0) * (41.0 - 160.0 * bb + 128.0 * bb * bb) / 16.0;
    return c2 - c4;
  }
  const cplx i(0.0, 1.0);
  if (n % 2 == 0) {
    const double cross =
        (b.alpha * b.alpha * std::exp(i * (0.25 * n * kappa0))).real();
    return (34.0 - 16.0 * bb - 32.0 * cross - 2.0 * std::cos(0.75 * n * kappa0)) / 5.0;
  }
  const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  const double cross = (b.alpha * std::exp(i * (0.5 * n * kappa0))).imag();
  return (25.0 - 16.0 * bb - 16.0 * sign * cross) / 5.0;
}

// For 3 qubits the two-point and four-point parts have separate closed forms
// and are reported; for 4 qubits only the full correlator is closed, so c2
// and c4 stay empty.
OtocSeries otocExactSeries(int nqubits, double kappa0, int n_max) {
  if (n_max < 0) throw std::invalid_argument("otocExactSeries: n_max must be >= 0");
  OtocSeries s;
  for (int n = 0; n <= n_max; ++n) {
    s.times.push_back(n);
    if (nqubits == 3) {
      const auto b = kickedtop::chebyshevPropagator(3, kappa0, n);
      const double bb = std::norm(b.beta);
      const double c2 = (41.0 - 32.0 * bb) / 16.0;
      const double c4 = (n % 2 == 0 ? 1.0 : -1.0) *
                        (41.0 - 160.0 * bb + 128.0 * bb * bb) / 16.0;
      s.c2.push_back(c2);
      s.c4.push_back(c4);
      s.values.push_back(c2 - c4);
    } else {
      s.values.push_back(otocExactSmall(nqubits, kappa0, n));
    }
  }
  return s;
}

double otocPiJ(int two_j, int n) {
  if (two_j < 2 || two_j % 2 != 0) {
    throw std::invalid_argument("otocPiJ: requires integer j (even two_j >= 2)");
  }
  const double j = two_j / 2;
  if (n == 1) return j * (j + 1.0) / 6.0;
  if (n == 2) return 2.0 * j * (j + 1.0) * (3.0 * j * j + 3.0 * j - 1.0) / 15.0;
  throw std::invalid_argument("otocPiJ: closed values exist for n = 1, 2 only");
}

std::vector<cplx> otocOfUnitaries(const core::Unitary& w,
                                  const core::Unitary& v,
                                  const core::Unitary& u, int n_max) {
  const int d = u.dim();
  if (w.dim() != d || v.dim() != d) {
    throw std::invalid_argument("otocOfUnitaries: dimension mismatch");
  }
  if (n_max < 0) {
    throw std::invalid_argument("otocOfUnitaries: n_max must be >= 0");
  }
  std::vector<cplx> g;
  g.reserve(n_max + 1);
  Mat wn = w.m;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) wn = (u.m.adjoint() * wn * u.m).eval();
    g.push_back((wn.adjoint() * v.m.adjoint() * wn * v.m).trace() /
                static_cast<double>(d));
  }
  return g;
}

double quantumLyapunovSlope(const OtocSeries& s, int n_lo, int n_hi) {
  if (n_lo > n_hi) throw std::invalid_argument("quantumLyapunovSlope: empty window");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const int n = s.times[k];
    if (n < n_lo || n > n_hi) continue;
    if (s.values[k] <= 1e-14) continue;
    xs.push_back(n);
    ys.push_back(0.5 * std::log(s.values[k]));
  }
  if (xs.size() < 2) {
    throw std::runtime_error("quantumLyapunovSlope: fewer than two usable points");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EchoSeries echoAveraged(int two_j, double kappa0, double kappa0p, int n_max) {
  if (n_max < 0) throw std::invalid_argument("echoAveraged: n_max must be >= 0");
  const core::Unitary u = kickedtop::floquet(topParams(two_j, kappa0));
  const core::Unitary up = kickedtop::floquet(topParams(two_j, kappa0p));
  const int d = two_j + 1;

  Vec ph, php;
  Mat v, vp;
  unitaryEigensystem(u.m, ph, v);
  unitaryEigensystem(up.m, php, vp);
  const Mat mix = v.adjoint() * vp;
  const RMat w = mix.cwiseAbs2();

  EchoSeries s;
  s.kappa0 = kappa0;
  s.kappa0p = kappa0p;
  Vec pa = Vec::Ones(d), pb = Vec::Ones(d);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      pa = pa.cwiseProduct(ph);
      pb = pb.cwiseProduct(php);
    }
    cplx tr = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        tr += std::conj(pa(a)) * pb(b) * w(a, b);
      }
    }
    s.times.push_back(n);
    s.values.push_back((d + std::norm(tr)) / (d * (d + 1.0)));
  }
  return s;
}

double echoAveragedClosed(int nqubits, double kappa0, double kappa0p, int n) {
  if (n < 0) throw std::invalid_argument("echoAveragedClosed: n must be >= 0");
  const auto b = kickedtop::chebyshevPropagator(nqubits, kappa0, n);
  const auto bp = kickedtop::chebyshevPropagator(nqubits, kappa0p, n);
  const double overlap = 2.0 * (std::conj(b.alpha) * bp.alpha).real() +
                         2.0 * (std::conj(b.beta) * bp.beta).real();
  if (nqubits == 3) return (1.0 + overlap * overlap) / 5.0;
  const cplx i(0.0, 1.0);
  const double dk = kappa0p - kappa0;
  const double c = n % 2 == 0 ? (n % 4 == 0 ? 1.0 : -1.0) : 0.0;  // cos(n pi/2)
  const double s2 = 1.0 - c * c;                                  // sin^2(n pi/2)
  const cplx tr = 1.0 + std::exp(i * (0.25 * n * dk)) * overlap +
                  2.0 * std::exp(i * (0.375 * n * dk)) *
                      (c * c + s2 * std::cos(0.375 * dk));
  return (5.0 + std::norm(tr)) / 30.0;
}

EchoSeries echoState(int two_j, const Vec& psi0, double kappa0, double kappa0p,
                     int n_max) {
  if (n_max < 0) throw std::invalid_argument("echoState: n_max must be >= 0");
  if (psi0.size() != two_j + 1) {
    throw std::invalid_argument("echoState: state dimension mismatch");
  }
  const core::Unitary u = kickedtop::floquet(topParams(two_j, kappa0));
  const core::Unitary up = kickedtop::floquet(topParams(two_j, kappa0p));
  EchoSeries s;
  s.kappa0 = kappa0;
  s.kappa0p = kappa0p;
  Vec fwd = psi0, fwdp = psi0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      fwd = u.m * fwd;
      fwdp = up.m * fwdp;
    }
    const cplx overlap = (fwd.adjoint() * fwdp)(0);
    s.times.push_back(n);
    s.values.push_back(std::norm(overlap));
  }
  return s;
}

double echoStateClosed(EchoInput which, double kappa0, double kappa0p, int n) {
  if (n < 0) throw std::invalid_argument("echoStateClosed: n must be >= 0");
  const auto b = kickedtop::chebyshevPropagator(3, kappa0, n);
  const auto bp = kickedtop::chebyshevPropagator(3, kappa0p, n);
  const cplx i(0.0, 1.0);
  const double s3 = std::sqrt(3.0);
  if (which == EchoInput::ZeroString) {
    return std::norm(std::conj(b.alpha) * bp.alpha + std::conj(b.beta) * bp.beta);
  }
  const cplx g = 0.5 * (b.alpha - i * s3 * std::conj(b.beta));
  const cplx d = 0.5 * (b.beta + i * s3 * std::conj(b.alpha));
  const cplx gp = 0.5 * (bp.alpha - i * s3 * std::conj(bp.beta));
  const cplx dp = 0.5 * (bp.beta + i * s3 * std::conj(bp.alpha));
  return std::norm(std::conj(g) * gp + std::conj(d) * dp);
}

Vec echoInputState(EchoInput which, int two_j) {
  if (which == EchoInput::ZeroString) {
    Vec psi = Vec::Zero(two_j + 1);
    psi(0) = 1.0;
    return psi;
  }
  return core::spinCoherentState(two_j, 0.5 * kPi, -0.5 * kPi);
}

}  // namespace qchaos::chaosdiag
