#include "qchaos/kickedtop.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qchaos::kickedtop {

namespace {

// cos(n pi / 2), sin(n pi / 2) without rounding crud.
int cosHalfPi(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

int sinHalfPi(int n) { return cosHalfPi(n - 1); }

}  // namespace

core::Unitary floquet(const KickedTopParams& params) {
  const core::SpinSystem spin = core::spinOperators(params.two_j);
  const double den =
      params.norm == TorsionNorm::TwoJ ? params.two_j : params.two_j + 1;
  Vec torsion(spin.dim);
  for (int a = 0; a < spin.dim; ++a) {
    const double m = spin.j() - a;
    torsion(a) = std::exp(cplx(0.0, -params.kappa0 * m * m / den));
  }
  Mat u = torsion.asDiagonal() * core::expiHermitian(spin.jy, params.p);
  if (params.chain_phase) u *= std::exp(cplx(0.0, 0.25 * params.kappa0));
  return core::makeUnitary(std::move(u));
}

Mat rotationPi(const core::SpinSystem& spin, Axis axis) {
  switch (axis) {
    case Axis::X: return core::expiHermitian(spin.jx, kPi);
    case Axis::Y: return core::expiHermitian(spin.jy, kPi);
    default: return core::expiHermitian(spin.jz, kPi);
  }
}

ClassicalPoint classicalStep(const ClassicalPoint& p, double kappa0) {
  const double c = std::cos(kappa0 * p.x);
  const double s = std::sin(kappa0 * p.x);
  return ClassicalPoint{p.z * c + p.y * s, -p.z * s + p.y * c, -p.x};
}

std::vector<ClassicalPoint> classicalOrbit(const ClassicalPoint& p0,
                                           double kappa0, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("classicalOrbit: n_steps must be >= 0");
  std::vector<ClassicalPoint> orbit;
  orbit.reserve(n_steps + 1);
  orbit.push_back(p0);
  for (int n = 0; n < n_steps; ++n) orbit.push_back(classicalStep(orbit.back(), kappa0));
  return orbit;
}

double classicalLyapunov(double kappa0, core::RngStream& rng, int n_init,
                         int n_steps) {
  if (n_init < 1 || n_steps < 1) {
    throw std::invalid_argument("classicalLyapunov: need n_init, n_steps >= 1");
  }
  constexpr double delta0 = 1e-8;
  double total = 0.0;
  for (int t = 0; t < n_init; ++t) {
    double v[3];
    do {
      for (double& c : v) c = rng.normal();
    } while (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] < 1e-12);
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    ClassicalPoint a{v[0] / norm, v[1] / norm, v[2] / norm};
    // companion: offset along a random direction, projected back to the sphere
    ClassicalPoint b{a.x + delta0 * rng.normal(), a.y + delta0 * rng.normal(),
                     a.z + delta0 * rng.normal()};
    auto renorm = [](ClassicalPoint& p) {
      const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
      p.x /= r; p.y /= r; p.z /= r;
    };
    renorm(b);
    auto dist = [](const ClassicalPoint& u, const ClassicalPoint& w) {
      const double dx = u.x - w.x, dy = u.y - w.y, dz = u.z - w.z;
      return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    // rescale the companion to the reference separation
    {
      const double d = dist(a, b);
      b.x = a.x + (b.x - a.x) * delta0 / d;
      b.y = a.y + (b.y - a.y) * delta0 / d;
      b.z = a.z + (b.z - a.z) * delta0 / d;
      renorm(b);
    }
    double sum = 0.0;
    for (int n = 0; n < n_steps; ++n) {
      a = classicalStep(a, kappa0);
      b = classicalStep(b, kappa0);
      const double d = dist(a, b);
      sum += std::log(d / delta0);
      b.x = a.x + (b.x - a.x) * delta0 / d;
      b.y = a.y + (b.y - a.y) * delta0 / d;
      b.z = a.z + (b.z - a.z) * delta0 / d;
      renorm(b);
    }
    total += sum / n_steps;
  }
  return total / n_init;
}

core::Unitary parityBasis(int nqubits) {
  const cplx i(0.0, 1.0);
  const double q = 1.0 / std::sqrt(2.0);
  if (nqubits == 3) {
    Mat b(4, 4);
    b.col(0) << q, 0, 0, -i * q;  // phi1+
    b.col(1) << 0, q, i * q, 0;   // phi2+
    b.col(2) << q, 0, 0, i * q;   // phi1-
    b.col(3) << 0, q, -i * q, 0;  // phi2-
    return core::makeUnitary(std::move(b));
  }
  if (nqubits == 4) {
    Mat b(5, 5);
    b.col(0) << 0, q, 0, -q, 0;  // phi1+
    b.col(1) << q, 0, 0, 0, q;   // phi2+
    b.col(2) << 0, 0, 1, 0, 0;   // phi3+
    b.col(3) << 0, q, 0, q, 0;   // phi1-
    b.col(4) << q, 0, 0, 0, -q;  // phi2-
    return core::makeUnitary(std::move(b));
  }
  throw std::invalid_argument("parityBasis: nqubits must be 3 or 4");
}

double chebyshevT(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshevT: n must be >= 0");
  if (std::abs(x) > 1.0 + 1e-12) throw std::invalid_argument("chebyshevT: |x| must be <= 1");
  x = std::clamp(x, -1.0, 1.0);
  if (1.0 - x * x >= 1e-16) return std::cos(n * std::acos(x));
  double t0 = 1.0, t1 = x;
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double chebyshevU(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshevU: n must be >= 0");
  if (std::abs(x) > 1.0 + 1e-12) throw std::invalid_argument("chebyshevU: |x| must be <= 1");
  x = std::clamp(x, -1.0, 1.0);
  const double s2 = 1.0 - x * x;
  if (s2 >= 1e-16) {
    const double theta = std::acos(x);
    return std::sin((n + 1) * theta) / std::sin(theta);
  }
  double u0 = 1.0, u1 = 2.0 * x;
  if (n == 0) return u0;
  for (int k = 1; k < n; ++k) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

ChebyshevBlocks chebyshevPropagator(int nqubits, double kappa0, int n) {
  if (nqubits != 3 && nqubits != 4) {
    throw std::invalid_argument("chebyshevPropagator: nqubits must be 3 or 4");
  }
  if (n < 0) throw std::invalid_argument("chebyshevPropagator: n must be >= 0");
  const cplx i(0.0, 1.0);
  ChebyshevBlocks b;
  b.nqubits = nqubits;
  b.n = n;
  if (nqubits == 3) {
    const double kappa = kappa0 / 6.0;
    b.kappa = kappa;
    b.chi = 0.5 * std::sin(2.0 * kappa);
    const double tn = chebyshevT(n, b.chi);
    const double un = n == 0 ? 0.0 : chebyshevU(n - 1, b.chi);
    b.alpha = tn + 0.5 * i * un * std::cos(2.0 * kappa);
    b.beta = 0.5 * std::sqrt(3.0) * un * std::exp(2.0 * i * kappa);
    const cplx pre_p = std::exp(-i * (n * (kPi / 4.0 + kappa)));
    const cplx pre_m =
        std::pow(-1.0, n) * std::exp(-i * (n * (-kPi / 4.0 + kappa)));
    b.uplus << b.alpha, -std::conj(b.beta), b.beta, std::conj(b.alpha);
    b.uplus *= pre_p;
    b.uminus << b.alpha, std::conj(b.beta), -b.beta, std::conj(b.alpha);
    b.uminus *= pre_m;
  } else {
    const double kappa = kappa0 / 2.0;
    b.kappa = kappa;
    b.chi = 0.5 * std::sin(kappa);
    const double tn = chebyshevT(n, b.chi);
    const double un = n == 0 ? 0.0 : chebyshevU(n - 1, b.chi);
    b.alpha = tn + 0.5 * i * un * std::cos(kappa);
    b.beta = 0.5 * std::sqrt(3.0) * un * std::exp(i * kappa);
    const cplx pre_p = std::exp(-i * (0.5 * n * (kPi + kappa)));
    b.uplus << b.alpha, i * std::conj(b.beta), i * b.beta, std::conj(b.alpha);
    b.uplus *= pre_p;
    const double c = cosHalfPi(n);
    const double s = sinHalfPi(n);
    const cplx w = std::exp(0.75 * i * kappa);
    b.uminus << c, w * s, -s / w, c;
    b.uminus *= std::exp(-0.75 * i * (n * kappa));
    b.u0 = cplx(cosHalfPi(2 * n), 0.0);  // (-1)^n
  }
  const double pell =
      std::abs(std::norm(b.alpha) + std::norm(b.beta) - 1.0);
  if (pell > 1e-10) throw std::runtime_error("chebyshevPropagator: block not unitary");
  return b;
}

GaussSumCoefficients gaussSumCoefficients(int r, int s) {
  if (r < 1 || s < 1) throw std::invalid_argument("gaussSumCoefficients: need r, s >= 1");
  if (std::gcd(r, s) != 1) throw std::invalid_argument("gaussSumCoefficients: r, s must be coprime");
  GaussSumCoefficients g;
  g.r = r;
  g.s = s;
  g.a.resize(2 * s);
  const cplx i(0.0, 1.0);
  for (int l = 0; l < 2 * s; ++l) {
    cplx acc = 0.0;
    for (int m = 0; m < 2 * s; ++m) {
      acc += std::exp(-i * kPi * (static_cast<double>(m) * l / s +
                                  static_cast<double>(r) * m * m / s));
    }
    g.a[l] = acc / (2.0 * s);
  }
  return g;
}

double verifyGaussSum(const GaussSumCoefficients& g, int two_j) {
  if (two_j % 2 != 0) {
    throw std::invalid_argument("verifyGaussSum: requires integer j (even two_j)");
  }
  const core::SpinSystem spin = core::spinOperators(two_j);
  const cplx i(0.0, 1.0);
  double worst = 0.0;
  for (int a = 0; a < spin.dim; ++a) {
    const double m = spin.j() - a;
    cplx lhs = 0.0;
    for (int l = 0; l < 2 * g.s; ++l) {
      lhs += g.a[l] * std::exp(-i * (kPi * l * m / g.s));
    }
    const cplx rhs = std::exp(-i * (kPi * g.r * m * m / g.s));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace qchaos::kickedtop
