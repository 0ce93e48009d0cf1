#include "qchaos/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qchaos::rmt {

namespace {

double simpsonRec(const std::function<double(double)>& f, double a, double b,
                  double fa, double fm, double fb, double whole, double tol,
                  int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpsonRec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpsonRec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpsonRec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Standard-form Marchenko-Pastur with ratio q = D/N: unit-mean density
//   rho(x) = sqrt((x - a)(b - x)) / (2 pi q x),  a,b = (1 -+ sqrt(q))^2.
// Integrates g against rho via x(t) = a + (b - a) sin^2 t, which absorbs the
// square-root edges (and the q = 1 hard edge at x = 0):
//   rho(x) dx = (b - a)^2 sin^2(2t) / (4 pi q x(t)) dt,  t in [0, pi/2].
double mpExpectation(double q, const std::function<double(double)>& g,
                     double tol) {
  const double sq = std::sqrt(q);
  const double a = (1.0 - sq) * (1.0 - sq);
  const double b = (1.0 + sq) * (1.0 + sq);
  const double span = b - a;
  auto integrand = [&](double t) {
    const double st = std::sin(t);
    const double x = a + span * st * st;
    if (x <= 0.0) return 0.0;
    const double s2 = std::sin(2.0 * t);
    return g(x) * span * span * s2 * s2 / (4.0 * kPi * q * x);
  };
  return adaptiveSimpson(integrand, 0.0, 0.5 * kPi, tol);
}

void requireShape(int D, int N) {
  if (D <= 0 || N <= 0 || D > N) {
    throw std::invalid_argument("Marchenko-Pastur needs 0 < D <= N");
  }
}

}  // namespace

std::pair<double, double> mpSupport(int D, int N) {
  requireShape(D, N);
  const double r = std::sqrt(static_cast<double>(D) / N);
  const double lo = (1.0 - r) * (1.0 - r) / N;
  const double hi = (1.0 + r) * (1.0 + r) / N;
  return {lo, hi};
}

MarchenkoPastur marchenkoPastur(int D, int N) {
  requireShape(D, N);
  MarchenkoPastur params;
  params.D = D;
  params.N = N;
  std::tie(params.lambda_minus, params.lambda_plus) = mpSupport(D, N);
  params.normalization = 1.0;

  // Raw mass of the N/(2 pi lambda) prefactor form; comes out to D/N.
  MarchenkoPastur raw = params;
  auto density = [&raw](double x) { return mpDensity(raw, x); };
  const double mass = adaptiveSimpson(
      [&](double t) {
        const double st = std::sin(t);
        const double span = raw.lambda_plus - raw.lambda_minus;
        const double x = raw.lambda_minus + span * st * st;
        return density(x) * span * std::sin(2.0 * t);
      },
      0.0, 0.5 * kPi, 1e-10);
  params.normalization = 1.0 / mass;
  return params;
}

double mpDensity(const MarchenkoPastur& params, double lambda) {
  if (lambda <= params.lambda_minus || lambda >= params.lambda_plus) {
    return 0.0;
  }
  const double inner =
      (lambda - params.lambda_minus) * (params.lambda_plus - lambda);
  return params.normalization * params.N * std::sqrt(inner) /
         (2.0 * kPi * lambda);
}

double mpCdf(const MarchenkoPastur& params, double lambda) {
  if (lambda <= params.lambda_minus) return 0.0;
  if (lambda >= params.lambda_plus) return 1.0;
  // Integrate with the same edge-absorbing substitution, stopped at lambda.
  const double span = params.lambda_plus - params.lambda_minus;
  const double frac = (lambda - params.lambda_minus) / span;
  const double t_hi = std::asin(std::sqrt(frac));
  const double value = adaptiveSimpson(
      [&](double t) {
        const double st = std::sin(t);
        const double x = params.lambda_minus + span * st * st;
        return mpDensity(params, x) * span * std::sin(2.0 * t);
      },
      0.0, t_hi, 1e-10);
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> sampleWishart(int D, int N, core::RngStream& rng) {
  requireShape(D, N);
  RMat x(D, N);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < N; ++j) {
      x(i, j) = rng.normal();
    }
  }
  RMat w = x * x.transpose() / static_cast<double>(N);
  Eigen::SelfAdjointEigenSolver<RMat> es(w);
  const RVec& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + D);
}

double porterThomasDensity(double lambda) {
  if (lambda <= 0.0) return 0.0;
  return std::exp(-0.5 * lambda) / std::sqrt(2.0 * kPi * lambda);
}

double porterThomasCdf(double lambda) {
  if (lambda <= 0.0) return 0.0;
  return std::erf(std::sqrt(0.5 * lambda));
}

double ksStatistic(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("ksStatistic needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    dist = std::max(dist, (i + 1.0) / n - f);
    dist = std::max(dist, f - i / n);
  }
  return dist;
}

double predictFI_MP(int D, int N, std::optional<double> ridge) {
  requireShape(D, N);
  const double q = static_cast<double>(D) / N;
  const double s = N * std::sqrt(D + 1.0) / 6.0;
  const double c = ridge.value_or(D + 1.0);
  if (c < 0.0) throw std::invalid_argument("ridge must be nonnegative");
  if (c == 0.0 && D == N) {
    throw std::invalid_argument(
        "square case with zero ridge: 1/lambda is not integrable at the "
        "hard edge");
  }
  const double populated =
      D * mpExpectation(q, [&](double x) { return 1.0 / (s * x + c); }, 1e-12);
  const double empty = (c == 0.0) ? 0.0 : 1.0 / c;
  return 1.0 / (populated + empty);
}

double predictEntropy_MP(int D, int N) {
  requireShape(D, N);
  const double q = static_cast<double>(D) / N;
  const double xlnx =
      mpExpectation(q, [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; },
                    1e-12);
  return std::log(static_cast<double>(D)) - xlnx;
}

double predictEntropy_PT(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  constexpr double kEulerGamma = 0.57721566490153286;
  return 2.0 * std::log(static_cast<double>(d)) -
         (2.0 - kEulerGamma - std::log(2.0));
}

double predictFI_PT(int d, std::optional<double> trace_constraint) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  const double d2 = static_cast<double>(d) * d;
  const double trace = trace_constraint.value_or(d2 * d * (d2 - 1.0));
  if (trace <= 0.0) throw std::invalid_argument("trace must be positive");
  // lambda = u^2 turns the density into a half Gaussian:
  //   Int rho(l) g(l) dl = sqrt(2/pi) Int_0^inf exp(-u^2/2) g(u^2) du.
  const double scale = trace / d2;
  auto integrand = [&](double u) {
    return std::exp(-0.5 * u * u) / (scale * u * u + d2);
  };
  const double tail = adaptiveSimpson(integrand, 0.0, 40.0, 1e-14);
  const double mean_inv = std::sqrt(2.0 / kPi) * tail;
  return 1.0 / (d2 * mean_inv);
}

}  // namespace qchaos::rmt
