#include "qchaos/dqc1.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qchaos::dqc1 {

namespace {

cplx traceFunctional(const core::Unitary& u, const SystemState& state) {
  if (state.psi) {
    const Vec& psi = *state.psi;
    if (psi.size() != u.m.rows())
      throw std::invalid_argument("dqc1Trace: state dimension mismatch");
    return (psi.adjoint() * (u.m * psi))(0, 0);
  }
  return u.m.trace() / static_cast<double>(u.m.rows());
}

void checkAlpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("probe purity alpha must lie in (0, 1]");
}

long countBernoulli(long trials, double p, core::RngStream& rng) {
  long hits = 0;
  for (long i = 0; i < trials; ++i)
    if (rng.uniform() < p) ++hits;
  return hits;
}

}  // namespace

SystemState maximallyMixed() { return {}; }

SystemState pureState(Vec psi) {
  SystemState s;
  psi.normalize();
  s.psi = std::move(psi);
  return s;
}

Dqc1Result dqc1Trace(const core::Unitary& u, const SystemState& state,
                     double alpha) {
  checkAlpha(alpha);
  const cplx t = traceFunctional(u, state);
  Dqc1Result r;
  r.p0 = 0.5 * (1.0 + alpha * t.real());
  r.p1 = 1.0 - r.p0;
  r.re_estimate = t.real();
  r.im_estimate = t.imag();
  return r;
}

Dqc1Result dqc1TraceShots(const core::Unitary& u, const SystemState& state,
                          long shots, core::RngStream& rng, double alpha) {
  checkAlpha(alpha);
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  const cplx t = traceFunctional(u, state);
  const double p0x = 0.5 * (1.0 + alpha * t.real());
  const double p0y = 0.5 * (1.0 + alpha * t.imag());

  Dqc1Result r;
  const double f0x = static_cast<double>(countBernoulli(shots, p0x, rng)) /
                     static_cast<double>(shots);
  const double f0y = static_cast<double>(countBernoulli(shots, p0y, rng)) /
                     static_cast<double>(shots);
  r.p0 = f0x;
  r.p1 = 1.0 - f0x;
  r.re_estimate = (2.0 * f0x - 1.0) / alpha;
  r.im_estimate = (2.0 * f0y - 1.0) / alpha;
  r.shots = shots;
  r.std_error = 1.0 / (alpha * std::sqrt(static_cast<double>(shots)));
  return r;
}

core::Unitary otocUnitary(const core::Unitary& w, const core::Unitary& v,
                          const core::Unitary& u_tau) {
  const Mat w_tau = u_tau.m.adjoint() * w.m * u_tau.m;
  return core::makeUnitary(w_tau.adjoint() * v.m.adjoint() * w_tau *
                           v.m);
}

Dqc1Result dqc1Otoc(const core::Unitary& w, const core::Unitary& v,
                    const core::Unitary& u_tau, const SystemState& state,
                    double alpha) {
  return dqc1Trace(otocUnitary(w, v, u_tau), state, alpha);
}

Dqc1Result dqc1OtocShots(const core::Unitary& w, const core::Unitary& v,
                         const core::Unitary& u_tau, const SystemState& state,
                         long shots, core::RngStream& rng, double alpha) {
  return dqc1TraceShots(otocUnitary(w, v, u_tau), state, shots, rng, alpha);
}

std::vector<cplx> dqc1SpectralDensity(const core::Unitary& otoc_unitary,
                                      int n2, const std::vector<int>& u_grid,
                                      const SystemState& state) {
  if (n2 < 1 || n2 > 30)
    throw std::invalid_argument("dqc1SpectralDensity: n2 out of range");
  const long n2_size = 1L << n2;
  const long d = otoc_unitary.m.rows();

  Eigen::ComplexSchur<Mat> schur(otoc_unitary.m);
  Eigen::VectorXd theta(d);
  Eigen::VectorXd weight(d);
  for (long k = 0; k < d; ++k)
    theta(k) = std::arg(schur.matrixT()(k, k));
  if (state.psi) {
    const Vec overlap = schur.matrixU().adjoint() * (*state.psi);
    for (long k = 0; k < d; ++k) weight(k) = std::norm(overlap(k));
  } else {
    weight.setConstant(1.0 / static_cast<double>(d));
  }

  std::vector<cplx> f;
  f.reserve(u_grid.size());
  for (int u : u_grid) {
    cplx acc = 0.0;
    for (long k = 0; k < d; ++k) {
      const double x =
          4.0 * M_PI * u / static_cast<double>(n2_size) + theta(k);
      const cplx step = std::polar(1.0, x);
      // geometric sum over s = 0 .. N2-1, with the degenerate ray summed
      // exactly instead of through the 0/0 ratio
      if (std::abs(step - cplx(1.0, 0.0)) < 1e-14) {
        acc += weight(k) * static_cast<double>(n2_size);
      } else {
        acc += weight(k) * (1.0 - std::pow(step, n2_size)) / (1.0 - step);
      }
    }
    f.push_back(acc / static_cast<double>(n2_size));
  }
  return f;
}

core::DensityMatrix applyDepolarizing(const core::DensityMatrix& rho,
                                      const DepolarizingChannel& channel) {
  if (channel.dim != rho.m.rows())
    throw std::invalid_argument("applyDepolarizing: dimension mismatch");
  if (channel.p < 0.0 || channel.p > 1.0)
    throw std::invalid_argument("depolarizing probability out of [0, 1]");
  if (channel.p == 0.0) {
    Mat mixed = Mat::Identity(channel.dim, channel.dim) /
                static_cast<double>(channel.dim);
    return core::makeDensityMatrix(std::move(mixed));
  }
  Mat out = channel.p * rho.m +
            (1.0 - channel.p) / static_cast<double>(channel.dim) *
                Mat::Identity(channel.dim, channel.dim);
  return core::makeDensityMatrix(std::move(out));
}

double dqc1GateFidelity(const core::Unitary& u_target, const Noise& noise,
                        const Vec& psi) {
  const long d = u_target.m.rows();
  if (psi.size() != d)
    throw std::invalid_argument("dqc1GateFidelity: state dimension mismatch");
  const Vec evolved = u_target.m * psi;
  const Mat rho = evolved * evolved.adjoint();

  Mat noisy;
  if (std::holds_alternative<DepolarizingChannel>(noise)) {
    const auto& ch = std::get<DepolarizingChannel>(noise);
    noisy = applyDepolarizing(core::makeDensityMatrix(rho), ch).m;
  } else {
    const auto& kraus = std::get<KrausList>(noise);
    if (kraus.empty())
      throw std::invalid_argument("dqc1GateFidelity: empty Kraus list");
    Mat sum = Mat::Zero(d, d);
    for (const Mat& a : kraus) {
      if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument("Kraus operator dimension mismatch");
      sum += a.adjoint() * a;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("Kraus list is not trace preserving");
    noisy = Mat::Zero(d, d);
    for (const Mat& a : kraus) noisy += a * rho * a.adjoint();
  }

  const cplx f = (evolved.adjoint() * (noisy * evolved))(0, 0);
  return f.real();
}

double dqc1GateFidelityHaar(const DepolarizingChannel& channel) {
  if (channel.dim <= 0)
    throw std::invalid_argument("dqc1GateFidelityHaar: dim must be positive");
  return channel.p + (1.0 - channel.p) / static_cast<double>(channel.dim);
}

long shotsRequired(double epsilon, double p_error) {
  if (!(epsilon > 0.0) || !(p_error > 0.0) || p_error >= 1.0)
    throw std::invalid_argument("shotsRequired: need epsilon > 0, p_error in (0, 1)");
  return static_cast<long>(std::ceil(std::log(1.0 / p_error) /
                                     (epsilon * epsilon)));
}

}  // namespace qchaos::dqc1
