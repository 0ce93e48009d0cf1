#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qchaos/chaosdiag.hpp"
#include "qchaos/core.hpp"
#include "qchaos/dqc1.hpp"
#include "qchaos/kickedtop.hpp"
#include "qchaos/rmt.hpp"

using namespace qchaos;
using doctest::Approx;
namespace dq = qchaos::dqc1;

namespace {

Mat matrixPower(const Mat& u, int n) {
  Mat out = Mat::Identity(u.rows(), u.cols());
  for (int k = 0; k < n; ++k) out = u * out;
  return out;
}

double stdNormalCdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

}  // namespace

TEST_SUITE("dqc1") {

TEST_CASE("exact readout reproduces the normalized trace") {
  kickedtop::KickedTopParams params;
  params.two_j = 3;
  params.kappa0 = 2.7;
  const core::Unitary u = kickedtop::floquet(params);
  Mat power = Mat::Identity(4, 4);
  for (int n = 1; n <= 6; ++n) {
    power = u.m * power;
    const cplx t = power.trace() / 4.0;
    const auto res = dq::dqc1Trace(core::makeUnitary(power),
                                   dq::maximallyMixed());
    CHECK(res.p0 == Approx(0.5 * (1.0 + t.real())).epsilon(1e-12));
    CHECK(res.p0 + res.p1 == Approx(1.0).epsilon(1e-12));
    CHECK(res.re_estimate == Approx(t.real()).epsilon(1e-12));
    CHECK(res.im_estimate == Approx(t.imag()).epsilon(1e-12));
    CHECK(res.shots == 0);
    CHECK(res.std_error == 0.0);
  }
}

TEST_CASE("a pure system register reads out the expectation value") {
  core::RngStream rng(71);
  const core::Unitary u = core::haarUnitary(8, rng);
  const Vec psi = core::randomPureState(8, rng);
  const cplx t = (psi.adjoint() * u.m * psi)(0, 0);
  const auto res = dq::dqc1Trace(u, dq::pureState(psi));
  CHECK(res.re_estimate == Approx(t.real()).epsilon(1e-12));
  CHECK(res.im_estimate == Approx(t.imag()).epsilon(1e-12));
}

TEST_CASE("a partially polarized probe rescales the bias, not the estimate") {
  core::RngStream rng(72);
  const core::Unitary u = core::haarUnitary(4, rng);
  const cplx t = u.m.trace() / 4.0;
  const double alpha = 0.4;
  const auto res = dq::dqc1Trace(u, dq::maximallyMixed(), alpha);
  CHECK(res.p0 == Approx(0.5 * (1.0 + alpha * t.real())).epsilon(1e-12));
  CHECK(res.re_estimate == Approx(t.real()).epsilon(1e-12));
  CHECK_THROWS(dq::dqc1Trace(u, dq::maximallyMixed(), 0.0));
  CHECK_THROWS(dq::dqc1Trace(u, dq::maximallyMixed(), 1.5));
}

TEST_CASE("sampled readout converges at the binomial rate") {
  core::RngStream rng(73);
  const core::Unitary u = core::haarUnitary(8, rng);
  const cplx t = u.m.trace() / 8.0;
  const long shots = 400000;
  const auto res = dq::dqc1TraceShots(u, dq::maximallyMixed(), shots, rng);
  CHECK(res.shots == shots);
  CHECK(res.std_error == Approx(1.0 / std::sqrt(double(shots))));
  CHECK(std::abs(res.re_estimate - t.real()) < 6.0 * res.std_error);
  CHECK(std::abs(res.im_estimate - t.imag()) < 6.0 * res.std_error);

  const double alpha = 0.25;
  const auto res2 =
      dq::dqc1TraceShots(u, dq::maximallyMixed(), 1000, rng, alpha);
  CHECK(res2.std_error ==
        Approx(1.0 / (alpha * std::sqrt(1000.0))).epsilon(1e-12));
}

TEST_CASE("normalized shot errors follow a standard normal law") {
  // sigma_z on the first of three qubits: traceless, so both readout
  // frequencies sit at exactly 1/2 and the error is purely binomial.
  Mat z = Mat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) z(i, i) = (i < 4) ? 1.0 : -1.0;
  const core::Unitary u = core::makeUnitary(z);

  const long shots = 1024;
  const int reps = 500;
  core::RngStream root(99);
  std::vector<double> normalized;
  normalized.reserve(reps);
  for (int k = 0; k < reps; ++k) {
    core::RngStream rng = root.child(k);
    const auto res = dq::dqc1TraceShots(u, dq::maximallyMixed(), shots, rng);
    normalized.push_back(res.re_estimate / res.std_error);
  }
  const double ks = rmt::ksStatistic(normalized, stdNormalCdf);
  CHECK(ks < 1.628 / std::sqrt(double(reps)));
}

TEST_CASE("commutator unitary matches the direct correlator") {
  core::RngStream rng(74);
  const core::Unitary w = core::haarUnitary(8, rng);
  const core::Unitary v = core::haarUnitary(8, rng);
  const core::Unitary u = core::haarUnitary(8, rng);
  const auto series = chaosdiag::otocOfUnitaries(w, v, u, 5);
  Mat power = Mat::Identity(8, 8);
  for (int n = 0; n <= 5; ++n) {
    const auto res = dq::dqc1Otoc(w, v, core::makeUnitary(power),
                                  dq::maximallyMixed());
    CHECK(res.re_estimate == Approx(series[n].real()).epsilon(1e-10));
    CHECK(res.im_estimate == Approx(series[n].imag()).epsilon(1e-10));
    power = u.m * power;
  }
}

TEST_CASE("commutator unitary on the kicked top") {
  kickedtop::KickedTopParams params;
  params.two_j = 4;
  params.kappa0 = 6.0;
  const core::Unitary u = kickedtop::floquet(params);
  const core::SpinSystem spin = core::spinOperators(4);
  const core::Unitary w =
      core::makeUnitary(kickedtop::rotationPi(spin, kickedtop::Axis::X));
  const auto series = chaosdiag::otocOfUnitaries(w, w, u, 4);
  Mat power = Mat::Identity(5, 5);
  for (int n = 0; n <= 4; ++n) {
    const auto res =
        dq::dqc1Otoc(w, w, core::makeUnitary(power), dq::maximallyMixed());
    CHECK(res.re_estimate == Approx(series[n].real()).epsilon(1e-10));
    CHECK(res.im_estimate == Approx(series[n].imag()).epsilon(1e-10));
    power = u.m * power;
  }
}

TEST_CASE("spectral readout peaks at the encoded phase") {
  const int n2 = 5, N2 = 32, u0 = 5;
  Mat m(1, 1);
  m(0, 0) = std::exp(cplx(0.0, -4.0 * kPi * u0 / N2));
  std::vector<int> grid;
  for (int u = 0; u < N2; ++u) grid.push_back(u);
  const auto f = dq::dqc1SpectralDensity(core::makeUnitary(m), n2, grid,
                                         dq::maximallyMixed());
  REQUIRE(f.size() == grid.size());
  for (int u = 0; u < N2; ++u) {
    const double expected = (u == u0 || u == u0 + N2 / 2) ? 1.0 : 0.0;
    CHECK(std::abs(f[u] - cplx(expected, 0.0)) < 1e-12);
  }
}

TEST_CASE("spectral readout of the identity concentrates at zero") {
  const int n2 = 4, N2 = 16;
  const core::Unitary eye = core::makeUnitary(Mat::Identity(3, 3));
  const auto f = dq::dqc1SpectralDensity(eye, n2, {0, 3, N2 / 2},
                                         dq::maximallyMixed());
  CHECK(std::abs(f[0] - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(f[1]) < 1e-12);
  CHECK(std::abs(f[2] - cplx(1.0, 0.0)) < 1e-12);  // doubled-kernel alias
}

TEST_CASE("full-grid sum keeps the half-period alias term") {
  core::RngStream rng(75);
  const int n2 = 4, N2 = 16;
  const core::Unitary u = core::haarUnitary(6, rng);
  std::vector<int> grid;
  for (int k = 0; k < N2; ++k) grid.push_back(k);

  for (const auto& state :
       {dq::maximallyMixed(), dq::pureState(core::randomPureState(6, rng))}) {
    const auto f = dq::dqc1SpectralDensity(u, n2, grid, state);
    cplx total = 0.0;
    for (const auto& v : f) total += v;

    const Mat half = matrixPower(u.m, N2 / 2);
    cplx alias;
    if (state.psi)
      alias = ((*state.psi).adjoint() * half * (*state.psi))(0, 0);
    else
      alias = half.trace() / 6.0;
    CHECK(std::abs(total - (1.0 + alias)) < 1e-12);
  }

  // phases at +-pi/N2: the half-period power is traceless and the sum is 1
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = std::exp(cplx(0.0, kPi / N2));
  m(1, 1) = std::exp(cplx(0.0, -kPi / N2));
  const auto f = dq::dqc1SpectralDensity(core::makeUnitary(m), n2, grid,
                                         dq::maximallyMixed());
  cplx total = 0.0;
  for (const auto& v : f) total += v;
  CHECK(std::abs(total - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("depolarizing channel") {
  core::RngStream rng(76);
  const core::DensityMatrix rho = core::randomMixedState(6, rng);
  const dq::DepolarizingChannel mid{0.3, 6};
  const core::DensityMatrix out = dq::applyDepolarizing(rho, mid);
  CHECK(out.m.trace().real() == Approx(1.0).epsilon(1e-12));
  CHECK((out.m - out.m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((out.m - 0.3 * rho.m - 0.7 * Mat::Identity(6, 6) / 6.0)
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  const core::DensityMatrix erased =
      dq::applyDepolarizing(rho, dq::DepolarizingChannel{0.0, 6});
  CHECK((erased.m - Mat::Identity(6, 6) / 6.0).cwiseAbs().maxCoeff() == 0.0);

  const core::DensityMatrix kept =
      dq::applyDepolarizing(rho, dq::DepolarizingChannel{1.0, 6});
  CHECK((kept.m - rho.m).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS(dq::applyDepolarizing(rho, dq::DepolarizingChannel{0.5, 4}));
  CHECK_THROWS(dq::applyDepolarizing(rho, dq::DepolarizingChannel{1.2, 6}));
}

TEST_CASE("gate fidelity under depolarizing noise is state independent") {
  core::RngStream rng(77);
  const core::Unitary u = core::haarUnitary(8, rng);
  const dq::DepolarizingChannel channel{0.7, 8};
  const double expected = 0.7 + 0.3 / 8.0;
  for (int k = 0; k < 3; ++k) {
    const Vec psi = core::randomPureState(8, rng);
    CHECK(dq::dqc1GateFidelity(u, channel, psi) ==
          Approx(expected).epsilon(1e-12));
  }
  CHECK(dq::dqc1GateFidelityHaar(channel) == Approx(expected).epsilon(1e-15));
}

TEST_CASE("gate fidelity from a Kraus decomposition") {
  Mat k0 = std::sqrt(0.6) * Mat::Identity(2, 2);
  Mat k1 = Mat::Zero(2, 2);
  k1(0, 0) = std::sqrt(0.4);
  k1(1, 1) = -std::sqrt(0.4);
  const dq::KrausList dephasing{k0, k1};
  const core::Unitary eye = core::makeUnitary(Mat::Identity(2, 2));

  Vec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(dq::dqc1GateFidelity(eye, dephasing, plus) ==
        Approx(0.6).epsilon(1e-12));

  Vec zero(2);
  zero << 1.0, 0.0;
  CHECK(dq::dqc1GateFidelity(eye, dephasing, zero) ==
        Approx(1.0).epsilon(1e-12));

  const dq::KrausList lossy{0.5 * Mat::Identity(2, 2)};
  CHECK_THROWS(dq::dqc1GateFidelity(eye, lossy, zero));
  CHECK_THROWS(dq::dqc1GateFidelity(eye, dq::KrausList{}, zero));
}

TEST_CASE("shot budget for a target precision") {
  CHECK(dq::shotsRequired(0.1, 0.05) == 300);
  CHECK(dq::shotsRequired(0.05, 0.05) == 1199);
  CHECK(dq::shotsRequired(0.1, 0.01) == 461);
}

}  // TEST_SUITE
