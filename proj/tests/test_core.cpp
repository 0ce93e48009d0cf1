#include <doctest.h>

#include <cmath>
#include <complex>

#include "qchaos/core.hpp"

using namespace qchaos;
using doctest::Approx;

TEST_SUITE("core") {

TEST_CASE("rng streams are deterministic and splittable") {
  core::RngStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

  core::RngStream root(7);
  core::RngStream c0 = root.child(0);
  core::RngStream c0b = root.child(0);
  core::RngStream c1 = root.child(1);
  CHECK(c0.uniform() == c0b.uniform());
  CHECK(c0.uniform() != c1.uniform());
}

TEST_CASE("rng moments") {
  core::RngStream rng(11);
  double mean = 0.0, var = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    mean += x;
    var += x * x;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == Approx(1.0).epsilon(0.02));

  double emean = 0.0;
  for (int i = 0; i < n; ++i) emean += rng.exponential();
  CHECK(emean / n == Approx(1.0).epsilon(0.02));
}

TEST_CASE("makeUnitary accepts unitaries and rejects the rest") {
  core::RngStream rng(3);
  const core::Unitary u = core::haarUnitary(5, rng);
  CHECK(core::unitarityDefect(u.m) < 1e-12);
  Mat bad = u.m;
  bad(0, 0) += 1e-6;
  CHECK_THROWS(core::makeUnitary(bad));
}

TEST_CASE("spin operators satisfy the su(2) algebra") {
  for (int two_j : {1, 2, 3, 4, 7}) {
    const core::SpinSystem s = core::spinOperators(two_j);
    const double j = 0.5 * two_j;
    const Mat comm = s.jx * s.jy - s.jy * s.jx;
    CHECK((comm - cplx(0, 1) * s.jz).cwiseAbs().maxCoeff() < 1e-12);
    const Mat casimir = s.jx * s.jx + s.jy * s.jy + s.jz * s.jz;
    const Mat expected = j * (j + 1) * Mat::Identity(s.dim, s.dim);
    CHECK((casimir - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.jz(0, 0).real() == Approx(j));  // m descending
  }
}

TEST_CASE("expiHermitian matches the analytic rotation") {
  const core::SpinSystem s = core::spinOperators(1);  // Pauli/2
  const double t = 0.7;
  const Mat u = core::expiHermitian(s.jz, t);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -t / 2)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, t / 2)) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-14);
}

TEST_CASE("coherent state poles") {
  const Vec north = core::spinCoherentState(4, 0.0, 0.0);
  CHECK(std::abs(north(0) - 1.0) < 1e-12);
  const Vec south = core::spinCoherentState(4, M_PI, 0.0);
  CHECK(std::abs(south(4)) == Approx(1.0).epsilon(1e-12));
  const Vec tilted = core::spinCoherentState(6, 1.1, 2.2);
  CHECK(tilted.norm() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropies") {
  const int d = 6;
  Mat mixed = Mat::Identity(d, d) / double(d);
  CHECK(core::vonNeumannEntropy(core::makeDensityMatrix(mixed)) ==
        Approx(std::log(d)).epsilon(1e-12));

  RVec w = RVec::Constant(8, 3.0);  // normalization is internal
  CHECK(core::shannonEntropy(w) == Approx(std::log(8.0)).epsilon(1e-12));

  core::RngStream rng(5);
  const Vec psi = core::randomPureState(4, rng);
  const Mat proj = psi * psi.adjoint();
  CHECK(core::vonNeumannEntropy(core::makeDensityMatrix(proj)) ==
        Approx(0.0).epsilon(1e-8));
}

TEST_CASE("partial trace of product and entangled states") {
  core::RngStream rng(9);
  const Vec a = core::randomPureState(3, rng);
  const Vec b = core::randomPureState(4, rng);
  Vec prod(12);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) prod(i * 4 + k) = a(i) * b(k);
  const core::DensityMatrix ra = core::partialTraceSecond(prod, 3, 4);
  CHECK((ra.m - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const core::DensityMatrix rb = core::partialTraceSecond(bell, 2, 2);
  CHECK((rb.m - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fidelities") {
  core::RngStream rng(13);
  const Vec psi = core::randomPureState(5, rng);
  const core::DensityMatrix rho =
      core::makeDensityMatrix(psi * psi.adjoint());
  CHECK(core::stateFidelity(psi, rho) == Approx(1.0).epsilon(1e-10));
  CHECK(core::uhlmannFidelity(rho, rho) == Approx(1.0).epsilon(1e-8));

  const core::DensityMatrix tau = core::randomMixedState(5, rng);
  const double f = core::uhlmannFidelity(rho, tau);
  CHECK(f >= 0.0);
  CHECK(f <= 1.0);
  CHECK(f == Approx(core::stateFidelity(psi, tau)).epsilon(1e-8));
}

TEST_CASE("hermitian basis is orthonormal and complete") {
  const int d = 4;
  const core::OperatorBasis basis = core::hermitianBasis(d);
  REQUIRE(int(basis.elems.size()) == d * d - 1);
  for (int a = 0; a < basis.size(); ++a) {
    CHECK(basis.elems[a].trace().real() == Approx(0.0).epsilon(1e-14));
    CHECK((basis.elems[a] - basis.elems[a].adjoint()).cwiseAbs().maxCoeff() <
          1e-14);
    for (int b = a; b < basis.size(); ++b) {
      const double overlap = (basis.elems[a] * basis.elems[b]).trace().real();
      CHECK(overlap == Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("operator coordinates round-trip") {
  const int d = 5;
  const core::OperatorBasis basis = core::hermitianBasis(d);
  core::RngStream rng(21);
  const core::DensityMatrix rho = core::randomMixedState(d, rng);
  const RVec r = core::operatorCoordinates(basis, rho.m);
  const Mat back = core::matrixFromCoordinates(basis, r, 1.0);
  CHECK((back - rho.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random diagonal unitaries share the supplied eigenbasis") {
  core::RngStream rng(17);
  const core::Unitary basis = core::haarUnitary(6, rng);
  const core::Unitary u = core::randomDiagonalUnitary(basis, rng);
  const core::Unitary v = core::randomDiagonalUnitary(basis, rng);
  CHECK((u.m * v.m - v.m * u.m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(core::unitarityDefect(u.m) < 1e-12);
}

TEST_CASE("weak measurement kraus operators resolve the identity") {
  const core::SpinSystem s = core::spinOperators(2);
  core::WeakMeasurementModel model{s.jz, 1.0, 0.8};
  Mat total = Mat::Zero(s.dim, s.dim);
  const double dq = 0.01;
  for (double q = -12.0; q <= 12.0; q += dq)
    total += core::weakMeasurementKraus(model, q).povm * dq;
  CHECK((total - Mat::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("weak measurement update is normalized") {
  const core::SpinSystem s = core::spinOperators(2);
  core::RngStream rng(2);
  const core::DensityMatrix rho = core::randomMixedState(s.dim, rng);
  core::WeakMeasurementModel model{s.jz, 1.0, 0.5};
  const auto upd = core::weakMeasurementUpdate(model, rho, 0.3);
  CHECK(upd.state.m.trace().real() == Approx(1.0).epsilon(1e-10));
  CHECK(upd.probability > 0.0);
}

TEST_CASE("parallelFor covers every index once") {
  std::vector<int> hits(500, 0);
  core::parallelFor(500, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

}  // TEST_SUITE
