#include <doctest.h>

#include <cmath>
#include <vector>

#include "qchaos/core.hpp"
#include "qchaos/tomography.hpp"

using namespace qchaos;
using doctest::Approx;
namespace tg = qchaos::tomography;

namespace {

RMat policyObservables(const tg::UnitaryPolicy& policy, const Mat& o0,
                       int n_steps, core::RngStream& rng) {
  const auto seq = tg::generateSequence(policy, n_steps, rng);
  const auto basis = core::hermitianBasis(policy.dim);
  return tg::evolveObservables(o0, seq, basis);
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("floquet generator is unitary") {
  for (double kappa0 : {0.5, 3.0, 7.0}) {
    const core::Unitary u = tg::tomographyFloquet(21, kappa0);
    CHECK(u.dim() == 21);
    CHECK(core::unitarityDefect(u.m) < 1e-12);
  }
}

TEST_CASE("hybrid map takes phases from one source and vectors from the other") {
  const core::Unitary eig_src = tg::tomographyFloquet(9, 0.5);
  const core::Unitary vec_src = tg::tomographyFloquet(9, 7.0);
  const core::Unitary mix = tg::hybridUnitary(eig_src, vec_src);
  CHECK(core::unitarityDefect(mix.m) < 1e-10);

  // shared eigenbasis with vec_src
  CHECK((mix.m * vec_src.m - vec_src.m * mix.m).cwiseAbs().maxCoeff() < 1e-9);

  // same spectrum as eig_src: compare characteristic polynomial proxies
  Eigen::VectorXcd ev_mix = mix.m.eigenvalues();
  Eigen::VectorXcd ev_src = eig_src.m.eigenvalues();
  std::vector<double> a, b;
  for (int i = 0; i < 9; ++i) {
    a.push_back(std::arg(ev_mix(i)));
    b.push_back(std::arg(ev_src(i)));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (int i = 0; i < 9; ++i) CHECK(a[i] == Approx(b[i]).epsilon(1e-8));

  const Mat eye = Mat::Identity(9, 9);
  CHECK_THROWS(tg::hybridUnitary(core::makeUnitary(eye), vec_src));
}

TEST_CASE("policy sequences have the requested shape") {
  core::RngStream rng(1);
  const auto haar = tg::generateSequence(tg::haarEachStep(6), 5, rng);
  REQUIRE(haar.size() == 5);
  CHECK((haar[0].m - haar[1].m).cwiseAbs().maxCoeff() > 1e-3);

  core::RngStream rng2(2);
  const auto rep = tg::generateSequence(tg::repeatedHaar(6), 5, rng2);
  CHECK((rep[0].m - rep[4].m).cwiseAbs().maxCoeff() < 1e-14);

  core::RngStream rng3(3);
  const auto diag = tg::generateSequence(tg::diagonalFixedBasis(6), 5, rng3);
  for (size_t i = 1; i < diag.size(); ++i)
    CHECK((diag[0].m * diag[i].m - diag[i].m * diag[0].m)
              .cwiseAbs()
              .maxCoeff() < 1e-9);
}

TEST_CASE("conjugation preserves the observable norm") {
  core::RngStream rng(4);
  const core::SpinSystem spin = core::spinOperators(6);
  const RMat obs =
      policyObservables(tg::haarEachStep(7), spin.jz, 40, rng);
  REQUIRE(obs.rows() == 40);
  REQUIRE(obs.cols() == 48);
  const double norm0 = spin.jz.norm();
  for (int n = 0; n < obs.rows(); ++n)
    CHECK(obs.row(n).norm() == Approx(norm0).epsilon(1e-10));
}

TEST_CASE("noiseless records invert exactly") {
  core::RngStream rng(6);
  const core::SpinSystem spin = core::spinOperators(3);
  const RMat obs = policyObservables(tg::haarEachStep(4), spin.jz, 20, rng);
  const Vec psi = core::randomPureState(4, rng);
  const auto ens = tg::simulateRecordPure(psi, obs, 0.0, rng);
  const auto est = tg::estimateState(ens);
  CHECK((est.r_ml - ens.r_true).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(est.fidelity == Approx(1.0).epsilon(1e-9));
  CHECK(est.informative);
}

TEST_CASE("estimates are physical states in both positivity modes") {
  core::RngStream rng(8);
  const core::SpinSystem spin = core::spinOperators(5);
  const RMat obs =
      policyObservables(tg::diagonalFixedBasis(6), spin.jz, 80, rng);
  const Vec psi = core::randomPureState(6, rng);
  const auto ens = tg::simulateRecordPure(psi, obs, 0.05, rng);
  for (auto mode : {tg::PositivityMode::ClipRenormalize,
                    tg::PositivityMode::MetricProjection}) {
    const auto est = tg::estimateState(ens, std::nullopt, mode);
    CHECK(est.rho_bar.m.trace().real() == Approx(1.0).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<Mat> es(est.rho_bar.m,
                                          Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(est.fidelity >= 0.0);
    CHECK(est.fidelity <= 1.0);
  }
}

TEST_CASE("an empty observable matrix yields the uninformative estimate") {
  tg::MeasurementEnsemble ens;
  ens.dim = 4;
  ens.obs = RMat::Zero(10, 15);
  ens.record = RVec::Zero(10);
  ens.sigma = 0.1;
  ens.r_true = RVec::Zero(15);
  const auto est = tg::estimateState(ens);
  CHECK_FALSE(est.informative);
  CHECK((est.rho_bar.m - Mat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("operator-space rank by policy") {
  const auto rank_of = [](const tg::UnitaryPolicy& policy, int dim,
                          std::uint64_t seed) {
    core::RngStream rng(seed);
    const core::SpinSystem spin = core::spinOperators(dim - 1);
    const RMat obs = policyObservables(policy, spin.jz, 6 * dim * dim, rng);
    return tg::covarianceSpectrum(obs, 1.0).rank;
  };
  CHECK(rank_of(tg::haarEachStep(4), 4, 10) == 15);
  CHECK(rank_of(tg::diagonalFixedBasis(4), 4, 11) == 13);
  CHECK(rank_of(tg::repeatedHaar(4), 4, 12) == 13);
  CHECK(rank_of(tg::haarEachStep(7), 7, 13) == 48);
  CHECK(rank_of(tg::diagonalFixedBasis(7), 7, 14) == 43);
}

TEST_CASE("covariance spectrum bookkeeping") {
  core::RngStream rng(15);
  const core::SpinSystem spin = core::spinOperators(4);
  const double sigma = 0.3;
  const RMat obs = policyObservables(tg::haarEachStep(5), spin.jz, 60, rng);
  const auto spec = tg::covarianceSpectrum(obs, sigma);
  REQUIRE(spec.eigenvalues.size() == 24);

  // trace identity: sigma^2 tr(C^-1) = sum of squared record rows
  CHECK(spec.eigenvalues.sum() * sigma * sigma ==
        Approx(obs.squaredNorm()).epsilon(1e-10));

  // scalar summaries recompute from the spectrum
  double inv = 0.0;
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    inv += 1.0 / (2.0 * spec.eigenvalues(i) + 25.0);
  CHECK(spec.fisher_info == Approx(1.0 / inv).epsilon(1e-12));

  const auto zero = tg::covarianceSpectrum(RMat::Zero(10, 24), sigma);
  CHECK(zero.rank == 0);
  CHECK(zero.fisher_info == Approx(25.0 / 24.0).epsilon(1e-12));
  CHECK(zero.shannon_entropy == 0.0);
}

TEST_CASE("reconstruction through the positivity prior at the working size") {
  const int dim = 7, n_steps = 6 * 7 * 7;
  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const double sigma = 0.01 * spin.jz.norm();
  core::RngStream root(2025);
  double mean = 0.0;
  const int trials = 5;
  for (int k = 0; k < trials; ++k) {
    core::RngStream rng = root.child(k);
    const Vec psi = core::randomPureState(dim, rng);
    const auto seq =
        tg::generateSequence(tg::diagonalFixedBasis(dim), n_steps, rng);
    const auto basis = core::hermitianBasis(dim);
    const RMat obs = tg::evolveObservables(spin.jz, seq, basis);
    const auto ens = tg::simulateRecordPure(psi, obs, sigma, rng);
    const auto est = tg::estimateState(ens, std::nullopt,
                                       tg::PositivityMode::MetricProjection);
    mean += est.fidelity;
  }
  CHECK(mean / trials > 0.95);
}

TEST_CASE("eigenvalue-vector mismatch controls reconstruction quality") {
  const int dim = 21;
  const int n_steps = 6 * dim * dim;
  const core::Unitary slow = tg::tomographyFloquet(dim, 0.5);
  const core::Unitary fast = tg::tomographyFloquet(dim, 7.0);
  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const double sigma = 0.01 * spin.jz.norm();
  const auto basis = core::hermitianBasis(dim);

  const auto mean_fidelity = [&](const core::Unitary& eig_src,
                                 const core::Unitary& vec_src, int* rank) {
    const auto policy = tg::hybridPolicy(eig_src, vec_src);
    core::RngStream root(31);
    core::RngStream seq_rng = root.child(1000);
    const auto seq = tg::generateSequence(policy, n_steps, seq_rng);
    const RMat obs = tg::evolveObservables(spin.jz, seq, basis);
    *rank = tg::covarianceSpectrum(obs, sigma).rank;
    double mean = 0.0;
    const int trials = 10;
    for (int k = 0; k < trials; ++k) {
      core::RngStream rng = root.child(k);
      const Vec psi = core::randomPureState(dim, rng);
      const auto ens = tg::simulateRecordPure(psi, obs, sigma, rng);
      const auto est = tg::estimateState(ens);
      mean += est.fidelity;
    }
    return mean / trials;
  };

  int rank_vc = 0, rank_vr = 0;
  const double chaotic_vectors = mean_fidelity(slow, fast, &rank_vc);
  const double regular_vectors = mean_fidelity(fast, slow, &rank_vr);
  CHECK(rank_vc == 220);
  CHECK(rank_vr == 104);
  CHECK(chaotic_vectors > 0.3);
  CHECK(regular_vectors < 0.08);
  CHECK(chaotic_vectors > 5.0 * regular_vectors);
}

TEST_CASE("alignment of the measured operators with a coherent state") {
  const int dim = 21;
  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const auto basis = core::hermitianBasis(dim);
  const Vec psi = core::spinCoherentState(dim - 1, 2.9, 4.0);
  const RVec r = core::operatorCoordinates(basis, psi * psi.adjoint());

  core::RngStream rng(0);  // repeated floquet draws nothing
  std::vector<double> alignment;
  for (double kappa0 : {0.5, 2.5, 6.0}) {
    const auto seq =
        tg::generateSequence(tg::repeatedFloquet(dim, kappa0), 100, rng);
    const RMat obs = tg::evolveObservables(spin.jz, seq, basis);
    alignment.push_back(tg::alignmentTrace(obs, r));
  }
  CHECK(alignment[0] > alignment[1]);
  CHECK(alignment[1] > alignment[2]);
  CHECK(alignment[0] == Approx(559.1).epsilon(0.03));
  CHECK(alignment[1] == Approx(409.4).epsilon(0.03));
  CHECK(alignment[2] == Approx(233.7).epsilon(0.03));
}

TEST_CASE("superoperator sparsity separates diagonal from generic dynamics") {
  const int dim = 7;
  const core::SpinSystem spin = core::spinOperators(dim - 1);
  core::RngStream rng(5);
  const auto diag_seq = tg::generateSequence(
      tg::diagonalFixedBasis(core::makeUnitary(Mat::Identity(dim, dim))), 300,
      rng);
  const double sparse = tg::superoperatorSparsity(spin.jx, diag_seq);
  CHECK(sparse < 0.2);

  core::RngStream rng2(6);
  const auto haar_seq =
      tg::generateSequence(tg::haarEachStep(dim), 300, rng2);
  const double dense = tg::superoperatorSparsity(spin.jx, haar_seq);
  CHECK(dense > 0.8);
}

}  // TEST_SUITE
