#include <doctest.h>

#include <cmath>
#include <vector>

#include "qchaos/core.hpp"
#include "qchaos/rmt.hpp"

using namespace qchaos;
using doctest::Approx;

TEST_SUITE("rmt") {

TEST_CASE("marchenko-pastur support and normalization") {
  const int D = 440, N = 2646;
  const auto mp = rmt::marchenkoPastur(D, N);
  const double q = double(D) / N;
  const double root = std::sqrt(q);
  CHECK(mp.lambda_minus == Approx((1 - root) * (1 - root) / N).epsilon(1e-12));
  CHECK(mp.lambda_plus == Approx((1 + root) * (1 + root) / N).epsilon(1e-12));
  CHECK(mp.normalization == Approx(double(N) / D).epsilon(1e-8));

  CHECK(rmt::mpDensity(mp, mp.lambda_minus * 0.5) == 0.0);
  CHECK(rmt::mpDensity(mp, mp.lambda_plus * 1.01) == 0.0);
  CHECK(rmt::mpCdf(mp, mp.lambda_minus) == Approx(0.0).epsilon(1e-9));
  CHECK(rmt::mpCdf(mp, mp.lambda_plus) == Approx(1.0).epsilon(1e-9));
  const double mid = 0.5 * (mp.lambda_minus + mp.lambda_plus);
  CHECK(rmt::mpCdf(mp, mid) > 0.5);  // density leans left
  CHECK(rmt::mpCdf(mp, mid) < 1.0);
}

TEST_CASE("mp cdf derivative equals the density") {
  const auto mp = rmt::marchenkoPastur(100, 400);
  const double lam = 0.5 * (mp.lambda_minus + mp.lambda_plus);
  const double h = 1e-7 * lam;
  const double numeric =
      (rmt::mpCdf(mp, lam + h) - rmt::mpCdf(mp, lam - h)) / (2 * h);
  CHECK(numeric == Approx(rmt::mpDensity(mp, lam)).epsilon(1e-5));
}

TEST_CASE("wishart samples follow the limiting law") {
  core::RngStream rng(2024);
  const int D = 200, N = 1000;
  const auto eigs = rmt::sampleWishart(D, N, rng);
  REQUIRE(int(eigs.size()) == D);
  for (size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i] >= eigs[i - 1]);

  double mean = 0.0;
  for (double e : eigs) mean += e;
  mean /= D;
  CHECK(mean == Approx(1.0).epsilon(0.05));

  const auto mp = rmt::marchenkoPastur(D, N);
  std::vector<double> scaled;
  for (double e : eigs) scaled.push_back(e / N);
  const double ks =
      rmt::ksStatistic(scaled, [&](double x) { return rmt::mpCdf(mp, x); });
  CHECK(ks < 0.1);
}

TEST_CASE("porter-thomas closed forms") {
  CHECK(rmt::porterThomasCdf(0.0) == Approx(0.0).epsilon(1e-14));
  CHECK(rmt::porterThomasCdf(1.0) ==
        Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(rmt::porterThomasCdf(50.0) == Approx(1.0).epsilon(1e-10));
  const double lam = 0.7, h = 1e-7;
  const double numeric =
      (rmt::porterThomasCdf(lam + h) - rmt::porterThomasCdf(lam - h)) / (2 * h);
  CHECK(numeric == Approx(rmt::porterThomasDensity(lam)).epsilon(1e-6));
}

TEST_CASE("ks statistic on a hand-checked sample") {
  std::vector<double> xs = {0.75, 0.25};
  const double ks = rmt::ksStatistic(xs, [](double x) { return x; });
  CHECK(ks == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("record-information prediction at the working point") {
  CHECK(rmt::predictFI_MP(440, 2646) == Approx(17.973558).epsilon(1e-4));
  CHECK(rmt::predictEntropy_MP(440, 2646) == Approx(6.003630).epsilon(1e-5));
}

TEST_CASE("zero ridge drops the unpopulated direction and is affine in N") {
  const int D = 50;
  for (int N : {100, 250, 600}) {
    const double fi = rmt::predictFI_MP(D, N, 0.0);
    const double expected = std::sqrt(D + 1.0) * (N - D) / (6.0 * D);
    CHECK(fi == Approx(expected).epsilon(1e-9));
  }
  CHECK_THROWS(rmt::predictFI_MP(50, 50, 0.0));
}

TEST_CASE("porter-thomas record predictions") {
  const double gamma = 0.57721566490153286;
  const int d = 21;
  CHECK(rmt::predictEntropy_PT(d) ==
        Approx(2.0 * std::log(double(d)) - (2.0 - gamma - std::log(2.0)))
            .epsilon(1e-12));
  CHECK(rmt::predictEntropy_PT(d) == Approx(5.3594077).epsilon(1e-6));
  CHECK(rmt::predictFI_PT(d) == Approx(4.311740).epsilon(1e-4));
  const double full_trace = double(d) * d * d * (d * d - 1.0);
  CHECK(rmt::predictFI_PT(d, full_trace) ==
        Approx(rmt::predictFI_PT(d)).epsilon(1e-12));
}

}  // TEST_SUITE
