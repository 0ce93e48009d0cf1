#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qchaos/core.hpp"

namespace qchaos::rmt {

// Marchenko-Pastur law for the eigenvalues of X X^T / N with X a D x N
// standard-normal matrix (D <= N).  In this scale convention the support is
//   lambda_pm = (1 +- sqrt(D/N))^2 / N,
// and the raw prefactor N/(2 pi lambda) carries total mass D/N, so the
// factory computes a normalization constant making the density a probability
// density.
struct MarchenkoPastur {
  int D = 0;
  int N = 0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double normalization = 1.0;
};

MarchenkoPastur marchenkoPastur(int D, int N);

std::pair<double, double> mpSupport(int D, int N);

// Normalized density; zero outside [lambda_minus, lambda_plus].
double mpDensity(const MarchenkoPastur& params, double lambda);

// Integral of mpDensity over (-inf, lambda].
double mpCdf(const MarchenkoPastur& params, double lambda);

// Eigenvalues of X X^T / N, ascending.  Mean eigenvalue is 1 in this
// convention (tr X X^T / N ~ D on average).
std::vector<double> sampleWishart(int D, int N, core::RngStream& rng);

// Porter-Thomas law rho(lambda) = exp(-lambda/2) / sqrt(2 pi lambda) on
// lambda > 0 (the square of a standard normal).
double porterThomasDensity(double lambda);
double porterThomasCdf(double lambda);

// Kolmogorov-Smirnov distance between the empirical distribution of the
// samples and a reference CDF.
double ksStatistic(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Fisher-information forecast for a least-squares tomography experiment
// whose inverse covariance has a Marchenko-Pastur spectrum: D populated
// directions with eigenvalue scale s = N sqrt(D+1) / 6 (so the populated
// trace matches N times the squared record norm of the probe observable),
// one unpopulated direction, and a ridge added to every eigenvalue:
//   FI = 1 / ( D * Int rho(x) / (s x + ridge) dx  +  1 / ridge ).
// ridge defaults to D+1.  With ridge = 0 the unpopulated direction is left
// out of the sum (it carries no information and would otherwise diverge);
// D = N with zero ridge has a non-integrable hard edge and throws.
double predictFI_MP(int D, int N,
                    std::optional<double> ridge = std::nullopt);

// Shannon entropy of the normalized Marchenko-Pastur eigenvalues:
//   ln D - Int x ln x rho(x) dx   (unit-mean scale).
double predictEntropy_MP(int D, int N);

// Shannon entropy of d^2 normalized Porter-Thomas eigenvalues:
//   ln(d^2) - (2 - gamma - ln 2).
double predictEntropy_PT(int d);

// Same forecast as predictFI_MP but with a Porter-Thomas spectrum over all
// d^2 directions, rescaled so the expected trace meets the constraint
// (default d^3 (d^2 - 1)) and offset by the ridge d^2:
//   FI = 1 / ( d^2 * Int rho(x) / (x * trace / d^2 + d^2) dx ).
double predictFI_PT(int d, std::optional<double> trace_constraint = std::nullopt);

}  // namespace qchaos::rmt
