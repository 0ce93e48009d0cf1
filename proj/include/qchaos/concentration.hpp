#pragma once

#include <numbers>
#include <string>

#include "qchaos/core.hpp"

namespace qchaos::concentration {

struct SphereSample {
  int n = 0;
  RVec coords;
};

// Normalized standard-normal vector: uniform on S^{n-1}.
SphereSample sampleUniformSphere(int n, core::RngStream& rng);

// x_i iid Exp(1) normalized to the simplex, then y_i = sqrt(x_i / sum x):
// a unit vector supported on the first orthant whose squares are flat
// Dirichlet weights.
SphereSample sampleLipschitzSphere(int n, core::RngStream& rng);

enum class SphereSampler { uniform, lipschitz };

inline constexpr double kLevyConstant =
    1.0 / (9.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);

// 2 exp(-k n eps^2)
double levyBound(int n, double epsilon, double k = kLevyConstant);

// Monte-Carlo reference mean (10^6 samples, fixed internal seed, cached) of
// a built-in coordinate function over the chosen sphere measure.  Tags:
//   "x1"     first coordinate
//   "linear" <a, x> with a = (1, ..., 1)/sqrt(n)
//   "renyi2" sum_i x_i^4
double referenceMean(const std::string& f_tag, SphereSampler sampler, int n);

// Fraction of `trials` fresh samples with |f(x) - reference mean| >= epsilon.
double empiricalDeviation(const std::string& f_tag, SphereSampler sampler,
                          int n, double epsilon, int trials,
                          core::RngStream& rng);

// Mean entanglement entropy of a Haar-random bipartite pure state,
//   sum_{k=dB+1}^{dA dB} 1/k - (dA - 1) / (2 dB),
// in natural-log units; requires dA <= dB.
double pageEntropy(int dim_a, int dim_b);

struct TypicalityStats {
  double mean_entropy = 0.0;
  double std_entropy = 0.0;
  double mean_trace_distance = 0.0;  // ||rho_A - I/dA||_1 averaged
  int fannes_violations = 0;
};

// Draws global pure states (uniform: normalized complex Gaussians;
// lipschitz: the first-orthant sampler on the real 2 dA dB sphere read as
// interleaved real/imaginary parts), reduces to subsystem A, and reports
// entropy and trace-distance statistics plus the count of samples breaking
// |S(rho_A) - ln dA| <= T (ln dA - ln T), with 0 ln 0 := 0.
TypicalityStats bipartiteTypicality(int dim_a, int dim_b, int trials,
                                    SphereSampler sampler,
                                    core::RngStream& rng);

struct QuasispeciesSystem {
  Eigen::MatrixXd w;        // W_ij = a_j Q_ij
  RVec equilibrium;         // simplex-normalized Perron vector
  double lambda_max = 0.0;  // mean replication rate at equilibrium
};

// Power iteration on W = a_j Q_ij (Q column stochastic to 1e-10) until the
// eigenvector residual drops below 1e-10; throws after 1e5 iterations.
QuasispeciesSystem quasispeciesEquilibrium(const RVec& a,
                                           const Eigen::MatrixXd& q);

struct FitnessConcentration {
  double mean_deviation = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double max_deviation = 0.0;
};

// |f(X) - lambda_max| statistics for flat random frequency vectors X drawn
// by the exponential simplex sampler, where f(X) = sum a_i X_i / sum X_i.
FitnessConcentration randomFitnessConcentration(
    const QuasispeciesSystem& system, int trials, core::RngStream& rng);

}  // namespace qchaos::concentration
