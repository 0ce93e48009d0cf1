#include "qchaos/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qchaos::concentration {

namespace {

double evalTag(const std::string& f_tag, const SphereSample& s) {
  if (f_tag == "x1") return s.coords(0);
  if (f_tag == "linear") return s.coords.sum() / std::sqrt(double(s.n));
  if (f_tag == "renyi2") return s.coords.array().square().square().sum();
  throw std::invalid_argument("unknown function tag: " + f_tag);
}

SphereSample drawSample(SphereSampler sampler, int n, core::RngStream& rng) {
  return sampler == SphereSampler::uniform ? sampleUniformSphere(n, rng)
                                           : sampleLipschitzSphere(n, rng);
}

}  // namespace

SphereSample sampleUniformSphere(int n, core::RngStream& rng) {
  if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2");
  SphereSample s;
  s.n = n;
  s.coords.resize(n);
  for (int i = 0; i < n; ++i) s.coords(i) = rng.normal();
  s.coords /= s.coords.norm();
  return s;
}

SphereSample sampleLipschitzSphere(int n, core::RngStream& rng) {
  if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2");
  SphereSample s;
  s.n = n;
  s.coords.resize(n);
  for (int i = 0; i < n; ++i) s.coords(i) = rng.exponential();
  s.coords /= s.coords.sum();
  s.coords = s.coords.array().sqrt().matrix();
  return s;
}

double levyBound(int n, double epsilon, double k) {
  return 2.0 * std::exp(-k * n * epsilon * epsilon);
}

double referenceMean(const std::string& f_tag, SphereSampler sampler, int n) {
  static std::map<std::tuple<std::string, int, int>, double> cache;
  static std::mutex cache_mutex;
  const auto key = std::make_tuple(f_tag, static_cast<int>(sampler), n);

  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  constexpr int kChunks = 1000;
  constexpr int kPerChunk = 1000;
  core::RngStream root(0x5eedfacedULL);
  std::vector<double> partial(kChunks, 0.0);
  core::parallelFor(kChunks, [&](int c) {
    core::RngStream stream = root.child(c);
    double acc = 0.0;
    for (int i = 0; i < kPerChunk; ++i)
      acc += evalTag(f_tag, drawSample(sampler, n, stream));
    partial[c] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  const double mean = total / (double(kChunks) * kPerChunk);
  cache.emplace(key, mean);
  return mean;
}

double empiricalDeviation(const std::string& f_tag, SphereSampler sampler,
                          int n, double epsilon, int trials,
                          core::RngStream& rng) {
  if (trials < 1000)
    throw std::invalid_argument("empiricalDeviation needs >= 1000 trials");
  const double mean = referenceMean(f_tag, sampler, n);
  int hits = 0;
  for (int t = 0; t < trials; ++t)
    if (std::abs(evalTag(f_tag, drawSample(sampler, n, rng)) - mean) >=
        epsilon)
      ++hits;
  return double(hits) / trials;
}

double pageEntropy(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < dim_a)
    throw std::invalid_argument("pageEntropy needs 1 <= dim_a <= dim_b");
  long double harmonic = 0.0L;
  for (int k = dim_a * dim_b; k > dim_b; --k) harmonic += 1.0L / k;
  return double(harmonic - (dim_a - 1) / (2.0L * dim_b));
}

TypicalityStats bipartiteTypicality(int dim_a, int dim_b, int trials,
                                    SphereSampler sampler,
                                    core::RngStream& rng) {
  if (dim_a < 1 || dim_b < 1)
    throw std::invalid_argument("bipartiteTypicality needs positive dims");
  if (trials < 100)
    throw std::invalid_argument("bipartiteTypicality needs >= 100 trials");

  const int dim = dim_a * dim_b;
  const double log_da = std::log(double(dim_a));
  const Mat uniform_a =
      Mat::Identity(dim_a, dim_a) / static_cast<double>(dim_a);

  double sum_s = 0.0;
  double sum_s2 = 0.0;
  double sum_t = 0.0;
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    Vec psi(dim);
    if (sampler == SphereSampler::uniform) {
      for (int i = 0; i < dim; ++i) psi(i) = rng.complexNormal();
      psi.normalize();
    } else {
      const SphereSample s = sampleLipschitzSphere(2 * dim, rng);
      for (int i = 0; i < dim; ++i)
        psi(i) = cplx(s.coords(2 * i), s.coords(2 * i + 1));
    }
    const core::DensityMatrix rho_a = core::partialTraceSecond(psi, dim_a, dim_b);
    const double entropy = core::vonNeumannEntropy(rho_a);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_a.m - uniform_a,
                                          Eigen::EigenvaluesOnly);
    const double tdist = es.eigenvalues().cwiseAbs().sum();

    sum_s += entropy;
    sum_s2 += entropy * entropy;
    sum_t += tdist;
    const double bound =
        tdist <= 0.0 ? 0.0 : tdist * (log_da - std::log(tdist));
    if (std::abs(entropy - log_da) > bound + 1e-12) ++violations;
  }

  TypicalityStats stats;
  stats.mean_entropy = sum_s / trials;
  stats.std_entropy = std::sqrt(
      std::max(0.0, sum_s2 / trials - stats.mean_entropy * stats.mean_entropy));
  stats.mean_trace_distance = sum_t / trials;
  stats.fannes_violations = violations;
  return stats;
}

QuasispeciesSystem quasispeciesEquilibrium(const RVec& a,
                                           const Eigen::MatrixXd& q) {
  const int n = int(a.size());
  if (q.rows() != n || q.cols() != n)
    throw std::invalid_argument("mutation matrix shape mismatch");
  if ((a.array() <= 0.0).any())
    throw std::invalid_argument("replication rates must be positive");
  if ((q.array() < 0.0).any())
    throw std::invalid_argument("mutation matrix has negative entries");
  for (int j = 0; j < n; ++j)
    if (std::abs(q.col(j).sum() - 1.0) > 1e-10)
      throw std::invalid_argument("mutation matrix is not column stochastic");

  QuasispeciesSystem sys;
  sys.w = q * a.asDiagonal();

  RVec x = RVec::Constant(n, 1.0 / n);
  for (int iter = 0; iter < 100000; ++iter) {
    const RVec y = sys.w * x;
    const double s = y.sum();
    if ((y - s * x).cwiseAbs().maxCoeff() < 1e-10) {
      sys.equilibrium = x;
      sys.lambda_max = s;
      return sys;
    }
    x = y / s;
  }
  throw std::runtime_error("power iteration did not converge");
}

FitnessConcentration randomFitnessConcentration(
    const QuasispeciesSystem& system, int trials, core::RngStream& rng) {
  if (trials < 1)
    throw std::invalid_argument("randomFitnessConcentration needs trials >= 1");
  const int n = int(system.w.rows());
  const RVec a = system.w.colwise().sum().transpose();

  std::vector<double> dev(trials);
  for (int t = 0; t < trials; ++t) {
    RVec x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.exponential();
    const double fitness = a.dot(x) / x.sum();
    dev[t] = std::abs(fitness - system.lambda_max);
  }
  std::sort(dev.begin(), dev.end());

  FitnessConcentration out;
  double total = 0.0;
  for (double d : dev) total += d;
  out.mean_deviation = total / trials;
  out.median = dev[static_cast<size_t>(0.5 * (trials - 1))];
  out.q90 = dev[static_cast<size_t>(0.9 * (trials - 1))];
  out.max_deviation = dev.back();
  return out;
}

}  // namespace qchaos::concentration
