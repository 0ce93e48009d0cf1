#include "qchaos/core.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace qchaos::core {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 makeGenerator(std::uint64_t key) {
  std::uint64_t s = key;
  std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s),
                    splitmix64(s), splitmix64(s), splitmix64(s)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : key_(seed), gen_(makeGenerator(seed)) {}

RngStream RngStream::child(std::uint64_t index) const {
  std::uint64_t s = key_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return RngStream(splitmix64(s));
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
}

double RngStream::normal() {
  return std::normal_distribution<double>(0.0, 1.0)(gen_);
}

double RngStream::exponential() {
  return std::exponential_distribution<double>(1.0)(gen_);
}

std::uint64_t RngStream::integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::integer: n must be positive");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
}

cplx RngStream::complexNormal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) / std::sqrt(2.0);
}

int parallelThreadCount() {
  if (const char* env = std::getenv("QCHAOS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallelFor(int n, const std::function<void(int)>& body) {
  const int workers = std::min(parallelThreadCount(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

double unitarityDefect(const Mat& u) {
  const Mat d = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

Unitary makeUnitary(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("makeUnitary: matrix must be square");
  const double defect = unitarityDefect(m);
  if (defect > 1e-10) {
    throw std::invalid_argument("makeUnitary: unitarity defect " + std::to_string(defect));
  }
  return Unitary{std::move(m)};
}

DensityMatrix makeDensityMatrix(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("makeDensityMatrix: matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("makeDensityMatrix: not hermitian");
  }
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("makeDensityMatrix: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw std::invalid_argument("makeDensityMatrix: negative eigenvalue");
  }
  return DensityMatrix{std::move(m)};
}

SpinSystem spinOperators(int two_j) {
  if (two_j < 1) throw std::invalid_argument("spinOperators: two_j must be >= 1");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  Mat jz = Mat::Zero(d, d);
  Mat jp = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = j - a;
    jz(a, a) = m;
    if (a > 0) jp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Mat jm = jp.adjoint();
  SpinSystem s;
  s.two_j = two_j;
  s.dim = d;
  s.jz = std::move(jz);
  s.jx = 0.5 * (jp + jm);
  s.jy = cplx(0.0, -0.5) * (jp - jm);
  return s;
}

Mat expiHermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("expiHermitian: eigensolver failed");
  const auto& lam = es.eigenvalues();
  Vec phases(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    phases(k) = std::exp(cplx(0.0, -t * lam(k)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Unitary haarUnitary(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haarUnitary: dim must be >= 1");
  Mat g(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) g(r, c) = rng.complexNormal();
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the factorization has a positive-real R diagonal; this
  // makes Q exactly Haar distributed rather than merely column orthonormal.
  for (int k = 0; k < dim; ++k) {
    const cplx rkk = r(k, k);
    const double a = std::abs(rkk);
    q.col(k) *= (a == 0.0) ? cplx(1.0, 0.0) : rkk / a;
  }
  return Unitary{std::move(q)};
}

Unitary randomDiagonalUnitary(const Unitary& basis, RngStream& rng) {
  const int d = basis.dim();
  Vec phases(d);
  for (int k = 0; k < d; ++k) {
    phases(k) = std::exp(cplx(0.0, 2.0 * kPi * rng.uniform()));
  }
  return Unitary{basis.m * phases.asDiagonal() * basis.m.adjoint()};
}

Vec spinCoherentState(int two_j, double theta0, double phi0) {
  if (two_j < 1) throw std::invalid_argument("spinCoherentState: two_j must be >= 1");
  const int d = two_j + 1;
  const double c = std::cos(0.5 * theta0);
  const double s = std::sin(0.5 * theta0);
  Vec psi(d);
  for (int a = 0; a < d; ++a) {
    // index a corresponds to m = j - a, i.e. a spins flipped to |1>
    const double logbin = std::lgamma(two_j + 1.0) - std::lgamma(a + 1.0) -
                          std::lgamma(two_j - a + 1.0);
    const double amp = std::exp(0.5 * logbin) * std::pow(c, two_j - a) * std::pow(s, a);
    psi(a) = amp * std::exp(cplx(0.0, -phi0 * a));
  }
  psi.normalize();
  return psi;
}

Vec randomPureState(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("randomPureState: dim must be >= 1");
  Vec psi(dim);
  for (int k = 0; k < dim; ++k) psi(k) = rng.complexNormal();
  const double n = psi.norm();
  if (n == 0.0) return randomPureState(dim, rng);
  return psi / n;
}

DensityMatrix randomMixedState(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("randomMixedState: dim must be >= 1");
  Mat g(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) g(r, c) = rng.complexNormal();
  }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{std::move(rho)};
}

double vonNeumannEntropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.m, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p > kEigFloor) h -= p * std::log(p);
  }
  const double hmax = std::log(static_cast<double>(rho.dim()));
  return std::clamp(h, 0.0, hmax);
}

double shannonEntropy(const RVec& weights) {
  const double total = weights.sum();
  if (total <= 0.0) throw std::invalid_argument("shannonEntropy: weights must have positive sum");
  double h = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const double p = weights(k) / total;
    if (p > kEigFloor) h -= p * std::log(p);
  }
  return h;
}

double stateFidelity(const Vec& psi, const DensityMatrix& rho) {
  const double f = (psi.adjoint() * rho.m * psi)(0).real();
  return std::clamp(f, 0.0, 1.0);
}

double uhlmannFidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.m);
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  const Mat sqrt_rho =
      es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> inner(sqrt_rho * sigma.m * sqrt_rho,
                                           Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index k = 0; k < inner.eigenvalues().size(); ++k) {
    f += std::sqrt(std::max(0.0, inner.eigenvalues()(k)));
  }
  return std::clamp(f * f, 0.0, 1.0);
}

DensityMatrix partialTraceSecond(const Vec& psi, int dim_a, int dim_b) {
  if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw std::invalid_argument("partialTraceSecond: dimension mismatch");
  }
  Mat rho_a = Mat::Zero(dim_a, dim_a);
  for (int a = 0; a < dim_a; ++a) {
    for (int ap = 0; ap <= a; ++ap) {
      cplx v = 0.0;
      for (int b = 0; b < dim_b; ++b) {
        v += psi(a * dim_b + b) * std::conj(psi(ap * dim_b + b));
      }
      rho_a(a, ap) = v;
      rho_a(ap, a) = std::conj(v);
    }
  }
  return DensityMatrix{std::move(rho_a)};
}

KrausPair weakMeasurementKraus(const WeakMeasurementModel& model, double q) {
  if (model.sigma <= 0.0) throw std::invalid_argument("weakMeasurementKraus: sigma must be positive");
  if ((model.observable - model.observable.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("weakMeasurementKraus: observable must be hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(model.observable);
  const auto& o = es.eigenvalues();
  const double norm = std::pow(2.0 * kPi * model.sigma * model.sigma, -0.25);
  RVec amps(o.size());
  for (Eigen::Index k = 0; k < o.size(); ++k) {
    const double x = q - model.g * o(k);
    amps(k) = norm * std::exp(-x * x / (4.0 * model.sigma * model.sigma));
  }
  KrausPair out;
  out.kraus = es.eigenvectors() * amps.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  out.povm = es.eigenvectors() * amps.cwiseAbs2().cast<cplx>().asDiagonal() *
             es.eigenvectors().adjoint();
  return out;
}

MeasurementUpdate weakMeasurementUpdate(const WeakMeasurementModel& model,
                                        const DensityMatrix& rho, double q) {
  const KrausPair k = weakMeasurementKraus(model, q);
  Mat post = k.kraus * rho.m * k.kraus.adjoint();
  const double p = post.trace().real();
  if (p <= 0.0) throw std::runtime_error("weakMeasurementUpdate: outcome has zero probability");
  post /= p;
  return MeasurementUpdate{DensityMatrix{std::move(post)}, p};
}

OperatorBasis hermitianBasis(int dim) {
  if (dim < 2) throw std::invalid_argument("hermitianBasis: dim must be >= 2");
  OperatorBasis basis;
  basis.dim = dim;
  basis.elems.reserve(dim * dim - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Mat e = Mat::Zero(dim, dim);
      e(j, k) = inv_sqrt2;
      e(k, j) = inv_sqrt2;
      basis.elems.push_back(std::move(e));
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Mat e = Mat::Zero(dim, dim);
      e(j, k) = cplx(0.0, -inv_sqrt2);
      e(k, j) = cplx(0.0, inv_sqrt2);
      basis.elems.push_back(std::move(e));
    }
  }
  for (int l = 1; l < dim; ++l) {
    Mat e = Mat::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) e(m, m) = norm;
    e(l, l) = -l * norm;
    basis.elems.push_back(std::move(e));
  }
  return basis;
}

RVec operatorCoordinates(const OperatorBasis& basis, const Mat& op) {
  const int d = basis.dim;
  if (op.rows() != d || op.cols() != d) {
    throw std::invalid_argument("operatorCoordinates: dimension mismatch");
  }
  RVec r(basis.size());
  const double sqrt2 = std::sqrt(2.0);
  int idx = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) r(idx++) = sqrt2 * op(j, k).real();
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) r(idx++) = sqrt2 * op(k, j).imag();
  }
  double partial = 0.0;
  for (int l = 1; l < d; ++l) {
    partial += op(l - 1, l - 1).real();
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    r(idx++) = norm * (partial - l * op(l, l).real());
  }
  return r;
}

Mat matrixFromCoordinates(const OperatorBasis& basis, const RVec& r, double trace) {
  const int d = basis.dim;
  if (r.size() != basis.size()) {
    throw std::invalid_argument("matrixFromCoordinates: dimension mismatch");
  }
  Mat op = (trace / d) * Mat::Identity(d, d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int idx = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      op(j, k) += inv_sqrt2 * r(idx);
      op(k, j) += inv_sqrt2 * r(idx);
      ++idx;
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      op(j, k) += cplx(0.0, -inv_sqrt2 * r(idx));
      op(k, j) += cplx(0.0, inv_sqrt2 * r(idx));
      ++idx;
    }
  }
  for (int l = 1; l < d; ++l) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) op(m, m) += norm * r(idx);
    op(l, l) -= l * norm * r(idx);
    ++idx;
  }
  return op;
}

}  // namespace qchaos::core
