#include "qchaos/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qchaos::tomography {

namespace {

struct PhasedColumns {
  std::vector<double> phases;  // ascending in (-pi, pi]
  Mat vectors;                 // columns ordered to match
};

PhasedColumns sortedEigensystem(const core::Unitary& u) {
  Eigen::ComplexSchur<Mat> schur(u.m);
  const int d = u.dim();
  std::vector<double> phases(d);
  for (int k = 0; k < d; ++k) {
    double theta = std::arg(schur.matrixT()(k, k));
    if (theta <= -kPi) theta = kPi;
    phases[k] = theta;
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return phases[a] < phases[b]; });
  PhasedColumns out;
  out.phases.resize(d);
  out.vectors.resize(d, d);
  for (int k = 0; k < d; ++k) {
    out.phases[k] = phases[order[k]];
    out.vectors.col(k) = schur.matrixU().col(order[k]);
  }
  return out;
}

RVec projectOntoSimplex(const RVec& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  int support = 0;
  for (int k = 0; k < n; ++k) {
    running += u[k];
    const double candidate = (running - 1.0) / (k + 1);
    if (u[k] - candidate > 0.0) {
      support = k + 1;
      theta = candidate;
    }
  }
  (void)support;
  RVec w(n);
  for (int k = 0; k < n; ++k) w(k) = std::max(v(k) - theta, 0.0);
  return w;
}

core::DensityMatrix nearestStateFixedFrame(const Mat& herm, bool renorm_only) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  RVec vals = es.eigenvalues();
  if (renorm_only) {
    for (int k = 0; k < vals.size(); ++k) vals(k) = std::max(vals(k), 0.0);
    const double total = vals.sum();
    if (total <= 0.0) {
      const int d = static_cast<int>(herm.rows());
      return core::makeDensityMatrix(Mat::Identity(d, d) / d);
    }
    vals /= total;
  } else {
    vals = projectOntoSimplex(vals);
  }
  Mat rho = es.eigenvectors() * vals.cast<cplx>().asDiagonal() *
            es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return core::makeDensityMatrix(rho);
}

}  // namespace

UnitaryPolicy haarEachStep(int dim) {
  UnitaryPolicy p;
  p.kind = PolicyKind::haar_each_step;
  p.dim = dim;
  return p;
}

UnitaryPolicy repeatedHaar(int dim) {
  UnitaryPolicy p;
  p.kind = PolicyKind::repeated_haar;
  p.dim = dim;
  return p;
}

UnitaryPolicy diagonalFixedBasis(int dim) {
  UnitaryPolicy p;
  p.kind = PolicyKind::diagonal_fixed_basis;
  p.dim = dim;
  return p;
}

UnitaryPolicy diagonalFixedBasis(core::Unitary basis) {
  UnitaryPolicy p;
  p.kind = PolicyKind::diagonal_fixed_basis;
  p.dim = basis.dim();
  p.basis = std::move(basis);
  return p;
}

UnitaryPolicy repeatedFloquet(int dim, double kappa0) {
  UnitaryPolicy p;
  p.kind = PolicyKind::repeated_floquet;
  p.dim = dim;
  p.kappa0 = kappa0;
  return p;
}

UnitaryPolicy hybridPolicy(core::Unitary eig_source, core::Unitary vec_source) {
  if (eig_source.dim() != vec_source.dim()) {
    throw std::invalid_argument("hybridPolicy: dimension mismatch");
  }
  UnitaryPolicy p;
  p.kind = PolicyKind::hybrid;
  p.dim = eig_source.dim();
  p.eig_source = std::move(eig_source);
  p.vec_source = std::move(vec_source);
  return p;
}

core::Unitary tomographyFloquet(int dim, double kappa0) {
  if (dim < 2) throw std::invalid_argument("tomographyFloquet: dim must be >= 2");
  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const Mat torsion =
      core::expiHermitian(spin.jz * spin.jz, kappa0 / (dim - 1));
  const Mat rotation = core::expiHermitian(spin.jx, 1.4);
  return core::makeUnitary(rotation * torsion);
}

core::Unitary hybridUnitary(const core::Unitary& eig_source,
                            const core::Unitary& vec_source) {
  if (eig_source.dim() != vec_source.dim()) {
    throw std::invalid_argument("hybridUnitary: dimension mismatch");
  }
  const PhasedColumns eig = sortedEigensystem(eig_source);
  const int d = eig_source.dim();
  double min_gap = 2.0 * kPi;
  for (int k = 0; k < d; ++k) {
    const double next = (k + 1 < d) ? eig.phases[k + 1]
                                    : eig.phases[0] + 2.0 * kPi;
    min_gap = std::min(min_gap, next - eig.phases[k]);
  }
  if (min_gap <= 1e-10) {
    throw std::runtime_error("hybridUnitary: degenerate eigenphases");
  }
  const PhasedColumns vec = sortedEigensystem(vec_source);
  Vec diag(d);
  for (int k = 0; k < d; ++k) {
    diag(k) = std::exp(cplx(0.0, eig.phases[k]));
  }
  return core::makeUnitary(vec.vectors * diag.asDiagonal() *
                           vec.vectors.adjoint());
}

std::vector<core::Unitary> generateSequence(const UnitaryPolicy& policy,
                                            int n_steps,
                                            core::RngStream& rng) {
  if (n_steps < 1) throw std::invalid_argument("generateSequence: n_steps < 1");
  if (policy.dim < 2) throw std::invalid_argument("generateSequence: bad dim");
  std::vector<core::Unitary> seq;
  seq.reserve(n_steps);
  switch (policy.kind) {
    case PolicyKind::haar_each_step: {
      for (int n = 0; n < n_steps; ++n) {
        seq.push_back(core::haarUnitary(policy.dim, rng));
      }
      break;
    }
    case PolicyKind::repeated_haar: {
      core::Unitary u = policy.basis ? *policy.basis
                                     : core::haarUnitary(policy.dim, rng);
      for (int n = 0; n < n_steps; ++n) seq.push_back(u);
      break;
    }
    case PolicyKind::diagonal_fixed_basis: {
      core::Unitary basis = policy.basis ? *policy.basis
                                         : core::haarUnitary(policy.dim, rng);
      for (int n = 0; n < n_steps; ++n) {
        seq.push_back(core::randomDiagonalUnitary(basis, rng));
      }
      break;
    }
    case PolicyKind::repeated_floquet: {
      core::Unitary u = tomographyFloquet(policy.dim, policy.kappa0);
      for (int n = 0; n < n_steps; ++n) seq.push_back(u);
      break;
    }
    case PolicyKind::hybrid: {
      if (!policy.eig_source || !policy.vec_source) {
        throw std::invalid_argument("generateSequence: hybrid needs sources");
      }
      core::Unitary u = hybridUnitary(*policy.eig_source, *policy.vec_source);
      for (int n = 0; n < n_steps; ++n) seq.push_back(u);
      break;
    }
  }
  return seq;
}

RMat evolveObservables(const Mat& o0, const std::vector<core::Unitary>& seq,
                       const core::OperatorBasis& basis) {
  const int d = basis.dim;
  if (o0.rows() != d || o0.cols() != d) {
    throw std::invalid_argument("evolveObservables: dimension mismatch");
  }
  const int n_steps = static_cast<int>(seq.size());
  RMat obs(n_steps, basis.size());
  Mat cumulative = Mat::Identity(d, d);
  for (int n = 0; n < n_steps; ++n) {
    if (seq[n].dim() != d) {
      throw std::invalid_argument("evolveObservables: dimension mismatch");
    }
    cumulative = cumulative * seq[n].m;
    const Mat evolved = cumulative.adjoint() * o0 * cumulative;
    obs.row(n) = core::operatorCoordinates(basis, evolved);
  }
  return obs;
}

MeasurementEnsemble simulateRecord(const core::DensityMatrix& rho0,
                                   const RMat& obs, double sigma,
                                   core::RngStream& rng) {
  if (sigma < 0.0) throw std::invalid_argument("simulateRecord: sigma < 0");
  const int d = rho0.dim();
  if (obs.cols() != d * d - 1) {
    throw std::invalid_argument("simulateRecord: dimension mismatch");
  }
  MeasurementEnsemble ens;
  ens.dim = d;
  ens.obs = obs;
  ens.sigma = sigma;
  const core::OperatorBasis basis = core::hermitianBasis(d);
  ens.r_true = core::operatorCoordinates(basis, rho0.m);
  ens.record = obs * ens.r_true;
  for (int n = 0; n < ens.record.size(); ++n) {
    ens.record(n) += sigma * rng.normal();
  }
  return ens;
}

MeasurementEnsemble simulateRecordPure(const Vec& psi, const RMat& obs,
                                       double sigma, core::RngStream& rng) {
  const Mat rho = psi * psi.adjoint();
  MeasurementEnsemble ens =
      simulateRecord(core::makeDensityMatrix(rho), obs, sigma, rng);
  ens.psi_true = psi;
  return ens;
}

TomographyEstimate estimateState(const MeasurementEnsemble& ens,
                                 std::optional<double> ridge,
                                 PositivityMode mode) {
  const int d = ens.dim;
  const int n_coords = d * d - 1;
  if (ens.obs.cols() != n_coords || ens.obs.rows() != ens.record.size()) {
    throw std::invalid_argument("estimateState: inconsistent ensemble");
  }
  const core::OperatorBasis basis = core::hermitianBasis(d);
  TomographyEstimate est;

  const double obs_scale = ens.obs.cwiseAbs().maxCoeff();
  if (obs_scale == 0.0) {
    est.informative = false;
    est.r_ml = RVec::Zero(n_coords);
    est.rho_ml = Mat::Identity(d, d) / d;
    est.rho_bar = core::makeDensityMatrix(est.rho_ml);
  } else {
    const double c = ridge.value_or(
        d * d * ens.sigma * ens.sigma *
        std::sqrt(std::numeric_limits<double>::epsilon()));
    if (c <= 0.0) {
      est.r_ml = ens.obs.completeOrthogonalDecomposition().solve(ens.record);
    } else {
      // Spectral filter b_k / (lambda_k + c): rounding noise along null
      // directions of the gram matrix stays suppressed instead of being
      // divided by the (possibly tiny) ridge alone.
      const RMat gram = ens.obs.transpose() * ens.obs;
      Eigen::SelfAdjointEigenSolver<RMat> es(gram);
      const RVec b = es.eigenvectors().transpose() *
                     (ens.obs.transpose() * ens.record);
      const double floor = core::kEigFloor * es.eigenvalues().maxCoeff();
      RVec filtered(b.size());
      for (int k = 0; k < b.size(); ++k) {
        const double lambda = es.eigenvalues()(k);
        filtered(k) = (lambda <= floor) ? 0.0 : b(k) / (lambda + c);
      }
      est.r_ml = es.eigenvectors() * filtered;
    }
    est.rho_ml = core::matrixFromCoordinates(basis, est.r_ml, 1.0);

    if (mode == PositivityMode::ClipRenormalize) {
      est.rho_bar = nearestStateFixedFrame(est.rho_ml, true);
    } else {
      // Minimize (r - r_ml)^T G (r - r_ml) over physical states by projected
      // gradient in coordinate space; the projection onto the state set is
      // exact (eigenvalue simplex projection in the estimate's eigenframe).
      RMat gram = ens.obs.transpose() * ens.obs;
      const double c_eff = std::max(ridge.value_or(0.0), 0.0);
      gram.diagonal().array() += c_eff;
      Eigen::SelfAdjointEigenSolver<RMat> ges(gram);
      const double lip = std::max(ges.eigenvalues().maxCoeff(), 1e-30);
      const double step = 1.0 / lip;
      core::DensityMatrix current = nearestStateFixedFrame(est.rho_ml, false);
      RVec r = core::operatorCoordinates(basis, current.m);
      for (int it = 0; it < 500; ++it) {
        const RVec descended = r - step * (gram * (r - est.r_ml));
        const Mat herm = core::matrixFromCoordinates(basis, descended, 1.0);
        current = nearestStateFixedFrame(herm, false);
        const RVec r_next = core::operatorCoordinates(basis, current.m);
        const double moved = (r_next - r).norm();
        r = r_next;
        if (moved < 1e-10) break;
      }
      est.rho_bar = current;
    }
  }

  if (ens.psi_true) {
    est.fidelity = core::stateFidelity(*ens.psi_true, est.rho_bar);
  } else {
    const Mat truth = core::matrixFromCoordinates(basis, ens.r_true, 1.0);
    est.fidelity =
        core::uhlmannFidelity(core::makeDensityMatrix(truth), est.rho_bar);
  }
  est.fidelity = std::clamp(est.fidelity, 0.0, 1.0);
  return est;
}

CovarianceSpectrum covarianceSpectrum(const RMat& obs, double sigma) {
  if (sigma <= 0.0) {
    throw std::invalid_argument("covarianceSpectrum: sigma must be positive");
  }
  const int n_coords = static_cast<int>(obs.cols());
  const RMat inv_cov = obs.transpose() * obs / (sigma * sigma);
  Eigen::SelfAdjointEigenSolver<RMat> es(inv_cov, Eigen::EigenvaluesOnly);
  CovarianceSpectrum spec;
  spec.eigenvalues = es.eigenvalues();
  const double top = std::max(spec.eigenvalues.maxCoeff(), 0.0);
  spec.rank = 0;
  for (int k = 0; k < n_coords; ++k) {
    if (spec.eigenvalues(k) > 1e-8 * top) ++spec.rank;
  }
  const double d2 = n_coords + 1.0;
  double inv_sum = 0.0;
  for (int k = 0; k < n_coords; ++k) {
    inv_sum += 1.0 / (2.0 * std::max(spec.eigenvalues(k), 0.0) + d2);
  }
  spec.fisher_info = 1.0 / inv_sum;
  spec.shannon_entropy =
      top > 0.0 ? core::shannonEntropy(spec.eigenvalues) : 0.0;
  return spec;
}

double alignmentTrace(const RMat& obs, const RVec& r_state) {
  if (obs.cols() != r_state.size()) {
    throw std::invalid_argument("alignmentTrace: dimension mismatch");
  }
  const RVec column_power =
      obs.array().square().matrix().colwise().sum().transpose();
  return (column_power.array() * r_state.array().square()).sum();
}

double superoperatorSparsity(const Mat& o0,
                             const std::vector<core::Unitary>& seq) {
  const int d = static_cast<int>(o0.rows());
  const core::OperatorBasis basis = core::hermitianBasis(d);
  const int full = d * d;
  RMat inv_cov = RMat::Zero(full, full);
  Mat cumulative = Mat::Identity(d, d);
  RVec c(full);
  for (const core::Unitary& u : seq) {
    cumulative = cumulative * u.m;
    const Mat evolved = cumulative.adjoint() * o0 * cumulative;
    c.head(full - 1) = core::operatorCoordinates(basis, evolved);
    c(full - 1) = evolved.trace().real() / std::sqrt(static_cast<double>(d));
    inv_cov.noalias() += c * c.transpose();
  }
  const double top = inv_cov.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  const double threshold = 1e-10 * top;
  int above = 0;
  for (int i = 0; i < full; ++i) {
    for (int j = 0; j < full; ++j) {
      if (std::abs(inv_cov(i, j)) > threshold) ++above;
    }
  }
  return static_cast<double>(above) / (static_cast<double>(full) * full);
}

}  // namespace qchaos::tomography
