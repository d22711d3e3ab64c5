#include "resym/symmetrize.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

namespace resym {

namespace {

void require_connected(const LaplacianMatrix& l) {
  if (l.size() < 2)
    throw InputError("resistance pipeline needs at least 2 nodes");
  if (!is_connected(l))
    throw ConnectivityError("graph has no globally reachable node");
}

}  // namespace

Eigen::MatrixXd reduced_laplacian(const LaplacianMatrix& l, const ComplementBasis& q) {
  if (q.n != l.size())
    throw InputError("reduced_laplacian: basis and Laplacian dimensions differ");
  return q.rows * l.matrix() * q.rows.transpose();
}

Eigen::MatrixXd edge_gramian(const Eigen::MatrixXd& lbar) {
  Eigen::MatrixXd sigma;
  try {
    sigma = sylvester_solve(lbar, lbar.transpose(),
                            Eigen::MatrixXd::Identity(lbar.rows(), lbar.cols()));
  } catch (const NumericalError&) {
    throw ConnectivityError(
        "edge_gramian: Lyapunov operator is singular; the graph is disconnected");
  }
  sigma = (0.5 * (sigma + sigma.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma,
                                                     Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw ConnectivityError(
        "edge_gramian: solution is not positive definite; the reduced Laplacian "
        "spectrum is not in the open right half-plane");
  return sigma;
}

ResistanceMatrix resistance_from_x(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  const Eigen::VectorXd d = x.diagonal();
  ResistanceMatrix r{n, Eigen::MatrixXd(n, n)};
  r.entries = d.replicate(1, n) + d.transpose().replicate(n, 1) - 2.0 * x;
  r.entries.diagonal().setZero();
  return r;
}

ResistanceMatrix resistance_matrix(const LaplacianMatrix& l, const ComplementBasis& q) {
  require_connected(l);
  const Eigen::MatrixXd lbar = reduced_laplacian(l, q);
  const Eigen::MatrixXd sigma = edge_gramian(lbar);
  return resistance_from_x(2.0 * q.rows.transpose() * sigma * q.rows);
}

ResistanceMatrix resistance_matrix(const LaplacianMatrix& l) {
  return resistance_matrix(l, complement_basis(l.size()));
}

SymmetrizationResult symmetrize(const LaplacianMatrix& l, const ComplementBasis& q) {
  require_connected(l);
  const Eigen::MatrixXd lbar = reduced_laplacian(l, q);
  Eigen::MatrixXd sigma = edge_gramian(lbar);

  // X^+ = (2 Q^T Sigma Q)^+ = (1/2) Q^T Sigma^{-1} Q, with the SPD inverse
  // taken by Cholesky instead of a rank-tolerance pseudoinverse.
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw ConnectivityError("symmetrize: Gramian is not positive definite");
  const Eigen::MatrixXd sigma_inv =
      llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));

  SymmetrizationResult out;
  out.x_matrix = 2.0 * q.rows.transpose() * sigma * q.rows;
  Eigen::MatrixXd lu_hat = 0.5 * q.rows.transpose() * sigma_inv * q.rows;
  out.sym_laplacian = 0.5 * (lu_hat + lu_hat.transpose());
  out.sigma = std::move(sigma);
  out.basis = q;
  return out;
}

SymmetrizationResult symmetrize(const LaplacianMatrix& l) {
  return symmetrize(l, complement_basis(l.size()));
}

Eigen::MatrixXd cayley(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols()) throw InputError("cayley: matrix must be square");
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k + k.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw InputError("cayley: matrix is not skew-symmetric");
  const int n = static_cast<int>(k.rows());
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
  // (I - 2K) and (I + 2K)^{-1} commute, so the one-sided solve is exact.
  return (i + 2.0 * k).partialPivLu().solve(i - 2.0 * k);
}

Decomposition decompose(const LaplacianMatrix& l) {
  require_connected(l);
  const int n = l.size();
  const ComplementBasis q = complement_basis(n);
  const Eigen::MatrixXd lbar = reduced_laplacian(l, q);

  Decomposition out;
  out.sym_laplacian = symmetrize(l, q).sym_laplacian;

  Eigen::MatrixXd kbar =
      sylvester_solve(lbar, lbar.transpose(), 0.5 * (lbar - lbar.transpose()));
  kbar = (0.5 * (kbar - kbar.transpose())).eval();
  out.k_matrix = q.rows.transpose() * kbar * q.rows;

  const Eigen::MatrixXd pn = q.projector();
  out.h_matrix = l.matrix() * pseudoinverse_general(pn * l.matrix());
  out.s_matrix = cayley(out.k_matrix);
  return out;
}

SpectralEmbedding spectral_embedding(const Eigen::MatrixXd& sym_laplacian) {
  const Eigen::MatrixXd x = pseudoinverse(sym_laplacian);
  SpectralDecomposition eig = sym_eig(x);
  SpectralEmbedding out;
  out.eigenvalues = eig.eigenvalues.cwiseMax(0.0);  // clamp kernel noise
  out.points = eig.eigenvectors * out.eigenvalues.cwiseSqrt().asDiagonal();
  return out;
}

ResistanceApproximation approx_resistance(const SpectralEmbedding& embedding, int l) {
  const int n = static_cast<int>(embedding.points.rows());
  if (l < 1 || l > n) throw InputError("approx_resistance: l must be in [1, n]");
  Eigen::MatrixXd pts = embedding.points;
  pts.leftCols(l - 1).setZero();
  ResistanceApproximation out;
  out.entries = resistance_from_x(pts * pts.transpose()).entries;
  out.bound = embedding.eigenvalues.head(l - 1).sum();
  out.bound_excluding_zero = embedding.eigenvalues.segment(1, l - 1).sum();
  return out;
}

Eigen::MatrixXd mc_covariance_oracle(const LaplacianMatrix& l, double horizon,
                                     double dt, int samples, std::uint64_t seed) {
  require_connected(l);
  if (dt <= 0.0 || horizon <= dt || samples < 1)
    throw InputError("mc_covariance_oracle: invalid horizon/dt/samples");
  const ComplementBasis q = complement_basis(l.size());
  const Eigen::MatrixXd lbar = reduced_laplacian(l, q);

  double max_re = 0.0;
  const Eigen::VectorXcd ev = eigvals_general(lbar);
  for (int i = 0; i < ev.size(); ++i) max_re = std::max(max_re, ev(i).real());
  if (dt * max_re >= 0.5)
    throw InputError("mc_covariance_oracle: unstable step size, need dt * max Re(lambda) < 0.5");

  const int k = static_cast<int>(lbar.rows());
  const long steps = std::lround(horizon / dt);
  const long burn_in = steps / 2;
  const double sqrt_dt = std::sqrt(dt);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
  long count = 0;
  Eigen::VectorXd z(k), noise(k);
  for (int s = 0; s < samples; ++s) {
    z.setZero();
    for (long step = 0; step < steps; ++step) {
      for (int i = 0; i < k; ++i) noise(i) = gauss(rng);
      z += -dt * (lbar * z) + sqrt_dt * noise;
      if (step >= burn_in) {
        acc.noalias() += z * z.transpose();
        ++count;
      }
    }
  }
  acc /= double(count);
  return 0.5 * (acc + acc.transpose());
}

VerificationReport verify_symmetrization(const LaplacianMatrix& l,
                                         const SymmetrizationResult& result,
                                         const VerifyTolerances& tol) {
  VerificationReport report;
  const Eigen::MatrixXd lbar = reduced_laplacian(l, result.basis);
  const Eigen::MatrixXd& lu_hat = result.sym_laplacian;

  report.checks.push_back(
      {"lyapunov_residual", false,
       sylvester_residual(lbar, lbar.transpose(),
                          Eigen::MatrixXd::Identity(lbar.rows(), lbar.cols()),
                          result.sigma),
       tol.residual});

  double res_err = 0.0;
  try {
    const ResistanceMatrix r_dir = resistance_matrix(l, result.basis);
    const ResistanceMatrix r_sym =
        resistance_matrix(LaplacianMatrix::unchecked(lu_hat), result.basis);
    for (int i = 0; i < r_dir.n; ++i)
      for (int j = 0; j < r_dir.n; ++j) {
        if (i == j) continue;
        const double denom = std::max(std::abs(r_dir.entries(i, j)), 1e-300);
        res_err = std::max(res_err,
                           std::abs(r_dir.entries(i, j) - r_sym.entries(i, j)) / denom);
      }
  } catch (const Error&) {
    res_err = std::numeric_limits<double>::infinity();
  }
  report.checks.push_back({"resistance_equality", false, res_err, tol.check});

  const double tr = l.matrix().trace();
  report.checks.push_back({"trace_equality", false,
                           std::abs(tr - lu_hat.trace()) / std::max(std::abs(tr), 1e-300),
                           tol.residual});

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lu_hat, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lam = eig.eigenvalues();
  const double lam_scale = std::max(std::abs(lam(lam.size() - 1)), 1e-300);
  const double kernel_residual = std::abs(lam(0)) / lam_scale;
  const bool one_dim_kernel = lam.size() < 2 || lam(1) > tol.check * lam_scale;
  Check psd{"psd", false, kernel_residual, tol.residual};
  psd.passed = kernel_residual <= tol.residual && one_dim_kernel;
  report.checks.push_back(psd);

  double recon = std::numeric_limits<double>::infinity();
  try {
    const Decomposition dec = decompose(l);
    recon = (l.matrix() -
             dec.h_matrix *
                 (Eigen::MatrixXd::Identity(l.size(), l.size()) + 2.0 * dec.k_matrix) *
                 lu_hat)
                .norm() /
            std::max(l.matrix().norm(), 1e-300);
  } catch (const Error&) {
  }
  report.checks.push_back({"decomposition_reconstruction", false, recon, tol.check});

  for (Check& c : report.checks)
    if (c.name != "psd") c.passed = c.residual <= c.tolerance;
  return report;
}

VerificationReport verify_symmetrization(const LaplacianMatrix& l,
                                         const SymmetrizationResult& result,
                                         double tol) {
  return verify_symmetrization(l, result, VerifyTolerances{tol, tol});
}

}  // namespace resym
