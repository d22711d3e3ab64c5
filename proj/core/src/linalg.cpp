#include "resym/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace resym {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

ComplementBasis complement_basis(int n) {
  if (n < 2) throw InputError("complement basis needs n >= 2");
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  u(n - 1) -= 1.0;  // reflector axis: 1/sqrt(n) - e_n, never near zero
  const Eigen::MatrixXd reflector =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / u.squaredNorm()) * (u * u.transpose());
  ComplementBasis q;
  q.n = n;
  q.rows = reflector.topRows(n - 1);
  return q;
}

ComplementBasis random_complement_basis(int n, std::uint64_t seed) {
  if (n < 2) throw InputError("complement basis needs n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::VectorXd ones_dir = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::MatrixXd rows(n - 1, n);
  for (int r = 0; r < n - 1; ++r) {
    while (true) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      v -= ones_dir.dot(v) * ones_dir;
      for (int s = 0; s < r; ++s) v -= rows.row(s).dot(v) * rows.row(s).transpose();
      // second Gram-Schmidt pass for orthogonality at working precision
      v -= ones_dir.dot(v) * ones_dir;
      for (int s = 0; s < r; ++s) v -= rows.row(s).dot(v) * rows.row(s).transpose();
      const double norm = v.norm();
      if (norm > 1e-8) {
        rows.row(r) = v / norm;
        break;
      }
    }
  }
  return ComplementBasis{n, std::move(rows)};
}

SpectralDecomposition sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("sym_eig: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigensolver failed to converge");
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (int c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    const double tol = 1e-12 * col.cwiseAbs().maxCoeff();
    for (int i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > tol) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  return out;
}

Eigen::VectorXcd eigvals_general(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("eigvals_general: matrix must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigvals_general: Schur iteration failed to converge");
  return solver.eigenvalues();
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.rows() != m.cols()) throw InputError("pseudoinverse: matrix must be square");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale > 0.0 &&
      (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw InputError("pseudoinverse: matrix is not symmetric");
  const SpectralDecomposition eig = sym_eig(m);
  const double lam_max = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (lam_max == 0.0) return Eigen::MatrixXd::Zero(m.rows(), m.cols());
  const double tol =
      (rank_tol < 0.0 ? double(m.rows()) * kEps : rank_tol) * lam_max;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(eig.eigenvalues.size());
  for (int i = 0; i < inv.size(); ++i)
    if (std::abs(eig.eigenvalues(i)) > tol) inv(i) = 1.0 / eig.eigenvalues(i);
  return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose();
}

Eigen::MatrixXd pseudoinverse_general(const Eigen::MatrixXd& m, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0)
    return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  const double tol = (rank_tol < 0.0 ? double(std::max(m.rows(), m.cols())) * kEps
                                     : rank_tol) * sv(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

namespace {

// Diagonal block structure of a real quasi-triangular Schur factor.
// RealSchur writes exact zeros on the subdiagonal outside 2x2 bumps.
std::vector<int> schur_block_starts(const Eigen::MatrixXd& t) {
  std::vector<int> starts;
  const int k = static_cast<int>(t.rows());
  int i = 0;
  while (i < k) {
    starts.push_back(i);
    i += (i + 1 < k && t(i + 1, i) != 0.0) ? 2 : 1;
  }
  starts.push_back(k);
  return starts;
}

std::vector<std::complex<double>> block_eigenvalues(const Eigen::MatrixXd& blk) {
  if (blk.rows() == 1) return {blk(0, 0)};
  const double tr = blk(0, 0) + blk(1, 1);
  const double det = blk(0, 0) * blk(1, 1) - blk(0, 1) * blk(1, 0);
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4.0 - det));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

// Solves R_ii Y + Y S_jj = F for one (p x q) block, p, q in {1, 2}, by
// vectorizing to a (pq x pq) system.
Eigen::MatrixXd solve_small_block(const Eigen::MatrixXd& rii,
                                  const Eigen::MatrixXd& sjj,
                                  const Eigen::MatrixXd& f) {
  const int p = static_cast<int>(rii.rows());
  const int q = static_cast<int>(sjj.rows());
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(p * q, p * q);
  for (int j = 0; j < q; ++j) sys.block(j * p, j * p, p, p) = rii;
  for (int cj = 0; cj < q; ++cj)
    for (int rj = 0; rj < q; ++rj)
      sys.block(cj * p, rj * p, p, p) +=
          sjj(rj, cj) * Eigen::MatrixXd::Identity(p, p);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  const double scale = std::max(1.0, rii.norm() + sjj.norm());
  if (!lu.isInvertible() ||
      std::abs(lu.matrixLU().diagonal().cwiseAbs().minCoeff()) <
          p * q * 16 * kEps * scale) {
    double min_denom = std::numeric_limits<double>::infinity();
    for (const auto& lr : block_eigenvalues(rii))
      for (const auto& ls : block_eigenvalues(sjj))
        min_denom = std::min(min_denom, std::abs(lr + ls));
    throw NumericalError(
        "sylvester_solve: singular operator, eigenvalue collision with "
        "denominator |lambda_A + lambda_B| = " + std::to_string(min_denom));
  }
  Eigen::VectorXd fvec(p * q);
  for (int j = 0; j < q; ++j) fvec.segment(j * p, p) = f.col(j);
  const Eigen::VectorXd yvec = lu.solve(fvec);
  Eigen::MatrixXd y(p, q);
  for (int j = 0; j < q; ++j) y.col(j) = yvec.segment(j * p, p);
  return y;
}

}  // namespace

Eigen::MatrixXd sylvester_solve(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b,
                                const Eigen::MatrixXd& c) {
  const int k = static_cast<int>(a.rows());
  if (a.cols() != k || b.rows() != b.cols() || b.rows() != k ||
      c.rows() != k || c.cols() != k)
    throw InputError("sylvester_solve: A, B, C must be square with equal size");

  Eigen::RealSchur<Eigen::MatrixXd> schur_a(a);
  if (schur_a.info() != Eigen::Success)
    throw NumericalError("sylvester_solve: Schur factorization of A failed");
  Eigen::RealSchur<Eigen::MatrixXd> schur_b(b);
  if (schur_b.info() != Eigen::Success)
    throw NumericalError("sylvester_solve: Schur factorization of B failed");

  const Eigen::MatrixXd& r = schur_a.matrixT();
  const Eigen::MatrixXd& u = schur_a.matrixU();
  const Eigen::MatrixXd& s = schur_b.matrixT();
  const Eigen::MatrixXd& v = schur_b.matrixU();

  const Eigen::MatrixXd f = u.transpose() * c * v;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(k, k);

  const std::vector<int> rb = schur_block_starts(r);
  const std::vector<int> sb = schur_block_starts(s);
  const int nrb = static_cast<int>(rb.size()) - 1;
  const int nsb = static_cast<int>(sb.size()) - 1;

  // Column blocks of S left to right; row blocks of R bottom to top. All
  // dependencies of block (ii, jj) are then already solved.
  for (int jj = 0; jj < nsb; ++jj) {
    const int j0 = sb[jj], jw = sb[jj + 1] - j0;
    for (int ii = nrb - 1; ii >= 0; --ii) {
      const int i0 = rb[ii], iw = rb[ii + 1] - i0;
      Eigen::MatrixXd rhs = f.block(i0, j0, iw, jw);
      if (i0 + iw < k)
        rhs -= r.block(i0, i0 + iw, iw, k - i0 - iw) *
               y.block(i0 + iw, j0, k - i0 - iw, jw);
      if (j0 > 0) rhs -= y.block(i0, 0, iw, j0) * s.block(0, j0, j0, jw);
      y.block(i0, j0, iw, jw) = solve_small_block(
          r.block(i0, i0, iw, iw), s.block(j0, j0, jw, jw), rhs);
    }
  }
  return u * y * v.transpose();
}

Eigen::MatrixXd lyapunov_reference(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& c) {
  const int k = static_cast<int>(a.rows());
  if (a.cols() != k || c.rows() != k || c.cols() != k)
    throw InputError("lyapunov_reference: A and C must be square with equal size");
  if (k > 200)
    throw InputError("lyapunov_reference: k > 200 exceeds the dense k^2 x k^2 solve");

  // (I (x) A + A (x) I) vec(X) = vec(C), column-major vec; the second term
  // comes from vec(X A^T) = (A (x) I) vec(X).
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k * k, k * k);
  for (int j = 0; j < k; ++j) sys.block(j * k, j * k, k, k) = a;
  for (int br = 0; br < k; ++br)
    for (int bc = 0; bc < k; ++bc)
      sys.block(br * k, bc * k, k, k) +=
          a(br, bc) * Eigen::MatrixXd::Identity(k, k);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible())
    throw NumericalError("lyapunov_reference: singular Kronecker system");
  Eigen::VectorXd cvec(k * k);
  for (int j = 0; j < k; ++j) cvec.segment(j * k, k) = c.col(j);
  const Eigen::VectorXd xvec = lu.solve(cvec);
  Eigen::MatrixXd x(k, k);
  for (int j = 0; j < k; ++j) x.col(j) = xvec.segment(j * k, k);
  const double scale = c.cwiseAbs().maxCoeff();
  if (scale == 0.0 || (c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale)
    x = (0.5 * (x + x.transpose())).eval();
  return x;
}

double sylvester_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          const Eigen::MatrixXd& c, const Eigen::MatrixXd& x) {
  const double num = (a * x + x * b - c).norm();
  const double den = a.norm() * x.norm() + x.norm() * b.norm() + c.norm();
  return den > 0.0 ? num / den : num;
}

}  // namespace resym
