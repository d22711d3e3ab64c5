#ifndef RESYM_LINALG_HPP
#define RESYM_LINALG_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "resym/errors.hpp"

namespace resym {

/// Orthonormal basis of the subspace orthogonal to the all-ones vector,
/// stored as the rows of a (n-1) x n matrix Q with
///   Q 1 = 0,  Q Q^T = I_{n-1},  Q^T Q = P_n = I - (1/n) 1 1^T.
struct ComplementBasis {
  int n;
  Eigen::MatrixXd rows;

  /// P_n, the orthogonal projector onto the complement of span{1}.
  Eigen::MatrixXd projector() const { return rows.transpose() * rows; }
};

/// Deterministic complement basis: the Householder reflector that maps
/// 1/sqrt(n) to the last coordinate axis, truncated to its first n-1 rows.
ComplementBasis complement_basis(int n);

/// Randomized alternative basis (Gaussian rows, Gram-Schmidt against 1 and
/// each other). Downstream results must not depend on the basis choice;
/// tests use this to verify that.
ComplementBasis random_complement_basis(int n, std::uint64_t seed);

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, sign-fixed
};

/// Symmetric eigendecomposition with ascending eigenvalues and a
/// deterministic sign convention: the first component of each eigenvector
/// that is nonzero (above 1e-12 of the column max) is positive.
SpectralDecomposition sym_eig(const Eigen::MatrixXd& m);

/// All eigenvalues of a general real square matrix, via the real Schur form.
/// Unordered; complex values come in conjugate pairs.
Eigen::VectorXcd eigvals_general(const Eigen::MatrixXd& m);

/// Moore-Penrose pseudoinverse of a symmetric matrix through its spectral
/// decomposition. Eigenvalues with |lambda| <= rank_tol * max|lambda| are
/// treated as zero; rank_tol < 0 selects the default n * eps.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rank_tol = -1.0);

/// SVD-based pseudoinverse for general square matrices (used for the
/// projection H = L (P_n L)^+, whose argument is not symmetric).
Eigen::MatrixXd pseudoinverse_general(const Eigen::MatrixXd& m,
                                      double rank_tol = -1.0);

/// Solves A X + X B = C (all k x k) by Bartels-Stewart: real Schur forms of
/// A and B, then back-substitution over the quasi-triangular blocks in real
/// arithmetic. Requires the spectra of A and -B to be disjoint; a collision
/// raises NumericalError naming the near-zero denominator.
Eigen::MatrixXd sylvester_solve(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b,
                                const Eigen::MatrixXd& c);

/// Independent slow oracle for A X + X A^T = C: assembles the k^2 x k^2
/// Kronecker system (I (x) A + A (x) I) vec(X) = vec(C) and solves it
/// directly. Shares no code path with sylvester_solve. k <= 200.
Eigen::MatrixXd lyapunov_reference(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& c);

/// ||A X + X B - C||_F relative to the combined scale
/// ||A||_F ||X||_F + ||X||_F ||B||_F + ||C||_F.
double sylvester_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          const Eigen::MatrixXd& c, const Eigen::MatrixXd& x);

}  // namespace resym

#endif
