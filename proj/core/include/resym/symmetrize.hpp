#ifndef RESYM_SYMMETRIZE_HPP
#define RESYM_SYMMETRIZE_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "resym/graph.hpp"
#include "resym/linalg.hpp"
#include "resym/report.hpp"

namespace resym {

/// Default tolerance for construction residuals (norm-scaled).
constexpr double kResidualTol = 1e-9;
/// Default tolerance for cross-checks between independently computed values.
constexpr double kCheckTol = 1e-8;

/// Output of the symmetrization pipeline for a connected digraph Laplacian L:
///   sigma solves  Lbar Sigma + Sigma Lbar^T = I   with Lbar = Q L Q^T,
///   x_matrix = 2 Q^T Sigma Q  (PSD, zero row sums),
///   sym_laplacian = x_matrix^+ = (1/2) Q^T Sigma^{-1} Q,
/// the unique undirected Laplacian (possibly with negative edge weights)
/// whose pairwise effective resistances equal those of L.
struct SymmetrizationResult {
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd x_matrix;
  Eigen::MatrixXd sym_laplacian;
  ComplementBasis basis;
};

/// Factors L = H (I + 2K) Lu with H = L (P_n L)^+ a projection (H^2 = H,
/// HL = L, tr H = n-1), K skew-symmetric with zero row and column sums, and
/// S the Cayley transform (I - 2K)(I + 2K)^{-1}, orthogonal.
struct Decomposition {
  Eigen::MatrixXd h_matrix;
  Eigen::MatrixXd k_matrix;
  Eigen::MatrixXd s_matrix;
  Eigen::MatrixXd sym_laplacian;
};

/// Pairwise effective resistances; symmetric, zero diagonal, and sqrt(r) is
/// a metric.
struct ResistanceMatrix {
  int n;
  Eigen::MatrixXd entries;
};

/// Points y_i (rows) with ||y_i - y_j||^2 = r_ij, built from the
/// eigendecomposition of sym_laplacian^+; eigenvalues kept alongside
/// (ascending, first one is the kernel zero) for truncation bounds.
struct SpectralEmbedding {
  Eigen::MatrixXd points;
  Eigen::VectorXd eigenvalues;
};

/// Truncated-embedding resistance approximation. `bound` sums the l-1
/// smallest eigenvalues of sym_laplacian^+ literally (so the kernel zero is
/// included); `bound_excluding_zero` skips the kernel and is the variant the
/// max entrywise error provably respects. Tests report both.
struct ResistanceApproximation {
  Eigen::MatrixXd entries;
  double bound;
  double bound_excluding_zero;
};

/// Lbar = Q L Q^T; same spectrum as L minus one zero eigenvalue.
Eigen::MatrixXd reduced_laplacian(const LaplacianMatrix& l, const ComplementBasis& q);

/// Unique SPD solution of Lbar Sigma + Sigma Lbar^T = I. Solver failure or a
/// non-PD result signals a disconnected graph and raises ConnectivityError.
Eigen::MatrixXd edge_gramian(const Eigen::MatrixXd& lbar);

ResistanceMatrix resistance_matrix(const LaplacianMatrix& l);
ResistanceMatrix resistance_matrix(const LaplacianMatrix& l, const ComplementBasis& q);

/// Entrywise resistances from an X matrix: r_ij = x_ii + x_jj - 2 x_ij.
ResistanceMatrix resistance_from_x(const Eigen::MatrixXd& x);

SymmetrizationResult symmetrize(const LaplacianMatrix& l);
SymmetrizationResult symmetrize(const LaplacianMatrix& l, const ComplementBasis& q);

Decomposition decompose(const LaplacianMatrix& l);

/// S = (I - 2K)(I + 2K)^{-1} for skew K; always defined, S^T S = I.
Eigen::MatrixXd cayley(const Eigen::MatrixXd& k);

SpectralEmbedding spectral_embedding(const Eigen::MatrixXd& sym_laplacian);

/// Keeps embedding coordinates l..n (ascending eigenvalue order), zeroing
/// the first l-1. l = 1 reproduces the exact resistances with bound 0.
ResistanceApproximation approx_resistance(const SpectralEmbedding& embedding, int l);

/// Euler-Maruyama estimate of the Gramian Sigma: simulates
/// dz = -Lbar z dt + dW on the complement subspace and averages z z^T over
/// the stationary tail (second half) of each of `samples` trajectories.
/// Deterministic in seed. Requires dt * max Re(lambda(Lbar)) < 0.5.
Eigen::MatrixXd mc_covariance_oracle(const LaplacianMatrix& l, double horizon,
                                     double dt, int samples, std::uint64_t seed);

struct VerifyTolerances {
  double residual = kResidualTol;  // construction residuals
  double check = kCheckTol;        // cross-checks
};

/// Named checks on a pipeline output: Lyapunov residual, resistance
/// equality, trace equality, PSD with 1-dim kernel, decomposition
/// reconstruction. Failures are report entries, never throws.
VerificationReport verify_symmetrization(const LaplacianMatrix& l,
                                         const SymmetrizationResult& result,
                                         const VerifyTolerances& tol);
VerificationReport verify_symmetrization(const LaplacianMatrix& l,
                                         const SymmetrizationResult& result,
                                         double tol);

}  // namespace resym

#endif
