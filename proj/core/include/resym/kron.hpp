#ifndef RESYM_KRON_HPP
#define RESYM_KRON_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "resym/graph.hpp"
#include "resym/report.hpp"
#include "resym/symmetrize.hpp"

namespace resym {

/// Node sparsification of a directed graph: Schur-complement (Kron)
/// reduction of the symmetrized Laplacian, reduction of the H and K factors,
/// and the re-mapped directed Laplacian
///   L^kr = H^kr (I_m + 2 K^kr) Lu^kr.
/// Effective resistance among kept nodes is preserved by Lu^kr; the directed
/// re-mapping is validated per instance (see validate_reduction).
struct ReductionResult {
  std::vector<int> kept;
  Eigen::MatrixXd reduced_sym;       // Lu^kr, m x m
  Eigen::MatrixXd reduced_h;         // H^kr = H_VV P_m
  Eigen::MatrixXd reduced_k;         // K^kr = K_VV P_m
  Eigen::MatrixXd reduced_directed;  // L^kr
  VerificationReport validation;
};

/// Kron reduction Lu_VV - Lu_VVbar Lu_VbarVbar^{-1} Lu_VbarV onto the kept
/// nodes (2 <= m <= n-1). The eliminated block is positive definite for a
/// connected graph; near-singularity raises NumericalError.
Eigen::MatrixXd schur_reduce(const LaplacianMatrix& lu, const std::vector<int>& kept);

/// (H_VV P_m, K_VV P_m); both annihilate the ones vector on the right.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> reduce_decomposition(
    const Eigen::MatrixXd& h, const Eigen::MatrixXd& k, const std::vector<int>& kept);

/// Full pipeline: symmetrize, decompose, Schur-reduce, reduce H and K,
/// compose the directed reduced Laplacian, and validate.
ReductionResult directed_kron(const LaplacianMatrix& l, const std::vector<int>& kept);

/// Checks on a reduction: (a) zero row sums of L^kr, (b) H^kr idempotency
/// and H^kr L^kr = L^kr, (c) K^kr skewness on the complement subspace,
/// (d) whether symmetrizing L^kr reproduces Lu^kr. (b) and (d) are measured
/// diagnostics, recorded but never fatal.
VerificationReport validate_reduction(const ReductionResult& result,
                                      const LaplacianMatrix& original);

/// Keep-set heuristic: nodes with nonnegative entries in the eigenvector of
/// the largest eigenvalue of the symmetrized Laplacian, a generalization of
/// keeping every other node. Falls back to the complement if that side is
/// too small.
std::vector<int> keep_set_by_largest_eigenvector(const Eigen::MatrixXd& sym_laplacian);

}  // namespace resym

#endif
