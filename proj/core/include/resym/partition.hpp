#ifndef RESYM_PARTITION_HPP
#define RESYM_PARTITION_HPP

#include <Eigen/Dense>
#include <utility>

#include "resym/graph.hpp"
#include "resym/symmetrize.hpp"

namespace resym {

/// Spectral bisection of a directed graph by the sign of the Fiedler vector
/// of its resistance-preserving symmetrization. Zero Fiedler entries join
/// the positive side. fiedler_multiplicity > 1 flags a degenerate second
/// eigenvalue, in which case the bisection is one of several valid choices.
struct Bisection {
  NodePartition partition;
  Eigen::VectorXd fiedler;
  Eigen::VectorXd f_vector;
  double urc_value;      // set-wise URC of the symmetrized graph at the partition
  double drc_value;      // set-wise DRC of the directed graph
  double urc_quadratic;  // f^T Lu_hat f / (2n), the quantity the bounds bracket
  std::pair<double, double> bounds;
  int fiedler_multiplicity;
};

struct MeanCutReport {
  long long k;  // number of bipartitions, 2^n - 2
  double mean_directed;
  double mean_symmetrized;
  double closed_form;
};

enum class MeanCutMode { brute, closed };

/// Eigenvector of the second-smallest eigenvalue of a symmetric Laplacian,
/// rescaled to ||f|| = sqrt(n), sign-fixed (first nonzero entry positive).
/// multiplicity_out, when given, receives the eigenvalue multiplicity.
Eigen::VectorXd fiedler_vector(const LaplacianMatrix& lu, int* multiplicity_out = nullptr);

Bisection bisect(const LaplacianMatrix& l);

/// f_i = sqrt(|Pbar|/|P|) on P, -sqrt(|P|/|Pbar|) on Pbar; f is orthogonal to
/// the ones vector with ||f||^2 = n.
Eigen::VectorXd partition_vector_f(const NodePartition& p);

/// cut(P,Pbar)/|P| + cut(P,Pbar)/|Pbar| for a symmetric Laplacian.
double urc(const LaplacianMatrix& lu, const NodePartition& p);

/// cut(P,Pbar)/|P| + cut(Pbar,P)/|Pbar|; equals f^T L f / n.
double drc(const LaplacianMatrix& l, const NodePartition& p);

/// Bracket for f^T Lu_hat f / (2n) in terms of directed cuts:
/// DRC -+ (1/sqrt|P| + 1/sqrt|Pbar|) (cut(P,Pbar) + cut(Pbar,P)).
std::pair<double, double> ratio_cut_bounds(const LaplacianMatrix& l,
                                           const NodePartition& p);

/// (1 + 2 sqrt|P|) cut_t / |P| with |P| the smaller side; upper-bounds the
/// URC of the symmetrized graph at p.
double expansion_bound(const LaplacianMatrix& l, const NodePartition& p);

/// Mean directed cut over all 2^n - 2 bipartitions, for L and for its
/// symmetrization; the two agree. Brute mode enumerates (n <= 20); closed
/// mode applies the coefficient 2^{n-2} / (2^n - 2) to tr L.
MeanCutReport mean_cut(const LaplacianMatrix& l, MeanCutMode mode);

/// Exhaustive URC minimizer (n <= 20). The reported side is the weakly
/// larger one; ties break to the lexicographically smallest member set.
std::pair<NodePartition, double> brute_force_min_urc(const LaplacianMatrix& lu,
                                                     bool equal_sized_only);

}  // namespace resym

#endif
