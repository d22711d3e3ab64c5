#include "resym/kron.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace resym {

namespace {

void check_kept(int n, const std::vector<int>& kept) {
  if (static_cast<int>(kept.size()) < 2)
    throw InputError("kron reduction: need at least 2 kept nodes");
  if (static_cast<int>(kept.size()) > n - 1)
    throw InputError("kron reduction: must eliminate at least one node");
  std::set<int> seen;
  for (int v : kept) {
    if (v < 0 || v >= n)
      throw InputError("kron reduction: kept node out of range: " + std::to_string(v));
    if (!seen.insert(v).second)
      throw InputError("kron reduction: duplicate kept node " + std::to_string(v));
  }
}

std::vector<int> eliminated_of(int n, const std::vector<int>& kept) {
  std::vector<char> is_kept(n, 0);
  for (int v : kept) is_kept[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!is_kept[v]) out.push_back(v);
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Eigen::MatrixXd centering_projector(int m) {
  return Eigen::MatrixXd::Identity(m, m) -
         Eigen::MatrixXd::Constant(m, m, 1.0 / double(m));
}

}  // namespace

Eigen::MatrixXd schur_reduce(const LaplacianMatrix& lu, const std::vector<int>& kept) {
  const int n = lu.size();
  check_kept(n, kept);
  const Eigen::MatrixXd& m = lu.matrix();
  const std::vector<int> gone = eliminated_of(n, kept);

  const Eigen::MatrixXd block = submatrix(m, gone, gone);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block, Eigen::EigenvaluesOnly);
  const double lam_min = eig.eigenvalues().minCoeff();
  const double lam_max = eig.eigenvalues().maxCoeff();
  if (lam_min <= lam_max * block.rows() * std::numeric_limits<double>::epsilon() * 64)
    throw NumericalError(
        "schur_reduce: eliminated block is numerically singular (condition ~" +
        std::to_string(lam_max / std::max(lam_min, 1e-300)) + ")");

  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success)
    throw NumericalError("schur_reduce: eliminated block is not positive definite");
  const Eigen::MatrixXd cross = submatrix(m, gone, kept);
  Eigen::MatrixXd reduced = submatrix(m, kept, kept) -
                            submatrix(m, kept, gone) * llt.solve(cross);
  return 0.5 * (reduced + reduced.transpose());
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> reduce_decomposition(
    const Eigen::MatrixXd& h, const Eigen::MatrixXd& k, const std::vector<int>& kept) {
  if (h.rows() != h.cols() || k.rows() != k.cols() || h.rows() != k.rows())
    throw InputError("reduce_decomposition: H and K must be square with equal size");
  const int n = static_cast<int>(h.rows());
  for (int v : kept)
    if (v < 0 || v >= n)
      throw InputError("reduce_decomposition: kept node out of range");
  const Eigen::MatrixXd pm = centering_projector(static_cast<int>(kept.size()));
  return {submatrix(h, kept, kept) * pm, submatrix(k, kept, kept) * pm};
}

ReductionResult directed_kron(const LaplacianMatrix& l, const std::vector<int>& kept) {
  check_kept(l.size(), kept);
  const Decomposition dec = decompose(l);

  ReductionResult out;
  out.kept = kept;
  out.reduced_sym = schur_reduce(LaplacianMatrix::unchecked(dec.sym_laplacian), kept);
  auto [h_kr, k_kr] = reduce_decomposition(dec.h_matrix, dec.k_matrix, kept);
  out.reduced_h = std::move(h_kr);
  out.reduced_k = std::move(k_kr);
  const int m = static_cast<int>(kept.size());
  out.reduced_directed =
      out.reduced_h * (Eigen::MatrixXd::Identity(m, m) + 2.0 * out.reduced_k) *
      out.reduced_sym;
  out.validation = validate_reduction(out, l);
  return out;
}

VerificationReport validate_reduction(const ReductionResult& result,
                                      const LaplacianMatrix& original) {
  VerificationReport report;
  const int m = static_cast<int>(result.kept.size());
  const Eigen::MatrixXd pm = centering_projector(m);
  const double l_scale = std::max(result.reduced_directed.cwiseAbs().maxCoeff(), 1e-300);

  report.checks.push_back({"row_sums", false,
                           (result.reduced_directed * Eigen::VectorXd::Ones(m))
                                   .cwiseAbs()
                                   .maxCoeff() /
                               l_scale,
                           kResidualTol});

  const double h_idem =
      (result.reduced_h * result.reduced_h - result.reduced_h).cwiseAbs().maxCoeff();
  Check h_check{"h_idempotency", false, h_idem, kCheckTol, /*asserted=*/false};
  h_check.passed = h_idem <= kCheckTol;
  report.checks.push_back(h_check);

  const double h_consist =
      (result.reduced_h * result.reduced_directed - result.reduced_directed)
          .cwiseAbs()
          .maxCoeff() /
      l_scale;
  Check hl_check{"h_consistency", false, h_consist, kCheckTol, /*asserted=*/false};
  hl_check.passed = h_consist <= kCheckTol;
  report.checks.push_back(hl_check);

  // K^kr only ever acts on the complement subspace, so skewness is measured
  // there; raw skewness of K_VV P_m is recorded alongside for reference.
  const Eigen::MatrixXd skew_sum = result.reduced_k + result.reduced_k.transpose();
  report.checks.push_back(
      {"k_skewness", false, (pm * skew_sum * pm).cwiseAbs().maxCoeff(), kResidualTol});
  Check raw_skew{"k_skewness_raw", false, skew_sum.cwiseAbs().maxCoeff(), kCheckTol,
                 /*asserted=*/false};
  raw_skew.passed = raw_skew.residual <= raw_skew.tolerance;
  report.checks.push_back(raw_skew);

  double resym = std::numeric_limits<double>::infinity();
  try {
    const Eigen::MatrixXd again =
        symmetrize(LaplacianMatrix::unchecked(result.reduced_directed)).sym_laplacian;
    const double scale = std::max(result.reduced_sym.cwiseAbs().maxCoeff(), 1e-300);
    resym = (again - result.reduced_sym).cwiseAbs().maxCoeff() / scale;
  } catch (const Error&) {
  }
  Check resym_check{"directed_resistance_roundtrip", false, resym, kCheckTol,
                    /*asserted=*/false};
  resym_check.passed = resym <= kCheckTol;
  report.checks.push_back(resym_check);

  // Resistance restriction identity against the original graph. The reduced
  // resistances go through the complement-basis pipeline, which handles the
  // kernel exactly; a rank-tolerance pseudoinverse misclassifies it when the
  // reduction has collapsed the scale.
  double restriction = std::numeric_limits<double>::infinity();
  try {
    const ResistanceMatrix r_full = resistance_matrix(original);
    const ResistanceMatrix r_red =
        resistance_matrix(LaplacianMatrix::unchecked(result.reduced_sym));
    restriction = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double want = r_full.entries(result.kept[i], result.kept[j]);
        restriction = std::max(
            restriction, std::abs(r_red.entries(i, j) - want) /
                             std::max(std::abs(want), 1e-12));
      }
  } catch (const Error&) {
  }
  report.checks.push_back(
      {"resistance_restriction", false, restriction, kCheckTol});

  for (Check& c : report.checks)
    if (c.asserted) c.passed = c.residual <= c.tolerance;
  return report;
}

std::vector<int> keep_set_by_largest_eigenvector(const Eigen::MatrixXd& sym_laplacian) {
  const SpectralDecomposition eig = sym_eig(sym_laplacian);
  const int n = static_cast<int>(sym_laplacian.rows());
  const Eigen::VectorXd top = eig.eigenvectors.col(n - 1);
  std::vector<int> keep, drop;
  for (int i = 0; i < n; ++i) (top(i) >= 0.0 ? keep : drop).push_back(i);
  if (static_cast<int>(keep.size()) < 2 || keep.size() >= static_cast<std::size_t>(n))
    return drop.size() >= 2 ? drop : keep;
  return keep;
}

}  // namespace resym
