#include "resym/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace resym {

namespace {

void require_symmetric(const LaplacianMatrix& lu, const char* who) {
  const Eigen::MatrixXd& m = lu.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw InputError(std::string(who) + ": Laplacian is not symmetric");
}

NodePartition complement_of(const NodePartition& p) {
  return NodePartition(p.node_count(), p.complement());
}

// Gray-code walk over all node subsets; calls visit(mask, cut_values) for
// every proper nonempty subset. cut_values[m] = y^T M_m y / 2 for each
// supplied symmetric matrix, maintained incrementally via g = M y.
template <typename Visit>
void enumerate_cuts(const std::vector<const Eigen::MatrixXd*>& ms, int n, Visit visit) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Eigen::VectorXd> g(ms.size(), Eigen::VectorXd::Zero(n));
  std::vector<double> cut(ms.size(), 0.0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  std::uint32_t mask = 0;
  for (std::uint32_t i = 1; i < (1u << n); ++i) {
    const int v = std::countr_zero(i);
    const double s = (y(v) > 0.5) ? -1.0 : 1.0;
    for (std::size_t m = 0; m < ms.size(); ++m) {
      cut[m] += s * g[m](v) + 0.5 * (*ms[m])(v, v);
      g[m] += s * ms[m]->col(v);
    }
    y(v) += s;
    mask ^= (1u << v);
    if (mask != full) visit(mask, cut);
  }
}

}  // namespace

Eigen::VectorXd fiedler_vector(const LaplacianMatrix& lu, int* multiplicity_out) {
  require_symmetric(lu, "fiedler_vector");
  const int n = lu.size();
  if (n < 2) throw InputError("fiedler_vector: need at least 2 nodes");
  const SpectralDecomposition eig = sym_eig(lu.matrix());
  const double lam_scale = std::max(std::abs(eig.eigenvalues(n - 1)), 1e-300);
  const double lam2 = eig.eigenvalues(1);
  if (lam2 <= 1e-10 * lam_scale)
    throw ConnectivityError("fiedler_vector: second eigenvalue is zero (disconnected)");
  if (multiplicity_out) {
    int mult = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(eig.eigenvalues(i) - lam2) <= 1e-8 * lam_scale) ++mult;
    *multiplicity_out = mult;
  }
  Eigen::VectorXd f = eig.eigenvectors.col(1);
  return f * (std::sqrt(double(n)) / f.norm());
}

Eigen::VectorXd partition_vector_f(const NodePartition& p) {
  const int n = p.node_count();
  const double np = p.size(), nq = p.complement_size();
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, -std::sqrt(np / nq));
  const double pos = std::sqrt(nq / np);
  for (int v : p.members()) f(v) = pos;
  return f;
}

double urc(const LaplacianMatrix& lu, const NodePartition& p) {
  require_symmetric(lu, "urc");
  const double cut = directed_cut(lu, p);
  return cut / p.size() + cut / p.complement_size();
}

double drc(const LaplacianMatrix& l, const NodePartition& p) {
  return directed_cut(l, p) / p.size() +
         directed_cut(l, complement_of(p)) / p.complement_size();
}

std::pair<double, double> ratio_cut_bounds(const LaplacianMatrix& l,
                                           const NodePartition& p) {
  const double cut_t = directed_cut(l, p) + directed_cut(l, complement_of(p));
  const double center = drc(l, p);
  const double width =
      (1.0 / std::sqrt(double(p.size())) + 1.0 / std::sqrt(double(p.complement_size()))) *
      cut_t;
  return {center - width, center + width};
}

double expansion_bound(const LaplacianMatrix& l, const NodePartition& p) {
  const double cut_t = directed_cut(l, p) + directed_cut(l, complement_of(p));
  const int small = std::min(p.size(), p.complement_size());
  return (1.0 + 2.0 * std::sqrt(double(small))) * cut_t / double(small);
}

Bisection bisect(const LaplacianMatrix& l) {
  const int n = l.size();
  const SymmetrizationResult sym = symmetrize(l);
  const LaplacianMatrix lu_hat = LaplacianMatrix::unchecked(sym.sym_laplacian);

  Bisection out{NodePartition(std::max(n, 2), {0}), {}, {}, 0, 0, 0, {0, 0}, 1};
  out.fiedler = fiedler_vector(lu_hat, &out.fiedler_multiplicity);

  std::vector<int> members;  // zero entries join the positive side
  for (int i = 0; i < n; ++i)
    if (out.fiedler(i) >= 0.0) members.push_back(i);
  out.partition = NodePartition(n, std::move(members));

  out.f_vector = partition_vector_f(out.partition);
  out.urc_value = urc(lu_hat, out.partition);
  out.drc_value = drc(l, out.partition);
  out.urc_quadratic =
      out.f_vector.dot(sym.sym_laplacian * out.f_vector) / (2.0 * n);
  out.bounds = ratio_cut_bounds(l, out.partition);
  return out;
}

MeanCutReport mean_cut(const LaplacianMatrix& l, MeanCutMode mode) {
  const int n = l.size();
  if (n < 2) throw InputError("mean_cut: need at least 2 nodes");
  MeanCutReport report;
  report.k = (1LL << n) - 2;
  const double coeff = std::ldexp(1.0, n - 2) / double(report.k);
  report.closed_form = coeff * l.matrix().trace();

  const Eigen::MatrixXd lu_hat = symmetrize(l).sym_laplacian;
  if (mode == MeanCutMode::closed) {
    report.mean_directed = report.closed_form;
    report.mean_symmetrized = coeff * lu_hat.trace();
    return report;
  }

  if (n > 20) throw InputError("mean_cut: n > 20 is too large for brute mode");
  const Eigen::MatrixXd m_dir = l.matrix() + l.matrix().transpose();
  const Eigen::MatrixXd m_sym = 2.0 * lu_hat;  // y^T Lu y = cut of symmetric graph
  double sum_dir = 0.0, sum_sym = 0.0;
  enumerate_cuts({&m_dir, &m_sym}, n,
                 [&](std::uint32_t, const std::vector<double>& cut) {
                   sum_dir += cut[0];
                   sum_sym += cut[1];
                 });
  report.mean_directed = sum_dir / double(report.k);
  report.mean_symmetrized = sum_sym / double(report.k);
  return report;
}

std::pair<NodePartition, double> brute_force_min_urc(const LaplacianMatrix& lu,
                                                     bool equal_sized_only) {
  require_symmetric(lu, "brute_force_min_urc");
  const int n = lu.size();
  if (n < 2 || n > 20)
    throw InputError("brute_force_min_urc: n must be in [2, 20]");

  const Eigen::MatrixXd m = lu.matrix() + lu.matrix().transpose();
  bool have = false;
  double best_val = 0.0;
  std::uint32_t best_mask = 0;
  int best_size = 0;

  auto members_of = [n](std::uint32_t mask) {
    std::vector<int> mem;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) mem.push_back(i);
    return mem;
  };

  enumerate_cuts({&m}, n, [&](std::uint32_t mask, const std::vector<double>& cut) {
    const int size = std::popcount(mask);
    if (equal_sized_only && std::abs(2 * size - n) > 1) return;
    const double val = cut[0] / size + cut[0] / (n - size);
    if (!have) {
      have = true;
      best_val = val;
      best_mask = mask;
      best_size = size;
      return;
    }
    const double tie_tol = 1e-9 * (1.0 + std::abs(best_val));
    if (val < best_val - tie_tol) {
      best_val = val;
      best_mask = mask;
      best_size = size;
    } else if (std::abs(val - best_val) <= tie_tol) {
      // prefer the weakly larger side, then the lexicographically
      // smallest member set
      const bool new_large = 2 * size >= n, old_large = 2 * best_size >= n;
      bool take = false;
      if (new_large != old_large) {
        take = new_large;
      } else {
        const auto a = members_of(mask), b = members_of(best_mask);
        take = std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      }
      if (take) {
        best_val = std::min(best_val, val);
        best_mask = mask;
        best_size = size;
      }
    }
  });
  if (!have) throw InputError("brute_force_min_urc: no admissible bipartition");
  return {NodePartition(n, members_of(best_mask)), best_val};
}

}  // namespace resym
