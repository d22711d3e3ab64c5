#ifndef RESYM_GRAPH_HPP
#define RESYM_GRAPH_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "resym/errors.hpp"

namespace resym {

struct Edge {
  int src;
  int dst;
  double weight;
};

/// Weighted digraph on dense node ids 0..n-1. No self-loops, at most one edge
/// per ordered pair, strictly positive weights. Immutable after construction.
class DirectedGraph {
 public:
  DirectedGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Adjacency matrix A with a_{ij} = weight of edge i->j (0 if absent).
  Eigen::MatrixXd adjacency() const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Dense Laplacian L = D - A (out-degrees on the diagonal, zero row sums).
/// Symmetrized Laplacians may carry negative edge weights, so no sign
/// constraint is imposed on off-diagonal entries here.
class LaplacianMatrix {
 public:
  static LaplacianMatrix from_graph(const DirectedGraph& g);
  /// Validates |row sum| <= tol * max|entry| for every row.
  static LaplacianMatrix from_matrix(Eigen::MatrixXd m, double tol = 1e-8);
  /// No validation; for matrices produced by library pipelines.
  static LaplacianMatrix unchecked(Eigen::MatrixXd m);

  int size() const { return n_; }
  const Eigen::MatrixXd& matrix() const { return m_; }

  /// Column-sum vector (1^T L); zero iff the graph is balanced.
  Eigen::VectorXd column_sums() const { return m_.colwise().sum(); }

 private:
  LaplacianMatrix(int n, Eigen::MatrixXd m) : n_(n), m_(std::move(m)) {}
  int n_;
  Eigen::MatrixXd m_;
};

/// Bipartition (P, complement) of {0..n-1} with 1 <= |P| <= n-1.
class NodePartition {
 public:
  NodePartition(int node_count, std::vector<int> members);

  int node_count() const { return n_; }
  const std::vector<int>& members() const { return members_; }  // sorted
  std::vector<int> complement() const;
  bool contains(int v) const { return mask_[v]; }
  int size() const { return static_cast<int>(members_.size()); }
  int complement_size() const { return n_ - size(); }

  /// 0/1 indicator vector y (1 on P).
  Eigen::VectorXd indicator() const;

 private:
  int n_;
  std::vector<int> members_;
  std::vector<char> mask_;
};

/// Parses the edge-list text format: one `src dst weight` per line, `#`
/// comments, optional leading `n <count>` header declaring isolated nodes.
/// Node count is 1 + max id unless the header gives a larger value.
DirectedGraph parse_edge_list(std::istream& in);

/// Writes the same format, round-trippable through parse_edge_list.
void write_edge_list(const DirectedGraph& g, std::ostream& out);

LaplacianMatrix laplacian(const DirectedGraph& g);

/// Nodes k such that every node has a directed path to k. Empty iff the
/// graph is disconnected in the globally-reachable sense.
std::vector<int> globally_reachable_nodes(const DirectedGraph& g);

bool is_connected(const DirectedGraph& g);

/// Connectivity of the support pattern of a Laplacian (edge i->j wherever
/// the off-diagonal entry is numerically nonzero). Used by the symmetrization
/// pipeline, which only sees matrices.
bool is_connected(const LaplacianMatrix& l);

/// Sum of weights of edges from P into the complement, evaluated through the
/// quadratic form y^T (L + L^T) y / 2.
double directed_cut(const LaplacianMatrix& l, const NodePartition& p);

}  // namespace resym

#endif
