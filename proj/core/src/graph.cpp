#include "resym/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace resym {

DirectedGraph::DirectedGraph(int node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph must have at least one node");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_)
      throw InputError("edge endpoint out of range: " + std::to_string(e.src) +
                       " -> " + std::to_string(e.dst));
    if (e.src == e.dst)
      throw InputError("self-loop on node " + std::to_string(e.src));
    if (!(e.weight > 0.0))
      throw InputError("edge weight must be strictly positive");
    if (!seen.insert({e.src, e.dst}).second)
      throw InputError("duplicate edge " + std::to_string(e.src) + " -> " +
                       std::to_string(e.dst));
  }
}

Eigen::MatrixXd DirectedGraph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) a(e.src, e.dst) = e.weight;
  return a;
}

LaplacianMatrix LaplacianMatrix::from_graph(const DirectedGraph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    m(e.src, e.dst) -= e.weight;
    m(e.src, e.src) += e.weight;
  }
  return LaplacianMatrix(n, std::move(m));
}

LaplacianMatrix LaplacianMatrix::from_matrix(Eigen::MatrixXd m, double tol) {
  if (m.rows() != m.cols()) throw InputError("Laplacian must be square");
  const int n = static_cast<int>(m.rows());
  const double scale = m.cwiseAbs().maxCoeff();
  const Eigen::VectorXd row_sums = m.rowwise().sum();
  if (scale > 0.0 && row_sums.cwiseAbs().maxCoeff() > tol * scale)
    throw InputError("matrix is not a Laplacian: row sums are nonzero");
  return LaplacianMatrix(n, std::move(m));
}

LaplacianMatrix LaplacianMatrix::unchecked(Eigen::MatrixXd m) {
  const int n = static_cast<int>(m.rows());
  return LaplacianMatrix(n, std::move(m));
}

NodePartition::NodePartition(int node_count, std::vector<int> members)
    : n_(node_count), members_(std::move(members)), mask_(node_count, 0) {
  if (n_ < 2) throw InputError("partition needs at least two nodes");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || static_cast<int>(members_.size()) >= n_)
    throw InputError("partition side must be nonempty and proper");
  for (int v : members_) {
    if (v < 0 || v >= n_)
      throw InputError("partition member out of range: " + std::to_string(v));
    mask_[v] = 1;
  }
}

std::vector<int> NodePartition::complement() const {
  std::vector<int> out;
  out.reserve(n_ - members_.size());
  for (int v = 0; v < n_; ++v)
    if (!mask_[v]) out.push_back(v);
  return out;
}

Eigen::VectorXd NodePartition::indicator() const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
  for (int v : members_) y(v) = 1.0;
  return y;
}

DirectedGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  long line_no = 0;
  long header_n = -1;
  int max_id = -1;
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok0;
    if (!(ls >> tok0)) continue;  // blank or comment-only line

    if (first_content && tok0 == "n") {
      long n;
      if (!(ls >> n) || n < 1)
        throw ParseError("invalid node-count header", line_no);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens after header", line_no);
      header_n = n;
      first_content = false;
      continue;
    }
    first_content = false;

    long src, dst;
    double w;
    std::istringstream es(line);
    if (!(es >> src >> dst >> w))
      throw ParseError("expected `src dst weight`", line_no);
    std::string extra;
    if (es >> extra) throw ParseError("trailing tokens after edge", line_no);
    if (src < 0 || dst < 0) throw ParseError("negative node id", line_no);
    if (src == dst) throw ParseError("self-loop on node " + std::to_string(src), line_no);
    if (!std::isfinite(w) || w <= 0.0)
      throw ParseError("edge weight must be a positive real", line_no);
    for (const Edge& e : edges)
      if (e.src == src && e.dst == dst)
        throw ParseError("duplicate edge " + std::to_string(src) + " -> " +
                         std::to_string(dst), line_no);
    edges.push_back({static_cast<int>(src), static_cast<int>(dst), w});
    max_id = std::max(max_id, static_cast<int>(std::max(src, dst)));
  }
  long n = max_id + 1;
  if (header_n >= 0) {
    if (header_n < n)
      throw ParseError("header node count " + std::to_string(header_n) +
                       " is smaller than 1 + max node id", 0);
    n = header_n;
  }
  if (n < 1) throw ParseError("empty graph: no edges and no header", 0);
  return DirectedGraph(static_cast<int>(n), std::move(edges));
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  out << "n " << g.node_count() << "\n";
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
    out << e.src << " " << e.dst << " " << buf << "\n";
  }
}

LaplacianMatrix laplacian(const DirectedGraph& g) {
  return LaplacianMatrix::from_graph(g);
}

namespace {

// Reverse-adjacency reachability: nodes that can reach k = nodes reachable
// from k along reversed edges.
std::vector<int> reachable_on(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> stack{start};
  std::vector<char> seen(adj.size(), 0);
  seen[start] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(adj.size()); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

std::vector<int> globally_reachable_from_reverse(
    const std::vector<std::vector<int>>& radj) {
  const int n = static_cast<int>(radj.size());
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if (static_cast<int>(reachable_on(radj, k).size()) == n) out.push_back(k);
  return out;
}

}  // namespace

std::vector<int> globally_reachable_nodes(const DirectedGraph& g) {
  std::vector<std::vector<int>> radj(g.node_count());
  for (const Edge& e : g.edges()) radj[e.dst].push_back(e.src);
  return globally_reachable_from_reverse(radj);
}

bool is_connected(const DirectedGraph& g) {
  if (g.node_count() == 1) return true;
  return !globally_reachable_nodes(g).empty();
}

bool is_connected(const LaplacianMatrix& l) {
  const int n = l.size();
  if (n == 1) return true;
  const Eigen::MatrixXd& m = l.matrix();
  const double zero_tol = 1e-13 * std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<std::vector<int>> radj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(m(i, j)) > zero_tol) radj[j].push_back(i);
  return !globally_reachable_from_reverse(radj).empty();
}

double directed_cut(const LaplacianMatrix& l, const NodePartition& p) {
  if (p.node_count() != l.size())
    throw InputError("partition and Laplacian dimensions differ");
  const Eigen::VectorXd y = p.indicator();
  return 0.5 * y.dot((l.matrix() + l.matrix().transpose()) * y);
}

}  // namespace resym
