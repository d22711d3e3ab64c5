#include "resym/generators.hpp"

#include <map>
#include <random>
#include <utility>

namespace resym {

DirectedGraph cycle_graph(int n, bool directed) {
  if (n < 3) throw InputError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    edges.push_back({i, j, 1.0});
    if (!directed) edges.push_back({j, i, 1.0});
  }
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph path_graph(int n, bool directed) {
  if (n < 2) throw InputError("path needs at least 2 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, 1.0});
    if (!directed) edges.push_back({i + 1, i, 1.0});
  }
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph roach_graph(int path_len, int vertical_edges, bool directed) {
  if (path_len < 2) throw InputError("roach path_len must be >= 2");
  if (vertical_edges < 1 || vertical_edges > path_len)
    throw InputError("roach vertical_edges must be in [1, path_len]");
  const int p = path_len;
  std::vector<Edge> edges;
  if (!directed) {
    for (int i = 0; i + 1 < p; ++i) {
      edges.push_back({i, i + 1, 1.0});
      edges.push_back({i + 1, i, 1.0});
      edges.push_back({p + i, p + i + 1, 1.0});
      edges.push_back({p + i + 1, p + i, 1.0});
    }
    for (int i = p - vertical_edges; i < p; ++i) {
      edges.push_back({i, p + i, 1.0});
      edges.push_back({p + i, i, 1.0});
    }
  } else {
    for (int i = 0; i + 1 < p; ++i) {
      edges.push_back({i, i + 1, 1.0});          // upper, left to right
      edges.push_back({p + i + 1, p + i, 1.0});  // lower, right to left
    }
    for (int i = p - vertical_edges; i < p; ++i)
      edges.push_back({i, p + i, 1.0});          // rungs, upper to lower
    edges.push_back({p, 0, 1.0});                // close the circulation
  }
  return DirectedGraph(2 * p, std::move(edges));
}

namespace {

std::vector<Edge> random_edges(int n, std::uint64_t seed, double edge_prob) {
  if (n < 2) throw InputError("random graph needs at least 2 nodes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::map<std::pair<int, int>, double> chosen;
  // Spanning in-arborescence toward node 0: node i points at a random
  // earlier node, so every node reaches 0.
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    chosen[{i, parent(rng)}] = weight(rng);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double toss = coin(rng);
      if (chosen.count({i, j})) continue;
      if (toss < edge_prob) chosen[{i, j}] = weight(rng);
    }
  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (const auto& [key, w] : chosen) edges.push_back({key.first, key.second, w});
  return edges;
}

}  // namespace

DirectedGraph random_connected_digraph(int n, std::uint64_t seed, double edge_prob) {
  return DirectedGraph(n, random_edges(n, seed, edge_prob));
}

DirectedGraph random_connected_undirected(int n, std::uint64_t seed, double edge_prob) {
  std::map<std::pair<int, int>, double> und;
  for (const Edge& e : random_edges(n, seed, edge_prob)) {
    const auto key = std::minmax(e.src, e.dst);
    und.emplace(std::pair<int, int>(key.first, key.second), e.weight);
  }
  std::vector<Edge> edges;
  for (const auto& [key, w] : und) {
    edges.push_back({key.first, key.second, w});
    edges.push_back({key.second, key.first, w});
  }
  return DirectedGraph(n, std::move(edges));
}

}  // namespace resym
