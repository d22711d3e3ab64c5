#ifndef RESYM_GENERATORS_HPP
#define RESYM_GENERATORS_HPP

#include <cstdint>

#include "resym/graph.hpp"

namespace resym {

/// Unit-weight cycle 0 -> 1 -> ... -> n-1 -> 0; bidirected when directed=false.
DirectedGraph cycle_graph(int n, bool directed = true);

/// Unit-weight path 0 - 1 - ... - n-1; single orientation when directed=true.
DirectedGraph path_graph(int n, bool directed = false);

/// Two horizontal paths of path_len nodes (upper: 0..p-1, lower: p..2p-1,
/// node p+i sits under node i) joined by vertical_edges rungs at the right
/// end. Undirected: every edge bidirected, unit weights. Directed (fixed
/// convention, relied on by tests): upper path left->right, lower path
/// right->left, rungs upper->lower, plus a closing edge from the lower
/// path's left end to node 0 so a globally reachable node exists.
DirectedGraph roach_graph(int path_len, int vertical_edges, bool directed);

/// Connected random digraph: a spanning in-arborescence toward node 0 plus
/// independent extra edges with probability edge_prob, weights uniform in
/// [0.2, 2]. Deterministic in seed.
DirectedGraph random_connected_digraph(int n, std::uint64_t seed,
                                       double edge_prob = 0.35);

/// Undirected counterpart: drops orientation of random_connected_digraph
/// (first weight wins per unordered pair) and bidirects every edge.
DirectedGraph random_connected_undirected(int n, std::uint64_t seed,
                                          double edge_prob = 0.35);

}  // namespace resym

#endif
