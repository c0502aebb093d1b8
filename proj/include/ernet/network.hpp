#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace ernet {

/**
 * Undirected Erdos-Renyi graph G(n, p).  Edges are stored as (i, j) pairs
 * with i < j, sorted lexicographically.  The generating parameters are kept
 * with the edge list so a network is reproducible from its header alone.
 */
struct Network {
  int n_vertices = 0;
  double p = 0.0;
  uint64_t seed = 0;
  std::vector<std::pair<int, int>> edges;

  int n_edges() const { return static_cast<int>(edges.size()); }
};

/**
 * Interaction normalization |E| / N.  An edgeless graph is a valid draw for
 * small p; it is reported with has_edges = false and value 0 rather than an
 * error, and downstream code treats the interaction term as absent.
 */
struct KacFactor {
  double value = 0.0;
  bool has_edges = false;
};

/// Draw G(n, p).  Each pair is decided by one counter-based draw keyed on
/// (seed, i, j), so the result is independent of traversal order.
/// Throws std::invalid_argument for n < 1 or p outside (0, 1].
Network generate(int n, double p, uint64_t seed);

KacFactor kac(const Network& net);

/// Text format: header line "N p seed", then one "i j" line per edge in
/// ascending order.
void serialize(const Network& net, std::ostream& out);

/// Inverse of serialize.  Malformed input (bad header, endpoint out of
/// range, i >= j, unsorted or duplicate edges) raises std::runtime_error
/// naming the offending line number.
Network deserialize(std::istream& in);

}  // namespace ernet
