#pragma once

#include <cstdint>
#include <vector>

#include "bopgraph/graph.hpp"

namespace bopgraph {

struct LabeledGraph {
  Graph graph;
  LabelAssignment labels;
};

/// Undirected planted-partition graph with unit affinities: each node pair
/// is joined with probability `p_in` inside a block and `p_out` across
/// blocks. Draws are repeated from the same seeded stream until the graph is
/// connected, at most `max_attempts` times. Labels are the block ids.
LabeledGraph generate_planted_partition(const std::vector<std::size_t>& block_sizes, double p_in,
                                        double p_out, std::uint64_t seed,
                                        int max_attempts = 100);
LabeledGraph generate_planted_partition(std::size_t num_blocks, std::size_t block_size,
                                        double p_in, double p_out, std::uint64_t seed,
                                        int max_attempts = 100);

/// Two unit-affinity cliques of `clique_size` nodes joined by the single
/// edge (clique_size - 1, clique_size). Labels: 0 for the first clique,
/// 1 for the second.
LabeledGraph make_two_cliques(std::size_t clique_size);

/// Path 0 - 1 - ... - (n-1), unit affinities, both orientations.
Graph make_path(std::size_t n);

/// Random strongly connected graph for test corpora: a random Hamiltonian
/// cycle (both orientations when undirected) plus extra arcs with
/// probability `density`; affinities uniform in [0.5, 2].
Graph random_strongly_connected(std::size_t n, double density, std::uint64_t seed,
                                bool directed = true);

}  // namespace bopgraph
