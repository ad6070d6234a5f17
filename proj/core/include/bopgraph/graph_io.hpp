#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bopgraph/errors.hpp"
#include "bopgraph/graph.hpp"

namespace bopgraph {

/// Reads `src<TAB>dst<TAB>weight` lines (0-based ids, positive affinity).
/// Blank lines and lines starting with '#' are skipped. Undirected input sets
/// both orientations. A repeated arc keeps the last weight and emits a
/// warning. The node count is one past the largest id seen.
Graph load_edge_list(std::istream& in, bool directed, const WarningSink& warnings = stderr_warnings());
Graph load_edge_list_file(const std::string& path, bool directed,
                          const WarningSink& warnings = stderr_warnings());

/// Writes the graph in the format read by load_edge_list, with weights
/// printed to full round-trip precision. Undirected graphs list each edge
/// once (src < dst).
void write_edge_list(std::ostream& out, const Graph& graph);

/// Reads `node,class` lines; an optional header is recognised by a
/// non-numeric first field. With `num_classes` unset, it is one past the
/// largest class id. Every class must end up with at least two nodes.
LabelAssignment load_labels(std::istream& in, std::size_t num_nodes,
                            std::optional<int> num_classes = std::nullopt);
LabelAssignment load_labels_file(const std::string& path, std::size_t num_nodes,
                                 std::optional<int> num_classes = std::nullopt);

/// Writes labelled nodes as `node,class` with a header line.
void write_labels(std::ostream& out, const LabelAssignment& labels);

}  // namespace bopgraph
