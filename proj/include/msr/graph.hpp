#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msr/core.hpp"

namespace msr {

/// Finite safety limits for reduction-graph construction. Duplication
/// rules grow words without bound, so the full graph may be infinite;
/// anything suppressed by a bound is reported via the truncated flag.
struct ExplorationBounds {
    std::size_t max_depth = 8;
    std::size_t max_vertices = 100000;
    std::size_t max_word_len = 64;
    std::size_t max_total_symbols = 4096;
};

using VertexId = std::uint32_t;

struct GraphEdge {
    VertexId source;
    VertexId target;
    std::string rule_name;
    Site site;
    double weight;
};

/**
 * The reduction graph of a genome from a start object: vertices are the
 * distinct reachable objects (index 0 is the start object), edges are
 * single rule applications. Parallel edges are kept, one per application
 * site; self-loops cannot occur because no-op applications are excluded.
 * Immutable once built.
 */
struct ReductionGraph {
    std::vector<MultiSetObject> vertices;
    std::vector<GraphEdge> edges;
    std::vector<std::size_t> depth;               // first-reached depth per vertex
    std::vector<std::vector<std::size_t>> out_edges;  // edge indices per source
    bool truncated = false;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_edges() const { return edges.size(); }
};

/// Breadth-first closure of all rule applications from `v0`, vertices
/// deduplicated by canonical equality, vertex numbering in discovery
/// order. Vertices at max_depth are not expanded; a candidate vertex
/// violating the word-length or symbol bounds is discarded together with
/// its generating edge. The truncated flag is set iff any bound
/// suppressed a vertex, an edge, or further expansion.
/// Throws Error when `v0` itself violates the bounds.
ReductionGraph build_graph(const Genome& genome, const MultiSetObject& v0,
                           const ExplorationBounds& bounds);

/// Deterministic DOT rendering: one node statement per vertex (labelled
/// with the multiset) and one edge statement per edge (labelled
/// `rulename (K=weight)`).
std::string export_dot(const ReductionGraph& graph);

}  // namespace msr
