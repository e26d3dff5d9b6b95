#include "msr/graph.hpp"

#include <unordered_map>

namespace msr {

namespace {

bool within_bounds(const MultiSetObject& obj, const ExplorationBounds& bounds) {
    return obj.max_word_length() <= bounds.max_word_len &&
           obj.total_symbols() <= bounds.max_total_symbols;
}

bool has_any_application(const Genome& genome, const MultiSetObject& obj) {
    for (const Rule& rule : genome.rules()) {
        if (!enumerate_applications(rule, obj).empty()) return true;
    }
    return false;
}

}  // namespace

ReductionGraph build_graph(const Genome& genome, const MultiSetObject& v0,
                           const ExplorationBounds& bounds) {
    if (bounds.max_vertices == 0 || bounds.max_word_len == 0 || bounds.max_total_symbols == 0)
        throw Error("exploration bounds must be positive");
    if (!within_bounds(v0, bounds))
        throw Error("start object " + v0.display() + " violates the exploration bounds");

    ReductionGraph graph;
    graph.vertices.push_back(v0);
    graph.depth.push_back(0);

    std::unordered_map<MultiSetObject, VertexId, MultiSetObjectHash> index;
    index.emplace(v0, 0);

    // Vertices are stored in discovery order, which under breadth-first
    // expansion is also nondecreasing depth order, so a plain cursor
    // walks the frontier.
    for (std::size_t cursor = 0; cursor < graph.vertices.size(); ++cursor) {
        const std::size_t d = graph.depth[cursor];
        if (d == bounds.max_depth) continue;
        const MultiSetObject source = graph.vertices[cursor];  // copy: vector may grow
        for (const Rule& rule : genome.rules()) {
            for (auto& app : enumerate_applications(rule, source)) {
                auto it = index.find(app.result);
                VertexId target;
                if (it != index.end()) {
                    target = it->second;
                } else {
                    if (!within_bounds(app.result, bounds)) {
                        graph.truncated = true;
                        continue;
                    }
                    if (graph.vertices.size() >= bounds.max_vertices) {
                        graph.truncated = true;
                        continue;
                    }
                    target = static_cast<VertexId>(graph.vertices.size());
                    index.emplace(app.result, target);
                    graph.vertices.push_back(std::move(app.result));
                    graph.depth.push_back(d + 1);
                }
                graph.edges.push_back({static_cast<VertexId>(cursor), target,
                                       rule.name(), std::move(app.site), rule.weight()});
            }
        }
    }

    // Expansion halted at the depth bound counts as truncation only if
    // some application was actually suppressed there.
    if (!graph.truncated) {
        for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
            if (graph.depth[v] == bounds.max_depth &&
                has_any_application(genome, graph.vertices[v])) {
                graph.truncated = true;
                break;
            }
        }
    }

    graph.out_edges.resize(graph.vertices.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        graph.out_edges[graph.edges[e].source].push_back(e);

    return graph;
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const ReductionGraph& graph) {
    std::string out = "digraph reduction {\n";
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        out += "  v" + std::to_string(v) + " [label=\"" +
               dot_escape(graph.vertices[v].display()) + "\"];\n";
    }
    for (const GraphEdge& e : graph.edges) {
        out += "  v" + std::to_string(e.source) + " -> v" + std::to_string(e.target) +
               " [label=\"" + dot_escape(e.rule_name) + " (K=" + format_double(e.weight) +
               ")\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace msr
