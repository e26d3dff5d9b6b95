#include "msr/statmech.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace msr {

FitnessSpec FitnessSpec::constant(double a) {
    FitnessSpec f;
    f.spec_ = Const{a};
    return f;
}

FitnessSpec FitnessSpec::count(Word target, double c) {
    FitnessSpec f;
    f.spec_ = Count{std::move(target), c};
    return f;
}

FitnessSpec FitnessSpec::distance(MultiSetObject target, double c) {
    FitnessSpec f;
    f.spec_ = Dist{std::move(target), c};
    return f;
}

double FitnessSpec::operator()(const MultiSetObject& v) const {
    return std::visit(
        [&v](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Const>) {
                return s.a;
            } else if constexpr (std::is_same_v<T, Count>) {
                return -s.c * static_cast<double>(v.multiplicity(s.target));
            } else {
                // multiset symmetric difference, counting multiplicities
                std::uint64_t diff = 0;
                auto a = v.entries().begin(), ae = v.entries().end();
                auto b = s.target.entries().begin(), be = s.target.entries().end();
                while (a != ae || b != be) {
                    if (b == be || (a != ae && a->first < b->first)) {
                        diff += a->second;
                        ++a;
                    } else if (a == ae || b->first < a->first) {
                        diff += b->second;
                        ++b;
                    } else {
                        diff += a->second > b->second ? a->second - b->second
                                                      : b->second - a->second;
                        ++a;
                        ++b;
                    }
                }
                return s.c * static_cast<double>(diff);
            }
        },
        spec_);
}

SumMode SumMode::truncated(std::size_t max_walk_len) {
    if (max_walk_len == 0) throw Error("truncated mode requires a positive walk length");
    SumMode m;
    m.kind_ = Kind::Truncated;
    m.max_walk_len_ = max_walk_len;
    return m;
}

SumMode SumMode::converge(double tolerance, std::size_t max_iterations) {
    if (!(tolerance > 0.0)) throw Error("convergence tolerance must be positive");
    if (max_iterations == 0) throw Error("max iterations must be positive");
    SumMode m;
    m.kind_ = Kind::Converge;
    m.tolerance_ = tolerance;
    m.max_iterations_ = max_iterations;
    return m;
}

double path_action(const ReductionGraph& graph, std::span<const std::size_t> edge_indices) {
    double action = 0.0;
    for (std::size_t k = 0; k < edge_indices.size(); ++k) {
        const std::size_t e = edge_indices[k];
        if (e >= graph.edges.size())
            throw Error("edge index " + std::to_string(e) + " out of range");
        if (k > 0 && graph.edges[edge_indices[k - 1]].target != graph.edges[e].source)
            throw Error("edge sequence is not a connected walk");
        action += graph.edges[e].weight;
    }
    return action;
}

WalkSumResult walk_sums(const ReductionGraph& graph, Temperature beta, const SumMode& mode) {
    const std::size_t n = graph.vertices.size();
    std::vector<double> factor(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        factor[e] = std::exp(-beta.beta * graph.edges[e].weight);

    WalkSumResult result;
    result.sums.assign(n, 0.0);
    result.sums[0] = 1.0;  // empty walk

    std::vector<double> cur(n, 0.0), next(n, 0.0);
    cur[0] = 1.0;

    auto step = [&]() {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            if (cur[u] == 0.0) continue;
            for (std::size_t e : graph.out_edges[u])
                next[graph.edges[e].target] += cur[u] * factor[e];
        }
        cur.swap(next);
    };
    auto max_norm = [](const std::vector<double>& x) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    };

    if (mode.is_truncated()) {
        for (std::size_t len = 1; len <= mode.max_walk_len(); ++len) {
            step();
            for (std::size_t v = 0; v < n; ++v) result.sums[v] += cur[v];
        }
        result.steps = mode.max_walk_len();
        return result;
    }

    double prev_norm = max_norm(cur);
    std::size_t nondecreasing = 0;
    for (std::size_t it = 1; it <= mode.max_iterations(); ++it) {
        step();
        for (std::size_t v = 0; v < n; ++v) result.sums[v] += cur[v];
        result.steps = it;
        const double norm = max_norm(cur);
        if (norm < mode.tolerance()) return result;
        nondecreasing = norm >= prev_norm ? nondecreasing + 1 : 0;
        prev_norm = norm;
        if (nondecreasing >= 10) break;
    }
    result.diverged = true;
    return result;
}

PartitionResult partition_function(const ReductionGraph& graph, const FitnessSpec& fitness,
                                   Temperature beta, const SumMode& mode) {
    WalkSumResult ws = walk_sums(graph, beta, mode);

    PartitionResult result;
    result.per_vertex_walk_sum = ws.sums;
    result.mode_report = ws.steps;
    result.diverged = ws.diverged;

    // log-sum-exp over per-vertex terms exp(-beta F(v)) * walk_sum(v)
    std::vector<double> exponents;
    exponents.reserve(graph.vertices.size());
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        if (ws.sums[v] <= 0.0) continue;
        exponents.push_back(-beta.beta * fitness(graph.vertices[v]) + std::log(ws.sums[v]));
    }
    const double shift = *std::max_element(exponents.begin(), exponents.end());
    double acc = 0.0;
    for (double x : exponents) acc += std::exp(x - shift);
    result.log_Z = shift + std::log(acc);
    result.Z = std::exp(result.log_Z);
    return result;
}

MinCostResult min_total_cost(const ReductionGraph& graph, const FitnessSpec& fitness) {
    const std::size_t n = graph.vertices.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    MinCostResult result;
    result.distance.assign(n, inf);
    result.distance[0] = 0.0;

    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0.0, 0});
    std::vector<bool> done(n, false);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) continue;
        done[u] = true;
        for (std::size_t e : graph.out_edges[u]) {
            const GraphEdge& edge = graph.edges[e];
            const double nd = d + edge.weight;
            if (nd < result.distance[edge.target]) {
                result.distance[edge.target] = nd;
                queue.push({nd, edge.target});
            }
        }
    }

    result.best_vertex = 0;
    result.best_value = fitness(graph.vertices[0]) + result.distance[0];
    for (std::size_t v = 1; v < n; ++v) {
        if (result.distance[v] == inf) continue;
        const double value = fitness(graph.vertices[v]) + result.distance[v];
        if (value < result.best_value) {
            result.best_value = value;
            result.best_vertex = static_cast<VertexId>(v);
        }
    }
    return result;
}

std::vector<SweepRow> beta_sweep(const ReductionGraph& graph, const FitnessSpec& fitness,
                                 std::span<const double> beta_grid, const SumMode& mode) {
    std::vector<SweepRow> rows;
    rows.reserve(beta_grid.size());
    for (double beta : beta_grid) {
        PartitionResult r = partition_function(graph, fitness, Temperature(beta), mode);
        rows.push_back({beta, r.Z, r.log_Z, -r.log_Z / beta, r.diverged});
    }
    return rows;
}

}  // namespace msr
