#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "msr/core.hpp"
#include "msr/graph.hpp"

namespace msr {

/// Inverse temperature. Must be positive.
struct Temperature {
    double beta;
    explicit Temperature(double b) : beta(b) {
        if (!(b > 0.0)) throw Error("inverse temperature must be positive");
    }
};

/**
 * Fitness function over objects, entering the partition sum as
 * exp(-beta * F(v)). Three variants:
 *   constant(a)        F(v) = a
 *   count(t, c)        F(v) = -c * multiplicity of t in v
 *   distance(T, c)     F(v) = c * multiset symmetric difference |v - T|,
 *                      counting multiplicities
 */
class FitnessSpec {
public:
    static FitnessSpec constant(double a);
    static FitnessSpec count(Word target, double c);
    static FitnessSpec distance(MultiSetObject target, double c);

    double operator()(const MultiSetObject& v) const;

private:
    struct Const { double a; };
    struct Count { Word target; double c; };
    struct Dist { MultiSetObject target; double c; };
    std::variant<Const, Count, Dist> spec_;

    FitnessSpec() = default;
};

/// How to evaluate the (possibly infinite) sum over walks:
///   truncated(L)          exact sum over walks of length <= L
///   converge(tol, maxit)  accumulate power iterations until the increment
///                         max-norm drops below tol
class SumMode {
public:
    static SumMode truncated(std::size_t max_walk_len);
    static SumMode converge(double tolerance, std::size_t max_iterations);

    bool is_truncated() const { return kind_ == Kind::Truncated; }
    std::size_t max_walk_len() const { return max_walk_len_; }
    double tolerance() const { return tolerance_; }
    std::size_t max_iterations() const { return max_iterations_; }

private:
    enum class Kind { Truncated, Converge } kind_ = Kind::Truncated;
    std::size_t max_walk_len_ = 0;
    double tolerance_ = 0.0;
    std::size_t max_iterations_ = 0;

    SumMode() = default;
};

struct WalkSumResult {
    std::vector<double> sums;  // per vertex: sum over walks v0 -> v of exp(-beta * action)
    std::size_t steps = 0;     // walk length reached (truncated) or iterations used (converge)
    bool diverged = false;
};

struct PartitionResult {
    double Z = 0.0;
    double log_Z = 0.0;
    std::vector<double> per_vertex_walk_sum;
    std::size_t mode_report = 0;
    bool diverged = false;
};

struct MinCostResult {
    std::vector<double> distance;  // min action over walks from v0, per vertex
    VertexId best_vertex = 0;
    double best_value = 0.0;       // min over v of F(v) + distance(v)
};

struct SweepRow {
    double beta;
    double Z;
    double log_Z;
    double free_energy;  // -ln(Z) / beta
    bool diverged;
};

/// Sum of edge weights along a walk given as edge indices. The empty
/// walk has action 0. Throws Error when consecutive edges do not chain
/// or an index is out of range.
double path_action(const ReductionGraph& graph, std::span<const std::size_t> edge_indices);

/// Per-vertex sums over walks starting at vertex 0, each walk weighted
/// by exp(-beta * action). The empty walk contributes 1 at vertex 0.
/// In converge mode the diverged flag is set when the increment norm is
/// nondecreasing for 10 consecutive iterations or max_iterations is
/// reached without convergence; partial sums are still returned.
WalkSumResult walk_sums(const ReductionGraph& graph, Temperature beta, const SumMode& mode);

/// Z = sum over vertices of exp(-beta * F(v)) * walk_sums(v), accumulated
/// in the log domain so large exponents do not underflow.
PartitionResult partition_function(const ReductionGraph& graph, const FitnessSpec& fitness,
                                   Temperature beta, const SumMode& mode);

/// Zero-temperature limit: single-source shortest path over the rule
/// weights plus fitness at the end vertex. Ties broken by lowest vertex
/// index.
MinCostResult min_total_cost(const ReductionGraph& graph, const FitnessSpec& fitness);

/// One partition evaluation per grid entry, in grid order.
std::vector<SweepRow> beta_sweep(const ReductionGraph& graph, const FitnessSpec& fitness,
                                 std::span<const double> beta_grid, const SumMode& mode);

}  // namespace msr
