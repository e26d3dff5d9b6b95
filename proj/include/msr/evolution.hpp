#pragma once

#include <optional>
#include <vector>

#include "msr/core.hpp"
#include "msr/graph.hpp"
#include "msr/statmech.hpp"

namespace msr {

/**
 * Fixed bijective codec between genomes and objects. Each gene becomes
 * one word
 *
 *     <KINDLETTER>|<p1>|<p2>[|<p3>]|<weight>
 *
 * with kind letters G C S D I P U for GLUE CLEAVE SUB DEL INS SPLICE DUP,
 * `_` for empty parameter words and the weight in shortest round-trip
 * decimal form. Rule names are not encoded; decoding regenerates them as
 * g1, g2, ... in canonical word order.
 */
MultiSetObject encode_genome(const Genome& genome);

/// Decodes an object as a genome. Every word must parse: known kind
/// letter, exact field count, parameter words valid for the kind,
/// positive finite weight. A word with multiplicity m yields m identical
/// genes. Returns nullopt when any word is unparseable; invalidity is a
/// value, not a failure.
std::optional<Genome> decode_genome(const MultiSetObject& object);

struct EvolutionConfig {
    Genome evolution_genome;      // rules acting on encoded genomes
    double beta_prime;            // inverse temperature of the outer sum
    ExplorationBounds outer_bounds;
    SumMode outer_mode;
    MultiSetObject inner_v0;      // start object of every inner graph
    FitnessSpec inner_fitness;
    double inner_beta;
    ExplorationBounds inner_bounds;
    SumMode inner_mode;
};

struct GenomeTermReport {
    VertexId vertex;
    bool valid;                // decode status of the genome at this vertex
    double inner_Z;            // 0 when invalid
    double outer_walk_sum;
    bool inner_truncated = false;
    bool inner_diverged = false;
};

struct EvolutionResult {
    double Z_outer = 0.0;
    std::vector<GenomeTermReport> per_genome;  // one row per outer vertex, index order
    bool outer_truncated = false;
    bool outer_diverged = false;
};

/// Two-level partition sum over an evolving ensemble of genomes: builds
/// the reduction graph of the evolution genome over encode(G0), weighs
/// each reachable genome by its outer walk sum at beta_prime, and
/// multiplies in the inner partition sum of the decoded genome run from
/// inner_v0. Unparseable genomes stay in the graph and contribute 0.
EvolutionResult evolution_partition_function(const Genome& ancestor, const EvolutionConfig& config);

}  // namespace msr
