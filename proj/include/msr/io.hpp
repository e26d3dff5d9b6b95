#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "msr/core.hpp"
#include "msr/evolution.hpp"
#include "msr/statmech.hpp"

namespace msr {

/// Input error with 1-based position information. The position is also
/// baked into what().
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Genome file: one rule per line, `<name> <KIND> <p1> <p2> [<p3>] <weight>`
/// with whitespace-separated tokens, `_` for the empty word, `#` comment
/// lines and blank lines ignored. INS takes three parameter words, every
/// other kind two.
Genome parse_genome_file(std::string_view text);

/// Renders a genome in the file format above; parse_genome_file inverts
/// this exactly.
std::string render_genome_file(const Genome& genome);

/// Object file: `<word> <multiplicity>` per line, duplicate words
/// accumulate, `#` comments and blanks ignored, `_` for the empty word
/// (which canonicalization then drops).
MultiSetObject parse_object_file(std::string_view text);

/// CSV with the exact header `beta,Z,free_energy`, one row per sweep entry.
std::string render_sweep_csv(const std::vector<SweepRow>& rows);

/// JSON object with keys Z, log_Z, num_vertices, truncated, diverged.
std::string render_partition_json(const PartitionResult& result, std::size_t num_vertices,
                                  bool truncated);

/// Same keys as render_partition_json plus per_genome, one entry per
/// outer vertex.
std::string render_evolution_json(const EvolutionResult& result, std::size_t num_vertices);

}  // namespace msr
