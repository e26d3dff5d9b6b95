#include "msr/evolution.hpp"

namespace msr {

namespace {

char kind_letter(RuleKind kind) {
    switch (kind) {
        case RuleKind::Glue: return 'G';
        case RuleKind::Cleave: return 'C';
        case RuleKind::Sub: return 'S';
        case RuleKind::Del: return 'D';
        case RuleKind::Ins: return 'I';
        case RuleKind::Splice: return 'P';
        case RuleKind::Dup: return 'U';
    }
    return '?';
}

std::optional<RuleKind> kind_from_letter(const std::string& field) {
    if (field.size() != 1) return std::nullopt;
    switch (field[0]) {
        case 'G': return RuleKind::Glue;
        case 'C': return RuleKind::Cleave;
        case 'S': return RuleKind::Sub;
        case 'D': return RuleKind::Del;
        case 'I': return RuleKind::Ins;
        case 'P': return RuleKind::Splice;
        case 'U': return RuleKind::Dup;
        default: return std::nullopt;
    }
}

std::vector<std::string> split_fields(const Word& word) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t bar = word.find('|', start);
        if (bar == Word::npos) {
            fields.push_back(word.substr(start));
            return fields;
        }
        fields.push_back(word.substr(start, bar - start));
        start = bar + 1;
    }
}

// One gene per word; decoding parses strictly, so only the canonical
// encoding is accepted (`_` for the empty word, no empty fields).
std::optional<Rule> decode_gene(const Word& word, const std::string& name) {
    const auto fields = split_fields(word);
    if (fields.size() < 2) return std::nullopt;
    const auto kind = kind_from_letter(fields[0]);
    if (!kind) return std::nullopt;
    const std::size_t arity = *kind == RuleKind::Ins ? 3 : 2;
    if (fields.size() != arity + 2) return std::nullopt;

    std::vector<Word> params;
    for (std::size_t i = 1; i <= arity; ++i) {
        if (fields[i].empty()) return std::nullopt;
        params.push_back(fields[i] == "_" ? Word{} : fields[i]);
    }
    const auto weight = parse_double(fields[arity + 1]);
    if (!weight || *weight <= 0.0) return std::nullopt;
    try {
        return Rule(name, *kind, std::move(params), *weight);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

MultiSetObject encode_genome(const Genome& genome) {
    std::vector<MultiSetObject::Entry> raw;
    raw.reserve(genome.size());
    for (const Rule& rule : genome.rules()) {
        Word word(1, kind_letter(rule.kind()));
        for (const Word& p : rule.params()) {
            word += '|';
            word += p.empty() ? "_" : p;
        }
        word += '|';
        word += format_double(rule.weight());
        raw.emplace_back(std::move(word), 1);
    }
    return MultiSetObject(std::move(raw));
}

std::optional<Genome> decode_genome(const MultiSetObject& object) {
    std::vector<Rule> rules;
    std::size_t next_id = 1;
    for (const auto& [word, mult] : object.entries()) {
        for (std::uint64_t copy = 0; copy < mult; ++copy) {
            auto rule = decode_gene(word, "g" + std::to_string(next_id));
            if (!rule) return std::nullopt;
            rules.push_back(std::move(*rule));
            ++next_id;
        }
    }
    return Genome(std::move(rules));
}

EvolutionResult evolution_partition_function(const Genome& ancestor,
                                             const EvolutionConfig& config) {
    const Temperature beta_prime(config.beta_prime);
    const Temperature beta(config.inner_beta);

    const ReductionGraph outer =
        build_graph(config.evolution_genome, encode_genome(ancestor), config.outer_bounds);
    const WalkSumResult outer_sums = walk_sums(outer, beta_prime, config.outer_mode);

    EvolutionResult result;
    result.outer_truncated = outer.truncated;
    result.outer_diverged = outer_sums.diverged;
    result.per_genome.reserve(outer.vertices.size());

    for (std::size_t v = 0; v < outer.vertices.size(); ++v) {
        GenomeTermReport report;
        report.vertex = static_cast<VertexId>(v);
        report.outer_walk_sum = outer_sums.sums[v];

        const auto genome = decode_genome(outer.vertices[v]);
        report.valid = genome.has_value();
        if (genome) {
            const ReductionGraph inner =
                build_graph(*genome, config.inner_v0, config.inner_bounds);
            const PartitionResult inner_z =
                partition_function(inner, config.inner_fitness, beta, config.inner_mode);
            report.inner_Z = inner_z.Z;
            report.inner_truncated = inner.truncated;
            report.inner_diverged = inner_z.diverged;
        } else {
            report.inner_Z = 0.0;
        }

        result.Z_outer += report.inner_Z * report.outer_walk_sum;
        result.per_genome.push_back(std::move(report));
    }
    return result;
}

}  // namespace msr
