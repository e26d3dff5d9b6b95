#include "msr/io.hpp"

#include <charconv>
#include <unordered_set>

#include "json.hpp"

namespace msr {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return tokens;
}

bool is_comment_or_blank(const std::vector<Token>& tokens) {
    return tokens.empty() || tokens[0].text[0] == '#';
}

// Calls fn(line_number, line) for each line, line numbers 1-based.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        fn(line_no, line);
        if (end == text.size()) break;
        start = end + 1;
    }
}

std::optional<RuleKind> parse_kind(const std::string& token) {
    if (token == "GLUE") return RuleKind::Glue;
    if (token == "CLEAVE") return RuleKind::Cleave;
    if (token == "SUB") return RuleKind::Sub;
    if (token == "DEL") return RuleKind::Del;
    if (token == "INS") return RuleKind::Ins;
    if (token == "SPLICE") return RuleKind::Splice;
    if (token == "DUP") return RuleKind::Dup;
    return std::nullopt;
}

}  // namespace

Genome parse_genome_file(std::string_view text) {
    std::vector<Rule> rules;
    std::unordered_set<std::string> names;

    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        const auto tokens = tokenize(line);
        if (is_comment_or_blank(tokens)) return;

        if (tokens.size() < 2)
            throw ParseError(line_no, tokens[0].column,
                             "expected `<name> <KIND> <params...> <weight>`");
        const auto kind = parse_kind(tokens[1].text);
        if (!kind)
            throw ParseError(line_no, tokens[1].column, "unknown rule kind '" + tokens[1].text +
                                                            "' (expected GLUE, CLEAVE, SUB, DEL, "
                                                            "INS, SPLICE or DUP)");
        const std::size_t arity = *kind == RuleKind::Ins ? 3 : 2;
        if (tokens.size() != arity + 3)
            throw ParseError(line_no, tokens[0].column,
                             tokens[1].text + " takes " + std::to_string(arity) +
                                 " parameter words plus a weight, got " +
                                 std::to_string(tokens.size() - 2) + " tokens after the kind");

        std::vector<Word> params;
        for (std::size_t i = 0; i < arity; ++i) {
            const Token& t = tokens[2 + i];
            params.push_back(t.text == "_" ? Word{} : Word(t.text));
        }
        const Token& weight_token = tokens[2 + arity];
        const auto weight = parse_double(weight_token.text);
        if (!weight || *weight <= 0.0)
            throw ParseError(line_no, weight_token.column,
                             "weight '" + weight_token.text + "' is not a positive decimal");

        if (!names.insert(tokens[0].text).second)
            throw ParseError(line_no, tokens[0].column,
                             "duplicate rule name '" + tokens[0].text + "'");
        try {
            rules.emplace_back(tokens[0].text, *kind, std::move(params), *weight);
        } catch (const Error& e) {
            throw ParseError(line_no, tokens[0].column, e.what());
        }
    });
    return Genome(std::move(rules));
}

std::string render_genome_file(const Genome& genome) {
    std::string out;
    for (const Rule& rule : genome.rules()) {
        out += rule.name();
        out += ' ';
        out += rule_kind_name(rule.kind());
        for (const Word& p : rule.params()) {
            out += ' ';
            out += p.empty() ? "_" : p;
        }
        out += ' ';
        out += format_double(rule.weight());
        out += '\n';
    }
    return out;
}

MultiSetObject parse_object_file(std::string_view text) {
    std::vector<MultiSetObject::Entry> raw;

    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        const auto tokens = tokenize(line);
        if (is_comment_or_blank(tokens)) return;

        if (tokens.size() != 2)
            throw ParseError(line_no, tokens[0].column, "expected `<word> <multiplicity>`");
        const Word word = tokens[0].text == "_" ? Word{} : Word(tokens[0].text);
        if (!is_user_word(word))
            throw ParseError(line_no, tokens[0].column,
                             "word '" + tokens[0].text + "' contains '|' or non-printable characters");

        std::uint64_t mult = 0;
        const std::string& m = tokens[1].text;
        auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), mult);
        if (ec != std::errc{} || ptr != m.data() + m.size() || mult == 0)
            throw ParseError(line_no, tokens[1].column,
                             "multiplicity '" + m + "' is not a positive integer");
        raw.emplace_back(word, mult);
    });
    return MultiSetObject(std::move(raw));
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "beta,Z,free_energy\n";
    for (const SweepRow& row : rows) {
        out += format_double(row.beta);
        out += ',';
        out += format_double(row.Z);
        out += ',';
        out += format_double(row.free_energy);
        out += '\n';
    }
    return out;
}

std::string render_partition_json(const PartitionResult& result, std::size_t num_vertices,
                                  bool truncated) {
    nlohmann::json j;
    j["Z"] = result.Z;
    j["log_Z"] = result.log_Z;
    j["num_vertices"] = num_vertices;
    j["truncated"] = truncated;
    j["diverged"] = result.diverged;
    return j.dump(2) + "\n";
}

std::string render_evolution_json(const EvolutionResult& result, std::size_t num_vertices) {
    nlohmann::json j;
    j["Z"] = result.Z_outer;
    j["log_Z"] = std::log(result.Z_outer);
    j["num_vertices"] = num_vertices;
    j["truncated"] = result.outer_truncated;
    j["diverged"] = result.outer_diverged;
    nlohmann::json rows = nlohmann::json::array();
    for (const GenomeTermReport& r : result.per_genome) {
        nlohmann::json row;
        row["vertex"] = r.vertex;
        row["valid"] = r.valid;
        row["inner_Z"] = r.inner_Z;
        row["outer_walk_sum"] = r.outer_walk_sum;
        row["inner_truncated"] = r.inner_truncated;
        row["inner_diverged"] = r.inner_diverged;
        rows.push_back(std::move(row));
    }
    j["per_genome"] = std::move(rows);
    return j.dump(2) + "\n";
}

}  // namespace msr
