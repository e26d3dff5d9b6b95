#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msr/alignment.hpp"
#include "msr/evolution.hpp"
#include "msr/graph.hpp"
#include "msr/io.hpp"
#include "msr/statmech.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw msr::Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw msr::Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw msr::Error("write to '" + path + "' failed");
}

// Every command builds its whole output and emits it in a single write.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        write_file(out_path, text);
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw msr::Error(what + " '" + text + "' is not a nonnegative integer");
    return value;
}

double parse_finite(const std::string& text, const std::string& what) {
    const auto value = msr::parse_double(text);
    if (!value) throw msr::Error(what + " '" + text + "' is not a finite decimal");
    return *value;
}

double parse_positive(const std::string& text, const std::string& what) {
    const double value = parse_finite(text, what);
    if (!(value > 0.0)) throw msr::Error(what + " '" + text + "' must be positive");
    return value;
}

msr::SumMode parse_mode(const std::string& text) {
    if (text.starts_with("trunc:")) return msr::SumMode::truncated(parse_size(text.substr(6), "walk length"));
    if (text.starts_with("iter:")) {
        const std::string rest = text.substr(5);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw msr::Error("mode iter takes TOL,MAXIT, got '" + text + "'");
        return msr::SumMode::converge(parse_positive(rest.substr(0, comma), "tolerance"),
                                      parse_size(rest.substr(comma + 1), "iteration cap"));
    }
    throw msr::Error("mode must be trunc:L or iter:TOL,MAXIT, got '" + text + "'");
}

msr::FitnessSpec parse_fitness(const std::string& text) {
    if (text.starts_with("const:"))
        return msr::FitnessSpec::constant(parse_finite(text.substr(6), "fitness constant"));
    if (text.starts_with("count:")) {
        const std::string rest = text.substr(6);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw msr::Error("fitness count takes WORD:C, got '" + text + "'");
        const msr::Word word = rest.substr(0, colon);
        if (word == "_" || !msr::is_user_word(word))
            throw msr::Error("count target '" + word + "' is not a usable word");
        return msr::FitnessSpec::count(word, parse_finite(rest.substr(colon + 1), "fitness coefficient"));
    }
    if (text.starts_with("dist:")) {
        const std::string rest = text.substr(5);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw msr::Error("fitness dist takes PATH:C, got '" + text + "'");
        msr::MultiSetObject target = msr::parse_object_file(read_file(rest.substr(0, colon)));
        return msr::FitnessSpec::distance(std::move(target),
                                          parse_finite(rest.substr(colon + 1), "fitness coefficient"));
    }
    throw msr::Error("fitness must be const:A, count:WORD:C or dist:PATH:C, got '" + text + "'");
}

std::vector<double> parse_beta_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        grid.push_back(parse_positive(text.substr(start, comma - start), "beta"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return grid;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

struct CommonOptions {
    std::string format = "text";
    std::string out_path;
    bool strict = false;
};

struct GraphOptions {
    std::string genome_path;
    std::string object_path;
    std::size_t max_depth = msr::ExplorationBounds{}.max_depth;
    std::size_t max_vertices = msr::ExplorationBounds{}.max_vertices;
    std::size_t max_word_len = msr::ExplorationBounds{}.max_word_len;
    std::size_t max_symbols = msr::ExplorationBounds{}.max_total_symbols;

    msr::ExplorationBounds bounds() const {
        return {max_depth, max_vertices, max_word_len, max_symbols};
    }
};

struct SumOptions {
    double beta = 1.0;
    std::string mode = "iter:1e-10,1000";
    std::string fitness = "const:0";
};

void add_common_options(CLI::App* cmd, CommonOptions& o, bool with_strict = true) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
    if (with_strict)
        cmd->add_flag("--strict", o.strict, "exit 2 when a result is truncated or diverged");
}

void add_graph_options(CLI::App* cmd, GraphOptions& o) {
    cmd->add_option("--genome", o.genome_path, "genome file")->required();
    cmd->add_option("--object", o.object_path, "start object file")->required();
    cmd->add_option("--max-depth", o.max_depth, "expansion depth bound");
    cmd->add_option("--max-vertices", o.max_vertices, "vertex count bound");
    cmd->add_option("--max-word-len", o.max_word_len, "word length bound");
    cmd->add_option("--max-symbols", o.max_symbols, "total symbol bound");
}

void add_sum_options(CLI::App* cmd, SumOptions& o, bool with_beta = true) {
    if (with_beta)
        cmd->add_option("--beta", o.beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--mode", o.mode, "trunc:L or iter:TOL,MAXIT")->capture_default_str();
    cmd->add_option("--fitness", o.fitness, "const:A, count:WORD:C or dist:PATH:C")
        ->capture_default_str();
}

msr::ReductionGraph load_graph(const GraphOptions& o) {
    const msr::Genome genome = msr::parse_genome_file(read_file(o.genome_path));
    const msr::MultiSetObject v0 = msr::parse_object_file(read_file(o.object_path));
    return msr::build_graph(genome, v0, o.bounds());
}

int run_graph(const GraphOptions& go, const CommonOptions& co, const std::string& dot_path) {
    const msr::ReductionGraph graph = load_graph(go);
    if (!dot_path.empty()) write_file(dot_path, msr::export_dot(graph));

    std::string out;
    if (co.format == "json") {
        nlohmann::json j;
        j["num_vertices"] = graph.num_vertices();
        j["num_edges"] = graph.num_edges();
        j["truncated"] = graph.truncated;
        out = j.dump(2) + "\n";
    } else {
        out += "num_vertices: " + std::to_string(graph.num_vertices()) + "\n";
        out += "num_edges: " + std::to_string(graph.num_edges()) + "\n";
        out += "truncated: " + std::string(bool_text(graph.truncated)) + "\n";
        for (std::size_t v = 0; v < graph.num_vertices(); ++v)
            out += "v" + std::to_string(v) + " depth=" + std::to_string(graph.depth[v]) + " " +
                   graph.vertices[v].display() + "\n";
        for (const msr::GraphEdge& e : graph.edges)
            out += "v" + std::to_string(e.source) + " -> v" + std::to_string(e.target) + " " +
                   e.rule_name + "[" + e.site.display() + "] K=" + msr::format_double(e.weight) +
                   "\n";
    }
    emit(co.out_path, out);
    return co.strict && graph.truncated ? 2 : 0;
}

int run_z(const GraphOptions& go, const SumOptions& so, const CommonOptions& co) {
    const msr::ReductionGraph graph = load_graph(go);
    const msr::PartitionResult result = msr::partition_function(
        graph, parse_fitness(so.fitness), msr::Temperature(so.beta), parse_mode(so.mode));

    std::string out;
    if (co.format == "json") {
        out = msr::render_partition_json(result, graph.num_vertices(), graph.truncated);
    } else {
        out += "Z: " + msr::format_double(result.Z) + "\n";
        out += "log_Z: " + msr::format_double(result.log_Z) + "\n";
        out += "num_vertices: " + std::to_string(graph.num_vertices()) + "\n";
        out += "truncated: " + std::string(bool_text(graph.truncated)) + "\n";
        out += "diverged: " + std::string(bool_text(result.diverged)) + "\n";
    }
    emit(co.out_path, out);
    return co.strict && (graph.truncated || result.diverged) ? 2 : 0;
}

int run_sweep(const GraphOptions& go, const SumOptions& so, const std::string& betas,
              const CommonOptions& co) {
    const msr::ReductionGraph graph = load_graph(go);
    const std::vector<double> grid = parse_beta_grid(betas);
    const std::vector<msr::SweepRow> rows =
        msr::beta_sweep(graph, parse_fitness(so.fitness), grid, parse_mode(so.mode));

    bool any_diverged = false;
    for (const msr::SweepRow& row : rows) any_diverged |= row.diverged;

    std::string out;
    if (co.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const msr::SweepRow& row : rows) {
            nlohmann::json r;
            r["beta"] = row.beta;
            r["Z"] = row.Z;
            r["log_Z"] = row.log_Z;
            r["free_energy"] = row.free_energy;
            r["diverged"] = row.diverged;
            j.push_back(std::move(r));
        }
        out = j.dump(2) + "\n";
    } else {
        out = msr::render_sweep_csv(rows);
    }
    emit(co.out_path, out);
    return co.strict && (graph.truncated || any_diverged) ? 2 : 0;
}

int run_mincost(const GraphOptions& go, const std::string& fitness, const CommonOptions& co) {
    const msr::ReductionGraph graph = load_graph(go);
    const msr::MinCostResult result = msr::min_total_cost(graph, parse_fitness(fitness));
    const std::string best_object = graph.vertices[result.best_vertex].display();
    const double best_distance = result.distance[result.best_vertex];

    std::string out;
    if (co.format == "json") {
        nlohmann::json j;
        j["best_value"] = result.best_value;
        j["best_vertex"] = result.best_vertex;
        j["best_object"] = best_object;
        j["distance"] = best_distance;
        j["num_vertices"] = graph.num_vertices();
        j["truncated"] = graph.truncated;
        out = j.dump(2) + "\n";
    } else {
        out += "best_value: " + msr::format_double(result.best_value) + "\n";
        out += "best_vertex: " + std::to_string(result.best_vertex) + "\n";
        out += "best_object: " + best_object + "\n";
        out += "distance: " + msr::format_double(best_distance) + "\n";
        out += "truncated: " + std::string(bool_text(graph.truncated)) + "\n";
    }
    emit(co.out_path, out);
    return co.strict && graph.truncated ? 2 : 0;
}

int run_align(const std::string& v, const std::string& w, double mu, double sigma,
              bool brute_check, const CommonOptions& co) {
    if (!msr::is_user_word(v) || !msr::is_user_word(w))
        throw msr::Error("sequences must be printable and must not contain '|'");
    const msr::ScoreScheme scheme(mu, sigma);
    const msr::AlignmentResult result = msr::align_dp(v, w, scheme);
    if (brute_check && msr::brute_force_min_score(v, w, scheme) != result.score)
        throw msr::Error("brute-force check failed: exhaustive minimum differs from the DP score");

    std::string out;
    if (co.format == "json") {
        nlohmann::json j;
        j["top"] = result.alignment.top;
        j["bottom"] = result.alignment.bottom;
        j["score"] = result.score;
        if (brute_check) j["brute_check"] = "ok";
        out = j.dump(2) + "\n";
    } else {
        out += result.alignment.top + "\n";
        out += result.alignment.bottom + "\n";
        out += "score: " + msr::format_double(result.score) + "\n";
        if (brute_check) out += "brute_check: ok\n";
    }
    emit(co.out_path, out);
    return 0;
}

struct InnerBoundOptions {
    std::size_t max_depth = msr::ExplorationBounds{}.max_depth;
    std::size_t max_vertices = msr::ExplorationBounds{}.max_vertices;
    std::size_t max_word_len = msr::ExplorationBounds{}.max_word_len;
    std::size_t max_symbols = msr::ExplorationBounds{}.max_total_symbols;
};

int run_evolve(const std::string& egenome_path, const GraphOptions& outer,
               const InnerBoundOptions& inner, double beta_prime, const SumOptions& so,
               const std::string& inner_mode, const CommonOptions& co) {
    msr::EvolutionConfig config{
        .evolution_genome = msr::parse_genome_file(read_file(egenome_path)),
        .beta_prime = beta_prime,
        .outer_bounds = outer.bounds(),
        .outer_mode = parse_mode(so.mode),
        .inner_v0 = msr::parse_object_file(read_file(outer.object_path)),
        .inner_fitness = parse_fitness(so.fitness),
        .inner_beta = so.beta,
        .inner_bounds = {inner.max_depth, inner.max_vertices, inner.max_word_len,
                         inner.max_symbols},
        .inner_mode = parse_mode(inner_mode.empty() ? so.mode : inner_mode),
    };
    const msr::Genome ancestor = msr::parse_genome_file(read_file(outer.genome_path));
    const msr::EvolutionResult result = msr::evolution_partition_function(ancestor, config);

    bool any_inner_flag = false;
    std::size_t valid = 0;
    for (const msr::GenomeTermReport& r : result.per_genome) {
        any_inner_flag |= r.inner_truncated || r.inner_diverged;
        valid += r.valid ? 1 : 0;
    }

    std::string out;
    if (co.format == "json") {
        out = msr::render_evolution_json(result, result.per_genome.size());
    } else {
        out += "Z: " + msr::format_double(result.Z_outer) + "\n";
        out += "log_Z: " + msr::format_double(std::log(result.Z_outer)) + "\n";
        out += "num_vertices: " + std::to_string(result.per_genome.size()) + "\n";
        out += "valid_genomes: " + std::to_string(valid) + "\n";
        out += "truncated: " + std::string(bool_text(result.outer_truncated)) + "\n";
        out += "diverged: " + std::string(bool_text(result.outer_diverged)) + "\n";
    }
    emit(co.out_path, out);
    const bool flagged = result.outer_truncated || result.outer_diverged || any_inner_flag;
    return co.strict && flagged ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiset string rewriting laboratory"};
    app.require_subcommand(1);

    CommonOptions common;
    GraphOptions graph_opts;
    SumOptions sum_opts;

    CLI::App* graph_cmd = app.add_subcommand("graph", "build a reduction graph");
    add_common_options(graph_cmd, common);
    add_graph_options(graph_cmd, graph_opts);
    std::string dot_path;
    graph_cmd->add_option("--dot", dot_path, "write a DOT rendering to this path");

    CLI::App* z_cmd = app.add_subcommand("z", "partition sum over walks");
    add_common_options(z_cmd, common);
    add_graph_options(z_cmd, graph_opts);
    add_sum_options(z_cmd, sum_opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "partition sums over a beta grid");
    add_common_options(sweep_cmd, common);
    add_graph_options(sweep_cmd, graph_opts);
    add_sum_options(sweep_cmd, sum_opts, /*with_beta=*/false);
    std::string betas;
    sweep_cmd->add_option("--betas", betas, "comma-separated beta grid")->required();

    CLI::App* mincost_cmd = app.add_subcommand("mincost", "zero-temperature minimum total cost");
    add_common_options(mincost_cmd, common);
    add_graph_options(mincost_cmd, graph_opts);
    mincost_cmd->add_option("--fitness", sum_opts.fitness, "const:A, count:WORD:C or dist:PATH:C")
        ->capture_default_str();

    CLI::App* align_cmd = app.add_subcommand("align", "global sequence alignment");
    add_common_options(align_cmd, common, /*with_strict=*/false);
    std::string seq_v, seq_w;
    double mu = 1.0, sigma = 1.0;
    bool brute_check = false;
    align_cmd->add_option("--v", seq_v, "first sequence");
    align_cmd->add_option("--w", seq_w, "second sequence");
    align_cmd->add_option("--mu", mu, "mismatch score")->capture_default_str();
    align_cmd->add_option("--sigma", sigma, "insertion/deletion score")->capture_default_str();
    align_cmd->add_flag("--brute-check", brute_check, "verify against the exhaustive minimum");

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "partition sum over an evolving ensemble");
    add_common_options(evolve_cmd, common);
    add_graph_options(evolve_cmd, graph_opts);
    add_sum_options(evolve_cmd, sum_opts);
    InnerBoundOptions inner_opts;
    std::string egenome_path, inner_mode;
    double beta_prime = 1.0;
    evolve_cmd->add_option("--egenome", egenome_path, "evolution genome file")->required();
    evolve_cmd->add_option("--beta-prime", beta_prime, "outer inverse temperature")
        ->capture_default_str();
    evolve_cmd->add_option("--inner-mode", inner_mode, "inner mode, defaults to --mode");
    evolve_cmd->add_option("--inner-max-depth", inner_opts.max_depth, "inner depth bound");
    evolve_cmd->add_option("--inner-max-vertices", inner_opts.max_vertices, "inner vertex bound");
    evolve_cmd->add_option("--inner-max-word-len", inner_opts.max_word_len,
                           "inner word length bound");
    evolve_cmd->add_option("--inner-max-symbols", inner_opts.max_symbols,
                           "inner total symbol bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*graph_cmd) return run_graph(graph_opts, common, dot_path);
        if (*z_cmd) return run_z(graph_opts, sum_opts, common);
        if (*sweep_cmd) return run_sweep(graph_opts, sum_opts, betas, common);
        if (*mincost_cmd) return run_mincost(graph_opts, sum_opts.fitness, common);
        if (*align_cmd) return run_align(seq_v, seq_w, mu, sigma, brute_check, common);
        if (*evolve_cmd)
            return run_evolve(egenome_path, graph_opts, inner_opts, beta_prime, sum_opts,
                              inner_mode, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
