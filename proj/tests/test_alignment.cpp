#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "msr/alignment.hpp"
#include "msr/graph.hpp"
#include "msr/statmech.hpp"
#include "test_util.hpp"

using namespace msr;
using testutil::obj;

namespace {

// All words over `alphabet` of length <= max_len, shortest first.
std::vector<Word> words_up_to(const std::string& alphabet, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        level_begin = level_end;
    }
    return out;
}

// Minimal walk action from {v} to {w} in the reduction graph of the
// editing genome. Requires the target to be reachable in |v|+|w| steps.
double bridge_distance(const Word& v, const Word& w, const ScoreScheme& scheme) {
    const Genome genome = edit_genome({'A', 'C', 'G'}, scheme);
    const std::size_t budget = v.size() + w.size();
    const ExplorationBounds bounds{.max_depth = budget,
                                   .max_vertices = 200000,
                                   .max_word_len = budget,
                                   .max_total_symbols = 4096};
    const ReductionGraph graph = build_graph(genome, obj({{v, 1}}), bounds);
    const MultiSetObject target = w.empty() ? MultiSetObject{} : obj({{w, 1}});
    const MinCostResult costs = min_total_cost(graph, FitnessSpec::constant(0.0));
    for (std::size_t i = 0; i < graph.vertices.size(); ++i)
        if (graph.vertices[i] == target) return costs.distance[i];
    FAIL("target object not reachable");
    return -1.0;
}

}  // namespace

TEST_CASE("alignment_score sums column costs") {
    const ScoreScheme scheme(1.0, 2.0);
    CHECK(alignment_score({"AT", "AT"}, scheme) == 0.0);
    CHECK(alignment_score({"AAC-", "GGCA"}, scheme) == 4.0);  // two mismatches, one indel
    CHECK(alignment_score({"A-", "-A"}, scheme) == 4.0);
    CHECK(alignment_score({"", ""}, scheme) == 0.0);
    CHECK(alignment_score({"A-", "-A"}, ScoreScheme(1.0, 1.0)) == 2.0);

    CHECK_THROWS_AS(alignment_score({"A-B", "A-B"}, scheme), Error);   // two-space column
    CHECK_THROWS_AS(alignment_score({"AB", "A"}, scheme), Error);      // ragged rows
    CHECK_THROWS_AS((void)ScoreScheme(-1.0, 1.0), Error);
    CHECK_THROWS_AS((void)ScoreScheme(1.0, 0.0), Error);
    CHECK_NOTHROW((void)ScoreScheme(0.0, 1.0));  // free mismatches are allowed
}

TEST_CASE("align_dp solves small instances") {
    const ScoreScheme unit(1.0, 1.0);
    CHECK(align_dp("AT", "AT", unit).score == 0.0);
    CHECK(align_dp("ATC", "AC", unit).score == 1.0);
    CHECK(align_dp("A", "", ScoreScheme(1.0, 2.0)).score == 2.0);
    CHECK(align_dp("", "", unit).score == 0.0);

    const AlignmentResult r = align_dp("GATTACA", "GCATGCU", unit);
    CHECK(r.score == alignment_score(r.alignment, unit));

    CHECK_THROWS_AS(align_dp("A-C", "AC", unit), Error);  // gap symbol in input
    CHECK_THROWS_AS(align_dp("AC", "-", unit), Error);
}

TEST_CASE("align_dp tie-breaking is pinned") {
    const ScoreScheme unit(1.0, 2.0);

    SUBCASE("deletion beats insertion") {
        const AlignmentResult r = align_dp("AC", "A", unit);
        CHECK(r.alignment.top == "AC");
        CHECK(r.alignment.bottom == "A-");
    }
    SUBCASE("insertion is the leftover direction") {
        const AlignmentResult r = align_dp("A", "AC", unit);
        CHECK(r.alignment.top == "A-");
        CHECK(r.alignment.bottom == "AC");
    }
    SUBCASE("diagonal beats both gaps on equal score") {
        const AlignmentResult r = align_dp("A", "C", ScoreScheme(2.0, 1.0));
        CHECK(r.score == 2.0);
        CHECK(r.alignment.top == "A");
        CHECK(r.alignment.bottom == "C");
    }
    SUBCASE("expensive mismatches are routed around") {
        const AlignmentResult r = align_dp("A", "C", ScoreScheme(5.0, 2.0));
        CHECK(r.score == 4.0);
        CHECK(r.alignment.top == "-A");
        CHECK(r.alignment.bottom == "C-");
    }
}

TEST_CASE("align_dp matches the exhaustive oracle on all short {A,C} pairs") {
    const auto words = words_up_to("AC", 4);
    for (const ScoreScheme& scheme : {ScoreScheme(1.0, 1.0), ScoreScheme(3.0, 2.0)}) {
        for (const Word& v : words) {
            for (const Word& w : words) {
                const AlignmentResult r = align_dp(v, w, scheme);
                CHECK(r.score == brute_force_min_score(v, w, scheme));
                CHECK(r.score == alignment_score(r.alignment, scheme));
            }
        }
    }
}

TEST_CASE("align_dp matches the oracle on random three-letter pairs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mu_dist(0.5, 4.0);
    std::uniform_real_distribution<double> sigma_dist(0.5, 3.0);
    for (int trial = 0; trial < 120; ++trial) {
        const Word v = testutil::random_word(rng, "ACG", 0, 6);
        const Word w = testutil::random_word(rng, "ACG", 0, 6);
        const ScoreScheme scheme(mu_dist(rng), sigma_dist(rng));
        const AlignmentResult r = align_dp(v, w, scheme);
        CHECK(r.score == doctest::Approx(brute_force_min_score(v, w, scheme)).epsilon(1e-12));
        CHECK(r.score == alignment_score(r.alignment, scheme));
        CHECK(align_dp(w, v, scheme).score == r.score);  // score is symmetric
    }
}

TEST_CASE("aligning a word with itself is free") {
    const ScoreScheme unit(1.0, 1.0);
    for (const Word& v : {Word{}, Word{"A"}, Word{"CAGCAG"}}) {
        const AlignmentResult r = align_dp(v, v, unit);
        CHECK(r.score == 0.0);
        CHECK(r.alignment.top == v);
        CHECK(r.alignment.bottom == v);
    }
}

TEST_CASE("brute_force_min_score is guarded") {
    const ScoreScheme unit(1.0, 1.0);
    CHECK_NOTHROW((void)brute_force_min_score("AAAAAA", "AAAAAA", unit));
    CHECK_THROWS_AS((void)brute_force_min_score("AAAAAAA", "AAAAAA", unit), Error);
    CHECK_THROWS_AS((void)brute_force_min_score("A-", "A", unit), Error);
}

TEST_CASE("edit_genome lists substitutions, deletions and insertions") {
    const ScoreScheme scheme(1.5, 2.5);
    const Genome genome = edit_genome({'A', 'C', 'G'}, scheme);
    REQUIRE(genome.size() == 3 * 2 + 3 + 3);

    std::size_t subs = 0, dels = 0, inss = 0;
    for (const Rule& rule : genome.rules()) {
        if (rule.kind() == RuleKind::Ins) {
            ++inss;
            CHECK(rule.weight() == scheme.sigma);
            CHECK(rule.params()[0].empty());
            CHECK(rule.params()[2].empty());
        } else {
            REQUIRE(rule.kind() == RuleKind::Sub);
            if (rule.params()[1].empty()) {
                ++dels;
                CHECK(rule.weight() == scheme.sigma);
            } else {
                ++subs;
                CHECK(rule.weight() == scheme.mu);
            }
        }
    }
    CHECK(subs == 6);
    CHECK(dels == 3);
    CHECK(inss == 3);

    CHECK_THROWS_AS(edit_genome({}, scheme), Error);
    CHECK_THROWS_AS(edit_genome({'A'}, ScoreScheme(0.0, 1.0)), Error);  // mu would be weight 0
    CHECK_THROWS_AS(edit_genome({'-'}, scheme), Error);
    CHECK_THROWS_AS(edit_genome({'|'}, scheme), Error);
}

TEST_CASE("graph distance under the editing genome equals the alignment score") {
    // valid whenever mu <= 2 sigma, so a substitution never pays more
    // than the delete-insert detour it abbreviates
    const ScoreScheme unit(1.0, 1.0);
    CHECK(bridge_distance("AC", "CA", unit) == align_dp("AC", "CA", unit).score);
    CHECK(bridge_distance("A", "AC", unit) == 1.0);
    CHECK(bridge_distance("AC", "A", unit) == 1.0);
    CHECK(bridge_distance("A", "", unit) == 1.0);
    CHECK(bridge_distance("GAT", "CAT", ScoreScheme(1.5, 1.0)) ==
          align_dp("GAT", "CAT", ScoreScheme(1.5, 1.0)).score);

    // the bridge starts from a single-word object, so V must be nonempty
    std::mt19937 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        const Word v = testutil::random_word(rng, "AC", 1, 3);
        const Word w = testutil::random_word(rng, "AC", 0, 3);
        const ScoreScheme scheme(1.0, 0.75);  // mu <= 2 sigma
        const double lhs = bridge_distance(v, w, scheme);
        const double rhs = align_dp(v, w, scheme).score;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}
