#include <random>

#include "doctest.h"
#include "msr/core.hpp"
#include "test_util.hpp"

using namespace msr;
using testutil::obj;

TEST_CASE("canonicalization sorts, merges and drops degenerate entries") {
    const MultiSetObject sorted = canonicalize({{"b", 1}, {"a", 1}});
    CHECK(sorted.entries() == std::vector<MultiSetObject::Entry>{{"a", 1}, {"b", 1}});

    const MultiSetObject cleaned = canonicalize({{"ab", 2}, {"", 1}, {"c", 0}});
    CHECK(cleaned.entries() == std::vector<MultiSetObject::Entry>{{"ab", 2}});

    const MultiSetObject merged = canonicalize({{"x", 1}, {"y", 2}, {"x", 3}});
    CHECK(merged.multiplicity("x") == 4);
    CHECK(merged.multiplicity("y") == 2);

    // idempotence
    const MultiSetObject again(merged.entries());
    CHECK(again == merged);

    CHECK(canonicalize({}) == MultiSetObject{});
    CHECK(canonicalize({{"", 5}}).empty());
}

TEST_CASE("multiset accessors and display") {
    const MultiSetObject o = obj({{"ab", 2}, {"c", 3}});
    CHECK(o.distinct_words() == 2);
    CHECK(o.total_words() == 5);
    CHECK(o.total_symbols() == 2 * 2 + 1 * 3);
    CHECK(o.max_word_length() == 2);
    CHECK(o.multiplicity("ab") == 2);
    CHECK(o.multiplicity("zz") == 0);
    CHECK(o.contains("c"));
    CHECK(o.display() == "ab^2+c^3");
    CHECK(MultiSetObject{}.display() == "(empty)");
    CHECK(MultiSetObject{}.max_word_length() == 0);
}

TEST_CASE("rule validation rejects malformed genes") {
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a"}, 1.0), Error);              // arity
    CHECK_THROWS_AS(Rule("g", RuleKind::Ins, {"a", "b"}, 1.0), Error);         // INS arity
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a", "b"}, 0.0), Error);         // weight
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a", "b"}, -1.0), Error);
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a", "b"}, 1.0 / 0.0), Error);
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"", "b"}, 1.0), Error);          // SUB pattern
    CHECK_THROWS_AS(Rule("g", RuleKind::Ins, {"a", "", "b"}, 1.0), Error);     // INS payload
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a|b", "c"}, 1.0), Error);       // reserved '|'
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"_", "c"}, 1.0), Error);         // reserved "_"
    CHECK_THROWS_AS(Rule("g", RuleKind::Sub, {"a b", "c"}, 1.0), Error);       // whitespace
    CHECK_THROWS_AS(Rule("", RuleKind::Sub, {"a", "b"}, 1.0), Error);          // name
    CHECK_NOTHROW(Rule("g", RuleKind::Sub, {"a", ""}, 1.0));                   // SUB deletion form
    CHECK_NOTHROW(Rule("g", RuleKind::Ins, {"", "w", ""}, 2.0));               // empty anchors

    CHECK_THROWS_AS(Genome({testutil::sub("g1", "a", "b"), testutil::sub("g1", "b", "c")}),
                    Error);
}

TEST_CASE("cleave splits at the anchor boundary") {
    const auto apps = enumerate_applications(testutil::cleave("g", "a", "b"), obj({{"ab", 1}}));
    REQUIRE(apps.size() == 1);
    CHECK(apps[0].result == obj({{"a", 1}, {"b", 1}}));
    CHECK(apps[0].site.host == "ab");
    CHECK(apps[0].site.pos == 0);

    // two occurrences of the pattern, split position after the first letter
    const auto two = enumerate_applications(testutil::cleave("g", "a", "b"), obj({{"abab", 1}}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].result == obj({{"a", 1}, {"bab", 1}}));
    CHECK(two[1].result == obj({{"aba", 1}, {"b", 1}}));
}

TEST_CASE("sub enumerates every occurrence, overlaps included") {
    const auto apps = enumerate_applications(testutil::sub("g", "a", "c"), obj({{"aa", 1}}));
    REQUIRE(apps.size() == 2);
    CHECK(apps[0].result == obj({{"ca", 1}}));
    CHECK(apps[1].result == obj({{"ac", 1}}));
    CHECK(apps[0].site.pos == 0);
    CHECK(apps[1].site.pos == 1);

    const auto overlapping =
        enumerate_applications(testutil::sub("g", "aa", "b"), obj({{"aaa", 1}}));
    REQUIRE(overlapping.size() == 2);
    CHECK(overlapping[0].result == obj({{"ba", 1}}));
    CHECK(overlapping[1].result == obj({{"ab", 1}}));

    // substitution to the empty word deletes the matched substring
    const auto erase = enumerate_applications(testutil::sub("g", "a", ""), obj({{"a", 1}}));
    REQUIRE(erase.size() == 1);
    CHECK(erase[0].result == MultiSetObject{});

    // no-op application excluded
    CHECK(enumerate_applications(testutil::sub("g", "a", "a"), obj({{"aa", 1}})).empty());
}

TEST_CASE("glue concatenates and respects multiplicity") {
    const auto self = enumerate_applications(testutil::glue("g", "a", "a"), obj({{"a", 2}}));
    REQUIRE(self.size() == 1);
    CHECK(self[0].result == obj({{"aa", 1}}));

    // a single copy cannot glue to itself
    CHECK(enumerate_applications(testutil::glue("g", "a", "a"), obj({{"a", 1}})).empty());

    const auto pair =
        enumerate_applications(testutil::glue("g", "x", "y"), obj({{"ax", 1}, {"yb", 1}}));
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].result == obj({{"axyb", 1}}));
    CHECK(pair[0].site.host == "ax");
    CHECK(pair[0].site.partner == "yb");

    // empty anchors glue any pair of words, in both orders
    const auto any = enumerate_applications(testutil::glue("g", "", ""), obj({{"p", 1}, {"q", 1}}));
    REQUIRE(any.size() == 2);
    CHECK(any[0].result == obj({{"pq", 1}}));
    CHECK(any[1].result == obj({{"qp", 1}}));
}

TEST_CASE("del removes the nonempty infix between the anchors") {
    const auto apps = enumerate_applications(testutil::del("g", "a", "b"), obj({{"axyb", 1}}));
    REQUIRE(apps.size() == 1);
    CHECK(apps[0].result == obj({{"ab", 1}}));
    CHECK(apps[0].site.pos == 0);
    CHECK(apps[0].site.pos2 == 3);

    // anchors adjacent: empty infix, no site
    CHECK(enumerate_applications(testutil::del("g", "a", "b"), obj({{"ab", 1}})).empty());

    // empty anchors delete any nonempty infix
    const auto any = enumerate_applications(testutil::del("g", "", ""), obj({{"ab", 1}}));
    REQUIRE(any.size() == 3);
    CHECK(any[0].result == obj({{"b", 1}}));     // sites in (pos, pos2) order
    CHECK(any[1].result == MultiSetObject{});    // the whole word deleted
    CHECK(any[2].result == obj({{"a", 1}}));
}

TEST_CASE("ins inserts the payload between the anchors") {
    const auto anchored = enumerate_applications(testutil::ins("g", "a", "x", "b"), obj({{"ab", 1}}));
    REQUIRE(anchored.size() == 1);
    CHECK(anchored[0].result == obj({{"axb", 1}}));

    // empty anchors match every boundary position
    const auto apps = enumerate_applications(testutil::ins("g", "", "w", ""), obj({{"ab", 1}}));
    REQUIRE(apps.size() == 3);
    CHECK(apps[0].result == obj({{"wab", 1}}));
    CHECK(apps[1].result == obj({{"awb", 1}}));
    CHECK(apps[2].result == obj({{"abw", 1}}));
}

TEST_CASE("splice consumes the donor word and inserts it between the anchors") {
    const auto apps =
        enumerate_applications(testutil::splice("g", "a", "b"), obj({{"zaby", 1}, {"w", 1}}));
    REQUIRE(apps.size() == 1);  // the host itself has multiplicity 1, so it cannot donate
    CHECK(apps[0].result == obj({{"zawby", 1}}));
    CHECK(apps[0].site.partner == "w");

    // a word with two copies can donate into its own twin
    const auto twin = enumerate_applications(testutil::splice("g", "a", "b"), obj({{"ab", 2}}));
    REQUIRE(twin.size() == 1);
    CHECK(twin[0].result == obj({{"aabb", 1}}));
}

TEST_CASE("dup duplicates the nonempty infix") {
    const auto apps = enumerate_applications(testutil::dup("g", "[", "]"), obj({{"[x]", 1}}));
    REQUIRE(apps.size() == 1);
    CHECK(apps[0].result == obj({{"[xx]", 1}}));

    const auto grow = enumerate_applications(testutil::dup("g", "a", "b"), obj({{"axxb", 1}}));
    REQUIRE(grow.size() == 1);
    CHECK(grow[0].result == obj({{"axxxxb", 1}}));
}

TEST_CASE("apply_at agrees with enumeration and rejects foreign sites") {
    std::mt19937 rng(7);
    const std::string alphabet = "ab";
    for (int trial = 0; trial < 50; ++trial) {
        const Rule rule = testutil::random_rule(rng, "g", alphabet);
        const MultiSetObject object = testutil::random_object(rng, alphabet, 3);
        for (const Application& app : enumerate_applications(rule, object)) {
            CHECK(apply_at(rule, object, app.site) == app.result);
        }
    }

    const Rule rule = testutil::sub("g", "a", "b");
    CHECK_THROWS_AS(apply_at(rule, obj({{"a", 1}}), Site{"zz", 0, 0, {}}), Error);
    CHECK_THROWS_AS(apply_at(rule, obj({{"a", 1}}), Site{"a", 5, 0, {}}), Error);
}

TEST_CASE("enumeration is deterministic") {
    const Rule rule = testutil::sub("g", "a", "b");
    const MultiSetObject object = obj({{"aa", 1}, {"ab", 1}});
    const auto first = enumerate_applications(rule, object);
    const auto second = enumerate_applications(rule, object);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].site == second[i].site);
        CHECK(first[i].result == second[i].result);
    }
    // sites ordered by host word, then position
    REQUIRE(first.size() == 3);
    CHECK(first[0].site.host == "aa");
    CHECK(first[0].site.pos == 0);
    CHECK(first[1].site.pos == 1);
    CHECK(first[2].site.host == "ab");
}

TEST_CASE("results stay canonical and length-preserving substitutions conserve symbols") {
    std::mt19937 rng(11);
    const std::string alphabet = "abc";
    const Rule swap = testutil::sub("g", "ab", "ca");
    for (int trial = 0; trial < 100; ++trial) {
        const MultiSetObject object = testutil::random_object(rng, alphabet, 3);
        for (const Application& app : enumerate_applications(swap, object)) {
            CHECK(app.result.total_symbols() == object.total_symbols());
            for (const auto& [word, mult] : app.result.entries()) {
                CHECK(!word.empty());
                CHECK(mult >= 1);
            }
        }
    }
}

TEST_CASE("cleave then glue restores the original object") {
    std::mt19937 rng(13);
    const Rule cut = testutil::cleave("g", "a", "b");
    const Rule join = testutil::glue("h", "a", "b");
    for (int trial = 0; trial < 100; ++trial) {
        const Word word = testutil::random_word(rng, "ab", 2, 6);
        const MultiSetObject start = obj({{word, 1}});
        for (const Application& app : enumerate_applications(cut, start)) {
            bool restored = false;
            for (const Application& back : enumerate_applications(join, app.result))
                restored = restored || back.result == start;
            CHECK(restored);
        }
    }
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(parse_double("1.5") == 1.5);
    CHECK(parse_double("1e3") == 1000.0);
    CHECK(!parse_double("1.5x"));
    CHECK(!parse_double(""));
    CHECK(!parse_double("inf"));
    CHECK(!parse_double("nan"));

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double value = dist(rng);
        CHECK(parse_double(format_double(value)) == value);
    }
}

TEST_CASE("user word filter") {
    CHECK(is_user_word("abc!~"));
    CHECK(is_user_word(""));
    CHECK(!is_user_word("a|b"));
    CHECK(!is_user_word("a b"));
    CHECK(!is_user_word("a\tb"));
    CHECK(!is_user_word("\x7f"));
}
