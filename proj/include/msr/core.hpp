#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msr {

/// A molecule: a finite string over the printable-ASCII alphabet.
/// The empty word exists as a value but is never stored in a canonical
/// MultiSetObject.
using Word = std::string;

/// Thrown on violated invariants and malformed inputs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest decimal representation of `value` that round-trips through
/// parse_double. Used by the genome codec and all text outputs.
std::string format_double(double value);

/// Parses a decimal number, requiring the whole token to be consumed.
/// Returns nullopt on trailing garbage, empty input, inf or nan.
std::optional<double> parse_double(std::string_view token);

/// True iff every character may appear in a user-supplied word:
/// printable ASCII, no whitespace, no '|' (reserved by the genome codec).
bool is_user_word(const Word& word);

/**
 * A finite multiset of nonempty words, kept in canonical form: entries
 * sorted lexicographically by word, multiplicities >= 1, no duplicates.
 * Two objects are equal iff their canonical entry lists are identical.
 * Immutable after construction.
 */
class MultiSetObject {
public:
    using Entry = std::pair<Word, std::uint64_t>;

    MultiSetObject() = default;

    /// Canonicalizes a raw word/multiplicity list: drops empty words and
    /// zero multiplicities, merges duplicates, sorts.
    explicit MultiSetObject(std::vector<Entry> raw);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t distinct_words() const { return entries_.size(); }

    std::uint64_t multiplicity(const Word& word) const;
    bool contains(const Word& word) const { return multiplicity(word) > 0; }

    /// Sum of multiplicities.
    std::uint64_t total_words() const;
    /// Sum of word length times multiplicity.
    std::uint64_t total_symbols() const;
    /// Length of the longest word, 0 for the empty object.
    std::size_t max_word_length() const;

    /// Renders as `word^mult` terms joined by `+`; "(empty)" for the
    /// empty object.
    std::string display() const;

    bool operator==(const MultiSetObject&) const = default;
    auto operator<=>(const MultiSetObject&) const = default;

private:
    std::vector<Entry> entries_;
};

struct MultiSetObjectHash {
    std::size_t operator()(const MultiSetObject& obj) const;
};

/// Spec-level entry point; identical to the canonicalizing constructor.
MultiSetObject canonicalize(std::vector<MultiSetObject::Entry> raw);

/// The seven rewriting schemas.
enum class RuleKind { Glue, Cleave, Sub, Del, Ins, Splice, Dup };

const char* rule_kind_name(RuleKind kind);

/**
 * One gene: a named, multivalued rewriting schema with a positive weight.
 *
 * Parameter words (u, v; INS additionally the payload w between them):
 *   GLUE(u,v)    word A with suffix u plus word B with prefix v -> A.B
 *   CLEAVE(u,v)  occurrence of uv inside a word -> split between u and v
 *   SUB(u,v)     occurrence of u -> v (u nonempty; v may be empty)
 *   DEL(u,v)     u at i, v at j >= i+|u| in one word -> nonempty infix
 *                between them removed
 *   INS(u,w,v)   occurrence of uv -> u w v (w nonempty; u, v may be empty)
 *   SPLICE(u,v)  occurrence of uv plus a whole separate word D -> u D v,
 *                donor D consumed
 *   DUP(u,v)     u at i, v at j >= i+|u| with nonempty infix w -> u w w v
 */
class Rule {
public:
    /// Validates arity, weight and parameter words; throws Error on
    /// violation. Parameter words must be user words and must not be
    /// the literal "_" (which the codec reserves for the empty word).
    Rule(std::string name, RuleKind kind, std::vector<Word> params, double weight);

    const std::string& name() const { return name_; }
    RuleKind kind() const { return kind_; }
    const std::vector<Word>& params() const { return params_; }
    double weight() const { return weight_; }

    bool operator==(const Rule&) const = default;

private:
    std::string name_;
    RuleKind kind_;
    std::vector<Word> params_;
    double weight_;
};

/// An ordered list of rules with unique names. May be empty.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }
    std::size_t size() const { return rules_.size(); }

    bool operator==(const Genome&) const = default;

private:
    std::vector<Rule> rules_;
};

/**
 * Application locus of a rule within an object. Kind-dependent use:
 *   GLUE         host = suffix word A, partner = prefix word B
 *   CLEAVE/SUB/INS  host word and anchor offset pos
 *   DEL/DUP      host word, first anchor at pos, second anchor at pos2
 *   SPLICE       host word, anchor offset pos, partner = donor word
 * A Site is only meaningful for the (rule, object) pair that produced it.
 */
struct Site {
    Word host;
    std::size_t pos = 0;
    std::size_t pos2 = 0;
    Word partner;  // empty when unused; real partners are never empty

    std::string display() const;

    bool operator==(const Site&) const = default;
    auto operator<=>(const Site&) const = default;
};

struct Application {
    Site site;
    MultiSetObject result;
};

/// All distinct single-step results of applying `rule` to `object`,
/// ordered by site. No-op applications (result equal to the input) are
/// excluded; an empty list means the rule is not applicable. Sites are
/// enumerated per distinct word, not per copy.
std::vector<Application> enumerate_applications(const Rule& rule,
                                                const MultiSetObject& object);

/// Applies `rule` at a specific site. Throws Error when the site does
/// not match the object. Agrees with the corresponding entry of
/// enumerate_applications.
MultiSetObject apply_at(const Rule& rule, const MultiSetObject& object,
                        const Site& site);

}  // namespace msr
