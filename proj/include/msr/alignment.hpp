#pragma once

#include <set>
#include <string>

#include "msr/core.hpp"

namespace msr {

/// Column scores for global alignment: matches cost 0, mismatches mu,
/// insertion/deletion columns sigma. Lower is better.
struct ScoreScheme {
    double mu;
    double sigma;

    ScoreScheme(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
        if (!(mu >= 0.0)) throw Error("mismatch score must be nonnegative");
        if (!(sigma > 0.0)) throw Error("indel score must be positive");
    }
};

/// Two equally padded rows over the alphabet extended with '-'.
/// Stripping '-' from the top row recovers V, from the bottom row W;
/// no column may hold two spaces.
struct Alignment {
    std::string top;
    std::string bottom;
};

inline constexpr char kGapSymbol = '-';

/// Sum of column scores. Throws Error on rows of unequal length or a
/// column with two spaces.
double alignment_score(const Alignment& alignment, const ScoreScheme& scheme);

struct AlignmentResult {
    Alignment alignment;
    double score;
};

/// Global alignment of minimal score by dynamic programming. Ties are
/// broken deterministically: diagonal, then deletion (gap in the bottom
/// row), then insertion. Empty sequences are allowed.
AlignmentResult align_dp(const Word& v, const Word& w, const ScoreScheme& scheme);

/// Exhaustive minimum over all valid alignments; the independent oracle
/// for align_dp. Guarded: throws Error when |v| + |w| > 12.
double brute_force_min_score(const Word& v, const Word& w, const ScoreScheme& scheme);

/// The editing operations as a genome: SUB(a,b) at weight mu for every
/// ordered pair of distinct symbols, single-symbol deletions SUB(a, "")
/// and insertions INS("", a, "") at weight sigma. Requires mu > 0 since
/// rule weights must be positive. Cleave/glue rules are deliberately
/// absent so a single-word object stays single-word.
Genome edit_genome(const std::set<char>& alphabet, const ScoreScheme& scheme);

}  // namespace msr
