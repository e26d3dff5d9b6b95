#include "msr/alignment.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace msr {

namespace {

void require_plain_sequence(const Word& seq) {
    if (seq.find(kGapSymbol) != Word::npos)
        throw Error("sequence '" + seq + "' contains the gap symbol '-'");
}

}  // namespace

double alignment_score(const Alignment& alignment, const ScoreScheme& scheme) {
    if (alignment.top.size() != alignment.bottom.size())
        throw Error("alignment rows differ in length");
    double score = 0.0;
    for (std::size_t i = 0; i < alignment.top.size(); ++i) {
        const char a = alignment.top[i];
        const char b = alignment.bottom[i];
        if (a == kGapSymbol && b == kGapSymbol)
            throw Error("alignment column " + std::to_string(i) + " holds two spaces");
        if (a == kGapSymbol || b == kGapSymbol)
            score += scheme.sigma;
        else if (a != b)
            score += scheme.mu;
    }
    return score;
}

AlignmentResult align_dp(const Word& v, const Word& w, const ScoreScheme& scheme) {
    require_plain_sequence(v);
    require_plain_sequence(w);
    const std::size_t n = v.size(), m = w.size();

    // cost[i][j]: minimal score aligning v[0..i) against w[0..j)
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 1; i <= n; ++i) cost[i][0] = cost[i - 1][0] + scheme.sigma;
    for (std::size_t j = 1; j <= m; ++j) cost[0][j] = cost[0][j - 1] + scheme.sigma;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const double diag = cost[i - 1][j - 1] + (v[i - 1] == w[j - 1] ? 0.0 : scheme.mu);
            const double del = cost[i - 1][j] + scheme.sigma;
            const double ins = cost[i][j - 1] + scheme.sigma;
            cost[i][j] = std::min({diag, del, ins});
        }
    }

    // traceback, preferring diagonal, then deletion, then insertion
    Alignment alignment;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 &&
            cost[i][j] == cost[i - 1][j - 1] + (v[i - 1] == w[j - 1] ? 0.0 : scheme.mu)) {
            alignment.top += v[i - 1];
            alignment.bottom += w[j - 1];
            --i;
            --j;
        } else if (i > 0 && cost[i][j] == cost[i - 1][j] + scheme.sigma) {
            alignment.top += v[i - 1];
            alignment.bottom += kGapSymbol;
            --i;
        } else {
            alignment.top += kGapSymbol;
            alignment.bottom += w[j - 1];
            --j;
        }
    }
    std::reverse(alignment.top.begin(), alignment.top.end());
    std::reverse(alignment.bottom.begin(), alignment.bottom.end());
    return {std::move(alignment), cost[n][m]};
}

namespace {

double brute_force_rec(const Word& v, const Word& w, std::size_t i, std::size_t j,
                       const ScoreScheme& scheme) {
    if (i == v.size() && j == w.size()) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    if (i < v.size() && j < w.size()) {
        const double column = v[i] == w[j] ? 0.0 : scheme.mu;
        best = std::min(best, column + brute_force_rec(v, w, i + 1, j + 1, scheme));
    }
    if (i < v.size())
        best = std::min(best, scheme.sigma + brute_force_rec(v, w, i + 1, j, scheme));
    if (j < w.size())
        best = std::min(best, scheme.sigma + brute_force_rec(v, w, i, j + 1, scheme));
    return best;
}

}  // namespace

double brute_force_min_score(const Word& v, const Word& w, const ScoreScheme& scheme) {
    require_plain_sequence(v);
    require_plain_sequence(w);
    if (v.size() + w.size() > 12)
        throw Error("brute-force oracle limited to |v| + |w| <= 12");
    return brute_force_rec(v, w, 0, 0, scheme);
}

Genome edit_genome(const std::set<char>& alphabet, const ScoreScheme& scheme) {
    if (alphabet.empty()) throw Error("edit genome needs a nonempty alphabet");
    if (!(scheme.mu > 0.0))
        throw Error("edit genome needs mu > 0: rule weights must be positive");
    for (char c : alphabet) {
        if (!is_user_word(Word(1, c)) || c == kGapSymbol)
            throw Error(std::string("alphabet symbol '") + c + "' is not usable in words");
    }

    std::vector<Rule> rules;
    for (char a : alphabet)
        for (char b : alphabet)
            if (a != b)
                rules.emplace_back(std::string("sub_") + a + "_" + b, RuleKind::Sub,
                                   std::vector<Word>{Word(1, a), Word(1, b)}, scheme.mu);
    for (char a : alphabet)
        rules.emplace_back(std::string("del_") + a, RuleKind::Sub,
                           std::vector<Word>{Word(1, a), Word{}}, scheme.sigma);
    for (char a : alphabet)
        rules.emplace_back(std::string("ins_") + a, RuleKind::Ins,
                           std::vector<Word>{Word{}, Word(1, a), Word{}}, scheme.sigma);
    return Genome(std::move(rules));
}

}  // namespace msr
