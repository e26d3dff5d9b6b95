#include "msr/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace msr {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view token) {
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

bool is_user_word(const Word& word) {
    for (unsigned char c : word) {
        if (c < 0x21 || c > 0x7E || c == '|') return false;
    }
    return true;
}

MultiSetObject::MultiSetObject(std::vector<Entry> raw) {
    std::erase_if(raw, [](const Entry& e) { return e.first.empty() || e.second == 0; });
    std::sort(raw.begin(), raw.end());
    for (auto& entry : raw) {
        if (!entries_.empty() && entries_.back().first == entry.first) {
            entries_.back().second += entry.second;
        } else {
            entries_.push_back(std::move(entry));
        }
    }
}

std::uint64_t MultiSetObject::multiplicity(const Word& word) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), word,
                               [](const Entry& e, const Word& w) { return e.first < w; });
    if (it == entries_.end() || it->first != word) return 0;
    return it->second;
}

std::uint64_t MultiSetObject::total_words() const {
    std::uint64_t n = 0;
    for (const auto& [word, mult] : entries_) n += mult;
    return n;
}

std::uint64_t MultiSetObject::total_symbols() const {
    std::uint64_t n = 0;
    for (const auto& [word, mult] : entries_) n += word.size() * mult;
    return n;
}

std::size_t MultiSetObject::max_word_length() const {
    std::size_t n = 0;
    for (const auto& [word, mult] : entries_) n = std::max(n, word.size());
    return n;
}

std::string MultiSetObject::display() const {
    if (entries_.empty()) return "(empty)";
    std::string out;
    for (const auto& [word, mult] : entries_) {
        if (!out.empty()) out += '+';
        out += word;
        out += '^';
        out += std::to_string(mult);
    }
    return out;
}

std::size_t MultiSetObjectHash::operator()(const MultiSetObject& obj) const {
    // FNV-1a over words and multiplicities
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (const auto& [word, mult] : obj.entries()) {
        for (unsigned char c : word) mix(c);
        mix(0xFF);
        std::uint64_t m = mult;
        for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(m >> (8 * i)));
    }
    return static_cast<std::size_t>(h);
}

MultiSetObject canonicalize(std::vector<MultiSetObject::Entry> raw) {
    return MultiSetObject(std::move(raw));
}

const char* rule_kind_name(RuleKind kind) {
    switch (kind) {
        case RuleKind::Glue: return "GLUE";
        case RuleKind::Cleave: return "CLEAVE";
        case RuleKind::Sub: return "SUB";
        case RuleKind::Del: return "DEL";
        case RuleKind::Ins: return "INS";
        case RuleKind::Splice: return "SPLICE";
        case RuleKind::Dup: return "DUP";
    }
    return "?";
}

Rule::Rule(std::string name, RuleKind kind, std::vector<Word> params, double weight)
    : name_(std::move(name)), kind_(kind), params_(std::move(params)), weight_(weight) {
    if (name_.empty()) throw Error("rule name must be nonempty");
    for (unsigned char c : name_) {
        if (c < 0x21 || c > 0x7E) throw Error("rule name '" + name_ + "' contains whitespace or non-printable characters");
    }
    if (!(std::isfinite(weight_) && weight_ > 0.0))
        throw Error("rule '" + name_ + "': weight must be positive and finite");
    const std::size_t arity = kind_ == RuleKind::Ins ? 3 : 2;
    if (params_.size() != arity)
        throw Error("rule '" + name_ + "': " + rule_kind_name(kind_) + " takes " +
                    std::to_string(arity) + " parameter words, got " + std::to_string(params_.size()));
    for (const Word& p : params_) {
        if (!is_user_word(p))
            throw Error("rule '" + name_ + "': parameter '" + p +
                        "' contains whitespace, non-printable characters or '|'");
        if (p == "_")
            throw Error("rule '" + name_ + "': the parameter word \"_\" is reserved for the empty word");
    }
    if (kind_ == RuleKind::Sub && params_[0].empty())
        throw Error("rule '" + name_ + "': SUB pattern must be nonempty");
    if (kind_ == RuleKind::Ins && params_[1].empty())
        throw Error("rule '" + name_ + "': INS payload must be nonempty");
}

Genome::Genome(std::vector<Rule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            if (rules_[i].name() == rules_[j].name())
                throw Error("duplicate rule name '" + rules_[i].name() + "'");
        }
    }
}

std::string Site::display() const {
    std::string out = host;
    out += '@';
    out += std::to_string(pos);
    if (pos2 != 0) {
        out += "..";
        out += std::to_string(pos2);
    }
    if (!partner.empty()) {
        out += '&';
        out += partner;
    }
    return out;
}

namespace {

// All start offsets of `pattern` in `text`, overlaps included. The empty
// pattern occurs at every boundary position 0..|text|.
std::vector<std::size_t> occurrences(const Word& text, const Word& pattern) {
    std::vector<std::size_t> out;
    if (pattern.empty()) {
        out.reserve(text.size() + 1);
        for (std::size_t i = 0; i <= text.size(); ++i) out.push_back(i);
        return out;
    }
    std::size_t pos = text.find(pattern);
    while (pos != Word::npos) {
        out.push_back(pos);
        pos = text.find(pattern, pos + 1);
    }
    return out;
}

bool matches_at(const Word& text, std::size_t pos, const Word& pattern) {
    return pos + pattern.size() <= text.size() &&
           text.compare(pos, pattern.size(), pattern) == 0;
}

using RawEntries = std::vector<MultiSetObject::Entry>;

// Decrements one copy of `word`; fails when no copy is left. Zeroed
// entries are cleaned up by canonicalization.
bool take_one(RawEntries& raw, const Word& word) {
    for (auto& [w, mult] : raw) {
        if (w == word && mult > 0) {
            --mult;
            return true;
        }
    }
    return false;
}

// Validates `site` against (rule, object) and produces the canonical
// result, or nullopt when the site does not match. Unused site fields
// must be at their defaults.
std::optional<MultiSetObject> apply_site(const Rule& rule, const MultiSetObject& object,
                                         const Site& site) {
    const auto& p = rule.params();
    RawEntries raw = object.entries();

    switch (rule.kind()) {
        case RuleKind::Glue: {
            const Word& u = p[0];
            const Word& v = p[1];
            if (site.pos != 0 || site.pos2 != 0) return std::nullopt;
            if (!site.host.ends_with(u) || !site.partner.starts_with(v)) return std::nullopt;
            if (!take_one(raw, site.host) || !take_one(raw, site.partner)) return std::nullopt;
            raw.emplace_back(site.host + site.partner, 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Cleave: {
            const Word pattern = p[0] + p[1];
            if (site.pos2 != 0 || !site.partner.empty()) return std::nullopt;
            if (!matches_at(site.host, site.pos, pattern)) return std::nullopt;
            if (!take_one(raw, site.host)) return std::nullopt;
            const std::size_t split = site.pos + p[0].size();
            raw.emplace_back(site.host.substr(0, split), 1);
            raw.emplace_back(site.host.substr(split), 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Sub: {
            const Word& u = p[0];
            const Word& v = p[1];
            if (site.pos2 != 0 || !site.partner.empty()) return std::nullopt;
            if (!matches_at(site.host, site.pos, u)) return std::nullopt;
            if (!take_one(raw, site.host)) return std::nullopt;
            Word result = site.host.substr(0, site.pos);
            result += v;
            result += site.host.substr(site.pos + u.size());
            raw.emplace_back(std::move(result), 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Del: {
            const Word& u = p[0];
            const Word& v = p[1];
            if (!site.partner.empty()) return std::nullopt;
            if (!matches_at(site.host, site.pos, u)) return std::nullopt;
            if (!matches_at(site.host, site.pos2, v)) return std::nullopt;
            const std::size_t infix_begin = site.pos + u.size();
            if (site.pos2 <= infix_begin) return std::nullopt;  // infix must be nonempty
            if (!take_one(raw, site.host)) return std::nullopt;
            raw.emplace_back(site.host.substr(0, infix_begin) + site.host.substr(site.pos2), 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Ins: {
            const Word& u = p[0];
            const Word& w = p[1];
            const Word& v = p[2];
            if (site.pos2 != 0 || !site.partner.empty()) return std::nullopt;
            if (!matches_at(site.host, site.pos, u + v)) return std::nullopt;
            if (!take_one(raw, site.host)) return std::nullopt;
            const std::size_t gap = site.pos + u.size();
            raw.emplace_back(site.host.substr(0, gap) + w + site.host.substr(gap), 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Splice: {
            const Word& u = p[0];
            const Word& v = p[1];
            if (site.pos2 != 0) return std::nullopt;
            if (!matches_at(site.host, site.pos, u + v)) return std::nullopt;
            if (site.partner.empty()) return std::nullopt;
            if (!take_one(raw, site.host) || !take_one(raw, site.partner)) return std::nullopt;
            const std::size_t gap = site.pos + u.size();
            raw.emplace_back(site.host.substr(0, gap) + site.partner + site.host.substr(gap), 1);
            return MultiSetObject(std::move(raw));
        }
        case RuleKind::Dup: {
            const Word& u = p[0];
            const Word& v = p[1];
            if (!site.partner.empty()) return std::nullopt;
            if (!matches_at(site.host, site.pos, u)) return std::nullopt;
            if (!matches_at(site.host, site.pos2, v)) return std::nullopt;
            const std::size_t infix_begin = site.pos + u.size();
            if (site.pos2 <= infix_begin) return std::nullopt;
            if (!take_one(raw, site.host)) return std::nullopt;
            const Word infix = site.host.substr(infix_begin, site.pos2 - infix_begin);
            raw.emplace_back(site.host.substr(0, site.pos2) + infix + site.host.substr(site.pos2), 1);
            return MultiSetObject(std::move(raw));
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Application> enumerate_applications(const Rule& rule,
                                                const MultiSetObject& object) {
    std::vector<Application> out;
    const auto& entries = object.entries();
    const auto& p = rule.params();

    auto emit = [&](Site site) {
        auto result = apply_site(rule, object, site);
        if (result && *result != object)
            out.push_back({std::move(site), std::move(*result)});
    };

    switch (rule.kind()) {
        case RuleKind::Glue:
            for (const auto& [a, am] : entries) {
                if (!a.ends_with(p[0])) continue;
                for (const auto& [b, bm] : entries) {
                    if (!b.starts_with(p[1])) continue;
                    if (a == b && am < 2) continue;
                    emit(Site{a, 0, 0, b});
                }
            }
            break;
        case RuleKind::Cleave:
        case RuleKind::Ins: {
            const Word pattern = rule.kind() == RuleKind::Ins ? p[0] + p[2] : p[0] + p[1];
            for (const auto& [word, mult] : entries)
                for (std::size_t i : occurrences(word, pattern))
                    emit(Site{word, i, 0, {}});
            break;
        }
        case RuleKind::Sub:
            for (const auto& [word, mult] : entries)
                for (std::size_t i : occurrences(word, p[0]))
                    emit(Site{word, i, 0, {}});
            break;
        case RuleKind::Del:
        case RuleKind::Dup:
            for (const auto& [word, mult] : entries) {
                const auto starts = occurrences(word, p[0]);
                const auto ends = occurrences(word, p[1]);
                for (std::size_t i : starts)
                    for (std::size_t j : ends)
                        if (j > i + p[0].size())  // nonempty infix between the anchors
                            emit(Site{word, i, j, {}});
            }
            break;
        case RuleKind::Splice: {
            const Word pattern = p[0] + p[1];
            for (const auto& [word, mult] : entries) {
                for (std::size_t i : occurrences(word, pattern)) {
                    for (const auto& [donor, dmult] : entries) {
                        if (donor == word && mult < 2) continue;
                        emit(Site{word, i, 0, donor});
                    }
                }
            }
            break;
        }
    }
    return out;
}

MultiSetObject apply_at(const Rule& rule, const MultiSetObject& object, const Site& site) {
    auto result = apply_site(rule, object, site);
    if (!result)
        throw Error("rule '" + rule.name() + "': site " + site.display() +
                    " does not match object " + object.display());
    return std::move(*result);
}

}  // namespace msr
