#pragma once

// Generalized scoring rule view of every supported rule: a per-vote score
// vector f, summed over the profile, and a decision function g on the total.
//
// Component spaces:
//   positional                            one component per candidate
//   Maximin, Copeland, Ranked pairs,
//   Nanson, Baldwin                       ordered pairs (c,d), value N(c,d)
//   Bucklin                               (c,i), 1 if c is in the top i
//   STV                                   ordered pairs, then (c,S) for every
//                                         subset S containing c: 1 if c is
//                                         the top choice within S
// Runoff rules are decided round by round from restricted scores that are
// linear in these components.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "elect/election.hpp"
#include "elect/rational.hpp"
#include "elect/rule.hpp"
#include "elect/rules.hpp"
#include "elect/signature.hpp"

namespace elect {

struct ComponentLabel {
    enum class Kind { Candidate, OrderedPair, Level, TopInSubset };

    Kind kind = Kind::Candidate;
    CandidateId candidate = 0;
    CandidateId other = 0;       // OrderedPair: the second candidate
    int level = 0;               // Level: 1..m
    std::uint32_t subset = 0;    // TopInSubset: bitmask over candidate ids

    std::string str() const {
        switch (kind) {
            case Kind::Candidate: return "c" + std::to_string(candidate);
            case Kind::OrderedPair: return "(c" + std::to_string(candidate) + ",c" + std::to_string(other) + ")";
            case Kind::Level: return "(c" + std::to_string(candidate) + "," + std::to_string(level) + ")";
            case Kind::TopInSubset: {
                std::string s = "top(c" + std::to_string(candidate) + ",{";
                bool first = true;
                for (int c = 0; c < 32; ++c) {
                    if (subset >> c & 1U) {
                        if (!first) s += ',';
                        s += "c" + std::to_string(c);
                        first = false;
                    }
                }
                return s + "})";
            }
        }
        return "?";
    }
};

class GsrDescriptor {
   public:
    GsrDescriptor(Rule rule, int m) : rule_(std::move(rule)), m_(m) {
        if (m < 1) throw std::invalid_argument("descriptor needs m >= 1");
        if (m > 16) throw std::invalid_argument("descriptor supports at most 16 candidates");
        switch (rule_.family()) {
            case RuleFamily::Positional:
                lambda_ = rule_.scoring_vector(m);
                for (int c = 0; c < m; ++c) labels_.push_back({ComponentLabel::Kind::Candidate, c});
                break;
            case RuleFamily::Bucklin:
                for (int c = 0; c < m; ++c) {
                    for (int i = 1; i <= m; ++i) labels_.push_back({ComponentLabel::Kind::Level, c, 0, i});
                }
                break;
            default:
                for (int c = 0; c < m; ++c) {
                    for (int d = 0; d < m; ++d) {
                        if (c != d) labels_.push_back({ComponentLabel::Kind::OrderedPair, c, d});
                    }
                }
                if (rule_.family() == RuleFamily::Stv) {
                    for (int c = 0; c < m; ++c) {
                        for (std::uint32_t rest = 0; rest < (1U << (m - 1)); ++rest) {
                            labels_.push_back({ComponentLabel::Kind::TopInSubset, c, 0, 0, expand(c, rest)});
                        }
                    }
                }
                break;
        }
    }

    const Rule& rule() const { return rule_; }
    int m() const { return m_; }
    int k() const { return static_cast<int>(labels_.size()); }
    const std::vector<ComponentLabel>& labels() const { return labels_; }
    const std::vector<Rational>& scoring_vector() const { return lambda_; }

    int candidate_index(CandidateId c) const { return c; }
    int pair_index(CandidateId c, CandidateId d) const { return c * (m_ - 1) + (d < c ? d : d - 1); }
    int level_index(CandidateId c, int level) const { return c * m_ + (level - 1); }
    int top_index(CandidateId c, std::uint32_t subset) const {
        return m_ * (m_ - 1) + c * (1 << (m_ - 1)) + static_cast<int>(compress(c, subset));
    }

   private:
    // subset without bit c, upper bits shifted down
    static std::uint32_t compress(CandidateId c, std::uint32_t subset) {
        std::uint32_t low = subset & ((1U << c) - 1U);
        std::uint32_t high = subset >> (c + 1);
        return low | (high << c);
    }
    static std::uint32_t expand(CandidateId c, std::uint32_t rest) {
        std::uint32_t low = rest & ((1U << c) - 1U);
        std::uint32_t high = rest >> c;
        return low | (1U << c) | (high << (c + 1));
    }

    Rule rule_;
    int m_;
    std::vector<ComponentLabel> labels_;
    std::vector<Rational> lambda_;
};

inline GsrDescriptor descriptor(const Rule& rule, int m) { return GsrDescriptor(rule, m); }

inline ScoreVector score_vector(const GsrDescriptor& desc, const Vote& vote) {
    const int m = desc.m();
    if (static_cast<int>(vote.size()) != m) throw std::invalid_argument("vote does not match the descriptor");
    ScoreVector f(static_cast<std::size_t>(desc.k()), Rational(0));
    std::vector<int> pos(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pos[vote.at(i)] = i;
    for (std::size_t i = 0; i < desc.labels().size(); ++i) {
        const auto& label = desc.labels()[i];
        switch (label.kind) {
            case ComponentLabel::Kind::Candidate:
                f[i] = desc.scoring_vector()[pos[label.candidate]];
                break;
            case ComponentLabel::Kind::OrderedPair:
                f[i] = pos[label.candidate] < pos[label.other] ? 1 : 0;
                break;
            case ComponentLabel::Kind::Level:
                f[i] = pos[label.candidate] < label.level ? 1 : 0;
                break;
            case ComponentLabel::Kind::TopInSubset: {
                bool top = true;
                for (int d = 0; d < m; ++d) {
                    if (d != label.candidate && (label.subset >> d & 1U) && pos[d] < pos[label.candidate]) top = false;
                }
                f[i] = top ? 1 : 0;
                break;
            }
        }
    }
    return f;
}

inline ScoreVector total_score(const GsrDescriptor& desc, const Profile& profile) {
    ScoreVector total(static_cast<std::size_t>(desc.k()), Rational(0));
    for (const auto& [vote, count] : profile) {
        ScoreVector f = score_vector(desc, vote);
        for (std::size_t i = 0; i < f.size(); ++i) total[i] += f[i] * count;
    }
    return total;
}

namespace detail {

inline std::vector<CandidateId> runoff_from_total(const GsrDescriptor& desc, const ScoreVector& a, const TieBreak& tb) {
    const int m = desc.m();
    const RuleFamily family = desc.rule().family();
    std::vector<CandidateId> alive = all_candidates(m);
    while (true) {
        std::uint32_t mask = 0;
        for (CandidateId c : alive) mask |= 1U << c;
        std::vector<Rational> score;
        for (CandidateId c : alive) {
            if (family == RuleFamily::Stv) {
                score.push_back(a[desc.top_index(c, mask)]);
            } else {
                Rational borda = 0;
                for (CandidateId d : alive) {
                    if (d != c) borda += a[desc.pair_index(c, d)];
                }
                score.push_back(borda);
            }
        }
        if (std::all_of(score.begin(), score.end(), [&](const Rational& s) { return s == score.front(); })) {
            return alive;
        }
        std::vector<CandidateId> next;
        if (family == RuleFamily::Nanson) {
            Rational sum = 0;
            for (const auto& s : score) sum += s;
            const long size = static_cast<long>(alive.size());
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (!(score[i] * size < sum)) next.push_back(alive[i]);
            }
        } else {
            Rational low = *std::min_element(score.begin(), score.end());
            std::vector<CandidateId> lowest;
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (score[i] == low) lowest.push_back(alive[i]);
            }
            CandidateId victim = tb.last_of(lowest);
            for (CandidateId c : alive) {
                if (c != victim) next.push_back(c);
            }
        }
        alive = std::move(next);
    }
}

}  // namespace detail

/// Co-winners (before tie-breaking) from a total score vector. `n` is the
/// number of votes behind `total`; only Bucklin's majority threshold reads it.
inline std::vector<CandidateId> decide_cowinners(const GsrDescriptor& desc, const ScoreVector& total, const Rational& n,
                                                 const TieBreak& tb) {
    if (static_cast<int>(total.size()) != desc.k()) throw std::invalid_argument("score vector length mismatch");
    const int m = desc.m();
    if (m == 1) return {0};
    std::vector<CandidateId> out;
    switch (desc.rule().family()) {
        case RuleFamily::Positional:
            out = detail::argmax_set(total);
            break;
        case RuleFamily::Copeland: {
            std::vector<Rational> score(static_cast<std::size_t>(m), Rational(0));
            for (int c = 0; c < m; ++c) {
                for (int d = 0; d < m; ++d) {
                    if (c == d) continue;
                    const Rational& for_c = total[desc.pair_index(c, d)];
                    const Rational& for_d = total[desc.pair_index(d, c)];
                    if (for_c > for_d) {
                        score[c] += 1;
                    } else if (for_c == for_d) {
                        score[c] += desc.rule().alpha();
                    }
                }
            }
            out = detail::argmax_set(score);
            break;
        }
        case RuleFamily::Maximin: {
            std::vector<Rational> score;
            for (int c = 0; c < m; ++c) {
                Rational low = total[desc.pair_index(c, c == 0 ? 1 : 0)];
                for (int d = 0; d < m; ++d) {
                    if (d != c) low = std::min(low, total[desc.pair_index(c, d)]);
                }
                score.push_back(low);
            }
            out = detail::argmax_set(score);
            break;
        }
        case RuleFamily::Bucklin: {
            std::vector<int> level(static_cast<std::size_t>(m), m + 1);
            for (int c = 0; c < m; ++c) {
                for (int i = 1; i <= m; ++i) {
                    if (2 * total[desc.level_index(c, i)] > n) {
                        level[c] = i;
                        break;
                    }
                }
            }
            int best = *std::min_element(level.begin(), level.end());
            for (int c = 0; c < m; ++c) {
                if (level[c] == best) out.push_back(c);
            }
            break;
        }
        case RuleFamily::RankedPairs: {
            // Margins are 2N(c,d) - n, so N(c,d) orders the majority pairs the same way.
            std::vector<detail::WeightedEdge> edges;
            for (int c = 0; c < m; ++c) {
                for (int d = 0; d < m; ++d) {
                    if (c == d) continue;
                    const Rational& for_c = total[desc.pair_index(c, d)];
                    if (for_c > total[desc.pair_index(d, c)]) edges.push_back({c, d, for_c});
                }
            }
            out = detail::ranked_pairs_sources(m, std::move(edges));
            break;
        }
        case RuleFamily::Stv:
        case RuleFamily::Nanson:
        case RuleFamily::Baldwin:
            out = detail::runoff_from_total(desc, total, tb);
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline CandidateId decide(const GsrDescriptor& desc, const ScoreVector& total, const Rational& n, const TieBreak& tb) {
    return tb.first_of(decide_cowinners(desc, total, n, tb));
}

inline CandidateId decide(const GsrDescriptor& desc, const ScoreVector& total, Count n, const TieBreak& tb) {
    return decide(desc, total, to_rational(n), tb);
}

/// True when g reads nothing but comparisons between components, so the
/// signature of the total determines the winner.
inline bool comparison_only(const Rule& rule) {
    switch (rule.family()) {
        case RuleFamily::Positional:
        case RuleFamily::Copeland:
        case RuleFamily::Maximin:
        case RuleFamily::RankedPairs:
            return true;
        default:
            return false;
    }
}

}  // namespace elect
