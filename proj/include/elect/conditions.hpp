#pragma once

// Winning-condition generators. For a rule over m candidates, each generator
// streams linear systems over vote-type count variables (one per linear
// order) such that a count assignment makes the goal true iff it satisfies at
// least one system. Two goals are supported: "p is the tie-broken winner" and
// "the co-winner set is exactly W". Systems may overlap.

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "elect/election.hpp"
#include "elect/gsr.hpp"
#include "elect/linear.hpp"
#include "elect/rule.hpp"
#include "elect/rules.hpp"
#include "elect/signature.hpp"

namespace elect {

using VoteExpr = LinearExpr<Vote>;
using VoteConstraint = LinearConstraint<Vote>;

struct LinearSystem {
    std::vector<VoteConstraint> constraints;
    std::string description;

    template <typename Lookup>
    bool satisfied(Lookup&& count_of) const {
        for (const auto& c : constraints) {
            if (!c.satisfied(count_of)) return false;
        }
        return true;
    }
};

/// Symbolic tallies over the m! vote-type counts.
class VoteSymbols {
   public:
    explicit VoteSymbols(int m) : m_(m), votes_(all_votes(m)) {
        for (const Vote& v : votes_) {
            std::vector<int> pos(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) pos[v.at(i)] = i;
            positions_.push_back(std::move(pos));
        }
    }

    int m() const { return m_; }
    const std::vector<Vote>& votes() const { return votes_; }

    VoteExpr total() const {
        VoteExpr e;
        for (const Vote& v : votes_) e.add(v, 1);
        return e;
    }

    VoteExpr positional(const std::vector<Rational>& lambda, CandidateId c) const {
        return build([&](const std::vector<int>& pos) { return lambda[pos[c]]; });
    }

    /// N(c,d): votes ranking c above d.
    VoteExpr pairwise(CandidateId c, CandidateId d) const {
        return build([&](const std::vector<int>& pos) { return Rational(pos[c] < pos[d] ? 1 : 0); });
    }

    /// Borda score of c in the election restricted to `subset`.
    VoteExpr borda_within(std::uint32_t subset, CandidateId c) const {
        return build([&](const std::vector<int>& pos) {
            long below = 0;
            for (int d = 0; d < m_; ++d) {
                if (d != c && (subset >> d & 1U) && pos[c] < pos[d]) ++below;
            }
            return Rational(below);
        });
    }

    /// Votes whose top choice within `subset` is c.
    VoteExpr top_within(std::uint32_t subset, CandidateId c) const {
        return build([&](const std::vector<int>& pos) {
            for (int d = 0; d < m_; ++d) {
                if (d != c && (subset >> d & 1U) && pos[d] < pos[c]) return Rational(0);
            }
            return Rational(1);
        });
    }

    /// Votes ranking c among the top `level` positions (level 0 gives zero).
    VoteExpr within_top(CandidateId c, int level) const {
        return build([&](const std::vector<int>& pos) { return Rational(pos[c] < level ? 1 : 0); });
    }

    /// Sum over vote types of f(vote)[component] * count.
    VoteExpr component(const GsrDescriptor& desc, int index) const {
        VoteExpr e;
        for (const Vote& v : votes_) e.add(v, score_vector(desc, v)[index]);
        return e;
    }

   private:
    template <typename Coef>
    VoteExpr build(Coef&& coef) const {
        VoteExpr e;
        for (std::size_t i = 0; i < votes_.size(); ++i) e.add(votes_[i], coef(positions_[i]));
        return e;
    }

    int m_;
    std::vector<Vote> votes_;
    std::vector<std::vector<int>> positions_;
};

/// What a system must certify about the tied-winner set.
class WinGoal {
   public:
    static WinGoal winner(CandidateId p, TieBreak tb) { return WinGoal(true, p, {}, std::move(tb)); }
    static WinGoal cowinners(std::vector<CandidateId> set, TieBreak tb) {
        if (set.empty()) throw std::invalid_argument("co-winner goal needs a nonempty set");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        return WinGoal(false, -1, std::move(set), std::move(tb));
    }

    bool is_winner() const { return winner_; }
    CandidateId target() const { return p_; }
    const std::vector<CandidateId>& set() const { return set_; }
    const TieBreak& tiebreak() const { return tb_; }

    bool in_set(CandidateId c) const { return std::binary_search(set_.begin(), set_.end(), c); }

    /// Whether a tied-winner set (sorted) satisfies the goal.
    bool accepts(const std::vector<CandidateId>& tied) const {
        if (tied.empty()) return false;
        return winner_ ? tb_.first_of(tied) == p_ : tied == set_;
    }

    /// Whether c may be dropped before the final stage.
    bool may_eliminate(CandidateId c) const { return winner_ ? c != p_ : !in_set(c); }

   private:
    WinGoal(bool winner, CandidateId p, std::vector<CandidateId> set, TieBreak tb)
        : winner_(winner), p_(p), set_(std::move(set)), tb_(std::move(tb)) {}

    bool winner_;
    CandidateId p_;
    std::vector<CandidateId> set_;
    TieBreak tb_;
};

namespace detail {

using SystemSink = std::function<bool(const LinearSystem&)>;

class ConditionBuilder {
   public:
    ConditionBuilder(const Rule& rule, int m, WinGoal goal, SystemSink sink)
        : rule_(rule), m_(m), goal_(std::move(goal)), sink_(std::move(sink)), sym_(m) {
        if (static_cast<int>(goal_.tiebreak().size()) != m) throw std::invalid_argument("tie-break size mismatch");
        if (goal_.is_winner() && (goal_.target() < 0 || goal_.target() >= m)) {
            throw std::invalid_argument("target candidate out of range");
        }
        for (CandidateId c : goal_.set()) {
            if (c < 0 || c >= m) throw std::invalid_argument("co-winner candidate out of range");
        }
    }

    void run() {
        if (m_ == 1) {
            LinearSystem sys{{}, "single candidate"};
            add_nonempty(sys);
            emit(sys);
            return;
        }
        switch (rule_.family()) {
            case RuleFamily::Positional: positional(); break;
            case RuleFamily::Maximin: maximin(); break;
            case RuleFamily::Copeland: copeland(); break;
            case RuleFamily::Bucklin: bucklin(); break;
            case RuleFamily::RankedPairs: ranked_pairs(); break;
            case RuleFamily::Stv:
            case RuleFamily::Baldwin:
            case RuleFamily::Nanson: {
                std::uint32_t all = (1U << m_) - 1U;
                LinearSystem base{{}, rule_.spec()};
                add_nonempty(base);
                runoff(all, base);
                break;
            }
        }
    }

    void signature_filter() {
        if (!comparison_only(rule_)) throw std::invalid_argument("signature filter needs a comparison-only rule");
        GsrDescriptor desc(rule_, m_);
        std::vector<VoteExpr> comp;
        for (int i = 0; i < desc.k(); ++i) comp.push_back(sym_.component(desc, i));
        for_each_signature(desc.k(), [&](const Signature& sig) {
            if (stopped_) return false;
            auto tied = decide_cowinners(desc, representative(sig), Rational(0), goal_.tiebreak());
            if (!goal_.accepts(tied)) return true;
            LinearSystem sys{{}, "signature " + sig.str()};
            add_nonempty(sys);
            auto blocks = sig.blocks();
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                for (std::size_t j = 1; j < blocks[b].size(); ++j) {
                    sys.constraints.push_back({comp[blocks[b][j]], Relation::Equal, comp[blocks[b][0]]});
                }
                if (b + 1 < blocks.size()) {
                    sys.constraints.push_back({comp[blocks[b + 1][0]], Relation::Greater, comp[blocks[b][0]]});
                }
            }
            emit(sys);
            return true;
        });
    }

   private:
    void emit(const LinearSystem& sys) {
        if (stopped_) return;
        if (!sink_(sys)) stopped_ = true;
    }

    // Co-winner goals exclude the empty profile, which has no co-winners.
    void add_nonempty(LinearSystem& sys) const {
        if (!goal_.is_winner()) sys.constraints.push_back({sym_.total(), Relation::Greater, VoteExpr(0)});
    }

    // Constraints making `scores` maximal exactly on the goal's set, or making
    // p the tie-broken argmax.
    void argmax_constraints(LinearSystem& sys, const std::vector<VoteExpr>& score) const {
        const auto& tb = goal_.tiebreak();
        if (goal_.is_winner()) {
            CandidateId p = goal_.target();
            for (int c = 0; c < m_; ++c) {
                if (c == p) continue;
                sys.constraints.push_back(
                    {score[p], tb.prefers(p, c) ? Relation::GreaterEqual : Relation::Greater, score[c]});
            }
            return;
        }
        CandidateId head = goal_.set().front();
        for (int c = 0; c < m_; ++c) {
            if (c == head) continue;
            sys.constraints.push_back({score[c], goal_.in_set(c) ? Relation::Equal : Relation::Less, score[head]});
        }
    }

    void positional() {
        auto lambda = rule_.scoring_vector(m_);
        std::vector<VoteExpr> score;
        for (int c = 0; c < m_; ++c) score.push_back(sym_.positional(lambda, c));
        LinearSystem sys{{}, rule_.spec()};
        add_nonempty(sys);
        argmax_constraints(sys, score);
        emit(sys);
    }

    void maximin() {
        // opp[c] is an opponent attaining c's minimum pairwise count
        std::vector<int> opp(static_cast<std::size_t>(m_), 0);
        auto valid = [&] {
            for (int c = 0; c < m_; ++c) {
                if (opp[c] == c) return false;
            }
            return true;
        };
        auto bump = [&] {
            for (int c = m_ - 1; c >= 0; --c) {
                if (++opp[c] < m_) return true;
                opp[c] = 0;
            }
            return false;
        };
        do {
            if (!valid()) continue;
            LinearSystem sys{{}, "maximin minimizers"};
            for (int c = 0; c < m_; ++c) sys.description += (c ? "," : " ") + std::to_string(opp[c]);
            add_nonempty(sys);
            std::vector<VoteExpr> low;
            for (int c = 0; c < m_; ++c) {
                VoteExpr mine = sym_.pairwise(c, opp[c]);
                for (int d = 0; d < m_; ++d) {
                    if (d != c && d != opp[c]) sys.constraints.push_back({mine, Relation::LessEqual, sym_.pairwise(c, d)});
                }
                low.push_back(std::move(mine));
            }
            argmax_constraints(sys, low);
            emit(sys);
        } while (!stopped_ && bump());
    }

    struct PairSign {
        CandidateId a, b;  // a < b
        Order sign;        // N(a,b) vs N(b,a)
    };

    // Every sign pattern over unordered pairs, in base-3 counter order.
    template <typename Fn>
    void for_each_pattern(Fn&& fn) {
        std::vector<PairSign> pattern;
        for (int a = 0; a < m_; ++a) {
            for (int b = a + 1; b < m_; ++b) pattern.push_back({a, b, Order::Greater});
        }
        static constexpr Order cycle[3] = {Order::Greater, Order::Equal, Order::Less};
        std::vector<int> digit(pattern.size(), 0);
        while (!stopped_) {
            for (std::size_t i = 0; i < pattern.size(); ++i) pattern[i].sign = cycle[digit[i]];
            fn(pattern);
            std::size_t i = pattern.size();
            while (i > 0 && ++digit[i - 1] == 3) digit[--i] = 0;
            if (i == 0) break;
        }
    }

    void add_pattern(LinearSystem& sys, const std::vector<PairSign>& pattern) const {
        for (const auto& ps : pattern) {
            Relation rel = ps.sign == Order::Greater ? Relation::Greater
                           : ps.sign == Order::Equal ? Relation::Equal
                                                     : Relation::Less;
            sys.constraints.push_back({sym_.pairwise(ps.a, ps.b), rel, sym_.pairwise(ps.b, ps.a)});
        }
    }

    static std::string pattern_str(const std::vector<PairSign>& pattern) {
        std::string s;
        for (const auto& ps : pattern) {
            if (!s.empty()) s += ',';
            s += std::to_string(ps.a) + (ps.sign == Order::Greater ? ">" : ps.sign == Order::Equal ? "=" : "<") +
                 std::to_string(ps.b);
        }
        return s;
    }

    void copeland() {
        const Rational& alpha = rule_.alpha();
        for_each_pattern([&](const std::vector<PairSign>& pattern) {
            std::vector<Rational> score(static_cast<std::size_t>(m_), Rational(0));
            for (const auto& ps : pattern) {
                if (ps.sign == Order::Greater) {
                    score[ps.a] += 1;
                } else if (ps.sign == Order::Less) {
                    score[ps.b] += 1;
                } else {
                    score[ps.a] += alpha;
                    score[ps.b] += alpha;
                }
            }
            if (!goal_.accepts(argmax_set(score))) return;
            LinearSystem sys{{}, "copeland pattern " + pattern_str(pattern)};
            add_nonempty(sys);
            add_pattern(sys, pattern);
            emit(sys);
        });
    }

    void ranked_pairs() {
        for_each_pattern([&](const std::vector<PairSign>& pattern) {
            struct Edge {
                CandidateId from, to;
            };
            std::vector<Edge> edges;
            for (const auto& ps : pattern) {
                if (ps.sign == Order::Greater) edges.push_back({ps.a, ps.b});
                if (ps.sign == Order::Less) edges.push_back({ps.b, ps.a});
            }
            auto try_order = [&](const std::vector<int>& rank, const std::string& what) {
                // rank[e]: position of edge e's weight among the majority pairs, higher locks first
                std::vector<std::vector<Rational>> weight(m_, std::vector<Rational>(m_, Rational(0)));
                for (std::size_t e = 0; e < edges.size(); ++e) weight[edges[e].from][edges[e].to] = rank[e] + 1;
                if (!goal_.accepts(ranked_pairs_sources(weight))) return;
                LinearSystem sys{{}, "rankedpairs pattern " + pattern_str(pattern) + what};
                add_nonempty(sys);
                add_pattern(sys, pattern);
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    for (std::size_t f = e + 1; f < edges.size(); ++f) {
                        Relation rel = rank[e] < rank[f] ? Relation::Less : rank[e] == rank[f] ? Relation::Equal : Relation::Greater;
                        sys.constraints.push_back(
                            {sym_.pairwise(edges[e].from, edges[e].to), rel, sym_.pairwise(edges[f].from, edges[f].to)});
                    }
                }
                emit(sys);
            };
            if (edges.empty()) {
                try_order({}, "");
                return;
            }
            for_each_signature(static_cast<int>(edges.size()), [&](const Signature& sig) {
                if (stopped_) return false;
                std::vector<int> rank;
                for (const auto& r : representative(sig)) rank.push_back(static_cast<int>(r.get_num().get_si()));
                try_order(rank, " weights " + sig.str());
                return true;
            });
        });
    }

    void bucklin() {
        const auto& tb = goal_.tiebreak();
        const VoteExpr n = sym_.total();
        // c holds a majority within the top l positions: 2*a[c,l] > n
        auto twice_within = [&](CandidateId c, int level) { return Rational(2) * sym_.within_top(c, level); };
        for (int level = 1; level <= m_ && !stopped_; ++level) {
            LinearSystem sys{{}, "bucklin level " + std::to_string(level)};
            add_nonempty(sys);
            auto reaches = [&](CandidateId c, int l) { sys.constraints.push_back({twice_within(c, l), Relation::Greater, n}); };
            auto misses = [&](CandidateId c, int l) {
                if (l >= 1) sys.constraints.push_back({twice_within(c, l), Relation::LessEqual, n});
            };
            if (goal_.is_winner()) {
                CandidateId p = goal_.target();
                bool p_first = tb.priority().front() == p;
                // At the last level p's majority is just n >= 1; an empty profile
                // elects the tie-break-first candidate, which is then p.
                if (!(level == m_ && p_first)) reaches(p, level);
                misses(p, level - 1);
                for (int c = 0; c < m_; ++c) {
                    if (c == p) continue;
                    misses(c, tb.prefers(c, p) ? level : level - 1);
                }
            } else {
                for (int c = 0; c < m_; ++c) {
                    if (goal_.in_set(c)) {
                        reaches(c, level);
                        misses(c, level - 1);
                    } else {
                        misses(c, level);
                    }
                }
            }
            emit(sys);
        }
    }

    // Runoff round score of c among `alive`, with the "not all tied" threshold:
    // score * scale compared against the round total.
    VoteExpr round_score(std::uint32_t alive, CandidateId c) const {
        return rule_.family() == RuleFamily::Stv ? sym_.top_within(alive, c) : sym_.borda_within(alive, c);
    }

    // scaled score and threshold such that score < average <=> lhs < rhs
    std::pair<VoteExpr, VoteExpr> below_average(std::uint32_t alive, CandidateId c) const {
        const long size = std::popcount(alive);
        if (rule_.family() == RuleFamily::Stv) {
            return {Rational(size) * round_score(alive, c), sym_.total()};
        }
        return {Rational(2) * round_score(alive, c), Rational(size - 1) * sym_.total()};
    }

    void runoff(std::uint32_t alive, const LinearSystem& sys) {
        if (stopped_) return;
        std::vector<CandidateId> members;
        for (int c = 0; c < m_; ++c) {
            if (alive >> c & 1U) members.push_back(c);
        }
        for (CandidateId c = 0; c < m_; ++c) {
            if (!(alive >> c & 1U) && !goal_.may_eliminate(c)) return;
        }
        // stop here: everyone alive is tied
        if (goal_.accepts(members)) {
            LinearSystem fin = sys;
            fin.description += " final " + members_str(members);
            if (members.size() > 1) {
                for (CandidateId c : members) {
                    auto [lhs, rhs] = below_average(alive, c);
                    fin.constraints.push_back({std::move(lhs), Relation::GreaterEqual, std::move(rhs)});
                }
            }
            emit(fin);
        }
        if (members.size() < 2) return;
        const auto& tb = goal_.tiebreak();
        if (rule_.family() == RuleFamily::Nanson) {
            const std::uint32_t count = 1U << members.size();
            for (std::uint32_t pick = 1; pick + 1 < count && !stopped_; ++pick) {
                std::uint32_t dropped = 0;
                bool allowed = true;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    if (pick >> i & 1U) {
                        dropped |= 1U << members[i];
                        allowed = allowed && goal_.may_eliminate(members[i]);
                    }
                }
                if (!allowed) continue;
                LinearSystem next = sys;
                next.description += " drop" + members_str(bits(dropped));
                for (CandidateId c : members) {
                    auto [lhs, rhs] = below_average(alive, c);
                    next.constraints.push_back(
                        {std::move(lhs), (dropped >> c & 1U) ? Relation::Less : Relation::GreaterEqual, std::move(rhs)});
                }
                runoff(alive & ~dropped, next);
            }
            return;
        }
        for (CandidateId victim : members) {
            if (stopped_) return;
            if (!goal_.may_eliminate(victim)) continue;
            LinearSystem next = sys;
            next.description += " drop {" + std::to_string(victim) + "}";
            VoteExpr mine = round_score(alive, victim);
            for (CandidateId s : members) {
                if (s == victim) continue;
                // tied minima lose the lowest-priority candidate
                next.constraints.push_back(
                    {mine, tb.prefers(s, victim) ? Relation::LessEqual : Relation::Less, round_score(alive, s)});
            }
            auto [lhs, rhs] = below_average(alive, victim);
            next.constraints.push_back({std::move(lhs), Relation::Less, std::move(rhs)});
            runoff(alive & ~(1U << victim), next);
        }
    }

    static std::vector<CandidateId> bits(std::uint32_t mask) {
        std::vector<CandidateId> out;
        for (int c = 0; c < 32; ++c) {
            if (mask >> c & 1U) out.push_back(c);
        }
        return out;
    }

    static std::string members_str(const std::vector<CandidateId>& members) {
        std::string s = "{";
        for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + std::to_string(members[i]);
        return s + "}";
    }

    const Rule& rule_;
    int m_;
    WinGoal goal_;
    SystemSink sink_;
    VoteSymbols sym_;
    bool stopped_ = false;
};

template <typename Fn>
SystemSink make_sink(Fn&& fn) {
    return [&fn](const LinearSystem& sys) {
        if constexpr (std::is_same_v<decltype(fn(sys)), bool>) {
            return fn(sys);
        } else {
            fn(sys);
            return true;
        }
    };
}

}  // namespace detail

/// Streams systems whose union is exactly the set of count vectors electing p.
/// `fn` may return false to stop early.
template <typename Fn>
void for_each_winning_system(const Rule& rule, int m, CandidateId p, const TieBreak& tb, Fn&& fn) {
    detail::ConditionBuilder(rule, m, WinGoal::winner(p, tb), detail::make_sink(fn)).run();
}

/// Streams systems whose union is exactly the set of count vectors whose
/// co-winner set is W (W nonempty; such profiles are nonempty).
template <typename Fn>
void for_each_cowinner_system(const Rule& rule, int m, const std::vector<CandidateId>& winners, const TieBreak& tb,
                              Fn&& fn) {
    detail::ConditionBuilder(rule, m, WinGoal::cowinners(winners, tb), detail::make_sink(fn)).run();
}

/// Generic route for comparison-only rules: one system per weak order on the
/// GSR components whose representative vector satisfies the goal.
template <typename Fn>
void for_each_signature_system(const Rule& rule, int m, const WinGoal& goal, Fn&& fn) {
    detail::ConditionBuilder(rule, m, goal, detail::make_sink(fn)).signature_filter();
}

inline std::vector<LinearSystem> winning_systems(const Rule& rule, int m, CandidateId p, const TieBreak& tb) {
    std::vector<LinearSystem> out;
    for_each_winning_system(rule, m, p, tb, [&](const LinearSystem& s) { out.push_back(s); });
    return out;
}

inline std::vector<LinearSystem> cowinner_systems(const Rule& rule, int m, const std::vector<CandidateId>& winners,
                                                  const TieBreak& tb) {
    std::vector<LinearSystem> out;
    for_each_cowinner_system(rule, m, winners, tb, [&](const LinearSystem& s) { out.push_back(s); });
    return out;
}

}  // namespace elect
