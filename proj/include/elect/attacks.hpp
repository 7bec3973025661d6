#pragma once

// Attack solvers. Vote attacks go through winning-condition systems and
// integer feasibility over vote-type count variables; candidate control is
// decided by enumerating the (few) candidate subsets directly.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "elect/attack.hpp"
#include "elect/conditions.hpp"
#include "elect/ilp.hpp"
#include "elect/outcomes.hpp"

namespace elect {

namespace detail {

/// Count of each vote type as an expression over ILP variables; types not
/// listed count zero.
using CountMap = std::map<Vote, IlpExpr>;

inline IlpConstraint instantiate(const VoteConstraint& c, const CountMap& counts) {
    return c.substitute<std::size_t>([&](const Vote& v) {
        auto it = counts.find(v);
        return it == counts.end() ? IlpExpr() : it->second;
    });
}

inline IlpInstance with_systems(IlpInstance inst, std::initializer_list<std::pair<const LinearSystem*, const CountMap*>> parts) {
    for (const auto& [sys, counts] : parts) {
        for (const auto& c : sys->constraints) inst.add_constraint(instantiate(c, *counts));
    }
    return inst;
}

inline IlpExpr sum_of(const std::vector<std::size_t>& vars) {
    IlpExpr e;
    for (std::size_t v : vars) e.add(v, 1);
    return e;
}

/// First system (in generator order) that is feasible together with `base`.
inline std::optional<Witness> first_winning(const Rule& rule, const Election& e, CandidateId p, const IlpInstance& base,
                                            const CountMap& counts) {
    std::optional<Witness> found;
    for_each_winning_system(rule, e.m(), p, e.tiebreak(), [&](const LinearSystem& sys) {
        found = solve_feasibility(with_systems(base, {{&sys, &counts}}));
        return !found.has_value();
    });
    return found;
}

inline AttackResult yes(AttackWitness w, CandidateId winner) { return {Decision::Yes, std::move(w), winner}; }

inline std::vector<std::uint32_t> masks_by_size(int m) {
    std::vector<std::uint32_t> out;
    for (int size = 0; size <= m; ++size) {
        for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
            if (std::popcount(mask) == size) out.push_back(mask);
        }
    }
    // within one size, lexicographic order of the member lists
    auto members = [](std::uint32_t mask) {
        std::vector<int> v;
        for (int c = 0; c < 32; ++c) {
            if (mask >> c & 1U) v.push_back(c);
        }
        return v;
    };
    std::stable_sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        return members(a) < members(b);
    });
    return out;
}

inline std::vector<CandidateId> members_of(std::uint32_t mask, const std::vector<CandidateId>& pool) {
    std::vector<CandidateId> out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (mask >> i & 1U) out.push_back(pool[i]);
    }
    return out;
}

}  // namespace detail

inline AttackResult solve_manipulation(const Rule& rule, const Election& e, CandidateId p, Count t) {
    IlpInstance base;
    detail::CountMap counts;
    std::vector<std::size_t> vars;
    for (const Vote& v : all_votes(e.m())) {
        std::size_t x = base.add_variable(t);
        vars.push_back(x);
        counts[v] = IlpExpr(to_rational(e.profile().count(v))) + IlpExpr::variable(x);
    }
    base.add_constraint(detail::sum_of(vars), Relation::Equal, IlpExpr(to_rational(t)));
    auto w = detail::first_winning(rule, e, p, base, counts);
    if (!w) return {};
    AttackWitness out;
    std::size_t i = 0;
    for (const Vote& v : all_votes(e.m())) out.cast.add(v, w->value(vars[i++]));
    return detail::yes(std::move(out), p);
}

inline AttackResult solve_bribery(const Rule& rule, const Election& e, CandidateId p, Count budget) {
    IlpInstance base;
    detail::CountMap counts;
    const auto votes = all_votes(e.m());
    for (const Vote& v : votes) counts[v] = IlpExpr(to_rational(e.profile().count(v)));
    struct Move {
        const Vote* from;
        const Vote* to;
        std::size_t var;
    };
    std::vector<Move> moves;
    std::vector<std::size_t> all;
    for (const auto& [from, have] : e.profile()) {
        std::vector<std::size_t> out;
        for (const Vote& to : votes) {
            if (to == from) continue;
            std::size_t y = base.add_variable(std::min(have, budget));
            moves.push_back({&from, &to, y});
            out.push_back(y);
            counts[from] -= IlpExpr::variable(y);
            counts[to] += IlpExpr::variable(y);
        }
        all.insert(all.end(), out.begin(), out.end());
        base.add_constraint(detail::sum_of(out), Relation::LessEqual, IlpExpr(to_rational(have)));
    }
    base.add_constraint(detail::sum_of(all), Relation::LessEqual, IlpExpr(to_rational(budget)));
    auto w = detail::first_winning(rule, e, p, base, counts);
    if (!w) return {};
    AttackWitness out;
    for (const auto& mv : moves) {
        if (Count c = w->value(mv.var); c > 0) out.bribes.push_back({*mv.from, *mv.to, c});
    }
    return detail::yes(std::move(out), p);
}

inline AttackResult solve_control_add_votes(const Rule& rule, const Election& e, CandidateId p, const Profile& unregistered,
                                            Count budget) {
    for (const auto& [vote, count] : unregistered) {
        if (vote.size() != static_cast<std::size_t>(e.m())) {
            throw std::invalid_argument("unregistered votes use a different candidate set");
        }
    }
    IlpInstance base;
    detail::CountMap counts;
    for (const Vote& v : all_votes(e.m())) counts[v] = IlpExpr(to_rational(e.profile().count(v)));
    std::vector<std::pair<const Vote*, std::size_t>> vars;
    std::vector<std::size_t> ids;
    for (const auto& [vote, count] : unregistered) {
        std::size_t x = base.add_variable(std::min(count, budget));
        vars.emplace_back(&vote, x);
        ids.push_back(x);
        counts[vote] += IlpExpr::variable(x);
    }
    base.add_constraint(detail::sum_of(ids), Relation::LessEqual, IlpExpr(to_rational(budget)));
    auto w = detail::first_winning(rule, e, p, base, counts);
    if (!w) return {};
    AttackWitness out;
    for (const auto& [vote, x] : vars) {
        if (Count c = w->value(x); c > 0) out.added.add(*vote, c);
    }
    return detail::yes(std::move(out), p);
}

inline AttackResult solve_control_delete_votes(const Rule& rule, const Election& e, CandidateId p, Count budget) {
    IlpInstance base;
    detail::CountMap counts;
    std::vector<std::pair<const Vote*, std::size_t>> vars;
    std::vector<std::size_t> ids;
    for (const auto& [vote, count] : e.profile()) {
        std::size_t x = base.add_variable(std::min(count, budget));
        vars.emplace_back(&vote, x);
        ids.push_back(x);
        counts[vote] = IlpExpr(to_rational(count)) - IlpExpr::variable(x);
    }
    base.add_constraint(detail::sum_of(ids), Relation::LessEqual, IlpExpr(to_rational(budget)));
    auto w = detail::first_winning(rule, e, p, base, counts);
    if (!w) return {};
    AttackWitness out;
    for (const auto& [vote, x] : vars) {
        if (Count c = w->value(x); c > 0) out.deleted.add(*vote, c);
    }
    return detail::yes(std::move(out), p);
}

namespace detail {

/// Vote partition search. x_v votes of type v go to the first part, the rest
/// to the second. A guess fixes the co-winner set of each part; p is taken
/// from the first part (the parts can always be swapped).
class PartitionSearch {
   public:
    PartitionSearch(const Rule& rule, const Election& e, CandidateId p, TieModel model)
        : rule_(rule), e_(e), p_(p), model_(model), m_(e.m()) {
        for (const auto& [vote, count] : e.profile()) {
            std::size_t x = base_.add_variable(count);
            vars_.emplace_back(&vote, x);
            first_[vote] = IlpExpr::variable(x);
            second_[vote] = IlpExpr(to_rational(count)) - IlpExpr::variable(x);
        }
    }

    AttackResult run() {
        const std::uint32_t self = 1U << p_;
        if (model_ == TieModel::TiesEliminate) {
            // rival p' (possibly p itself), then no rival from the second part
            for (int rival = 0; rival < m_; ++rival) {
                if (auto r = guess(self, {1U << rival})) return *r;
            }
            std::vector<std::uint32_t> none{0};
            for (std::uint32_t mask : masks_by_size(m_)) {
                if (std::popcount(mask) >= 2) none.push_back(mask);
            }
            if (auto r = guess(self, none)) return *r;
            return {};
        }
        for (std::uint32_t c1 : masks_by_size(m_)) {
            if (!(c1 & self)) continue;
            for (std::uint32_t c2 : masks_by_size(m_)) {
                if (auto r = guess(c1, {c2})) return *r;
            }
        }
        return {};
    }

   private:
    // First part co-winners exactly `c1`; second part co-winners one of `c2s`
    // (0 standing for an empty second part).
    std::optional<AttackResult> guess(std::uint32_t c1, const std::vector<std::uint32_t>& c2s) {
        for (std::uint32_t c2 : c2s) {
            // discard up front unless p wins the final these co-winner sets lead to
            std::uint32_t finalists = promote(c1) | promote(c2);
            if (!(finalists & (1U << p_))) continue;
            if (final_stage_winner(rule_, e_, bits(finalists)) != p_) continue;
            const auto& left = feasible(c1, true);
            const auto& right = feasible(c2, false);
            for (const auto& s1 : left) {
                for (const auto& s2 : right) {
                    if (auto w = solve_feasibility(with_systems(base_, {{&s1, &first_}, {&s2, &second_}}))) {
                        return witness(*w);
                    }
                }
            }
        }
        return std::nullopt;
    }

    std::uint32_t promote(std::uint32_t cowinners) const {
        if (model_ == TieModel::TiesEliminate && std::popcount(cowinners) != 1) return 0;
        return cowinners;
    }

    static std::vector<CandidateId> bits(std::uint32_t mask) {
        std::vector<CandidateId> out;
        for (int c = 0; c < 32; ++c) {
            if (mask >> c & 1U) out.push_back(c);
        }
        return out;
    }

    // Systems for "co-winners of this part are exactly `mask`" that are
    // feasible on their own.
    const std::vector<LinearSystem>& feasible(std::uint32_t mask, bool first) {
        auto key = std::make_pair(mask, first);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const CountMap& counts = first ? first_ : second_;
        std::vector<LinearSystem> out;
        auto keep = [&](const LinearSystem& sys) {
            if (solve_feasibility(with_systems(base_, {{&sys, &counts}}))) out.push_back(sys);
        };
        if (mask == 0) {
            LinearSystem empty;
            empty.description = "empty part";
            VoteSymbols sym(m_);
            empty.constraints.push_back(make_constraint(sym.total(), Relation::Equal, VoteExpr()));
            keep(empty);
        } else {
            for_each_cowinner_system(rule_, m_, bits(mask), e_.tiebreak(), keep);
        }
        return cache_.emplace(key, std::move(out)).first->second;
    }

    AttackResult witness(const Witness& w) const {
        AttackWitness out;
        for (const auto& [vote, x] : vars_) {
            Count in_first = w.value(x);
            if (in_first > 0) out.first.add(*vote, in_first);
            if (e_.profile().count(*vote) > in_first) out.second.add(*vote, e_.profile().count(*vote) - in_first);
        }
        return yes(std::move(out), p_);
    }

    const Rule& rule_;
    const Election& e_;
    CandidateId p_;
    TieModel model_;
    int m_;
    IlpInstance base_;
    std::vector<std::pair<const Vote*, std::size_t>> vars_;
    CountMap first_, second_;
    std::map<std::pair<std::uint32_t, bool>, std::vector<LinearSystem>> cache_;
};

}  // namespace detail

inline AttackResult solve_control_partition_votes(const Rule& rule, const Election& e, CandidateId p, TieModel model) {
    return detail::PartitionSearch(rule, e, p, model).run();
}

/// The seven candidate-control types, by enumeration of candidate subsets
/// (by size, then lexicographically).
inline AttackResult solve_candidate_control(const AttackInstance& inst) {
    const Election& e = inst.election;
    const int m = e.m();
    std::vector<CandidateId> pool;
    auto try_sets = [&](const std::vector<CandidateId>& pool_ids, Count max_size) -> AttackResult {
        for (std::uint32_t mask : detail::masks_by_size(static_cast<int>(pool_ids.size()))) {
            if (std::popcount(mask) > max_size) break;
            AttackWitness w;
            w.candidates = detail::members_of(mask, pool_ids);
            auto winner = apply_witness(inst, w);
            if (winner && (inst.mode == Mode::Constructive ? *winner == inst.target : *winner != inst.target)) {
                return detail::yes(std::move(w), *winner);
            }
        }
        return {};
    };
    return std::visit(
        [&](const auto& kind) -> AttackResult {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, AddCandidates>) {
                auto spoilers = detail::sorted_unique(kind.spoilers);
                Count cap = kind.limited ? kind.budget : static_cast<Count>(spoilers.size());
                return try_sets(spoilers, cap);
            } else if constexpr (std::is_same_v<K, DeleteCandidates>) {
                for (int c = 0; c < m; ++c) {
                    if (c != inst.target || inst.mode == Mode::Destructive) pool.push_back(c);
                }
                return try_sets(pool, kind.budget);
            } else if constexpr (std::is_same_v<K, PartitionCandidates>) {
                return try_sets(detail::all_candidates(m), m);
            } else {
                throw std::invalid_argument("not a candidate-control instance");
            }
        },
        inst.kind);
}

inline AttackResult solve_constructive(const AttackInstance& inst) {
    validate(inst);
    if (is_candidate_control(inst.kind)) return solve_candidate_control(inst.retargeted(inst.target, Mode::Constructive));
    const Rule& rule = inst.rule;
    const Election& e = inst.election;
    const CandidateId p = inst.target;
    return std::visit(
        [&](const auto& kind) -> AttackResult {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, Manipulation>) {
                return solve_manipulation(rule, e, p, kind.manipulators);
            } else if constexpr (std::is_same_v<K, Bribery>) {
                return solve_bribery(rule, e, p, kind.budget);
            } else if constexpr (std::is_same_v<K, AddVotes>) {
                return solve_control_add_votes(rule, e, p, kind.unregistered, kind.budget);
            } else if constexpr (std::is_same_v<K, DeleteVotes>) {
                return solve_control_delete_votes(rule, e, p, kind.budget);
            } else if constexpr (std::is_same_v<K, PartitionVotes>) {
                return solve_control_partition_votes(rule, e, p, kind.model);
            } else {
                return {};
            }
        },
        inst.kind);
}

/// Some candidate other than the target ends up winning: one constructive
/// solve per rival, in id order.
inline AttackResult solve_destructive(const AttackInstance& inst) {
    validate(inst);
    for (int rival = 0; rival < inst.election.m(); ++rival) {
        if (rival == inst.target) continue;
        AttackResult r = solve_constructive(inst.retargeted(rival, Mode::Constructive));
        if (r.yes()) return r;
    }
    return {};
}

inline AttackResult solve_attack(const AttackInstance& inst) {
    return inst.mode == Mode::Constructive ? solve_constructive(inst) : solve_destructive(inst);
}

}  // namespace elect
