#pragma once

// Brute-force reference solver for tiny instances. Depends on the core rules
// only; every scenario is built explicitly and evaluated from scratch.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "elect/attack.hpp"
#include "elect/election.hpp"
#include "elect/outcomes.hpp"
#include "elect/rational.hpp"
#include "elect/rules.hpp"

namespace elect {

struct OracleBudget {
    std::uint64_t max_states = 1'000'000;
};

namespace oracle_detail {

struct Entry {
    Vote vote;
    Count count;
};

inline std::vector<Entry> entries(const Profile& p) {
    std::vector<Entry> out;
    for (const auto& [vote, count] : p) out.push_back({vote, count});
    return out;
}

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Number of sub-multisets of `p` of each size 0..cap.
inline std::vector<Integer> submultiset_counts(const std::vector<Entry>& p, Count cap) {
    std::vector<Integer> ways(static_cast<std::size_t>(cap) + 1, 0);
    ways[0] = 1;
    for (const auto& e : p) {
        std::vector<Integer> next(ways.size(), 0);
        for (std::size_t s = 0; s < ways.size(); ++s) {
            for (Count k = 0; k <= e.count && s + static_cast<std::size_t>(k) < ways.size(); ++k) {
                next[s + static_cast<std::size_t>(k)] += ways[s];
            }
        }
        ways = std::move(next);
    }
    return ways;
}

/// Calls fn(counts) for every vector with 0 <= counts[i] <= limit[i] and
/// sum <= cap, first coordinate most significant, ascending. fn returns
/// true to stop.
inline bool for_each_bounded(const std::vector<Count>& limit, Count cap,
                             const std::function<bool(const std::vector<Count>&)>& fn) {
    std::vector<Count> c(limit.size(), 0);
    std::function<bool(std::size_t, Count)> rec = [&](std::size_t i, Count left) -> bool {
        if (i == limit.size()) return fn(c);
        for (Count k = 0; k <= std::min(limit[i], left); ++k) {
            c[i] = k;
            if (rec(i + 1, left - k)) return true;
        }
        c[i] = 0;
        return false;
    };
    return rec(0, cap);
}

/// Multisets of exactly `size` ballots over `types`, as count vectors.
inline bool for_each_multiset(std::size_t types, Count size, const std::function<bool(const std::vector<Count>&)>& fn) {
    std::vector<Count> limit(types, size);
    return for_each_bounded(limit, size, [&](const std::vector<Count>& c) {
        Count s = 0;
        for (Count x : c) s += x;
        return s == size && fn(c);
    });
}

inline Profile build(const std::vector<Entry>& types, const std::vector<Count>& counts) {
    Profile p;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (counts[i] > 0) p.add(types[i].vote, counts[i]);
    }
    return p;
}

inline std::vector<Entry> every_vote(int m) {
    std::vector<Entry> out;
    for (const Vote& v : all_votes(m)) out.push_back({v, 0});
    return out;
}

class Search {
   public:
    Search(const AttackInstance& inst, OracleBudget budget) : inst_(inst), budget_(budget) {}

    AttackResult run() {
        const Election& e = inst_.election;
        const int m = e.m();
        return std::visit(
            [&](const auto& kind) -> AttackResult {
                using K = std::decay_t<decltype(kind)>;
                if constexpr (std::is_same_v<K, Manipulation>) {
                    auto types = every_vote(m);
                    if (!admit(binomial(types.size() + static_cast<std::uint64_t>(kind.manipulators) - 1,
                                        static_cast<std::uint64_t>(kind.manipulators)))) {
                        return refused();
                    }
                    for_each_multiset(types.size(), kind.manipulators, [&](const std::vector<Count>& c) {
                        AttackWitness w;
                        w.cast = build(types, c);
                        return check(std::move(w));
                    });
                } else if constexpr (std::is_same_v<K, Bribery>) {
                    auto own = entries(e.profile());
                    auto types = every_vote(m);
                    auto ways = submultiset_counts(own, kind.budget);
                    Integer states = 0;
                    for (std::size_t r = 0; r < ways.size(); ++r) {
                        states += ways[r] * binomial(types.size() + r - 1, r);
                    }
                    if (!admit(states)) return refused();
                    // remove r original votes, then cast any r ballots in their place
                    std::vector<Count> limit;
                    for (const auto& x : own) limit.push_back(x.count);
                    for_each_bounded(limit, kind.budget, [&](const std::vector<Count>& removed) {
                        Count r = 0;
                        for (Count x : removed) r += x;
                        return for_each_multiset(types.size(), r, [&](const std::vector<Count>& cast) {
                            return check(bribes(own, removed, types, cast));
                        });
                    });
                } else if constexpr (std::is_same_v<K, AddVotes>) {
                    auto pool = entries(kind.unregistered);
                    if (!admit(total(submultiset_counts(pool, kind.budget)))) return refused();
                    std::vector<Count> limit;
                    for (const auto& x : pool) limit.push_back(x.count);
                    for_each_bounded(limit, kind.budget, [&](const std::vector<Count>& c) {
                        AttackWitness w;
                        w.added = build(pool, c);
                        return check(std::move(w));
                    });
                } else if constexpr (std::is_same_v<K, DeleteVotes>) {
                    auto own = entries(e.profile());
                    if (!admit(total(submultiset_counts(own, kind.budget)))) return refused();
                    std::vector<Count> limit;
                    for (const auto& x : own) limit.push_back(x.count);
                    for_each_bounded(limit, kind.budget, [&](const std::vector<Count>& c) {
                        AttackWitness w;
                        w.deleted = build(own, c);
                        return check(std::move(w));
                    });
                } else if constexpr (std::is_same_v<K, PartitionVotes>) {
                    auto own = entries(e.profile());
                    Integer states = 1;
                    std::vector<Count> limit;
                    for (const auto& x : own) {
                        states *= to_integer(x.count + 1);
                        limit.push_back(x.count);
                    }
                    if (!admit(states)) return refused();
                    for_each_bounded(limit, e.profile().total(), [&](const std::vector<Count>& c) {
                        std::vector<Count> rest;
                        for (std::size_t i = 0; i < own.size(); ++i) rest.push_back(own[i].count - c[i]);
                        AttackWitness w;
                        w.first = build(own, c);
                        w.second = build(own, rest);
                        return check(std::move(w));
                    });
                } else {
                    if (!admit(Integer(1) << m)) return refused();
                    // every subset of candidates, as a bitmask in increasing order
                    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
                        AttackWitness w;
                        for (int c = 0; c < m; ++c) {
                            if (mask >> c & 1U) w.candidates.push_back(c);
                        }
                        if (check(std::move(w))) break;
                    }
                }
                return result_;
            },
            inst_.kind);
    }

   private:
    static Integer total(const std::vector<Integer>& ways) {
        Integer s = 0;
        for (const auto& w : ways) s += w;
        return s;
    }

    bool admit(const Integer& states) const { return states <= Integer(std::to_string(budget_.max_states)); }

    static AttackResult refused() { return {Decision::Refused, std::nullopt, std::nullopt}; }

    // pairs removed ballots with cast ballots in order, dropping unchanged ones
    static AttackWitness bribes(const std::vector<Entry>& own, const std::vector<Count>& removed,
                                const std::vector<Entry>& types, const std::vector<Count>& cast) {
        std::vector<Vote> from, to;
        for (std::size_t i = 0; i < own.size(); ++i) from.insert(from.end(), static_cast<std::size_t>(removed[i]), own[i].vote);
        for (std::size_t i = 0; i < types.size(); ++i) to.insert(to.end(), static_cast<std::size_t>(cast[i]), types[i].vote);
        // unchanged ballots first cancel against each other
        std::vector<Vote> src, dst;
        std::vector<bool> used(to.size(), false);
        for (const Vote& f : from) {
            bool matched = false;
            for (std::size_t j = 0; j < to.size(); ++j) {
                if (!used[j] && to[j] == f) {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) src.push_back(f);
        }
        for (std::size_t j = 0; j < to.size(); ++j) {
            if (!used[j]) dst.push_back(to[j]);
        }
        std::map<std::pair<Vote, Vote>, Count> grouped;
        for (std::size_t i = 0; i < src.size(); ++i) ++grouped[{src[i], dst[i]}];
        AttackWitness w;
        for (const auto& [pair, count] : grouped) w.bribes.push_back({pair.first, pair.second, count});
        return w;
    }

    // true (stop) once a scenario reaches the goal
    bool check(AttackWitness w) {
        auto winner = apply_witness(inst_, w);
        if (!winner) return false;
        bool goal = inst_.mode == Mode::Constructive ? *winner == inst_.target : *winner != inst_.target;
        if (!goal) return false;
        result_ = {Decision::Yes, std::move(w), winner};
        return true;
    }

    const AttackInstance& inst_;
    OracleBudget budget_;
    AttackResult result_;
};

}  // namespace oracle_detail

/// Exhaustive decision; REFUSED when the scenario count exceeds the budget.
inline AttackResult oracle_solve(const AttackInstance& inst, OracleBudget budget = {}) {
    if (budget.max_states == 0) throw std::invalid_argument("oracle budget must be positive");
    validate(inst);
    return oracle_detail::Search(inst, budget).run();
}

}  // namespace elect
