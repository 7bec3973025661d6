#pragma once

// Exhaustive helpers shared by the test suites and the acceptance binary:
// box enumeration for ILP instances, small count assignments over vote
// types, and an int64 evaluator for condition systems.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "elect/attack.hpp"
#include "elect/conditions.hpp"
#include "elect/ilp.hpp"
#include "elect/signature.hpp"
#include "support/random.hpp"

namespace testing_support {

// ---- ILP -------------------------------------------------------------------

/// Random instance: up to 4 variables with bounds at most 6, up to 6
/// constraints with coefficients in [-5,5] (some halves), all five relations.
inline elect::IlpInstance random_ilp(Rng& rng) {
    elect::IlpInstance inst;
    const int vars = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < vars; ++i) inst.add_variable(static_cast<std::int64_t>(rng.below(7)));
    const int cons = 1 + static_cast<int>(rng.below(6));
    for (int c = 0; c < cons; ++c) {
        elect::IlpExpr lhs;
        for (int i = 0; i < vars; ++i) {
            lhs.add(static_cast<std::size_t>(i), elect::make_rational(rng.between(-5, 5), rng.between(1, 2)));
        }
        auto rel = static_cast<elect::Relation>(rng.below(5));
        inst.add_constraint(lhs, rel, elect::IlpExpr(elect::Rational(static_cast<long>(rng.between(-10, 10)))));
    }
    return inst;
}

inline bool satisfies(const elect::IlpInstance& inst, const std::vector<std::int64_t>& x) {
    for (const auto& c : inst.constraints()) {
        mpq_class lhs = c.lhs.constant(), rhs = c.rhs.constant();
        for (const auto& [id, coef] : c.lhs.terms()) lhs += coef * mpq_class(static_cast<long>(x[id]));
        for (const auto& [id, coef] : c.rhs.terms()) rhs += coef * mpq_class(static_cast<long>(x[id]));
        bool ok = false;
        switch (c.rel) {
            case elect::Relation::Less: ok = lhs < rhs; break;
            case elect::Relation::LessEqual: ok = lhs <= rhs; break;
            case elect::Relation::Equal: ok = lhs == rhs; break;
            case elect::Relation::GreaterEqual: ok = lhs >= rhs; break;
            case elect::Relation::Greater: ok = lhs > rhs; break;
        }
        if (!ok) return false;
    }
    return true;
}

/// First satisfying point of the whole box, odometer order.
inline std::optional<std::vector<std::int64_t>> exhaustive_ilp(const elect::IlpInstance& inst) {
    const std::size_t n = inst.size();
    std::vector<std::int64_t> x(n, 0);
    while (true) {
        if (satisfies(inst, x)) return x;
        std::size_t j = n;
        while (j > 0 && x[j - 1] == *inst.variables()[j - 1].upper) x[--j] = 0;
        if (j == 0) return std::nullopt;
        ++x[j - 1];
    }
}

// ---- signatures -----------------------------------------------------------

// All 3^(k choose 2) relation maps, kept when >= (derived from the map) is transitive.
inline std::set<elect::Signature> brute_force_weak_orders(int k) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
    }
    std::set<elect::Signature> out;
    std::size_t maps = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) maps *= 3;
    for (std::size_t code = 0; code < maps; ++code) {
        elect::Signature s(k);
        std::size_t rest = code;
        for (const auto& [i, j] : pairs) {
            s.set(i, j, static_cast<elect::Order>(static_cast<int>(rest % 3) - 1));
            rest /= 3;
        }
        auto geq = [&](int a, int b) { return s.relation(a, b) != elect::Order::Less; };
        bool transitive = true;
        for (int a = 0; a < k && transitive; ++a) {
            for (int b = 0; b < k && transitive; ++b) {
                for (int c = 0; c < k && transitive; ++c) {
                    if (geq(a, b) && geq(b, c) && !geq(a, c)) transitive = false;
                }
            }
        }
        if (transitive) out.insert(s);
    }
    return out;
}

// ---- count assignments ----------------------------------------------------

/// Sparse count vector: (vote type index, count), indices increasing.
using Assignment = std::vector<std::pair<int, std::int64_t>>;

/// Every multiset of at most `n_max` ballots over `types` vote types.
inline void for_each_assignment(int types, int n_max, const std::function<void(const Assignment&)>& fn) {
    std::vector<int> pick;
    Assignment a;
    std::function<void(int)> rec = [&](int start) {
        a.clear();
        for (int t : pick) {
            if (!a.empty() && a.back().first == t) {
                ++a.back().second;
            } else {
                a.push_back({t, 1});
            }
        }
        fn(a);
        if (static_cast<int>(pick.size()) == n_max) return;
        for (int t = start; t < types; ++t) {
            pick.push_back(t);
            rec(t);
            pick.pop_back();
        }
    };
    rec(0);
}

// ---- compiled systems --------------------------------------------------------

/// lhs - rhs as integers (denominators cleared), indexed by vote type.
struct CompiledRow {
    std::vector<std::int64_t> coef;
    std::int64_t constant = 0;
    elect::Relation rel = elect::Relation::LessEqual;
};

inline std::int64_t as_int(const mpz_class& z) { return static_cast<std::int64_t>(z.get_si()); }

inline std::vector<CompiledRow> compile(const elect::LinearSystem& sys, const std::vector<elect::Vote>& votes) {
    std::map<elect::Vote, int> index;
    for (std::size_t i = 0; i < votes.size(); ++i) index[votes[i]] = static_cast<int>(i);
    std::vector<CompiledRow> rows;
    for (const auto& c : sys.constraints) {
        auto diff = c.difference();
        mpz_class scale = diff.constant().get_den();
        for (const auto& [v, q] : diff.terms()) scale = lcm(scale, mpz_class(q.get_den()));
        CompiledRow row;
        row.coef.assign(votes.size(), 0);
        row.rel = c.rel;
        mpq_class k = diff.constant() * mpq_class(scale);
        row.constant = as_int(k.get_num());
        for (const auto& [v, q] : diff.terms()) {
            mpq_class s = q * mpq_class(scale);
            row.coef[index.at(v)] = as_int(s.get_num());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline bool holds(const std::vector<CompiledRow>& rows, const Assignment& a) {
    for (const auto& row : rows) {
        std::int64_t v = row.constant;
        for (const auto& [t, c] : a) v += row.coef[t] * c;
        bool ok = false;
        switch (row.rel) {
            case elect::Relation::Less: ok = v < 0; break;
            case elect::Relation::LessEqual: ok = v <= 0; break;
            case elect::Relation::Equal: ok = v == 0; break;
            case elect::Relation::GreaterEqual: ok = v >= 0; break;
            case elect::Relation::Greater: ok = v > 0; break;
        }
        if (!ok) return false;
    }
    return true;
}

inline bool any_holds(const std::vector<std::vector<CompiledRow>>& systems, const Assignment& a) {
    for (const auto& s : systems) {
        if (holds(s, a)) return true;
    }
    return false;
}

inline elect::Profile to_profile(const Assignment& a, const std::vector<elect::Vote>& votes) {
    elect::Profile p;
    for (const auto& [t, c] : a) p.add(votes[t], c);
    return p;
}

/// Result of comparing generated systems against the rules on every count
/// assignment with at most n_max ballots.
struct ExhaustiveReport {
    long checks = 0;
    long mismatches = 0;
    std::string first;  // description of the first mismatch
};

inline elect::Election election_of(int m, const elect::Profile& profile, const elect::TieBreak& tb) {
    auto base = elect::Election::with_names(names(m), profile);
    return elect::Election(base.candidates(), base.profile(), tb);
}

/// winning_systems vs evaluate for every p, and cowinner_systems vs cowinners
/// for every nonempty W.
inline ExhaustiveReport exhaustive_conditions(const elect::Rule& rule, int m, int n_max, const elect::TieBreak& tb) {
    const auto votes = elect::all_votes(m);
    std::vector<std::vector<std::vector<CompiledRow>>> win(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        elect::for_each_winning_system(rule, m, p, tb, [&](const elect::LinearSystem& s) { win[p].push_back(compile(s, votes)); });
    }
    const std::uint32_t sets = 1U << m;
    std::vector<std::vector<std::vector<CompiledRow>>> co(sets);
    for (std::uint32_t w = 1; w < sets; ++w) {
        std::vector<elect::CandidateId> members;
        for (int c = 0; c < m; ++c) {
            if (w >> c & 1U) members.push_back(c);
        }
        elect::for_each_cowinner_system(rule, m, members, tb, [&](const elect::LinearSystem& s) { co[w].push_back(compile(s, votes)); });
    }
    ExhaustiveReport report;
    auto miss = [&](const Assignment& a, const std::string& what) {
        if (report.mismatches++ == 0) {
            std::string profile;
            for (const auto& [t, c] : a) profile += std::to_string(c) + "x" + std::to_string(t) + " ";
            report.first = rule.spec() + " m=" + std::to_string(m) + " " + what + " counts " + profile;
        }
    };
    for_each_assignment(static_cast<int>(votes.size()), n_max, [&](const Assignment& a) {
        auto e = election_of(m, to_profile(a, votes), tb);
        const elect::CandidateId winner = elect::evaluate(rule, e);
        for (int p = 0; p < m; ++p) {
            ++report.checks;
            if (any_holds(win[p], a) != (winner == p)) miss(a, "winner p=" + std::to_string(p));
        }
        std::uint32_t tied = 0;
        for (elect::CandidateId c : elect::cowinners(rule, e)) tied |= 1U << c;
        for (std::uint32_t w = 1; w < sets; ++w) {
            ++report.checks;
            if (any_holds(co[w], a) != (tied == w)) miss(a, "cowinners W=" + std::to_string(w));
        }
    });
    return report;
}

// ---- attack instances ------------------------------------------------------

/// The six vote-attack kinds of the acceptance suite.
enum class VoteAttack { Manipulation, Bribery, AddVotes, DeleteVotes, PartitionTE, PartitionTP };

inline const char* name_of(VoteAttack k) {
    switch (k) {
        case VoteAttack::Manipulation: return "manipulation";
        case VoteAttack::Bribery: return "bribery";
        case VoteAttack::AddVotes: return "add-votes";
        case VoteAttack::DeleteVotes: return "delete-votes";
        case VoteAttack::PartitionTE: return "partition-te";
        case VoteAttack::PartitionTP: return "partition-tp";
    }
    return "?";
}

inline const std::vector<VoteAttack>& vote_attacks() {
    static const std::vector<VoteAttack> all{VoteAttack::Manipulation, VoteAttack::Bribery,     VoteAttack::AddVotes,
                                             VoteAttack::DeleteVotes,  VoteAttack::PartitionTE, VoteAttack::PartitionTP};
    return all;
}

/// Random instance with n <= n_max and budgets (or t) at most 2; the target is
/// a random candidate.
inline elect::AttackInstance random_vote_attack(Rng& rng, const elect::Rule& rule, VoteAttack kind, int m, int n_max,
                                                elect::Mode mode = elect::Mode::Constructive) {
    auto e = random_election(rng, m, n_max);
    const auto budget = static_cast<elect::Count>(rng.below(3));
    elect::AttackKind k;
    switch (kind) {
        case VoteAttack::Manipulation: k = elect::Manipulation{budget}; break;
        case VoteAttack::Bribery: k = elect::Bribery{budget}; break;
        case VoteAttack::AddVotes: k = elect::AddVotes{budget, random_profile(rng, m, static_cast<int>(rng.below(5)))}; break;
        case VoteAttack::DeleteVotes: k = elect::DeleteVotes{budget}; break;
        case VoteAttack::PartitionTE: k = elect::PartitionVotes{elect::TieModel::TiesEliminate}; break;
        case VoteAttack::PartitionTP: k = elect::PartitionVotes{elect::TieModel::TiesPromote}; break;
    }
    auto target = static_cast<elect::CandidateId>(rng.below(static_cast<std::uint64_t>(m)));
    return {rule, std::move(e), target, std::move(k), mode};
}

/// The candidate-control variants: add (limited/unlimited), delete, and the
/// four partition flavours.
inline elect::AttackInstance random_candidate_attack(Rng& rng, const elect::Rule& rule, int variant, int m, int n_max,
                                                     elect::Mode mode = elect::Mode::Constructive) {
    auto e = random_election(rng, m, n_max);
    auto target = static_cast<elect::CandidateId>(rng.below(static_cast<std::uint64_t>(m)));
    const auto budget = static_cast<elect::Count>(rng.below(3));
    elect::AttackKind k;
    if (variant <= 1) {
        std::vector<elect::CandidateId> spoilers;
        for (int c = 0; c < m; ++c) {
            if (c != target && rng.below(2) == 1) spoilers.push_back(c);
        }
        k = elect::AddCandidates{variant == 0, budget, spoilers};
    } else if (variant == 2) {
        k = elect::DeleteCandidates{budget};
    } else {
        const int v = variant - 3;
        k = elect::PartitionCandidates{v >= 2, v % 2 == 0 ? elect::TieModel::TiesEliminate : elect::TieModel::TiesPromote};
    }
    return {rule, std::move(e), target, std::move(k), mode};
}

inline constexpr int kCandidateVariants = 7;

}  // namespace testing_support
