#pragma once

// Attack instances, results and witness replay. Replay uses the core rules
// only, so it checks witnesses independently of how they were found.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "elect/election.hpp"
#include "elect/outcomes.hpp"
#include "elect/rule.hpp"
#include "elect/rules.hpp"

namespace elect {

enum class Mode { Constructive, Destructive };
enum class Decision { Yes, No, Refused };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Yes: return "YES";
        case Decision::No: return "NO";
        case Decision::Refused: return "REFUSED";
    }
    return "?";
}

struct Manipulation {
    Count manipulators = 0;
};
struct Bribery {
    Count budget = 0;
};
struct AddVotes {
    Count budget = 0;
    Profile unregistered;
};
struct DeleteVotes {
    Count budget = 0;
};
struct PartitionVotes {
    TieModel model = TieModel::TiesEliminate;
};
/// The election already lists the spoilers and ranks them in every vote.
struct AddCandidates {
    bool limited = true;
    Count budget = 0;
    std::vector<CandidateId> spoilers;
};
struct DeleteCandidates {
    Count budget = 0;
};
struct PartitionCandidates {
    bool runoff = false;
    TieModel model = TieModel::TiesEliminate;
};

using AttackKind = std::variant<Manipulation, Bribery, AddVotes, DeleteVotes, PartitionVotes, AddCandidates,
                                DeleteCandidates, PartitionCandidates>;

struct AttackInstance {
    Rule rule;
    Election election;
    CandidateId target = 0;
    AttackKind kind;
    Mode mode = Mode::Constructive;

    AttackInstance retargeted(CandidateId p, Mode m) const {
        AttackInstance copy = *this;
        copy.target = p;
        copy.mode = m;
        return copy;
    }
};

inline bool is_candidate_control(const AttackKind& kind) {
    return std::holds_alternative<AddCandidates>(kind) || std::holds_alternative<DeleteCandidates>(kind) ||
           std::holds_alternative<PartitionCandidates>(kind);
}

struct Bribe {
    Vote from;
    Vote to;
    Count count = 0;
    friend bool operator==(const Bribe&, const Bribe&) = default;
};

/// One struct for every kind; only the fields of the instance's kind are used.
struct AttackWitness {
    Profile cast;                         // manipulator ballots
    std::vector<Bribe> bribes;            // sorted by (from, to)
    Profile added;                        // add votes
    Profile deleted;                      // delete votes
    Profile first, second;                // vote partition
    std::vector<CandidateId> candidates;  // added, deleted, or first-part candidates (sorted)

    friend bool operator==(const AttackWitness&, const AttackWitness&) = default;
};

struct AttackResult {
    Decision decision = Decision::No;
    std::optional<AttackWitness> witness;
    std::optional<CandidateId> winner;  // winner once the witness is applied

    bool yes() const { return decision == Decision::Yes; }
};

namespace detail {

inline bool sub_multiset(const Profile& part, const Profile& whole) {
    for (const auto& [vote, count] : part) {
        if (count > whole.count(vote)) return false;
    }
    return true;
}

inline std::vector<CandidateId> sorted_unique(std::vector<CandidateId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

inline bool all_valid(const std::vector<CandidateId>& ids, int m) {
    return std::all_of(ids.begin(), ids.end(), [&](CandidateId c) { return c >= 0 && c < m; });
}

/// Candidates present before any candidate is added.
inline std::vector<CandidateId> base_candidates(const Election& e, const AddCandidates& add) {
    std::vector<bool> spoiler(static_cast<std::size_t>(e.m()), false);
    for (CandidateId c : add.spoilers) spoiler.at(c) = true;
    std::vector<CandidateId> out;
    for (int c = 0; c < e.m(); ++c) {
        if (!spoiler[c]) out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// Resulting winner when `w` is applied, or nullopt if `w` is not a legal
/// action for the instance or nobody wins (empty final stage).
inline std::optional<CandidateId> apply_witness(const AttackInstance& inst, const AttackWitness& w) {
    const Election& e = inst.election;
    const Rule& rule = inst.rule;
    const int m = e.m();
    return std::visit(
        [&](const auto& kind) -> std::optional<CandidateId> {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, Manipulation>) {
                if (w.cast.total() != kind.manipulators) return std::nullopt;
                Profile p = e.profile();
                p += w.cast;
                return evaluate(rule, e.with_profile(std::move(p)));
            } else if constexpr (std::is_same_v<K, Bribery>) {
                Profile p = e.profile();
                Count used = 0;
                for (const auto& b : w.bribes) {
                    if (b.count < 1 || b.from == b.to || b.from.size() != static_cast<std::size_t>(m) ||
                        b.to.size() != static_cast<std::size_t>(m)) {
                        return std::nullopt;
                    }
                    used += b.count;
                }
                if (used > kind.budget) return std::nullopt;
                for (const auto& b : w.bribes) {
                    if (p.count(b.from) < b.count) return std::nullopt;
                    p.remove(b.from, b.count);
                }
                // sources must come from the original votes, not from other bribes
                for (const auto& b : w.bribes) p.add(b.to, b.count);
                return evaluate(rule, e.with_profile(std::move(p)));
            } else if constexpr (std::is_same_v<K, AddVotes>) {
                if (w.added.total() > kind.budget || !detail::sub_multiset(w.added, kind.unregistered)) return std::nullopt;
                Profile p = e.profile();
                p += w.added;
                return evaluate(rule, e.with_profile(std::move(p)));
            } else if constexpr (std::is_same_v<K, DeleteVotes>) {
                if (w.deleted.total() > kind.budget || !detail::sub_multiset(w.deleted, e.profile())) return std::nullopt;
                Profile p = e.profile();
                for (const auto& [vote, count] : w.deleted) p.remove(vote, count);
                return evaluate(rule, e.with_profile(std::move(p)));
            } else if constexpr (std::is_same_v<K, PartitionVotes>) {
                Profile joined = w.first;
                joined += w.second;
                if (!(joined == e.profile())) return std::nullopt;
                return partition_votes_winner(rule, e, w.first, w.second, kind.model);
            } else if constexpr (std::is_same_v<K, AddCandidates>) {
                auto added = detail::sorted_unique(w.candidates);
                if (added.size() != w.candidates.size()) return std::nullopt;
                for (CandidateId c : added) {
                    if (std::find(kind.spoilers.begin(), kind.spoilers.end(), c) == kind.spoilers.end()) return std::nullopt;
                }
                if (kind.limited && static_cast<Count>(added.size()) > kind.budget) return std::nullopt;
                auto present = detail::base_candidates(e, kind);
                present.insert(present.end(), added.begin(), added.end());
                return winner_among(rule, e, present);
            } else if constexpr (std::is_same_v<K, DeleteCandidates>) {
                auto gone = detail::sorted_unique(w.candidates);
                if (gone.size() != w.candidates.size() || !detail::all_valid(gone, m)) return std::nullopt;
                if (static_cast<Count>(gone.size()) > kind.budget) return std::nullopt;
                // the target may not be deleted; in destructive mode any candidate may go
                if (inst.mode == Mode::Constructive && std::binary_search(gone.begin(), gone.end(), inst.target)) {
                    return std::nullopt;
                }
                std::vector<CandidateId> present;
                for (int c = 0; c < m; ++c) {
                    if (!std::binary_search(gone.begin(), gone.end(), c)) present.push_back(c);
                }
                return winner_among(rule, e, present);
            } else {
                auto first = detail::sorted_unique(w.candidates);
                if (first.size() != w.candidates.size() || !detail::all_valid(first, m)) return std::nullopt;
                return partition_candidates_winner(rule, e, first, kind.runoff, kind.model);
            }
        },
        inst.kind);
}

/// True when the result's witness really achieves the instance's goal.
/// NO and REFUSED results carry no witness and always pass.
inline bool verify_witness(const AttackInstance& inst, const AttackResult& result) {
    if (!result.yes()) return !result.witness.has_value();
    if (!result.witness) return false;
    auto winner = apply_witness(inst, *result.witness);
    if (!winner || winner != result.winner) return false;
    return inst.mode == Mode::Constructive ? *winner == inst.target : *winner != inst.target;
}

/// Checks the instance's invariants; throws std::invalid_argument.
inline void validate(const AttackInstance& inst) {
    const int m = inst.election.m();
    if (inst.target < 0 || inst.target >= m) throw std::invalid_argument("target is not a candidate");
    std::visit(
        [&](const auto& kind) {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, Manipulation>) {
                if (kind.manipulators < 0) throw std::invalid_argument("negative manipulator count");
            } else if constexpr (std::is_same_v<K, PartitionVotes> || std::is_same_v<K, PartitionCandidates>) {
            } else {
                if (kind.budget < 0) throw std::invalid_argument("negative budget");
                if constexpr (std::is_same_v<K, AddVotes>) {
                    for (const auto& [vote, count] : kind.unregistered) {
                        if (vote.size() != static_cast<std::size_t>(m)) {
                            throw std::invalid_argument("unregistered votes use a different candidate set");
                        }
                    }
                }
                if constexpr (std::is_same_v<K, AddCandidates>) {
                    if (!detail::all_valid(kind.spoilers, m)) throw std::invalid_argument("spoiler is not a candidate");
                    if (detail::sorted_unique(kind.spoilers).size() != kind.spoilers.size()) {
                        throw std::invalid_argument("duplicate spoiler");
                    }
                    if (detail::base_candidates(inst.election, kind).empty()) {
                        throw std::invalid_argument("every candidate is a spoiler");
                    }
                }
            }
        },
        inst.kind);
}

}  // namespace elect
