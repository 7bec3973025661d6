#pragma once

// Witness documents: one action per line, candidate names from the election.

#include <string>
#include <variant>
#include <vector>

#include "elect/attack.hpp"
#include "elect/election_io.hpp"

namespace elect {

namespace detail {

inline std::string names_or_none(const Election& e, const std::vector<CandidateId>& ids) {
    return ids.empty() ? std::string("(none)") : format_candidates(e, ids);
}

inline void profile_lines(std::vector<std::string>& out, const char* tag, const Election& e, const Profile& p) {
    for (const auto& [vote, count] : p) out.push_back(std::string(tag) + " " + std::to_string(count) + ": " + format_vote(e, vote));
}

}  // namespace detail

inline std::vector<std::string> witness_lines(const AttackInstance& inst, const AttackWitness& w) {
    const Election& e = inst.election;
    std::vector<std::string> out;
    std::visit(
        [&](const auto& kind) {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, Manipulation>) {
                detail::profile_lines(out, "cast", e, w.cast);
            } else if constexpr (std::is_same_v<K, Bribery>) {
                for (const auto& b : w.bribes) {
                    out.push_back("bribe " + std::to_string(b.count) + ": " + format_vote(e, b.from) + " -> " +
                                  format_vote(e, b.to));
                }
            } else if constexpr (std::is_same_v<K, AddVotes>) {
                detail::profile_lines(out, "add", e, w.added);
            } else if constexpr (std::is_same_v<K, DeleteVotes>) {
                detail::profile_lines(out, "delete", e, w.deleted);
            } else if constexpr (std::is_same_v<K, PartitionVotes>) {
                detail::profile_lines(out, "part1", e, w.first);
                detail::profile_lines(out, "part2", e, w.second);
            } else if constexpr (std::is_same_v<K, AddCandidates>) {
                out.push_back("add-candidates: " + detail::names_or_none(e, w.candidates));
            } else if constexpr (std::is_same_v<K, DeleteCandidates>) {
                out.push_back("delete-candidates: " + detail::names_or_none(e, w.candidates));
            } else {
                std::vector<CandidateId> rest;
                for (int c = 0; c < e.m(); ++c) {
                    if (std::find(w.candidates.begin(), w.candidates.end(), c) == w.candidates.end()) rest.push_back(c);
                }
                out.push_back("part1-candidates: " + detail::names_or_none(e, w.candidates));
                out.push_back("part2-candidates: " + detail::names_or_none(e, rest));
            }
        },
        inst.kind);
    return out;
}

}  // namespace elect
