#pragma once

// Two-stage control outcomes, evaluated directly with the core rules.

#include <algorithm>
#include <optional>
#include <vector>

#include "elect/election.hpp"
#include "elect/rules.hpp"

namespace elect {

enum class TieModel { TiesEliminate, TiesPromote };

/// Candidates a first-stage election sends on: all co-winners under
/// ties-promote, the co-winner only if unique under ties-eliminate.
inline std::vector<CandidateId> promoted(const Rule& rule, const Election& stage, TieModel model) {
    auto winners = cowinners(rule, stage);
    if (model == TieModel::TiesEliminate && winners.size() != 1) return {};
    return winners;
}

/// Winner of `election` restricted to `finalists`, in original ids;
/// nullopt when nobody reaches the final.
inline std::optional<CandidateId> final_stage_winner(const Rule& rule, const Election& election,
                                                      std::vector<CandidateId> finalists) {
    std::sort(finalists.begin(), finalists.end());
    finalists.erase(std::unique(finalists.begin(), finalists.end()), finalists.end());
    if (finalists.empty()) return std::nullopt;
    return finalists[evaluate(rule, restrict(election, finalists))];
}

/// Vote partition: promoted candidates of (C, P1) and (C, P2) meet in a final
/// held with all votes.
inline std::optional<CandidateId> partition_votes_winner(const Rule& rule, const Election& election, const Profile& first,
                                                         const Profile& second, TieModel model) {
    auto finalists = promoted(rule, election.with_profile(first), model);
    auto other = promoted(rule, election.with_profile(second), model);
    finalists.insert(finalists.end(), other.begin(), other.end());
    return final_stage_winner(rule, election, std::move(finalists));
}

/// Promoted candidates of the subelection on `part`, in original ids.
inline std::vector<CandidateId> promoted_from(const Rule& rule, const Election& election,
                                              const std::vector<CandidateId>& part, TieModel model) {
    if (part.empty()) return {};
    std::vector<CandidateId> sorted = part;
    std::sort(sorted.begin(), sorted.end());
    std::vector<CandidateId> out;
    for (CandidateId c : promoted(rule, restrict(election, sorted), model)) out.push_back(sorted[c]);
    return out;
}

/// Candidate partition (C1, C \ C1). Runoff: winners of both parts meet in
/// the final. Non-runoff: winners of C1 face all of C \ C1.
inline std::optional<CandidateId> partition_candidates_winner(const Rule& rule, const Election& election,
                                                              const std::vector<CandidateId>& first, bool runoff,
                                                              TieModel model) {
    std::vector<bool> in_first(static_cast<std::size_t>(election.m()), false);
    for (CandidateId c : first) in_first.at(c) = true;
    std::vector<CandidateId> second;
    for (int c = 0; c < election.m(); ++c) {
        if (!in_first[c]) second.push_back(c);
    }
    auto finalists = promoted_from(rule, election, first, model);
    auto rest = runoff ? promoted_from(rule, election, second, model) : second;
    finalists.insert(finalists.end(), rest.begin(), rest.end());
    return final_stage_winner(rule, election, std::move(finalists));
}

/// Winner of the election restricted to `present`; nullopt if empty.
inline std::optional<CandidateId> winner_among(const Rule& rule, const Election& election,
                                               const std::vector<CandidateId>& present) {
    return final_stage_winner(rule, election, present);
}

}  // namespace elect
