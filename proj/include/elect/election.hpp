#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace elect {

using CandidateId = int;
using Count = std::int64_t;

struct Candidate {
    CandidateId id = 0;
    std::string name;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// A linear order over candidates 0..m-1; position 0 is the most preferred.
class Vote {
   public:
    Vote() = default;

    explicit Vote(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
        if (!is_permutation(ranking_)) {
            throw std::invalid_argument("vote is not a permutation of the candidate ids");
        }
    }

    static bool is_permutation(std::span<const CandidateId> ranking) {
        std::vector<bool> seen(ranking.size(), false);
        for (CandidateId c : ranking) {
            if (c < 0 || static_cast<std::size_t>(c) >= ranking.size() || seen[c]) return false;
            seen[c] = true;
        }
        return true;
    }

    std::size_t size() const { return ranking_.size(); }
    CandidateId at(std::size_t position) const { return ranking_.at(position); }
    const std::vector<CandidateId>& ranking() const { return ranking_; }

    std::size_t position_of(CandidateId c) const {
        auto it = std::find(ranking_.begin(), ranking_.end(), c);
        if (it == ranking_.end()) {
            throw std::out_of_range("candidate not ranked in vote");
        }
        return static_cast<std::size_t>(it - ranking_.begin());
    }

    bool prefers(CandidateId a, CandidateId b) const { return position_of(a) < position_of(b); }

    /// Top-ranked candidate among those with keep[c] set.
    CandidateId top_among(const std::vector<bool>& keep) const {
        for (CandidateId c : ranking_) {
            if (keep[c]) return c;
        }
        throw std::invalid_argument("empty candidate subset");
    }

    friend auto operator<=>(const Vote&, const Vote&) = default;
    friend bool operator==(const Vote&, const Vote&) = default;

   private:
    std::vector<CandidateId> ranking_;
};

/// All m! linear orders, in lexicographic order of rankings.
inline std::vector<Vote> all_votes(int m) {
    std::vector<CandidateId> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Vote> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Multiset of votes. Iteration follows the lexicographic order of rankings.
class Profile {
   public:
    using Entries = std::map<Vote, Count>;

    Profile() = default;

    void add(const Vote& vote, Count count = 1) {
        if (count < 0) throw std::invalid_argument("negative vote count");
        if (count == 0) return;
        entries_[vote] += count;
        total_ += count;
    }

    void remove(const Vote& vote, Count count = 1) {
        if (count < 0) throw std::invalid_argument("negative vote count");
        if (count == 0) return;
        auto it = entries_.find(vote);
        if (it == entries_.end() || it->second < count) {
            throw std::invalid_argument("removing more copies of a vote than present");
        }
        it->second -= count;
        total_ -= count;
        if (it->second == 0) entries_.erase(it);
    }

    Count count(const Vote& vote) const {
        auto it = entries_.find(vote);
        return it == entries_.end() ? 0 : it->second;
    }

    const Entries& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    Count total() const { return total_; }
    bool empty() const { return total_ == 0; }
    std::size_t distinct() const { return entries_.size(); }

    Profile& operator+=(const Profile& other) {
        for (const auto& [vote, count] : other) add(vote, count);
        return *this;
    }

    friend Profile operator+(Profile a, const Profile& b) { return a += b; }
    friend bool operator==(const Profile& a, const Profile& b) { return a.entries_ == b.entries_; }

   private:
    Entries entries_;
    Count total_ = 0;
};

/// Fixed priority order; earlier candidates win ties.
class TieBreak {
   public:
    TieBreak() = default;

    explicit TieBreak(std::vector<CandidateId> priority) : priority_(std::move(priority)), rank_(priority_.size()) {
        if (!Vote::is_permutation(priority_)) {
            throw std::invalid_argument("tie-break is not a permutation of the candidate ids");
        }
        for (std::size_t i = 0; i < priority_.size(); ++i) rank_[priority_[i]] = static_cast<int>(i);
    }

    static TieBreak identity(int m) {
        std::vector<CandidateId> order(static_cast<std::size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        return TieBreak(std::move(order));
    }

    const std::vector<CandidateId>& priority() const { return priority_; }
    int rank(CandidateId c) const { return rank_.at(c); }
    bool prefers(CandidateId a, CandidateId b) const { return rank(a) < rank(b); }
    std::size_t size() const { return priority_.size(); }

    /// Highest-priority member of a nonempty set.
    CandidateId first_of(std::span<const CandidateId> set) const {
        if (set.empty()) throw std::invalid_argument("tie-break over an empty set");
        return *std::min_element(set.begin(), set.end(), [&](CandidateId a, CandidateId b) { return prefers(a, b); });
    }

    /// Lowest-priority member of a nonempty set.
    CandidateId last_of(std::span<const CandidateId> set) const {
        if (set.empty()) throw std::invalid_argument("tie-break over an empty set");
        return *std::max_element(set.begin(), set.end(), [&](CandidateId a, CandidateId b) { return prefers(a, b); });
    }

    friend bool operator==(const TieBreak& a, const TieBreak& b) { return a.priority_ == b.priority_; }

   private:
    std::vector<CandidateId> priority_;
    std::vector<int> rank_;
};

class Election {
   public:
    Election() = default;

    Election(std::vector<Candidate> candidates, Profile profile, TieBreak tiebreak)
        : candidates_(std::move(candidates)), profile_(std::move(profile)), tiebreak_(std::move(tiebreak)) {
        validate();
    }

    /// Candidates named by `names`, ids in order, default tie-break.
    static Election with_names(const std::vector<std::string>& names, Profile profile = {}) {
        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < names.size(); ++i) cands.push_back({static_cast<CandidateId>(i), names[i]});
        auto m = static_cast<int>(names.size());
        return Election(std::move(cands), std::move(profile), TieBreak::identity(m));
    }

    int m() const { return static_cast<int>(candidates_.size()); }
    const std::vector<Candidate>& candidates() const { return candidates_; }
    const Profile& profile() const { return profile_; }
    const TieBreak& tiebreak() const { return tiebreak_; }
    const std::string& name(CandidateId c) const { return candidates_.at(c).name; }

    CandidateId find(const std::string& name) const {
        for (const auto& c : candidates_) {
            if (c.name == name) return c.id;
        }
        throw std::invalid_argument("unknown candidate '" + name + "'");
    }

    Election with_profile(Profile profile) const { return Election(candidates_, std::move(profile), tiebreak_); }

    friend bool operator==(const Election&, const Election&) = default;

   private:
    void validate() const {
        if (candidates_.empty()) throw std::invalid_argument("election needs at least one candidate");
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
            if (candidates_[i].id != static_cast<CandidateId>(i)) {
                throw std::invalid_argument("candidate ids must be dense 0..m-1");
            }
            if (candidates_[i].name.empty()) throw std::invalid_argument("candidate name is empty");
            for (std::size_t j = 0; j < i; ++j) {
                if (candidates_[j].name == candidates_[i].name) {
                    throw std::invalid_argument("duplicate candidate name '" + candidates_[i].name + "'");
                }
            }
        }
        if (tiebreak_.size() != candidates_.size()) throw std::invalid_argument("tie-break does not cover the candidates");
        for (const auto& [vote, count] : profile_) {
            if (vote.size() != candidates_.size()) {
                throw std::invalid_argument("vote does not rank exactly the candidate list");
            }
        }
    }

    std::vector<Candidate> candidates_;
    Profile profile_;
    TieBreak tiebreak_;
};

}  // namespace elect
