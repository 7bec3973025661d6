#pragma once

// Direct (reference) winner determination for every supported rule.
//
// Co-winner semantics, before tie-breaking:
//   positional, Copeland, Maximin  candidates with maximal score
//   Bucklin                        candidates with the smallest majority level
//   Ranked pairs                   sources of the locked digraph
//   STV, Baldwin, Nanson           the survivors at the first round in which
//                                  all remaining candidates have equal round
//                                  score (a single survivor is trivially tied)
// In runoff rounds STV and Baldwin drop the minimum-score candidate, the
// lowest-priority one among tied minima; Nanson drops everyone strictly below
// the round average. The winner is the tie-break-first co-winner. An empty
// profile has no co-winners, and its winner is the tie-break-first candidate.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "elect/election.hpp"
#include "elect/rational.hpp"
#include "elect/rule.hpp"

namespace elect {

/// Projects the election onto `keep`. Kept candidates are renumbered densely
/// in increasing order of their original ids.
inline Election restrict(const Election& election, std::span<const CandidateId> keep) {
    std::vector<CandidateId> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw std::invalid_argument("restriction to an empty candidate set");
    std::vector<CandidateId> new_id(static_cast<std::size_t>(election.m()), -1);
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] < 0 || kept[i] >= election.m()) throw std::out_of_range("restriction to an unknown candidate");
        new_id[kept[i]] = static_cast<CandidateId>(i);
        cands.push_back({static_cast<CandidateId>(i), election.name(kept[i])});
    }
    auto project = [&](const std::vector<CandidateId>& order) {
        std::vector<CandidateId> out;
        out.reserve(kept.size());
        for (CandidateId c : order) {
            if (new_id[c] >= 0) out.push_back(new_id[c]);
        }
        return out;
    };
    Profile profile;
    for (const auto& [vote, count] : election.profile()) profile.add(Vote(project(vote.ranking())), count);
    return Election(std::move(cands), std::move(profile), TieBreak(project(election.tiebreak().priority())));
}

namespace detail {

using CountMatrix = std::vector<std::vector<Count>>;

/// N[c][d] = number of votes preferring c to d.
inline CountMatrix pairwise_counts(const Election& election) {
    auto m = static_cast<std::size_t>(election.m());
    CountMatrix n(m, std::vector<Count>(m, 0));
    for (const auto& [vote, count] : election.profile()) {
        const auto& r = vote.ranking();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) n[r[i]][r[j]] += count;
        }
    }
    return n;
}

inline std::vector<CandidateId> all_candidates(int m) {
    std::vector<CandidateId> out(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) out[c] = c;
    return out;
}

template <typename Score>
std::vector<CandidateId> argmax_set(const std::vector<Score>& scores) {
    std::vector<CandidateId> out;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (out.empty() || scores[c] > scores[out.front()]) {
            out.assign(1, static_cast<CandidateId>(c));
        } else if (scores[c] == scores[out.front()]) {
            out.push_back(static_cast<CandidateId>(c));
        }
    }
    return out;
}

struct WeightedEdge {
    CandidateId from, to;
    Rational weight;
};

/// Ranked pairs locking over m candidates. Edges lock in order of decreasing
/// weight, equal weights by lexicographically smaller (winner, loser); an edge
/// closing a cycle is skipped. Returns the locked-graph sources.
inline std::vector<CandidateId> ranked_pairs_sources(int m, std::vector<WeightedEdge> edges) {
    std::stable_sort(edges.begin(), edges.end(), [&](const WeightedEdge& x, const WeightedEdge& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return std::pair(x.from, x.to) < std::pair(y.from, y.to);
    });
    std::vector<std::vector<bool>> locked(m, std::vector<bool>(m, false));
    auto reaches = [&](CandidateId from, CandidateId to) {
        std::vector<bool> seen(m, false);
        std::vector<CandidateId> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            CandidateId u = stack.back();
            stack.pop_back();
            if (u == to) return true;
            for (int v = 0; v < m; ++v) {
                if (locked[u][v] && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        return false;
    };
    for (const WeightedEdge& e : edges) {
        if (!reaches(e.to, e.from)) locked[e.from][e.to] = true;
    }
    std::vector<CandidateId> sources;
    for (int c = 0; c < m; ++c) {
        bool beaten = false;
        for (int d = 0; d < m; ++d) beaten = beaten || locked[d][c];
        if (!beaten) sources.push_back(c);
    }
    return sources;
}

/// Ranked pairs over a margin matrix: the positive-margin pairs, weighted by margin.
inline std::vector<CandidateId> ranked_pairs_sources(const std::vector<std::vector<Rational>>& margin) {
    const int m = static_cast<int>(margin.size());
    std::vector<WeightedEdge> edges;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (a != b && margin[a][b] > 0) edges.push_back({a, b, margin[a][b]});
        }
    }
    return ranked_pairs_sources(m, std::move(edges));
}

inline std::vector<Rational> positional_scores(const std::vector<Rational>& lambda, const Election& election) {
    std::vector<Rational> score(static_cast<std::size_t>(election.m()), Rational(0));
    for (const auto& [vote, count] : election.profile()) {
        for (std::size_t pos = 0; pos < vote.size(); ++pos) score[vote.at(pos)] += lambda[pos] * count;
    }
    return score;
}

inline std::vector<Rational> copeland_scores(const Rational& alpha, const CountMatrix& n) {
    const std::size_t m = n.size();
    std::vector<Rational> score(m, Rational(0));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t d = 0; d < m; ++d) {
            if (c == d) continue;
            if (n[c][d] > n[d][c]) {
                score[c] += 1;
            } else if (n[c][d] == n[d][c]) {
                score[c] += alpha;
            }
        }
    }
    return score;
}

/// Round score used by a runoff rule on the (already restricted) election.
inline std::vector<Rational> runoff_round_scores(RuleFamily family, const Election& round) {
    if (family == RuleFamily::Stv) {
        std::vector<Rational> top(static_cast<std::size_t>(round.m()), Rational(0));
        for (const auto& [vote, count] : round.profile()) top[vote.at(0)] += count;
        return top;
    }
    return positional_scores(Rule::borda().scoring_vector(round.m()), round);
}

/// Runs a runoff rule; returns the final tied survivor set in original ids.
/// `majority_stop` lets STV stop as soon as a candidate holds a strict
/// majority of first places.
inline std::vector<CandidateId> runoff_survivors(RuleFamily family, const Election& election, bool majority_stop) {
    const auto& tb = election.tiebreak();
    const Rational n = to_rational(election.profile().total());
    std::vector<CandidateId> alive = all_candidates(election.m());
    while (true) {
        Election round = alive.size() == static_cast<std::size_t>(election.m()) ? election : restrict(election, alive);
        std::vector<Rational> score = runoff_round_scores(family, round);
        if (std::all_of(score.begin(), score.end(), [&](const Rational& s) { return s == score.front(); })) {
            return alive;
        }
        if (family == RuleFamily::Stv && majority_stop) {
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (2 * score[i] > n) return {alive[i]};
            }
        }
        std::vector<CandidateId> next;
        if (family == RuleFamily::Nanson) {
            Rational sum = 0;
            for (const auto& s : score) sum += s;
            const Rational avg = sum / static_cast<long>(alive.size());
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (!(score[i] < avg)) next.push_back(alive[i]);
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

/// Co-winners ignoring the empty-profile convention (an empty profile ties
/// every candidate).
inline std::vector<CandidateId> tied_winners(const Rule& rule, const Election& election) {
    const int m = election.m();
    if (m == 1) return {0};
    switch (rule.family()) {
        case RuleFamily::Positional:
            return argmax_set(positional_scores(rule.scoring_vector(m), election));
        case RuleFamily::Copeland:
            return argmax_set(copeland_scores(rule.alpha(), pairwise_counts(election)));
        case RuleFamily::Maximin: {
            CountMatrix n = pairwise_counts(election);
            std::vector<Count> score(m);
            for (int c = 0; c < m; ++c) {
                Count low = -1;
                for (int d = 0; d < m; ++d) {
                    if (d != c && (low < 0 || n[c][d] < low)) low = n[c][d];
                }
                score[c] = low;
            }
            return argmax_set(score);
        }
        case RuleFamily::Bucklin: {
            const Count n = election.profile().total();
            if (n == 0) return all_candidates(m);
            std::vector<std::vector<Count>> within(m, std::vector<Count>(m, 0));
            for (const auto& [vote, count] : election.profile()) {
                for (int pos = 0; pos < m; ++pos) {
                    for (int level = pos; level < m; ++level) within[vote.at(pos)][level] += count;
                }
            }
            std::vector<int> level(m, m);
            for (int c = 0; c < m; ++c) {
                for (int l = 0; l < m; ++l) {
                    if (2 * within[c][l] > n) {
                        level[c] = l;
                        break;
                    }
                }
            }
            int best = *std::min_element(level.begin(), level.end());
            std::vector<CandidateId> out;
            for (int c = 0; c < m; ++c) {
                if (level[c] == best) out.push_back(c);
            }
            return out;
        }
        case RuleFamily::RankedPairs: {
            CountMatrix n = pairwise_counts(election);
            std::vector<std::vector<Rational>> margin(m, std::vector<Rational>(m, Rational(0)));
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) margin[a][b] = to_rational(n[a][b] - n[b][a]);
            }
            return ranked_pairs_sources(margin);
        }
        case RuleFamily::Stv:
        case RuleFamily::Nanson:
        case RuleFamily::Baldwin:
            return runoff_survivors(rule.family(), election, true);
    }
    throw std::logic_error("unhandled rule family");
}

}  // namespace detail

/// Co-winners before tie-breaking, sorted by id; empty for an empty profile.
inline std::vector<CandidateId> cowinners(const Rule& rule, const Election& election) {
    if (election.profile().empty()) return {};
    auto out = detail::tied_winners(rule, election);
    std::sort(out.begin(), out.end());
    return out;
}

/// The unique tie-broken winner.
inline CandidateId evaluate(const Rule& rule, const Election& election) {
    return election.tiebreak().first_of(detail::tied_winners(rule, election));
}

}  // namespace elect
