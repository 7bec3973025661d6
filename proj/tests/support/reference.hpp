#pragma once

// Naive reference implementations of every rule over an expanded ballot
// list. Written without the library's helpers so the two can be compared.

#include <algorithm>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace ref {

using Ballot = std::vector<int>;
using Q = mpq_class;

struct Outcome {
    std::vector<int> tied;  // sorted co-winners
    int winner;
};

inline int rank_of(const std::vector<int>& priority, int c) {
    return static_cast<int>(std::find(priority.begin(), priority.end(), c) - priority.begin());
}

inline int first_by_priority(const std::vector<int>& set, const std::vector<int>& priority) {
    for (int c : priority) {
        if (std::find(set.begin(), set.end(), c) != set.end()) return c;
    }
    return -1;
}

inline int last_by_priority(const std::vector<int>& set, const std::vector<int>& priority) {
    for (auto it = priority.rbegin(); it != priority.rend(); ++it) {
        if (std::find(set.begin(), set.end(), *it) != set.end()) return *it;
    }
    return -1;
}

inline std::vector<int> best(const std::vector<Q>& score) {
    Q top = *std::max_element(score.begin(), score.end());
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(score.size()); ++c) {
        if (score[c] == top) out.push_back(c);
    }
    return out;
}

inline int beats(const std::vector<Ballot>& ballots, int c, int d) {
    int n = 0;
    for (const auto& b : ballots) {
        for (int x : b) {
            if (x == c) {
                ++n;
                break;
            }
            if (x == d) break;
        }
    }
    return n;
}

inline std::vector<int> positional(const std::vector<Ballot>& ballots, int m, const std::vector<Q>& lambda) {
    std::vector<Q> score(m, 0);
    for (const auto& b : ballots) {
        for (int i = 0; i < m; ++i) score[b[i]] += lambda[i];
    }
    return best(score);
}

inline std::vector<int> copeland(const std::vector<Ballot>& ballots, int m, const Q& alpha) {
    std::vector<Q> score(m, 0);
    for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
            if (c == d) continue;
            int x = beats(ballots, c, d), y = beats(ballots, d, c);
            if (x > y) score[c] += 1;
            if (x == y) score[c] += alpha;
        }
    }
    return best(score);
}

inline std::vector<int> maximin(const std::vector<Ballot>& ballots, int m) {
    std::vector<Q> score(m, 0);
    for (int c = 0; c < m; ++c) {
        int low = 1 << 30;
        for (int d = 0; d < m; ++d) {
            if (d != c) low = std::min(low, beats(ballots, c, d));
        }
        score[c] = low;
    }
    return best(score);
}

inline std::vector<int> bucklin(const std::vector<Ballot>& ballots, int m) {
    const int n = static_cast<int>(ballots.size());
    for (int level = 1; level <= m; ++level) {
        std::vector<int> out;
        for (int c = 0; c < m; ++c) {
            int in_top = 0;
            for (const auto& b : ballots) {
                for (int i = 0; i < level; ++i) in_top += b[i] == c;
            }
            if (2 * in_top > n) out.push_back(c);
        }
        if (!out.empty()) return out;
    }
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

inline std::vector<int> ranked_pairs(const std::vector<Ballot>& ballots, int m) {
    struct Edge {
        int margin, from, to;
    };
    std::vector<Edge> edges;
    for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
            int margin = beats(ballots, c, d) - beats(ballots, d, c);
            if (c != d && margin > 0) edges.push_back({margin, c, d});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.margin != b.margin) return a.margin > b.margin;
        if (a.from != b.from) return a.from < b.from;
        return a.to < b.to;
    });
    std::vector<std::vector<bool>> locked(m, std::vector<bool>(m, false));
    auto path = [&](int from, int to) {
        std::vector<bool> seen(m, false);
        std::vector<int> stack{from};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x == to) return true;
            if (seen[x]) continue;
            seen[x] = true;
            for (int y = 0; y < m; ++y) {
                if (locked[x][y]) stack.push_back(y);
            }
        }
        return false;
    };
    for (const auto& e : edges) {
        if (!path(e.to, e.from)) locked[e.from][e.to] = true;
    }
    std::vector<int> out;
    for (int c = 0; c < m; ++c) {
        bool source = true;
        for (int d = 0; d < m; ++d) source = source && !locked[d][c];
        if (source) out.push_back(c);
    }
    return out;
}

enum class Runoff { Stv, Baldwin, Nanson };

/// Runs rounds until every survivor has the same round score.
inline std::vector<int> runoff(const std::vector<Ballot>& ballots, int m, Runoff kind, const std::vector<int>& priority) {
    std::vector<int> alive(m);
    std::iota(alive.begin(), alive.end(), 0);
    while (true) {
        const int k = static_cast<int>(alive.size());
        std::vector<Q> score(k, 0);
        for (const auto& b : ballots) {
            std::vector<int> left;
            for (int x : b) {
                if (std::find(alive.begin(), alive.end(), x) != alive.end()) left.push_back(x);
            }
            for (int i = 0; i < k; ++i) {
                int slot = static_cast<int>(std::find(alive.begin(), alive.end(), left[i]) - alive.begin());
                if (kind == Runoff::Stv) {
                    score[slot] += i == 0 ? 1 : 0;
                } else {
                    score[slot] += k - 1 - i;
                }
            }
        }
        bool flat = std::all_of(score.begin(), score.end(), [&](const Q& s) { return s == score[0]; });
        if (flat) return alive;
        std::vector<int> next;
        if (kind == Runoff::Nanson) {
            Q sum = std::accumulate(score.begin(), score.end(), Q(0));
            for (int i = 0; i < k; ++i) {
                if (score[i] * k >= sum) next.push_back(alive[i]);
            }
        } else {
            Q low = *std::min_element(score.begin(), score.end());
            std::vector<int> lowest;
            for (int i = 0; i < k; ++i) {
                if (score[i] == low) lowest.push_back(alive[i]);
            }
            int victim = last_by_priority(lowest, priority);
            for (int c : alive) {
                if (c != victim) next.push_back(c);
            }
        }
        alive = next;
    }
}

}  // namespace ref
