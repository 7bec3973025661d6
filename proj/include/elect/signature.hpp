#pragma once

// Comparison signatures of score vectors: for every pair of components,
// whether the first is smaller, equal or larger. A consistent signature is a
// weak order on the components, i.e. an ordered set partition.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "elect/rational.hpp"

namespace elect {

using ScoreVector = std::vector<Rational>;

enum class Order : std::int8_t { Less = -1, Equal = 0, Greater = 1 };

inline Order flip(Order o) { return static_cast<Order>(-static_cast<int>(o)); }

class Signature {
   public:
    Signature() = default;
    explicit Signature(int k) : k_(k), rel_(static_cast<std::size_t>(k) * (k > 0 ? k - 1 : 0) / 2, Order::Equal) {
        if (k < 0) throw std::invalid_argument("negative signature size");
    }

    int size() const { return k_; }

    Order relation(int i, int j) const {
        if (i == j) return Order::Equal;
        return i < j ? rel_[index(i, j)] : flip(rel_[index(j, i)]);
    }

    void set(int i, int j, Order o) {
        if (i == j) throw std::invalid_argument("self relation");
        if (i < j) {
            rel_[index(i, j)] = o;
        } else {
            rel_[index(j, i)] = flip(o);
        }
    }

    /// Number of components strictly below each component.
    std::vector<int> below_counts() const {
        std::vector<int> below(static_cast<std::size_t>(k_), 0);
        for (int i = 0; i < k_; ++i) {
            for (int j = 0; j < k_; ++j) {
                if (relation(i, j) == Order::Greater) ++below[i];
            }
        }
        return below;
    }

    bool is_consistent() const;

    /// Equivalence blocks, lowest first. Requires consistency.
    std::vector<std::vector<int>> blocks() const;

    /// e.g. "1>2, 1>3, 3>2" (1-based, one entry per unordered pair).
    std::string str() const {
        std::string out;
        for (int i = 0; i < k_; ++i) {
            for (int j = i + 1; j < k_; ++j) {
                if (!out.empty()) out += ", ";
                Order o = relation(i, j);
                int a = i + 1, b = j + 1;
                if (o == Order::Less) std::swap(a, b);
                out += std::to_string(a) + (o == Order::Equal ? "=" : ">") + std::to_string(b);
            }
        }
        return out;
    }

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;

   private:
    std::size_t index(int i, int j) const {
        // row-major upper triangle, i < j
        return static_cast<std::size_t>(i) * (2 * k_ - i - 1) / 2 + (j - i - 1);
    }

    int k_ = 0;
    std::vector<Order> rel_;
};

template <typename T>
Signature signature_of(const std::vector<T>& v) {
    const int k = static_cast<int>(v.size());
    Signature s(k);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            s.set(i, j, v[i] < v[j] ? Order::Less : (v[j] < v[i] ? Order::Greater : Order::Equal));
        }
    }
    return s;
}

inline bool Signature::is_consistent() const {
    // A weak order is reproduced by its "strictly below" counts; anything else is not.
    return signature_of(below_counts()) == *this;
}

/// Block-rank vector: bottom block 0, next block 1, and so on.
inline ScoreVector representative(const Signature& s) {
    if (!s.is_consistent()) throw std::invalid_argument("inconsistent signature: " + s.str());
    std::vector<int> below = s.below_counts();
    std::vector<int> levels = below;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    ScoreVector out;
    out.reserve(below.size());
    for (int b : below) {
        out.emplace_back(static_cast<long>(std::lower_bound(levels.begin(), levels.end(), b) - levels.begin()));
    }
    return out;
}

inline std::vector<std::vector<int>> Signature::blocks() const {
    ScoreVector rank = representative(*this);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < k_; ++i) {
        auto r = static_cast<std::size_t>(rank[i].get_num().get_ui());
        if (out.size() <= r) out.resize(r + 1);
        out[r].push_back(i);
    }
    return out;
}

/// Ordered Bell (Fubini) number: count of weak orders on k elements.
inline std::uint64_t fubini(int k) {
    // a(n) = sum_{j=1..n} C(n,j) a(n-j)
    std::vector<std::uint64_t> a(static_cast<std::size_t>(k) + 1, 0);
    a[0] = 1;
    for (int n = 1; n <= k; ++n) {
        std::uint64_t binom = 1;
        for (int j = 1; j <= n; ++j) {
            binom = binom * static_cast<std::uint64_t>(n - j + 1) / static_cast<std::uint64_t>(j);
            a[n] += binom * a[n - j];
        }
    }
    return a[k];
}

/// Restartable stream over every weak order on {0..k-1}, each exactly once.
/// Order: set partitions by restricted growth string, then block ranks by
/// lexicographic permutation.
class SignatureStream {
   public:
    explicit SignatureStream(int k) : k_(k) {
        if (k < 1) throw std::invalid_argument("signature stream needs k >= 1");
        reset();
    }

    void reset() {
        rgs_.assign(static_cast<std::size_t>(k_), 0);
        start_partition();
        done_ = false;
    }

    std::optional<Signature> next() {
        if (done_) return std::nullopt;
        std::vector<int> rank(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) rank[i] = perm_[rgs_[i]];
        Signature out = signature_of(rank);
        advance();
        return out;
    }

   private:
    void start_partition() {
        int blocks = *std::max_element(rgs_.begin(), rgs_.end()) + 1;
        perm_.resize(static_cast<std::size_t>(blocks));
        std::iota(perm_.begin(), perm_.end(), 0);
    }

    void advance() {
        if (std::next_permutation(perm_.begin(), perm_.end())) return;
        // next restricted growth string
        for (int i = k_ - 1; i >= 1; --i) {
            int prefix_max = *std::max_element(rgs_.begin(), rgs_.begin() + i);
            if (rgs_[i] <= prefix_max) {
                ++rgs_[i];
                std::fill(rgs_.begin() + i + 1, rgs_.end(), 0);
                start_partition();
                return;
            }
        }
        done_ = true;
    }

    int k_;
    std::vector<int> rgs_;
    std::vector<int> perm_;
    bool done_ = false;
};

template <typename Fn>
void for_each_signature(int k, Fn&& fn) {
    SignatureStream stream(k);
    while (auto s = stream.next()) {
        if constexpr (std::is_same_v<decltype(fn(*s)), bool>) {
            if (!fn(*s)) return;
        } else {
            fn(*s);
        }
    }
}

inline std::vector<Signature> enumerate_signatures(int k) {
    std::vector<Signature> out;
    for_each_signature(k, [&](const Signature& s) { out.push_back(s); });
    return out;
}

}  // namespace elect
