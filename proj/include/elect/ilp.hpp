#pragma once

// Integer feasibility over bounded nonnegative variables with rational linear
// constraints. Complete: bound propagation, exact LP relaxation for pruning,
// branching on the most fractional variable, and plain enumeration once the
// remaining box is small.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elect/linear.hpp"
#include "elect/rational.hpp"
#include "elect/simplex.hpp"

namespace elect {

using IlpExpr = LinearExpr<std::size_t>;
using IlpConstraint = LinearConstraint<std::size_t>;

struct IlpVariable {
    std::size_t id = 0;
    std::optional<std::int64_t> upper;  // domain {0..upper}
    std::string name;
};

class IlpInstance {
   public:
    std::size_t add_variable(std::int64_t upper, std::string name = {}) {
        if (upper < 0) throw std::invalid_argument("variable upper bound must be nonnegative");
        return push(upper, std::move(name));
    }

    /// Declares a variable with no upper bound. Solving such an instance throws.
    std::size_t add_unbounded_variable(std::string name = {}) { return push(std::nullopt, std::move(name)); }

    void add_constraint(IlpConstraint c) {
        for (const auto* side : {&c.lhs, &c.rhs}) {
            for (const auto& [id, coef] : side->terms()) {
                if (id >= vars_.size()) throw std::invalid_argument("constraint references an undeclared variable");
            }
        }
        cons_.push_back(std::move(c));
    }
    void add_constraint(IlpExpr lhs, Relation rel, IlpExpr rhs) {
        add_constraint(IlpConstraint{std::move(lhs), rel, std::move(rhs)});
    }

    const std::vector<IlpVariable>& variables() const { return vars_; }
    const std::vector<IlpConstraint>& constraints() const { return cons_; }
    std::size_t size() const { return vars_.size(); }

   private:
    std::size_t push(std::optional<std::int64_t> upper, std::string name) {
        std::size_t id = vars_.size();
        if (name.empty()) name = "x" + std::to_string(id);
        vars_.push_back({id, upper, std::move(name)});
        return id;
    }

    std::vector<IlpVariable> vars_;
    std::vector<IlpConstraint> cons_;
};

struct IlpOptions {
    std::int64_t enumerate_volume = 4096;  // boxes at most this large are swept directly
};

struct Witness {
    std::vector<std::int64_t> values;
    std::int64_t value(std::size_t id) const { return values.at(id); }
};

struct IlpStats {
    std::size_t nodes = 0;
    std::size_t lp_solves = 0;
    std::size_t pivots = 0;
    std::size_t enumerated = 0;
};

/// Exact check against the instance as written (before any normalization).
inline bool verify(const IlpInstance& inst, const Witness& w) {
    if (w.values.size() != inst.size()) return false;
    for (const auto& v : inst.variables()) {
        std::int64_t x = w.values[v.id];
        if (x < 0 || (v.upper && x > *v.upper)) return false;
    }
    auto lookup = [&](std::size_t id) { return to_rational(w.values[id]); };
    for (const auto& c : inst.constraints()) {
        if (!c.satisfied(lookup)) return false;
    }
    return true;
}

namespace detail {

struct Normalized {
    std::vector<IntRow> rows;
    bool infeasible = false;
};

/// Integer rows equivalent to the constraints over integer points.
inline Normalized normalize(const IlpInstance& inst) {
    Normalized out;
    for (const auto& c : inst.constraints()) {
        IlpExpr d = c.difference();
        // difference rel 0  ->  sum a_i x_i rel -constant
        Integer lcm = d.constant().get_den();
        for (const auto& [id, coef] : d.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coef.get_den().get_mpz_t());
        IntRow row;
        for (const auto& [id, coef] : d.terms()) {
            Rational scaled = coef * lcm;
            row.terms.emplace_back(id, scaled.get_num());
        }
        Rational rhs = -d.constant() * lcm;
        row.rhs = rhs.get_num();
        switch (c.rel) {
            case Relation::Less: row.sense = Sense::Le; row.rhs -= 1; break;
            case Relation::LessEqual: row.sense = Sense::Le; break;
            case Relation::Equal: row.sense = Sense::Eq; break;
            case Relation::GreaterEqual: row.sense = Sense::Ge; break;
            case Relation::Greater: row.sense = Sense::Ge; row.rhs += 1; break;
        }
        if (row.terms.empty()) {
            bool ok = row.sense == Sense::Le ? 0 <= row.rhs : row.sense == Sense::Ge ? 0 >= row.rhs : row.rhs == 0;
            if (!ok) out.infeasible = true;
            continue;
        }
        // divide by the coefficient gcd, rounding the bound inward
        Integer g = 0;
        for (const auto& [id, a] : row.terms) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g > 1) {
            for (auto& [id, a] : row.terms) a /= g;
            Integer q;
            if (row.sense == Sense::Eq) {
                if (row.rhs % g != 0) {
                    out.infeasible = true;
                    continue;
                }
                row.rhs /= g;
            } else if (row.sense == Sense::Le) {
                mpz_fdiv_q(q.get_mpz_t(), row.rhs.get_mpz_t(), g.get_mpz_t());
                row.rhs = q;
            } else {
                mpz_cdiv_q(q.get_mpz_t(), row.rhs.get_mpz_t(), g.get_mpz_t());
                row.rhs = q;
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

using Wide = __int128;

/// Rows in machine integers when every partial sum fits comfortably.
struct FastRow {
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    Sense sense = Sense::Le;
    std::int64_t rhs = 0;
};

inline std::optional<std::vector<FastRow>> to_fast(const std::vector<IntRow>& rows, const std::vector<std::int64_t>& hi) {
    constexpr double limit = 1e36;  // well inside __int128
    std::vector<FastRow> out;
    for (const auto& row : rows) {
        if (!fits_int64(row.rhs)) return std::nullopt;
        FastRow f{{}, row.sense, to_int64(row.rhs)};
        double worst = std::abs(static_cast<double>(f.rhs));
        for (const auto& [id, a] : row.terms) {
            if (!fits_int64(a)) return std::nullopt;
            std::int64_t c = to_int64(a);
            worst += std::abs(static_cast<double>(c)) * (static_cast<double>(hi[id]) + 1.0);
            f.terms.emplace_back(id, c);
        }
        if (worst > limit) return std::nullopt;
        out.push_back(std::move(f));
    }
    return out;
}

inline bool row_holds(const FastRow& row, const std::vector<std::int64_t>& x) {
    Wide s = 0;
    for (const auto& [id, a] : row.terms) s += static_cast<Wide>(a) * x[id];
    switch (row.sense) {
        case Sense::Le: return s <= row.rhs;
        case Sense::Ge: return s >= row.rhs;
        case Sense::Eq: return s == row.rhs;
    }
    return false;
}

inline Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

class BranchAndBound {
   public:
    static constexpr int kPropagationRounds = 32;

    BranchAndBound(std::vector<IntRow> rows, std::vector<std::int64_t> hi, IlpOptions options, IlpStats& stats)
        : rows_(std::move(rows)), hi0_(std::move(hi)), limit_(options.enumerate_volume), stats_(stats) {
        fast_ = to_fast(rows_, hi0_);
    }

    std::optional<std::vector<std::int64_t>> run() {
        struct Box {
            std::vector<std::int64_t> lo, hi;
        };
        std::vector<Box> stack;
        stack.push_back({std::vector<std::int64_t>(hi0_.size(), 0), hi0_});
        while (!stack.empty()) {
            Box box = std::move(stack.back());
            stack.pop_back();
            ++stats_.nodes;
            if (!propagate(box.lo, box.hi)) continue;
            if (volume(box.lo, box.hi) <= limit_) {
                if (auto x = enumerate(box.lo, box.hi)) return x;
                continue;
            }
            ++stats_.lp_solves;
            BoundedSimplex lp(rows_, box.lo, box.hi);
            auto relaxed = lp.solve(box.lo, &stats_.pivots);
            if (!relaxed) continue;
            std::optional<std::size_t> branch;
            Rational best_gap;
            for (std::size_t j = 0; j < relaxed->size(); ++j) {
                const Rational& v = (*relaxed)[j];
                if (is_integral(v)) continue;
                Rational frac = v - Rational(floor_of(v));
                Rational gap = abs(frac - Rational(1, 2));
                if (!branch || gap < best_gap) {
                    branch = j;
                    best_gap = gap;
                }
            }
            if (!branch) {
                std::vector<std::int64_t> x;
                for (const auto& v : *relaxed) x.push_back(to_int64(v.get_num()));
                return x;
            }
            const std::size_t j = *branch;
            const Rational& vj = (*relaxed)[j];
            const std::int64_t down = to_int64(floor_of(vj));
            Box up = box;
            up.lo[j] = down + 1;
            box.hi[j] = down;
            // nearer side explored first, floor on an exact half
            if (vj - Rational(down) > Rational(1, 2)) {
                stack.push_back(std::move(box));
                stack.push_back(std::move(up));
            } else {
                stack.push_back(std::move(up));
                stack.push_back(std::move(box));
            }
        }
        return std::nullopt;
    }

   private:
    Wide volume(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) const {
        Wide v = 1;
        for (std::size_t j = 0; j < lo.size(); ++j) {
            v *= static_cast<Wide>(hi[j] - lo[j] + 1);
            if (v > limit_) return v;
        }
        return v;
    }

    // Interval tightening on the machine-integer rows; false when a row cannot hold.
    bool propagate(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) const {
        if (!fast_) return true;
        for (int round = 0; round < kPropagationRounds; ++round) {
            bool changed = false;
            for (const auto& row : *fast_) {
                if (row.sense != Sense::Ge && !tighten(row.terms, row.rhs, 1, lo, hi, changed)) return false;
                if (row.sense != Sense::Le && !tighten(row.terms, row.rhs, -1, lo, hi, changed)) return false;
            }
            if (!changed) break;
        }
        return true;
    }

    // sign * (sum a x) <= sign * rhs
    static bool tighten(const std::vector<std::pair<std::size_t, std::int64_t>>& terms, std::int64_t rhs, int sign,
                        std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi, bool& changed) {
        const Wide b = static_cast<Wide>(rhs) * sign;
        Wide min_act = 0;
        for (const auto& [id, a0] : terms) {
            Wide a = static_cast<Wide>(a0) * sign;
            min_act += a > 0 ? a * lo[id] : a * hi[id];
        }
        if (min_act > b) return false;
        for (const auto& [id, a0] : terms) {
            Wide a = static_cast<Wide>(a0) * sign;
            Wide rest = min_act - (a > 0 ? a * lo[id] : a * hi[id]);
            Wide room = b - rest;
            if (a > 0) {
                Wide cap = floor_div(room, a);
                if (cap < hi[id]) {
                    if (cap < lo[id]) return false;
                    hi[id] = static_cast<std::int64_t>(cap);
                    changed = true;
                }
            } else {
                Wide floor_val = ceil_div(room, a);
                if (floor_val > lo[id]) {
                    if (floor_val > hi[id]) return false;
                    lo[id] = static_cast<std::int64_t>(floor_val);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool holds_exact(const std::vector<std::int64_t>& x) const {
        for (const auto& row : rows_) {
            Integer s = 0;
            for (const auto& [id, a] : row.terms) s += a * to_integer(x[id]);
            bool ok = row.sense == Sense::Le ? s <= row.rhs : row.sense == Sense::Ge ? s >= row.rhs : s == row.rhs;
            if (!ok) return false;
        }
        return true;
    }

    // Lexicographic sweep, first variable most significant.
    std::optional<std::vector<std::int64_t>> enumerate(const std::vector<std::int64_t>& lo,
                                                       const std::vector<std::int64_t>& hi) const {
        std::vector<std::int64_t> x = lo;
        const std::size_t n = x.size();
        while (true) {
            ++stats_.enumerated;
            bool ok = true;
            if (fast_) {
                for (const auto& row : *fast_) {
                    if (!row_holds(row, x)) {
                        ok = false;
                        break;
                    }
                }
            } else {
                ok = holds_exact(x);
            }
            if (ok) return x;
            std::size_t j = n;
            while (j > 0) {
                --j;
                if (x[j] < hi[j]) {
                    ++x[j];
                    break;
                }
                x[j] = lo[j];
                if (j == 0) return std::nullopt;
            }
            if (n == 0) return std::nullopt;
        }
    }

    std::vector<IntRow> rows_;
    std::vector<std::int64_t> hi0_;
    Wide limit_;
    std::optional<std::vector<FastRow>> fast_;
    IlpStats& stats_;
};


// "2 x0 - 1/3 y + 4"
inline std::string format_expr(const IlpInstance& inst, const IlpExpr& e) {
    std::string out;
    auto term = [&](const Rational& value, const std::string& suffix) {
        if (out.empty()) {
            out = to_string(value) + suffix;
        } else {
            out += (value < 0 ? " - " : " + ") + to_string(Rational(abs(value))) + suffix;
        }
    };
    for (const auto& [id, coef] : e.terms()) term(coef, " " + inst.variables()[id].name);
    if (e.constant() != 0 || out.empty()) term(e.constant(), "");
    return out;
}

}  // namespace detail

/// Plain-text listing: bounds first, then one constraint per line.
inline std::string dump(const IlpInstance& inst) {
    std::ostringstream os;
    for (const auto& v : inst.variables()) {
        os << "var " << v.name << " in [0, " << (v.upper ? std::to_string(*v.upper) : std::string("inf")) << "]\n";
    }
    for (std::size_t i = 0; i < inst.constraints().size(); ++i) {
        const auto& c = inst.constraints()[i];
        os << "c" << i << ": " << detail::format_expr(inst, c.lhs) << " " << symbol(c.rel) << " "
           << detail::format_expr(inst, c.rhs) << "\n";
    }
    return os.str();
}

/// A satisfying integer point, or nullopt if none exists. Deterministic.
inline std::optional<Witness> solve_feasibility(const IlpInstance& inst, IlpStats* stats = nullptr,
                                                IlpOptions options = {}) {
    std::vector<std::int64_t> hi;
    for (const auto& v : inst.variables()) {
        if (!v.upper) throw std::invalid_argument("variable " + v.name + " has no upper bound");
        hi.push_back(*v.upper);
    }
    IlpStats local;
    IlpStats& st = stats ? *stats : local;
    auto norm = detail::normalize(inst);
    if (norm.infeasible) return std::nullopt;
    detail::BranchAndBound search(std::move(norm.rows), std::move(hi), options, st);
    auto x = search.run();
    if (!x) return std::nullopt;
    Witness w{std::move(*x)};
    if (!verify(inst, w)) throw std::logic_error("ILP witness failed exact verification");
    return w;
}

}  // namespace elect
