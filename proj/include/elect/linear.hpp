#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elect/rational.hpp"

namespace elect {

enum class Relation { Less, LessEqual, Equal, GreaterEqual, Greater };

inline const char* symbol(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Equal: return "=";
        case Relation::GreaterEqual: return ">=";
        case Relation::Greater: return ">";
    }
    return "?";
}

inline bool holds(const Rational& lhs, Relation rel, const Rational& rhs) {
    switch (rel) {
        case Relation::Less: return lhs < rhs;
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
        case Relation::Greater: return lhs > rhs;
    }
    return false;
}

/// Affine expression sum(coef * var) + constant over variables of type Key.
/// Zero coefficients are never stored.
template <typename Key>
class LinearExpr {
   public:
    using Terms = std::map<Key, Rational>;

    LinearExpr() = default;
    LinearExpr(Rational constant) : constant_(std::move(constant)) {}  // NOLINT(implicit)

    static LinearExpr variable(const Key& key, Rational coef = 1) {
        LinearExpr e;
        e.add(key, coef);
        return e;
    }

    void add(const Key& key, const Rational& coef) {
        if (coef == 0) return;
        auto [it, inserted] = terms_.try_emplace(key, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }
    Rational coefficient(const Key& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    bool is_constant() const { return terms_.empty(); }

    LinearExpr& operator+=(const LinearExpr& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        constant_ += o.constant_;
        return *this;
    }
    LinearExpr& operator-=(const LinearExpr& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        constant_ -= o.constant_;
        return *this;
    }
    LinearExpr& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            constant_ = 0;
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        constant_ *= s;
        return *this;
    }

    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(const Rational& s, LinearExpr a) { return a *= s; }
    friend LinearExpr operator*(LinearExpr a, const Rational& s) { return a *= s; }
    friend LinearExpr operator-(LinearExpr a) { return a *= Rational(-1); }

    /// Value under an assignment; `value(key)` must return something convertible to Rational.
    template <typename Lookup>
    Rational evaluate(Lookup&& value) const {
        Rational sum = constant_;
        for (const auto& [k, c] : terms_) sum += c * Rational(value(k));
        return sum;
    }

    /// Replaces every variable by an expression over another key type.
    template <typename Other, typename Lookup>
    LinearExpr<Other> substitute(Lookup&& image) const {
        LinearExpr<Other> out(constant_);
        for (const auto& [k, c] : terms_) out += c * image(k);
        return out;
    }

    friend bool operator==(const LinearExpr&, const LinearExpr&) = default;

   private:
    Terms terms_;
    Rational constant_ = 0;
};

template <typename Key>
struct LinearConstraint {
    LinearExpr<Key> lhs;
    Relation rel = Relation::LessEqual;
    LinearExpr<Key> rhs;

    /// lhs - rhs, so the constraint reads difference() rel 0.
    LinearExpr<Key> difference() const { return lhs - rhs; }

    template <typename Lookup>
    bool satisfied(Lookup&& value) const {
        return holds(lhs.evaluate(value), rel, rhs.evaluate(value));
    }

    template <typename Other, typename Lookup>
    LinearConstraint<Other> substitute(Lookup&& image) const {
        return {lhs.template substitute<Other>(image), rel, rhs.template substitute<Other>(image)};
    }
};

template <typename Key>
LinearConstraint<Key> make_constraint(LinearExpr<Key> lhs, Relation rel, LinearExpr<Key> rhs) {
    return {std::move(lhs), rel, std::move(rhs)};
}

}  // namespace elect
