#pragma once

// Exact phase-one simplex over bounded variables. Decides feasibility of
//   sum_j a_ij x_j (<=, >=, =) b_i,   lo_j <= x_j <= hi_j
// in rationals and returns a feasible point. Bland's rule throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "elect/rational.hpp"

namespace elect::detail {

enum class Sense { Le, Ge, Eq };

struct IntRow {
    std::vector<std::pair<std::size_t, Integer>> terms;  // sorted by variable, nonzero
    Sense sense = Sense::Le;
    Integer rhs;
};

class BoundedSimplex {
   public:
    BoundedSimplex(const std::vector<IntRow>& rows, const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi)
        : rows_(rows.size()), structural_(lo.size()) {
        const std::size_t n = structural_;
        // columns: structural, then one slack per inequality row, then artificials as needed
        std::vector<Rational> rhs(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer b = rows[i].rhs;
            for (const auto& [j, a] : rows[i].terms) b -= a * to_integer(lo[j]);
            rhs[i] = Rational(b);
        }
        for (std::size_t j = 0; j < n; ++j) {
            upper_.push_back(Rational(to_integer(hi[j]) - to_integer(lo[j])));
            finite_.push_back(true);
        }
        std::vector<std::optional<std::size_t>> slack_of(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (rows[i].sense == Sense::Eq) continue;
            slack_of[i] = upper_.size();
            upper_.emplace_back(0);
            finite_.push_back(false);
        }
        std::vector<std::optional<std::size_t>> art_of(rows_);
        std::vector<int> row_sign(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            // slack coefficient is +1 for <=, -1 for >=; it can start basic if that keeps it >= 0
            if (slack_of[i]) {
                int coef = rows[i].sense == Sense::Le ? 1 : -1;
                if ((coef > 0 && rhs[i] >= 0) || (coef < 0 && rhs[i] <= 0)) {
                    row_sign[i] = coef;
                    continue;
                }
            }
            row_sign[i] = rhs[i] >= 0 ? 1 : -1;
            art_of[i] = upper_.size();
            upper_.emplace_back(0);
            finite_.push_back(false);
            artificial_.push_back(*art_of[i]);
        }
        cols_ = upper_.size();
        is_artificial_.assign(cols_, false);
        for (std::size_t a : artificial_) is_artificial_[a] = true;

        tableau_.assign(rows_, std::vector<Rational>(cols_, Rational(0)));
        basis_.resize(rows_);
        value_.assign(cols_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            auto& row = tableau_[i];
            const int s = row_sign[i];
            for (const auto& [j, a] : rows[i].terms) row[j] = Rational(a) * s;
            if (slack_of[i]) row[*slack_of[i]] = Rational(rows[i].sense == Sense::Le ? s : -s);
            if (art_of[i]) {
                row[*art_of[i]] = 1;
                basis_[i] = *art_of[i];
            } else {
                basis_[i] = *slack_of[i];
            }
            value_[basis_[i]] = rhs[i] * s;
        }
    }

    /// Runs phase one; returns structural values (shifted back by lo) if feasible.
    std::optional<std::vector<Rational>> solve(const std::vector<std::int64_t>& lo, std::size_t* pivots = nullptr) {
        std::vector<bool> basic(cols_, false);
        for (std::size_t b : basis_) basic[b] = true;
        std::vector<Rational> reduced(cols_);
        while (true) {
            // reduced costs of the phase-one objective sum(artificials)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (basic[j]) continue;
                Rational d = is_artificial_[j] ? Rational(1) : Rational(0);
                for (std::size_t i = 0; i < rows_; ++i) {
                    if (is_artificial_[basis_[i]] && tableau_[i][j] != 0) d -= tableau_[i][j];
                }
                reduced[j] = std::move(d);
            }
            std::optional<std::size_t> entering;
            int direction = 0;
            for (std::size_t j = 0; j < cols_ && !entering; ++j) {
                if (basic[j]) continue;
                bool can_rise = !finite_[j] || value_[j] < upper_[j];
                bool can_fall = value_[j] > 0;
                if (reduced[j] < 0 && can_rise) {
                    entering = j;
                    direction = 1;
                } else if (reduced[j] > 0 && can_fall) {
                    entering = j;
                    direction = -1;
                }
            }
            if (!entering) break;
            const std::size_t e = *entering;

            // ratio test; ties go to the smallest variable index
            std::optional<Rational> step;
            std::optional<std::size_t> leave_row;
            std::size_t leave_var = 0;
            if (finite_[e]) {
                step = upper_[e];
                leave_var = e;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                const Rational& t = tableau_[i][e];
                if (t == 0) continue;
                // basic value moves by -t * direction per unit step
                const std::size_t b = basis_[i];
                Rational rate = -t * direction;
                std::optional<Rational> limit;
                if (rate < 0) {
                    limit = value_[b] / -rate;
                } else if (finite_[b]) {
                    limit = (upper_[b] - value_[b]) / rate;
                }
                if (!limit) continue;
                if (!step || *limit < *step || (*limit == *step && b < leave_var)) {
                    step = *limit;
                    leave_row = i;
                    leave_var = b;
                }
            }
            if (!step) break;  // unbounded descent cannot happen for a sum of nonnegatives

            const Rational delta = *step * direction;
            value_[e] += delta;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tableau_[i][e] != 0) value_[basis_[i]] -= tableau_[i][e] * delta;
            }
            if (!leave_row) continue;  // bound flip

            const std::size_t r = *leave_row;
            const std::size_t out = basis_[r];
            pivot(r, e);
            basic[out] = false;
            basic[e] = true;
            if (is_artificial_[out]) {
                finite_[out] = true;
                upper_[out] = 0;
                value_[out] = 0;
            }
            if (pivots) ++*pivots;
        }
        Rational infeasibility = 0;
        for (std::size_t a : artificial_) infeasibility += value_[a];
        if (infeasibility != 0) return std::nullopt;
        std::vector<Rational> x(structural_);
        for (std::size_t j = 0; j < structural_; ++j) x[j] = value_[j] + Rational(to_integer(lo[j]));
        return x;
    }

   private:
    void pivot(std::size_t r, std::size_t e) {
        auto& prow = tableau_[r];
        const Rational inv = 1 / prow[e];
        for (auto& v : prow) {
            if (v != 0) v *= inv;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || tableau_[i][e] == 0) continue;
            const Rational factor = tableau_[i][e];
            auto& row = tableau_[i];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (prow[j] != 0) row[j] -= factor * prow[j];
            }
        }
        basis_[r] = e;
    }

    std::size_t rows_;
    std::size_t structural_;
    std::size_t cols_ = 0;
    std::vector<Rational> upper_;
    std::vector<bool> finite_;
    std::vector<std::size_t> artificial_;
    std::vector<bool> is_artificial_;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> value_;
};

}  // namespace elect::detail
