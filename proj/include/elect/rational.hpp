#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace elect {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "N" or "N/D" (optional leading minus) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s) {
            if (ch < '0' || ch > '9') return false;
        }
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    std::string ns(num);
    if (!ns.empty() && ns.front() == '+') ns.erase(0, 1);
    Integer n(ns), d{std::string(den)};
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil_of(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline bool fits_int64(const Integer& z) {
    static const Integer lo(std::to_string(INT64_MIN));
    static const Integer hi(std::to_string(INT64_MAX));
    return z >= lo && z <= hi;
}

inline std::int64_t to_int64(const Integer& z) {
    if (!fits_int64(z)) {
        throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    }
    // mpz_get_si is exact for values in the range of long, which is 64-bit here.
    static_assert(sizeof(long) == 8, "expects LP64");
    return mpz_get_si(z.get_mpz_t());
}

inline Integer to_integer(std::int64_t v) {
    Integer z;
    static_assert(sizeof(long) == 8, "expects LP64");
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

inline Rational to_rational(std::int64_t v) { return Rational(to_integer(v)); }

}  // namespace elect
