#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "multcode/util.hpp"

namespace multcode {

/// Exact rational arithmetic (arbitrary-precision integer pairs).
using Rational = mpq_class;

inline Rational make_ratio(long num, long den) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational ratio_of_counts(uint64_t num, uint64_t den) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    Rational r(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
    r.canonicalize();
    return r;
}

/// Parses "a/b" or a bare integer "a". Used for CLI flags (rates, delta0).
inline Rational parse_ratio(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r(mpz_class(text), 1);
            r.canonicalize();
            return r;
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw FormatError("rational '" + text + "' has zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw FormatError("cannot parse rational '" + text + "' (expected a/b)");
    }
}

inline std::string ratio_str(const Rational& r) { return r.get_str(); }

inline mpz_class binomial_z(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

/// binom(n+k-1, n) etc. as uint64 with overflow guard; desk-scale helper.
inline uint64_t binomial_u64(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    mpz_class b = binomial_z(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!b.fits_ulong_p()) throw CapacityError("binomial exceeds 64 bits");
    return b.get_ui();
}

}  // namespace multcode
