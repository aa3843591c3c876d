#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "multcode/code.hpp"
#include "multcode/linalg.hpp"
#include "multcode/poly.hpp"
#include "multcode/rational.hpp"

namespace multcode {

/// Univariate multiplicity code of order-s evaluations of degree-<=d
/// polynomials over an arbitrary constructed field (the global decoder runs
/// this over F_{q^m}).
template <FiniteFieldType F>
struct UVCodeParams {
    F field;
    uint32_t s;
    uint32_t d;

    UVCodeParams(F f, uint32_t s_, uint32_t d_) : field(std::move(f)), s(s_), d(d_) {
        if (s < 1) throw std::invalid_argument("UVCodeParams: s must be >= 1");
        if (static_cast<uint64_t>(d) >= static_cast<uint64_t>(s) * field.size()) {
            throw std::invalid_argument("UVCodeParams: need d < s*n");
        }
    }

    uint64_t length() const { return field.size(); }
    /// delta = 1 - d/(s n).
    Rational min_distance_lb() const {
        const uint64_t sn = static_cast<uint64_t>(s) * field.size();
        return ratio_of_counts(sn - d, sn);
    }
};

/// Received word: a length-n vector of order-s jets, indexed by
/// field.element_at order.
template <FiniteFieldType F>
struct ReceivedWordUV {
    UVCodeParams<F> params;
    std::vector<std::vector<typename F::Elem>> symbols;  // [n][s]
};

template <FiniteFieldType F>
ReceivedWordUV<F> encode_uv(const UVCodeParams<F>& params, const UVPoly<F>& poly) {
    if (!(poly.field() == params.field)) throw FieldMismatchError("encode_uv: wrong field");
    if (poly.degree() > static_cast<int>(params.d)) throw std::invalid_argument("encode_uv: degree > d");
    const uint64_t n = params.length();
    check_cells(n * params.s, "encode_uv");
    ReceivedWordUV<F> out{params, {}};
    out.symbols.reserve(n);
    BinomTableModP binom(params.field.characteristic(), static_cast<uint32_t>(std::max(poly.degree(), 0)) + 1);
    std::vector<UVPoly<F>> derivs;
    derivs.reserve(params.s);
    for (uint32_t j = 0; j < params.s; ++j) derivs.push_back(hasse_derivative(poly, j, binom));
    for (uint64_t t = 0; t < n; ++t) {
        const typename F::Elem x = params.field.element_at(t);
        std::vector<typename F::Elem> sym;
        sym.reserve(params.s);
        for (uint32_t j = 0; j < params.s; ++j) sym.push_back(derivs[j].eval(x));
        out.symbols.push_back(std::move(sym));
    }
    return out;
}

template <FiniteFieldType F>
uint64_t count_differing_uv(const ReceivedWordUV<F>& a, const ReceivedWordUV<F>& b) {
    if (a.symbols.size() != b.symbols.size()) throw std::invalid_argument("word length mismatch");
    uint64_t cnt = 0;
    for (size_t i = 0; i < a.symbols.size(); ++i)
        if (a.symbols[i] != b.symbols[i]) ++cnt;
    return cnt;
}

template <FiniteFieldType F>
struct UVDecodeSuccess {
    UVPoly<F> poly;
    uint64_t differing;   // coordinates where Enc(poly) differs from the input
    UVPoly<F> locator;    // E(X) from the solved system
    UVPoly<F> numerator;  // N(X) = poly * locator
};

/// Unique decoding to half the minimum distance, the error-locator
/// generalization of Berlekamp-Welch. Searches for E, N with
/// deg E <= e = floor((sn-d)/2), deg N <= e+d satisfying, for every point x
/// and every k < s,
///   N^{(k)}(x) = sum over i <= k of E^{(i)}(x) r^{(k-i)}(x),
/// takes a nonzero kernel vector, and returns N/E when the division is
/// exact, the quotient has degree <= d, and the re-encoded quotient lies
/// strictly within half the minimum distance. The strict verification makes
/// the outcome agree with the brute-force list oracle on every input.
template <FiniteFieldType F>
std::optional<UVDecodeSuccess<F>> unique_decode_uv(const ReceivedWordUV<F>& word) {
    const F& field = word.params.field;
    const uint32_t s = word.params.s;
    const uint32_t d = word.params.d;
    const uint64_t n = field.size();
    if (word.symbols.size() != n) throw std::invalid_argument("unique_decode_uv: bad word length");
    const uint64_t sn = static_cast<uint64_t>(s) * n;

    const uint32_t e = static_cast<uint32_t>((sn - d) / 2);
    const uint32_t n_cols = e + d + 1;  // N coefficients
    const uint32_t e_cols = e + 1;      // E coefficients
    const size_t cols = n_cols + e_cols;
    const size_t rows = sn;
    // more unknowns than equations: a nonzero kernel vector always exists
    if (cols <= rows) throw std::logic_error("unique_decode_uv: unknown count bound violated");
    check_cells(static_cast<uint64_t>(rows) * cols, "unique_decode_uv system");

    BinomTableModP binom(field.characteristic(), static_cast<uint32_t>(e + d) + 1);
    Matrix<typename F::Elem> sys(rows, cols, field.zero());
    for (uint64_t t = 0; t < n; ++t) {
        const typename F::Elem x = field.element_at(t);
        // x^j for j <= e+d
        std::vector<typename F::Elem> xpow{field.one()};
        xpow.reserve(e + d + 1);
        for (uint32_t j = 1; j <= e + d; ++j) xpow.push_back(xpow.back() * x);
        for (uint32_t k = 0; k < s; ++k) {
            const size_t row = t * s + k;
            // N^{(k)}(x): column j gets binom(j,k) x^{j-k}
            for (uint32_t j = k; j < n_cols; ++j) {
                const uint32_t b = binom(j, k);
                if (b) sys.at(row, j) = field.from_int(b) * xpow[j - k];
            }
            // -sum_{i<=k} E^{(i)}(x) r^{(k-i)}(x): column n_cols + j gets
            // -sum_i binom(j,i) x^{j-i} r^{(k-i)}(x)
            for (uint32_t j = 0; j < e_cols; ++j) {
                typename F::Elem acc = field.zero();
                for (uint32_t i = 0; i <= k && i <= j; ++i) {
                    const uint32_t b = binom(j, i);
                    if (!b) continue;
                    acc += field.from_int(b) * xpow[j - i] * word.symbols[t][k - i];
                }
                sys.at(row, n_cols + j) = field.zero() - acc;
            }
        }
    }

    auto kernel = kernel_vector(sys, field.zero(), field.one());
    if (!kernel) return std::nullopt;  // cannot happen: cols > rows

    std::vector<typename F::Elem> n_coeffs(kernel->begin(), kernel->begin() + n_cols);
    std::vector<typename F::Elem> e_coeffs(kernel->begin() + n_cols, kernel->end());
    UVPoly<F> num(field, std::move(n_coeffs));
    UVPoly<F> den(field, std::move(e_coeffs));
    if (den.is_zero()) return std::nullopt;

    auto [quot, rem] = UVPoly<F>::divrem(num, den);
    if (!rem.is_zero()) return std::nullopt;
    if (quot.degree() > static_cast<int>(d)) return std::nullopt;

    const ReceivedWordUV<F> reenc = encode_uv(word.params, quot);
    const uint64_t differing = count_differing_uv(reenc, word);
    // Delta < delta/2 iff 2 s differing < sn - d
    if (2 * s * differing >= sn - d) return std::nullopt;
    return UVDecodeSuccess<F>{std::move(quot), differing, std::move(den), std::move(num)};
}

/// Exhaustive list decoding oracle for tiny instances: the exact set of
/// degree-<=d polynomials whose encoding is strictly within eta of the word,
/// in enumeration order. Guarded by (d+1) log2(n) <= 24.
template <FiniteFieldType F>
std::vector<UVPoly<F>> brute_force_list_decode(const ReceivedWordUV<F>& word, const Rational& eta) {
    const F& field = word.params.field;
    const uint32_t d = word.params.d;
    const uint64_t n = field.size();
    const double bits = (d + 1) * std::log2(static_cast<double>(n));
    if (bits > 24.0) {
        throw CapacityError("brute_force_list_decode: (d+1) log2(n) = " + std::to_string(bits) +
                            " exceeds the enumeration guard 24");
    }
    std::vector<UVPoly<F>> out;
    if (eta <= 0) return out;

    const uint64_t total = pow_u64_checked(n, d + 1, "brute_force_list_decode");
    const mpz_class num = eta.get_num();
    const mpz_class den = eta.get_den();
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<typename F::Elem> coeffs;
        coeffs.reserve(d + 1);
        uint64_t t = code;
        for (uint32_t j = 0; j <= d; ++j) {
            coeffs.push_back(field.element_at(t % n));
            t /= n;
        }
        UVPoly<F> poly(field, std::move(coeffs));
        const uint64_t differing = count_differing_uv(encode_uv(word.params, poly), word);
        // differing/n < eta  <=>  differing * den < num * n
        if (mpz_class(static_cast<unsigned long>(differing)) * den < num * n) {
            out.push_back(std::move(poly));
        }
    }
    return out;
}

/// Conversions between m=1 multivariate codewords and univariate words.
inline ReceivedWordUV<PrimeField> to_univariate(const Codeword& word) {
    if (word.params.m() != 1) throw std::invalid_argument("to_univariate: m must be 1");
    UVCodeParams<PrimeField> params(word.params.field(), word.params.s(), word.params.d());
    return ReceivedWordUV<PrimeField>{params, word.symbols};
}

inline MVPoly<PrimeField> to_mvpoly(const UVPoly<PrimeField>& p) {
    MVPoly<PrimeField> out(p.field(), 1);
    for (size_t j = 0; j < p.coeffs().size(); ++j) {
        out.add_term(MultiIndex({static_cast<uint32_t>(j)}), p.coeffs()[j]);
    }
    return out;
}

inline UVPoly<PrimeField> to_uvpoly(const MVPoly<PrimeField>& p) {
    if (p.arity() != 1) throw std::invalid_argument("to_uvpoly: arity must be 1");
    std::vector<Fp> coeffs(static_cast<size_t>(std::max(p.total_degree(), 0)) + 1, p.field().zero());
    for (const auto& [i, c] : p.terms()) coeffs[i[0]] = c;
    return UVPoly<PrimeField>(p.field(), std::move(coeffs));
}

}  // namespace multcode
