#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "multcode/gf.hpp"
#include "multcode/multiindex.hpp"
#include "multcode/poly.hpp"
#include "multcode/rational.hpp"

namespace multcode {

/// Parameters of the multiplicity code of order-s evaluations of degree-d
/// polynomials in m variables over F_q. Requires q prime and d < s*q so the
/// designed distance is positive.
class CodeParams {
public:
    CodeParams(uint32_t q, uint32_t m, uint32_t s, uint32_t d);

    uint32_t q() const { return q_; }
    uint32_t m() const { return m_; }
    uint32_t s() const { return s_; }
    uint32_t d() const { return d_; }
    const PrimeField& field() const { return field_; }

    uint64_t length() const { return length_; }          // q^m
    uint64_t symbol_len() const { return jets_.size(); }  // binom(m+s-1, m)

    /// Multi-indices of weight < s in graded-lex order; symbol layout.
    const std::vector<MultiIndex>& jet_indices() const { return jets_; }
    size_t jet_position(const MultiIndex& i) const;

    /// delta = 1 - d/(sq).
    Rational min_distance_lb() const;

    bool operator==(const CodeParams& o) const {
        return q_ == o.q_ && m_ == o.m_ && s_ == o.s_ && d_ == o.d_;
    }

private:
    uint32_t q_, m_, s_, d_;
    PrimeField field_;
    uint64_t length_;
    std::vector<MultiIndex> jets_;
};

/// Bijection between points of F_q^m and coordinate indices: point a maps to
/// sum of value(a_j) * q^(m-j), i.e. the first coordinate is most
/// significant. Fixed so codeword files are bit-exact across implementations.
class PointIndexer {
public:
    PointIndexer(uint32_t q, uint32_t m) : q_(q), m_(m) {}

    uint64_t index_of(std::span<const Fp> point) const {
        if (point.size() != m_) throw std::invalid_argument("PointIndexer: wrong arity");
        uint64_t idx = 0;
        for (uint32_t j = 0; j < m_; ++j) idx = idx * q_ + point[j].value();
        return idx;
    }

    std::vector<Fp> point_at(uint64_t idx, const PrimeField& field) const {
        std::vector<Fp> pt(m_, field.zero());
        for (uint32_t j = m_; j-- > 0;) {
            pt[j] = field.element_at(idx % q_);
            idx /= q_;
        }
        return pt;
    }

private:
    uint32_t q_, m_;
};

using Symbol = std::vector<Fp>;

/// A word of the code: q^m symbols in point-lex order, each the order-s jet
/// at the corresponding point. Also used for received (possibly corrupted)
/// words.
struct Codeword {
    CodeParams params;
    std::vector<Symbol> symbols;
};

/// Enc_{s,d,m,q}(P): the symbol at point a is the order-s evaluation of P
/// at a. Rejects polynomials of degree above d.
Codeword encode(const CodeParams& params, const MVPoly<PrimeField>& poly);

struct RateDistance {
    Rational rate;
    Rational distance;
};

/// Exact rate binom(d+m,m) / (binom(s+m-1,m) q^m) and designed distance
/// delta = 1 - d/(sq).
RateDistance rate_and_distance(const CodeParams& params);

/// The product lower bound (s/(m+s))^m * (d/(sq))^m on the rate.
Rational rate_lower_bound(const CodeParams& params);

/// Number of coordinates where full symbols differ.
uint64_t count_differing(const Codeword& a, const Codeword& b);

/// Normalized Hamming distance as an exact rational in [0, 1].
Rational hamming_distance(const Codeword& a, const Codeword& b);

}  // namespace multcode
