#pragma once

#include <limits>
#include <map>
#include <span>
#include <vector>

#include "multcode/gf.hpp"
#include "multcode/multiindex.hpp"
#include "multcode/util.hpp"

namespace multcode {

/// Dense univariate polynomial over a field, coefficients low-to-high,
/// trailing coefficient nonzero unless the polynomial is zero.
template <FiniteFieldType F>
class UVPoly {
public:
    using Elem = typename F::Elem;

    explicit UVPoly(F field) : field_(std::move(field)) {}
    UVPoly(F field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

    static UVPoly monomial(F field, uint32_t degree, Elem coeff) {
        std::vector<Elem> c(degree + 1, field.zero());
        c[degree] = coeff;
        return UVPoly(std::move(field), std::move(c));
    }

    const F& field() const { return field_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(size_t j) const { return j < c_.size() ? c_[j] : field_.zero(); }

    friend UVPoly operator+(const UVPoly& a, const UVPoly& b) {
        a.check_field(b);
        std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) + b.coeff(j);
        return UVPoly(a.field_, std::move(c));
    }
    friend UVPoly operator-(const UVPoly& a, const UVPoly& b) {
        a.check_field(b);
        std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) - b.coeff(j);
        return UVPoly(a.field_, std::move(c));
    }
    friend UVPoly operator*(const UVPoly& a, const UVPoly& b) {
        a.check_field(b);
        if (a.is_zero() || b.is_zero()) return UVPoly(a.field_);
        std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UVPoly(a.field_, std::move(c));
    }
    UVPoly scaled(const Elem& s) const {
        std::vector<Elem> c(c_);
        for (auto& x : c) x = x * s;
        return UVPoly(field_, std::move(c));
    }

    bool operator==(const UVPoly& o) const { return c_ == o.c_; }

    Elem eval(const Elem& x) const {
        Elem acc = field_.zero();
        for (size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
        return acc;
    }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<UVPoly, UVPoly> divrem(const UVPoly& a, const UVPoly& b) {
        a.check_field(b);
        if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
        if (a.degree() < b.degree()) return {UVPoly(a.field_), a};
        std::vector<Elem> rem(a.c_);
        std::vector<Elem> quot(a.c_.size() - b.c_.size() + 1, a.field_.zero());
        const Elem lead_inv = b.c_.back().inv();
        for (size_t k = rem.size(); k-- > 0;) {
            if (k + 1 < b.c_.size()) break;
            if (rem[k].is_zero()) continue;
            const Elem f = rem[k] * lead_inv;
            const size_t shift = k + 1 - b.c_.size();
            quot[shift] = f;
            for (size_t j = 0; j < b.c_.size(); ++j) rem[shift + j] -= f * b.c_[j];
        }
        return {UVPoly(a.field_, std::move(quot)), UVPoly(a.field_, std::move(rem))};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check_field(const UVPoly& o) const {
        if (!(field_ == o.field_)) throw FieldMismatchError("UVPoly fields differ");
    }

    F field_;
    std::vector<Elem> c_;
};

/// k-th Hasse derivative of a univariate polynomial:
/// coefficient j of the result is binom(j+k, k) * coeff(j+k).
template <FiniteFieldType F>
UVPoly<F> hasse_derivative(const UVPoly<F>& p, uint32_t k, const BinomTableModP& binom) {
    if (p.is_zero() || static_cast<int>(k) > p.degree()) return UVPoly<F>(p.field());
    std::vector<typename F::Elem> c;
    c.reserve(p.degree() - k + 1);
    for (uint32_t j = 0; j + k <= static_cast<uint32_t>(p.degree()); ++j) {
        c.push_back(p.field().from_int(binom(j + k, k)) * p.coeff(j + k));
    }
    return UVPoly<F>(p.field(), std::move(c));
}

template <FiniteFieldType F>
UVPoly<F> hasse_derivative(const UVPoly<F>& p, uint32_t k) {
    BinomTableModP binom(p.field().characteristic(), std::max(p.degree(), 0) + 1);
    return hasse_derivative(p, k, binom);
}

/// Jet of a univariate polynomial at a point: (Q^{(0)}(t), ..., Q^{(s-1)}(t)),
/// computed by repeated synthetic division — the remainders are exactly the
/// coefficients of Q expanded around t.
template <FiniteFieldType F>
std::vector<typename F::Elem> uv_jets_at(const UVPoly<F>& p, const typename F::Elem& t, uint32_t s) {
    std::vector<typename F::Elem> work(p.coeffs());
    std::vector<typename F::Elem> out;
    out.reserve(s);
    for (uint32_t j = 0; j < s; ++j) {
        if (work.empty()) {
            out.push_back(p.field().zero());
            continue;
        }
        // synthetic division by (X - t): remainder is the next jet entry,
        // quotient replaces work
        typename F::Elem acc = p.field().zero();
        for (size_t k = work.size(); k-- > 0;) {
            typename F::Elem tmp = work[k];
            work[k] = acc;
            acc = acc * t + tmp;
        }
        out.push_back(acc);
        work.pop_back();
    }
    return out;
}

/// Sparse multivariate polynomial over a field: graded-lex ordered term map,
/// no explicit zero coefficients.
template <FiniteFieldType F>
class MVPoly {
public:
    using Elem = typename F::Elem;
    using TermMap = std::map<MultiIndex, Elem>;

    MVPoly(F field, size_t m) : field_(std::move(field)), m_(m) {}

    static MVPoly monomial(F field, MultiIndex i, Elem coeff) {
        MVPoly p(std::move(field), i.arity());
        p.add_term(std::move(i), std::move(coeff));
        return p;
    }

    const F& field() const { return field_; }
    size_t arity() const { return m_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [i, c] : terms_) d = std::max(d, static_cast<int>(i.weight()));
        return d;
    }

    void add_term(MultiIndex i, Elem coeff) {
        if (i.arity() != m_) throw std::invalid_argument("MVPoly: term arity mismatch");
        if (coeff.is_zero()) return;
        auto it = terms_.find(i);
        if (it == terms_.end()) {
            terms_.emplace(std::move(i), std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Elem coeff(const MultiIndex& i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    friend MVPoly operator+(const MVPoly& a, const MVPoly& b) {
        a.check_compatible(b);
        MVPoly out = a;
        for (const auto& [i, c] : b.terms_) out.add_term(i, c);
        return out;
    }
    friend MVPoly operator-(const MVPoly& a, const MVPoly& b) {
        a.check_compatible(b);
        MVPoly out = a;
        for (const auto& [i, c] : b.terms_) out.add_term(i, a.field_.zero() - c);
        return out;
    }
    friend MVPoly operator*(const MVPoly& a, const MVPoly& b) {
        a.check_compatible(b);
        MVPoly out(a.field_, a.m_);
        for (const auto& [i, ci] : a.terms_) {
            for (const auto& [j, cj] : b.terms_) out.add_term(i.plus(j), ci * cj);
        }
        return out;
    }
    MVPoly scaled(const Elem& s) const {
        MVPoly out(field_, m_);
        for (const auto& [i, c] : terms_) out.add_term(i, c * s);
        return out;
    }

    bool operator==(const MVPoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

    Elem eval(std::span<const Elem> point) const {
        if (point.size() != m_) throw std::invalid_argument("MVPoly::eval: wrong point arity");
        // powers per variable up to the max exponent present
        std::vector<std::vector<Elem>> pows(m_);
        for (size_t k = 0; k < m_; ++k) pows[k].push_back(field_.one());
        uint32_t maxe = 0;
        for (const auto& [i, c] : terms_)
            for (size_t k = 0; k < m_; ++k) maxe = std::max(maxe, i[k]);
        for (size_t k = 0; k < m_; ++k) {
            for (uint32_t e = 1; e <= maxe; ++e) pows[k].push_back(pows[k].back() * point[k]);
        }
        Elem acc = field_.zero();
        for (const auto& [i, c] : terms_) {
            Elem t = c;
            for (size_t k = 0; k < m_; ++k) t = t * pows[k][i[k]];
            acc += t;
        }
        return acc;
    }

private:
    void check_compatible(const MVPoly& o) const {
        if (!(field_ == o.field_) || m_ != o.m_) throw FieldMismatchError("MVPoly operands incompatible");
    }

    F field_;
    size_t m_;
    TermMap terms_;
};

constexpr int kMultInfinity = std::numeric_limits<int>::max();

/// i-th Hasse derivative: P^{(i)} has coefficient binom(e, i) * c_e at
/// monomial e - i, for every stored term e >= i.
template <FiniteFieldType F>
MVPoly<F> hasse_derivative(const MVPoly<F>& p, const MultiIndex& i, const BinomTableModP& binom) {
    if (i.arity() != p.arity()) throw std::invalid_argument("hasse_derivative: arity mismatch");
    MVPoly<F> out(p.field(), p.arity());
    for (const auto& [e, c] : p.terms()) {
        if (!e.dominates(i)) continue;
        uint32_t b = binom.multi(e, i);
        if (b == 0) continue;
        out.add_term(e.minus(i), p.field().from_int(b) * c);
    }
    return out;
}

template <FiniteFieldType F>
MVPoly<F> hasse_derivative(const MVPoly<F>& p, const MultiIndex& i) {
    BinomTableModP binom(p.field().characteristic(), std::max(p.total_degree(), 0) + 1);
    return hasse_derivative(p, i, binom);
}

/// Order-s evaluation of P at a point: vector of P^{(i)}(a) over all i with
/// wt(i) < s, in graded-lex order. One code symbol.
template <FiniteFieldType F>
std::vector<typename F::Elem> order_s_evaluation(const MVPoly<F>& p, std::span<const typename F::Elem> a,
                                                 uint32_t s) {
    BinomTableModP binom(p.field().characteristic(), std::max(p.total_degree(), 0) + 1);
    std::vector<typename F::Elem> out;
    for (const auto& i : indices_below_weight(p.arity(), s)) {
        out.push_back(hasse_derivative(p, i, binom).eval(a));
    }
    return out;
}

/// Multiplicity of vanishing of P at a: the largest M such that every
/// derivative of weight < M vanishes at a; kMultInfinity iff P = 0. A
/// nonzero P always has some nonvanishing derivative of weight <= deg(P),
/// so the search is bounded.
template <FiniteFieldType F>
int multiplicity(const MVPoly<F>& p, std::span<const typename F::Elem> a) {
    if (p.is_zero()) return kMultInfinity;
    const int d = p.total_degree();
    BinomTableModP binom(p.field().characteristic(), d + 1);
    for (uint32_t w = 0; w <= static_cast<uint32_t>(d); ++w) {
        for (const auto& i : indices_of_weight(p.arity(), w)) {
            if (!hasse_derivative(p, i, binom).eval(a).is_zero()) return static_cast<int>(w);
        }
    }
    return d + 1;  // unreachable for nonzero P; kept as a hard stop
}

/// Q(T) = P(a + bT) by substitution.
template <FiniteFieldType F>
UVPoly<F> restrict_to_line(const MVPoly<F>& p, std::span<const typename F::Elem> a,
                           std::span<const typename F::Elem> b) {
    const size_t m = p.arity();
    if (a.size() != m || b.size() != m) throw std::invalid_argument("restrict_to_line: arity mismatch");
    const F& field = p.field();
    UVPoly<F> out(field);
    // powers of (a_k + b_k T), built on demand
    std::vector<std::vector<UVPoly<F>>> pows(m);
    for (size_t k = 0; k < m; ++k) {
        pows[k].push_back(UVPoly<F>(field, {field.one()}));
    }
    auto power = [&](size_t k, uint32_t e) -> const UVPoly<F>& {
        while (pows[k].size() <= e) {
            UVPoly<F> lin(field, {a[k], b[k]});
            pows[k].push_back(pows[k].back() * lin);
        }
        return pows[k][e];
    };
    for (const auto& [i, c] : p.terms()) {
        UVPoly<F> term(field, {c});
        for (size_t k = 0; k < m; ++k) {
            if (i[k]) term = term * power(k, i[k]);
        }
        out = out + term;
    }
    return out;
}

/// Coefficient of T^j in P^{(l)}(a + bT), computed from the direct formula
/// sum over wt(i) = j of binom(l+i, l) * P^{(l+i)}(a) * b^i.
template <FiniteFieldType F>
typename F::Elem line_jet_coefficient(const MVPoly<F>& p, std::span<const typename F::Elem> a,
                                      std::span<const typename F::Elem> b, const MultiIndex& l, uint32_t j) {
    const F& field = p.field();
    BinomTableModP binom(field.characteristic(), std::max<int>(p.total_degree(), 0) + l.weight() + j + 1);
    typename F::Elem acc = field.zero();
    for (const auto& i : indices_of_weight(p.arity(), j)) {
        const MultiIndex li = l.plus(i);
        uint32_t bin = binom.multi(li, l);
        if (bin == 0) continue;
        typename F::Elem bpow = field.one();
        for (size_t k = 0; k < p.arity(); ++k) bpow = bpow * b[k].pow(i[k]);
        acc += field.from_int(bin) * hasse_derivative(p, li, binom).eval(a) * bpow;
    }
    return acc;
}

/// Evaluates P at every point of F^m, point-lex order (first coordinate most
/// significant, coordinates in element_at order). Collapses one variable at
/// a time, finishing with dense Horner, so the cost is near the output size
/// for desk-scale degrees.
template <FiniteFieldType F>
std::vector<typename F::Elem> evaluate_everywhere(const MVPoly<F>& p) {
    const F& field = p.field();
    const size_t m = p.arity();
    const uint64_t n = field.size();
    check_cells(pow_u64_checked(n, static_cast<uint32_t>(m), "evaluate_everywhere"), "evaluate_everywhere");

    if (m == 0) {
        return {p.is_zero() ? field.zero() : p.terms().begin()->second};
    }
    if (m == 1) {
        std::vector<typename F::Elem> dense(static_cast<size_t>(std::max(p.total_degree(), 0)) + 1,
                                            field.zero());
        for (const auto& [i, c] : p.terms()) dense[i[0]] = c;
        std::vector<typename F::Elem> out;
        out.reserve(n);
        for (uint64_t t = 0; t < n; ++t) {
            const typename F::Elem x = field.element_at(t);
            typename F::Elem acc = field.zero();
            for (size_t k = dense.size(); k-- > 0;) acc = acc * x + dense[k];
            out.push_back(acc);
        }
        return out;
    }
    std::vector<typename F::Elem> out;
    out.reserve(pow_u64_checked(n, static_cast<uint32_t>(m), "evaluate_everywhere"));
    uint32_t maxe = 0;
    for (const auto& [i, c] : p.terms()) maxe = std::max(maxe, i[0]);
    for (uint64_t v = 0; v < n; ++v) {
        const typename F::Elem x = field.element_at(v);
        std::vector<typename F::Elem> xpow{field.one()};
        for (uint32_t e = 1; e <= maxe; ++e) xpow.push_back(xpow.back() * x);
        MVPoly<F> sub(field, m - 1);
        for (const auto& [i, c] : p.terms()) {
            std::vector<uint32_t> rest(i.exps().begin() + 1, i.exps().end());
            sub.add_term(MultiIndex(std::move(rest)), c * xpow[i[0]]);
        }
        auto tail = evaluate_everywhere(sub);
        out.insert(out.end(), tail.begin(), tail.end());
    }
    return out;
}

/// Lifts a polynomial over F_q into F_{q^m}[X] coefficientwise.
inline MVPoly<ExtField> embed(const MVPoly<PrimeField>& p, const ExtField& ext) {
    MVPoly<ExtField> out(ext, p.arity());
    for (const auto& [i, c] : p.terms()) out.add_term(i, ext.embed(c));
    return out;
}

/// The canonical monic irreducible of degree m as a polynomial.
inline UVPoly<PrimeField> find_irreducible(const PrimeField& field, uint32_t m) {
    return UVPoly<PrimeField>(field, find_irreducible_coeffs(field, m));
}

}  // namespace multcode
