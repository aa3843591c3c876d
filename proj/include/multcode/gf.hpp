#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "multcode/util.hpp"

namespace multcode {

class PrimeField;
class Fp;
class ExtField;
class ExtElem;

namespace detail {

struct PrimeFieldRep {
    uint32_t q = 0;
    uint64_t barrett = 0;            // floor(2^64 / q)
    std::vector<uint32_t> inv_tab;   // present when q <= kInvTableCap

    // Reduces x < 2^64 modulo q. Single conditional subtract suffices:
    // the Barrett estimate is off by at most one.
    uint32_t reduce(uint64_t x) const {
        uint64_t hi = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * barrett) >> 64);
        uint64_t r = x - hi * q;
        if (r >= q) r -= q;
        return static_cast<uint32_t>(r);
    }
    uint32_t inv_of(uint32_t v) const;
};

struct ExtFieldRep;

constexpr uint32_t kInvTableCap = 1u << 16;
constexpr uint64_t kExtTableCap = 2048;     // full mul/add tables up to this size
constexpr uint64_t kMaxExtSize = 1u << 22;  // packed-index representation bound

}  // namespace detail

/// Element of a prime field F_q in canonical form (value in [0, q)).
/// Immutable value type; arithmetic is exact modular arithmetic.
class Fp {
public:
    Fp(uint32_t v, const detail::PrimeFieldRep* f) : v_(v), f_(f) {}

    uint32_t value() const { return v_; }
    uint32_t modulus() const { return f_->q; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) {
        a.check_same(b);
        uint32_t s = a.v_ + b.v_;
        if (s >= a.f_->q) s -= a.f_->q;
        return Fp(s, a.f_);
    }
    friend Fp operator-(Fp a, Fp b) {
        a.check_same(b);
        uint32_t s = a.v_ + a.f_->q - b.v_;
        if (s >= a.f_->q) s -= a.f_->q;
        return Fp(s, a.f_);
    }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : f_->q - v_, f_); }
    friend Fp operator*(Fp a, Fp b) {
        a.check_same(b);
        return Fp(a.f_->reduce(static_cast<uint64_t>(a.v_) * b.v_), a.f_);
    }
    Fp inv() const {
        if (v_ == 0) throw DivisionByZeroError("inverse of zero in F_q");
        return Fp(f_->inv_of(v_), f_);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    Fp pow(uint64_t e) const {
        Fp base = *this, acc = Fp(1 % f_->q, f_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const Fp& o) const { return f_ == o.f_ && v_ == o.v_; }

    const detail::PrimeFieldRep* rep() const { return f_; }

private:
    void check_same(const Fp& o) const {
        if (f_ != o.f_) throw FieldMismatchError("F_q elements from different fields");
    }

    uint32_t v_;
    const detail::PrimeFieldRep* f_;
};

/// A prime field F_q, q prime (verified at construction), q < 2^20.
/// Instances with equal q share one interned representation, so values
/// from independently constructed handles interoperate.
class PrimeField {
public:
    using Elem = Fp;

    explicit PrimeField(uint32_t q);

    uint32_t modulus() const { return rep_->q; }
    uint32_t characteristic() const { return rep_->q; }
    uint64_t size() const { return rep_->q; }

    Fp zero() const { return Fp(0, rep_.get()); }
    Fp one() const { return Fp(1 % rep_->q, rep_.get()); }
    Fp from_int(int64_t v) const {
        int64_t m = v % rep_->q;
        if (m < 0) m += rep_->q;
        return Fp(static_cast<uint32_t>(m), rep_.get());
    }
    Fp element_at(uint64_t idx) const {
        if (idx >= rep_->q) throw std::out_of_range("PrimeField::element_at");
        return Fp(static_cast<uint32_t>(idx), rep_.get());
    }
    uint64_t index_of(Fp x) const {
        if (x.rep() != rep_.get()) throw FieldMismatchError("index_of: foreign element");
        return x.value();
    }

    bool operator==(const PrimeField& o) const { return rep_ == o.rep_; }

    const detail::PrimeFieldRep* rep() const { return rep_.get(); }
    std::shared_ptr<const detail::PrimeFieldRep> shared_rep() const { return rep_; }

private:
    std::shared_ptr<const detail::PrimeFieldRep> rep_;
};

namespace detail {

struct ExtFieldRep {
    // base field handle keeps the prime rep alive
    std::shared_ptr<const PrimeFieldRep> base;
    uint32_t base_q = 0;
    uint32_t deg = 0;                  // extension degree m
    uint64_t n = 0;                    // q^m
    std::vector<uint32_t> modulus;     // monic, length deg+1, coeffs low-to-high
    std::vector<uint32_t> xpow_red;    // rows k=0..deg-2: X^{deg+k} mod f, deg digits each

    bool tables = false;
    std::vector<uint16_t> mul_tab, add_tab;     // n*n when tables
    std::vector<uint32_t> inv_tab, trace_tab;   // n when tables

    // digit helpers (coefficients of the power basis, little-endian base q)
    void digits_of(uint64_t idx, uint32_t* out) const;
    uint64_t index_of_digits(const uint32_t* d) const;

    uint64_t add_idx(uint64_t a, uint64_t b) const;
    uint64_t sub_idx(uint64_t a, uint64_t b) const;
    uint64_t neg_idx(uint64_t a) const;
    uint64_t mul_idx(uint64_t a, uint64_t b) const;
    uint64_t inv_idx(uint64_t a) const;
    uint64_t pow_idx(uint64_t a, uint64_t e) const;
    uint32_t trace_idx(uint64_t a) const;  // element of the base field

    uint64_t mul_idx_generic(uint64_t a, uint64_t b) const;
    uint64_t inv_idx_generic(uint64_t a) const;
    uint32_t trace_idx_generic(uint64_t a) const;
};

}  // namespace detail

/// Element of an extension field F_{q^m}, stored as the packed index whose
/// base-q digits are the power-basis coordinates (digit k = coefficient of
/// beta^k, beta the modulus root). Immutable value type.
class ExtElem {
public:
    ExtElem(uint64_t idx, const detail::ExtFieldRep* f) : idx_(idx), f_(f) {}

    bool is_zero() const { return idx_ == 0; }
    uint64_t index() const { return idx_; }

    /// Power-basis coordinates, length m.
    std::vector<Fp> coeffs() const;
    Fp coeff(uint32_t k) const;

    friend ExtElem operator+(ExtElem a, ExtElem b) {
        a.check_same(b);
        return ExtElem(a.f_->add_idx(a.idx_, b.idx_), a.f_);
    }
    friend ExtElem operator-(ExtElem a, ExtElem b) {
        a.check_same(b);
        return ExtElem(a.f_->sub_idx(a.idx_, b.idx_), a.f_);
    }
    ExtElem operator-() const { return ExtElem(f_->neg_idx(idx_), f_); }
    friend ExtElem operator*(ExtElem a, ExtElem b) {
        a.check_same(b);
        return ExtElem(a.f_->mul_idx(a.idx_, b.idx_), a.f_);
    }
    ExtElem inv() const {
        if (idx_ == 0) throw DivisionByZeroError("inverse of zero in F_{q^m}");
        return ExtElem(f_->inv_idx(idx_), f_);
    }
    friend ExtElem operator/(ExtElem a, ExtElem b) { return a * b.inv(); }

    ExtElem& operator+=(ExtElem o) { return *this = *this + o; }
    ExtElem& operator-=(ExtElem o) { return *this = *this - o; }
    ExtElem& operator*=(ExtElem o) { return *this = *this * o; }

    ExtElem pow(uint64_t e) const { return ExtElem(f_->pow_idx(idx_, e), f_); }

    bool operator==(const ExtElem& o) const { return f_ == o.f_ && idx_ == o.idx_; }

    const detail::ExtFieldRep* rep() const { return f_; }

private:
    void check_same(const ExtElem& o) const {
        if (f_ != o.f_) throw FieldMismatchError("F_{q^m} elements from different fields");
    }

    uint64_t idx_;
    const detail::ExtFieldRep* f_;
};

/// An extension field F_{q^m} over a prime base, presented on the power
/// basis of a monic irreducible modulus. The one-argument-degree constructor
/// uses the canonical modulus from find_irreducible. Interned by
/// (q, modulus), like PrimeField.
class ExtField {
public:
    using Elem = ExtElem;

    ExtField(const PrimeField& base, uint32_t degree);
    ExtField(const PrimeField& base, const std::vector<Fp>& monic_modulus);

    PrimeField base() const;
    uint32_t degree() const { return rep_->deg; }
    uint64_t size() const { return rep_->n; }
    uint32_t characteristic() const { return rep_->base_q; }

    ExtElem zero() const { return ExtElem(0, rep_.get()); }
    ExtElem one() const { return ExtElem(1 % rep_->base_q, rep_.get()); }
    ExtElem from_int(int64_t v) const {
        int64_t m = v % rep_->base_q;
        if (m < 0) m += rep_->base_q;
        return ExtElem(static_cast<uint64_t>(m), rep_.get());
    }
    ExtElem element_at(uint64_t idx) const {
        if (idx >= rep_->n) throw std::out_of_range("ExtField::element_at");
        return ExtElem(idx, rep_.get());
    }
    uint64_t index_of(const ExtElem& x) const {
        if (x.rep() != rep_.get()) throw FieldMismatchError("index_of: foreign element");
        return x.index();
    }

    /// Embeds the base field (constant coefficient position).
    ExtElem embed(Fp x) const;
    ExtElem from_coeffs(std::span<const Fp> coeffs) const;

    /// beta, the image of X: the power-basis generator.
    ExtElem generator() const {
        return rep_->deg == 1 ? ExtElem(rep_->modulus[0] ? rep_->base_q - rep_->modulus[0] : 0, rep_.get())
                              : ExtElem(rep_->base_q, rep_.get());
    }

    Fp trace(const ExtElem& x) const;

    std::vector<Fp> modulus_coeffs() const;  // length m+1, monic

    bool operator==(const ExtField& o) const { return rep_ == o.rep_; }

    const detail::ExtFieldRep* rep() const { return rep_.get(); }

private:
    std::shared_ptr<const detail::ExtFieldRep> rep_;
};

/// Tr(x) = sum of x^{q^k}, k < m. Always lands in the base field.
Fp trace(const ExtElem& x);

/// Coefficients (low-to-high, including the leading 1) of the canonical
/// modulus for F_{q^m}: the monic irreducible of degree m whose coefficient
/// vector, read as a base-q integer with c_0 least significant, is smallest.
/// Deterministic for fixed (q, m).
std::vector<Fp> find_irreducible_coeffs(const PrimeField& field, uint32_t m);

/// True iff the monic polynomial with these coefficients (low-to-high) is
/// irreducible over the base field. Full Rabin criterion.
bool is_irreducible(const PrimeField& field, const std::vector<uint32_t>& monic_coeffs);

template <class F>
concept FiniteFieldType = requires(const F f, const typename F::Elem a, uint64_t u, int64_t i) {
    { f.size() } -> std::convertible_to<uint64_t>;
    { f.characteristic() } -> std::convertible_to<uint32_t>;
    { f.zero() } -> std::same_as<typename F::Elem>;
    { f.one() } -> std::same_as<typename F::Elem>;
    { f.from_int(i) } -> std::same_as<typename F::Elem>;
    { f.element_at(u) } -> std::same_as<typename F::Elem>;
    { f.index_of(a) } -> std::convertible_to<uint64_t>;
    { a + a } -> std::same_as<typename F::Elem>;
    { a - a } -> std::same_as<typename F::Elem>;
    { a * a } -> std::same_as<typename F::Elem>;
    { a.inv() } -> std::same_as<typename F::Elem>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == a } -> std::convertible_to<bool>;
};

static_assert(true);  // concept checked against PrimeField/ExtField in gf.cpp

}  // namespace multcode
