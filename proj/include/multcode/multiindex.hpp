#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "multcode/util.hpp"

namespace multcode {

/// m-tuple of nonnegative exponents with cached weight wt(i) = sum of entries.
/// Ordered graded-lexicographically: weight first, then lexicographic on
/// (i_1, ..., i_m). Every symbol layout, file format and linear system in
/// this library uses this one order.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<uint32_t> exps)
        : exps_(std::move(exps)),
          weight_(std::accumulate(exps_.begin(), exps_.end(), uint32_t{0})) {}

    static MultiIndex zeros(size_t m) { return MultiIndex(std::vector<uint32_t>(m, 0)); }

    size_t arity() const { return exps_.size(); }
    uint32_t weight() const { return weight_; }
    uint32_t operator[](size_t k) const { return exps_[k]; }
    const std::vector<uint32_t>& exps() const { return exps_; }

    /// Componentwise >=.
    bool dominates(const MultiIndex& o) const {
        if (arity() != o.arity()) throw std::invalid_argument("MultiIndex arity mismatch");
        for (size_t k = 0; k < exps_.size(); ++k)
            if (exps_[k] < o.exps_[k]) return false;
        return true;
    }

    MultiIndex plus(const MultiIndex& o) const {
        if (arity() != o.arity()) throw std::invalid_argument("MultiIndex arity mismatch");
        std::vector<uint32_t> e(exps_);
        for (size_t k = 0; k < e.size(); ++k) e[k] += o.exps_[k];
        return MultiIndex(std::move(e));
    }

    /// Requires this->dominates(o).
    MultiIndex minus(const MultiIndex& o) const {
        if (!dominates(o)) throw std::invalid_argument("MultiIndex::minus: not dominated");
        std::vector<uint32_t> e(exps_);
        for (size_t k = 0; k < e.size(); ++k) e[k] -= o.exps_[k];
        return MultiIndex(std::move(e));
    }

    bool operator==(const MultiIndex& o) const { return exps_ == o.exps_; }

    std::strong_ordering operator<=>(const MultiIndex& o) const {
        if (auto c = weight_ <=> o.weight_; c != 0) return c;
        for (size_t k = 0; k < exps_.size() && k < o.exps_.size(); ++k)
            if (auto c = exps_[k] <=> o.exps_[k]; c != 0) return c;
        return exps_.size() <=> o.exps_.size();
    }

private:
    std::vector<uint32_t> exps_;
    uint32_t weight_;
};

/// All multi-indices of arity m and weight exactly w, in graded-lex order
/// (equivalently lex ascending on (i_1, ..., i_m) within the weight class).
inline std::vector<MultiIndex> indices_of_weight(size_t m, uint32_t w) {
    std::vector<MultiIndex> out;
    std::vector<uint32_t> cur(m, 0);
    // Recursive enumeration with i_1 slowest keeps lex order.
    auto rec = [&](auto&& self, size_t pos, uint32_t rem) -> void {
        if (pos + 1 == m) {
            cur[pos] = rem;
            out.emplace_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    if (m == 0) {
        if (w == 0) out.emplace_back(std::vector<uint32_t>{});
        return out;
    }
    rec(rec, 0, w);
    return out;
}

/// All multi-indices with wt < bound, graded-lex order.
inline std::vector<MultiIndex> indices_below_weight(size_t m, uint32_t bound) {
    std::vector<MultiIndex> out;
    for (uint32_t w = 0; w < bound; ++w) {
        auto layer = indices_of_weight(m, w);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

/// All multi-indices with wt <= d (monomial exponents of degree <= d).
inline std::vector<MultiIndex> indices_up_to_degree(size_t m, uint32_t d) {
    return indices_below_weight(m, d + 1);
}

/// Pascal triangle modulo a prime p, rows 0..max_n. Exact in small
/// characteristic where factorial formulas vanish.
class BinomTableModP {
public:
    BinomTableModP(uint32_t p, uint32_t max_n) : p_(p), max_n_(max_n) {
        rows_.assign((static_cast<size_t>(max_n) + 1) * (max_n + 2) / 2, 0);
        for (uint32_t n = 0; n <= max_n; ++n) {
            at(n, 0) = 1 % p;
            for (uint32_t k = 1; k <= n; ++k) {
                uint32_t v = at(n - 1, k - 1);
                if (k < n) v += at(n - 1, k);
                at(n, k) = v % p;
            }
        }
    }

    uint32_t operator()(uint32_t n, uint32_t k) const {
        if (k > n) return 0;
        if (n > max_n_) throw std::out_of_range("BinomTableModP: n beyond table");
        return rows_[offset(n) + k];
    }

    /// Product of per-coordinate binomials: binom(n, k) for multi-indices.
    uint32_t multi(const MultiIndex& n, const MultiIndex& k) const {
        uint64_t acc = 1 % p_;
        for (size_t j = 0; j < n.arity(); ++j) {
            acc = acc * (*this)(n[j], k[j]) % p_;
            if (acc == 0) return 0;
        }
        return static_cast<uint32_t>(acc);
    }

    uint32_t prime() const { return p_; }

private:
    size_t offset(uint32_t n) const { return static_cast<size_t>(n) * (n + 1) / 2; }
    uint32_t& at(uint32_t n, uint32_t k) { return rows_[offset(n) + k]; }

    uint32_t p_;
    uint32_t max_n_;
    std::vector<uint32_t> rows_;
};

/// binom(n, k) mod p by Lucas' theorem; for one-off large arguments.
inline uint32_t binom_mod_lucas(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    uint64_t acc = 1 % p;
    while (n > 0 || k > 0) {
        uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // binom(nd, kd) mod p with nd, kd < p, via the short product.
        uint64_t num = 1 % p, den = 1 % p;
        for (uint64_t j = 0; j < kd; ++j) {
            num = num * ((nd - j) % p) % p;
            den = den * ((j + 1) % p) % p;
        }
        // den is invertible mod p (all factors < p, p prime).
        uint64_t inv = 1;
        {
            // Fermat inverse; p is prime and den != 0.
            uint64_t b = den, e = p - 2, r = 1;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            inv = r;
        }
        acc = acc * (num * inv % p) % p;
        if (acc == 0) return 0;
        n /= p;
        k /= p;
    }
    return static_cast<uint32_t>(acc);
}

}  // namespace multcode
