#include <doctest.h>

#include "multcode/poly.hpp"
#include "multcode/util.hpp"

using namespace multcode;

namespace {

MVPoly<PrimeField> random_poly(Rng& rng, const PrimeField& f, uint32_t m, uint32_t deg,
                               bool force_nonzero = false) {
    MVPoly<PrimeField> p(f, m);
    do {
        for (const auto& e : indices_up_to_degree(m, deg)) {
            Fp c = f.element_at(rng.below(f.size()));
            if (!c.is_zero() && rng.below(2) == 0) p.add_term(e, c);
        }
    } while (force_nonzero && p.is_zero());
    return p;
}

std::vector<Fp> random_point(Rng& rng, const PrimeField& f, uint32_t m) {
    std::vector<Fp> pt;
    for (uint32_t k = 0; k < m; ++k) pt.push_back(f.element_at(rng.below(f.size())));
    return pt;
}

/// Independent derivative oracle: expand P(X + Z) in 2m variables
/// (X_1..X_m, Z_1..Z_m) by multiplying out the shifted monomials, then read
/// the coefficient of Z^i as a polynomial in X.
MVPoly<PrimeField> shift_expansion_derivative(const MVPoly<PrimeField>& p, const MultiIndex& i) {
    const PrimeField& f = p.field();
    const size_t m = p.arity();
    MVPoly<PrimeField> shifted(f, 2 * m);  // vars: X_1..X_m, Z_1..Z_m
    for (const auto& [e, c] : p.terms()) {
        MVPoly<PrimeField> term(f, 2 * m);
        std::vector<uint32_t> zero(2 * m, 0);
        term.add_term(MultiIndex(zero), c);
        for (size_t k = 0; k < m; ++k) {
            std::vector<uint32_t> xk(2 * m, 0), zk(2 * m, 0);
            xk[k] = 1;
            zk[m + k] = 1;
            MVPoly<PrimeField> lin(f, 2 * m);
            lin.add_term(MultiIndex(xk), f.one());
            lin.add_term(MultiIndex(zk), f.one());
            for (uint32_t rep = 0; rep < e[k]; ++rep) term = term * lin;
        }
        shifted = shifted + term;
    }
    MVPoly<PrimeField> out(f, m);
    for (const auto& [e, c] : shifted.terms()) {
        bool match = true;
        for (size_t k = 0; k < m; ++k) match = match && e[m + k] == i[k];
        if (!match) continue;
        std::vector<uint32_t> xs(e.exps().begin(), e.exps().begin() + m);
        out.add_term(MultiIndex(xs), c);
    }
    return out;
}

}  // namespace

TEST_CASE("Hasse derivative examples against the shift-expansion oracle") {
    // X^3 over F_2, i = (2) -> X
    {
        PrimeField f2(2);
        auto p = MVPoly<PrimeField>::monomial(f2, MultiIndex({3}), f2.one());
        auto expect = shift_expansion_derivative(p, MultiIndex({2}));
        CHECK(expect == MVPoly<PrimeField>::monomial(f2, MultiIndex({1}), f2.one()));
        CHECK(hasse_derivative(p, MultiIndex({2})) == expect);
    }
    // constants die under any positive-weight derivative
    {
        PrimeField f5(5);
        auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({0, 0}), f5.from_int(3));
        CHECK(hasse_derivative(p, MultiIndex({1, 0})).is_zero());
        CHECK(hasse_derivative(p, MultiIndex({0, 2})).is_zero());
    }
    // X^2 Y over F_5, i = (1,1) -> 2X
    {
        PrimeField f5(5);
        auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({2, 1}), f5.one());
        auto expect = shift_expansion_derivative(p, MultiIndex({1, 1}));
        CHECK(expect == MVPoly<PrimeField>::monomial(f5, MultiIndex({1, 0}), f5.from_int(2)));
        CHECK(hasse_derivative(p, MultiIndex({1, 1})) == expect);
    }
    // random agreement with the oracle
    Rng rng(7);
    for (uint32_t q : {2u, 5u}) {
        PrimeField f(q);
        for (int t = 0; t < 10; ++t) {
            auto p = random_poly(rng, f, 2, 4);
            for (const auto& i : indices_below_weight(2, 3)) {
                CHECK(hasse_derivative(p, i) == shift_expansion_derivative(p, i));
            }
        }
    }
}

TEST_CASE("derivative linearity, product rule, composition") {
    Rng rng(11);
    for (uint32_t q : {3u, 5u, 13u}) {
        PrimeField f(q);
        for (uint32_t m : {1u, 2u, 3u}) {
            for (int t = 0; t < 12; ++t) {
                auto p = random_poly(rng, f, m, 6 / m + 1);
                auto r = random_poly(rng, f, m, 6 / m + 1);
                auto is = indices_below_weight(m, 3);
                const MultiIndex& i = is[rng.below(is.size())];
                const MultiIndex& j = is[rng.below(is.size())];
                // (P+Q)^(i) = P^(i) + Q^(i)
                CHECK(hasse_derivative(p + r, i) == hasse_derivative(p, i) + hasse_derivative(r, i));
                // product rule
                MVPoly<PrimeField> conv(f, m);
                for (const auto& l : indices_below_weight(m, i.weight() + 1)) {
                    if (!i.dominates(l)) continue;
                    conv = conv + hasse_derivative(p, l) * hasse_derivative(r, i.minus(l));
                }
                CHECK(hasse_derivative(p * r, i) == conv);
                // iterated derivative
                BinomTableModP binom(q, i.weight() + j.weight() + 1);
                auto lhs = hasse_derivative(hasse_derivative(p, i), j);
                auto rhs = hasse_derivative(p, i.plus(j)).scaled(f.from_int(binom.multi(i.plus(j), i)));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("Taylor identity: P(a+z) equals the derivative expansion") {
    Rng rng(13);
    PrimeField f(5);
    for (int t = 0; t < 40; ++t) {
        auto p = random_poly(rng, f, 2, 4);
        auto a = random_point(rng, f, 2), z = random_point(rng, f, 2);
        std::vector<Fp> az{a[0] + z[0], a[1] + z[1]};
        Fp lhs = p.eval(az);
        Fp rhs = f.zero();
        for (const auto& i : indices_up_to_degree(2, 4)) {
            rhs += hasse_derivative(p, i).eval(a) * z[0].pow(i[0]) * z[1].pow(i[1]);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("order-s evaluation examples") {
    {
        PrimeField f3(3);
        auto p = MVPoly<PrimeField>::monomial(f3, MultiIndex({2}), f3.one());
        std::vector<Fp> a{f3.from_int(2)};
        auto jet = order_s_evaluation(p, std::span<const Fp>(a), 2);
        REQUIRE(jet.size() == 2);
        CHECK(jet[0].value() == 1);  // 4 mod 3
        CHECK(jet[1].value() == 1);  // 2X at 2 -> 4 mod 3
    }
    {
        PrimeField f5(5);
        MVPoly<PrimeField> zero(f5, 2);
        std::vector<Fp> a{f5.zero(), f5.zero()};
        for (const auto& v : order_s_evaluation(zero, std::span<const Fp>(a), 3)) CHECK(v.is_zero());
        auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({2, 1}), f5.one());
        auto jet = order_s_evaluation(p, std::span<const Fp>(a), 2);
        REQUIRE(jet.size() == 3);
        for (const auto& v : jet) CHECK(v.is_zero());
    }
}

TEST_CASE("multiplicity examples and cap") {
    PrimeField f5(5);
    auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({2, 1}), f5.one());
    std::vector<Fp> origin{f5.zero(), f5.zero()};
    std::vector<Fp> onezero{f5.one(), f5.zero()};
    CHECK(multiplicity(p, std::span<const Fp>(origin)) == 3);
    CHECK(multiplicity(p, std::span<const Fp>(onezero)) == 1);
    MVPoly<PrimeField> zero(f5, 2);
    CHECK(multiplicity(zero, std::span<const Fp>(origin)) == kMultInfinity);
}

TEST_CASE("multiplicity Schwartz-Zippel over product sets") {
    Rng rng(17);
    for (uint32_t q : {3u, 5u, 7u}) {
        PrimeField f(q);
        for (uint32_t m : {1u, 2u}) {
            for (int t = 0; t < 10; ++t) {
                const uint32_t d = 1 + rng.below(8);
                auto p = random_poly(rng, f, m, d, true);
                if (p.total_degree() < 0) continue;
                // random subset S of F_q
                std::vector<Fp> S;
                for (uint32_t v = 0; v < q; ++v)
                    if (rng.below(2) == 0) S.push_back(f.element_at(v));
                if (S.empty()) S.push_back(f.zero());
                uint64_t total = 0;
                std::vector<size_t> pick(m, 0);
                const uint64_t count = pow_u64_checked(S.size(), m, "SZ");
                for (uint64_t n = 0; n < count; ++n) {
                    std::vector<Fp> pt;
                    for (uint32_t k = 0; k < m; ++k) pt.push_back(S[pick[k]]);
                    total += static_cast<uint64_t>(multiplicity(p, std::span<const Fp>(pt)));
                    for (uint32_t k = m; k-- > 0;) {
                        if (++pick[k] < S.size()) break;
                        pick[k] = 0;
                    }
                }
                const uint64_t bound = static_cast<uint64_t>(p.total_degree()) *
                                       pow_u64_checked(S.size(), m - 1, "SZ bound");
                CHECK(total <= bound);
            }
        }
    }
}

TEST_CASE("line restriction examples and identity") {
    PrimeField f5(5);
    auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({2, 1}), f5.one());
    std::vector<Fp> a{f5.zero(), f5.zero()}, b{f5.one(), f5.one()};
    auto q = restrict_to_line(p, std::span<const Fp>(a), std::span<const Fp>(b));
    CHECK(q == UVPoly<PrimeField>::monomial(f5, 3, f5.one()));

    std::vector<Fp> zero{f5.zero(), f5.zero()};
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        auto poly = random_poly(rng, f5, 2, 5);
        auto aa = random_point(rng, f5, 2), bb = random_point(rng, f5, 2);
        auto line = restrict_to_line(poly, std::span<const Fp>(aa), std::span<const Fp>(bb));
        // b = 0 -> constant P(a)
        auto degen = restrict_to_line(poly, std::span<const Fp>(aa), std::span<const Fp>(zero));
        CHECK(degen.degree() <= 0);
        CHECK(degen.eval(f5.zero()) == poly.eval(aa));
        for (uint32_t tv = 0; tv < 5; ++tv) {
            Fp tf = f5.element_at(tv);
            std::vector<Fp> pt{aa[0] + tf * bb[0], aa[1] + tf * bb[1]};
            CHECK(line.eval(tf) == poly.eval(pt));
        }
    }
}

TEST_CASE("line jet coefficients") {
    PrimeField f5(5);
    // l = 0, j = 0 -> P(a)
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        auto poly = random_poly(rng, f5, 2, 4);
        auto a = random_point(rng, f5, 2), b = random_point(rng, f5, 2);
        CHECK(line_jet_coefficient(poly, std::span<const Fp>(a), std::span<const Fp>(b),
                                   MultiIndex({0, 0}), 0) == poly.eval(a));
        // identity: equals hasse-then-restrict coefficient
        for (const auto& l : indices_below_weight(2, 3)) {
            auto restricted = restrict_to_line(hasse_derivative(poly, l), std::span<const Fp>(a),
                                               std::span<const Fp>(b));
            for (uint32_t j = 0; j < 3; ++j) {
                CHECK(line_jet_coefficient(poly, std::span<const Fp>(a), std::span<const Fp>(b), l, j) ==
                      restricted.coeff(j));
            }
        }
    }
    // P = X^3 over F_5, a=1, b=2, l=(1), j=1: coefficient of T in 3(1+2T)^2 = 12 = 2
    auto p = MVPoly<PrimeField>::monomial(f5, MultiIndex({3}), f5.one());
    std::vector<Fp> a1{f5.one()}, b2{f5.from_int(2)};
    CHECK(line_jet_coefficient(p, std::span<const Fp>(a1), std::span<const Fp>(b2), MultiIndex({1}), 1) ==
          f5.from_int(2));
}

TEST_CASE("univariate jets by synthetic division match derivative evaluation") {
    Rng rng(29);
    PrimeField f(13);
    for (int t = 0; t < 30; ++t) {
        std::vector<Fp> coeffs;
        for (int j = 0; j < 9; ++j) coeffs.push_back(f.element_at(rng.below(13)));
        UVPoly<PrimeField> p(f, std::move(coeffs));
        Fp x = f.element_at(rng.below(13));
        auto jets = uv_jets_at(p, x, 5);
        for (uint32_t j = 0; j < 5; ++j) CHECK(jets[j] == hasse_derivative(p, j).eval(x));
    }
}

TEST_CASE("evaluate_everywhere matches pointwise evaluation in point-lex order") {
    Rng rng(31);
    PrimeField f(5);
    for (uint32_t m : {1u, 2u, 3u}) {
        auto p = random_poly(rng, f, m, 4);
        auto all = evaluate_everywhere(p);
        REQUIRE(all.size() == pow_u64_checked(5, m, "test"));
        // spot check against direct evaluation with the documented indexing
        for (int t = 0; t < 20; ++t) {
            uint64_t idx = rng.below(all.size());
            uint64_t rem = idx;
            std::vector<Fp> pt(m, f.zero());
            for (uint32_t k = m; k-- > 0;) {
                pt[k] = f.element_at(rem % 5);
                rem /= 5;
            }
            CHECK(all[idx] == p.eval(pt));
        }
    }
}

TEST_CASE("polynomial division") {
    PrimeField f(7);
    Rng rng(37);
    for (int t = 0; t < 30; ++t) {
        std::vector<Fp> ac, bc;
        for (int j = 0; j < 8; ++j) ac.push_back(f.element_at(rng.below(7)));
        for (int j = 0; j < 4; ++j) bc.push_back(f.element_at(rng.below(7)));
        UVPoly<PrimeField> a(f, ac), b(f, bc);
        if (b.is_zero()) {
            CHECK_THROWS_AS(UVPoly<PrimeField>::divrem(a, b), DivisionByZeroError);
            continue;
        }
        auto [q, r] = UVPoly<PrimeField>::divrem(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}
