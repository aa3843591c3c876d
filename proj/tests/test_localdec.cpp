#include <doctest.h>

#include "multcode/channel.hpp"
#include "multcode/localdec.hpp"
#include "multcode/util.hpp"

using namespace multcode;

namespace {

MVPoly<PrimeField> random_poly(Rng& rng, const CodeParams& p) {
    MVPoly<PrimeField> poly(p.field(), p.m());
    for (const auto& e : indices_up_to_degree(p.m(), p.d())) {
        Fp c = p.field().element_at(rng.below(p.q()));
        if (!c.is_zero()) poly.add_term(e, c);
    }
    return poly;
}

std::vector<Fp> point_at(const CodeParams& p, uint64_t idx) {
    return PointIndexer(p.q(), p.m()).point_at(idx, p.field());
}

}  // namespace

TEST_CASE("LocalConfig derivations match the pinned parameter algebra") {
    CodeParams p(31, 2, 8, 124);  // delta = 1/2
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(3, 100), 1);
    CHECK(cfg.gamma == make_ratio(13, 38));  // (1/2 - 24/100)/(1 - 24/100)
    CHECK(cfg.c == 3);
    CHECK(cfg.line_set.size() == 14);  // ceil(40/3)
    CHECK(cfg.line_set_complete);

    // delta0 >= delta/8 rejected
    CHECK_THROWS_AS(LocalConfig::for_delta0(p, make_ratio(1, 16), 1), std::invalid_argument);
    CHECK_THROWS_AS(LocalConfig::for_delta0(p, make_ratio(1, 8), 1), std::invalid_argument);

    // with_order pins c; correct_at refuses configs whose S was truncated
    LocalConfig scheme_like = LocalConfig::with_order(CodeParams(13, 2, 20, 130), make_ratio(1, 100), 5, 1);
    CHECK(scheme_like.c == 5);
    CHECK(!scheme_like.line_set_complete);
    CodeParams small(13, 2, 20, 130);
    auto cw = encode(small, MVPoly<PrimeField>(small.field(), 2));
    std::vector<Fp> a(2, small.field().zero());
    CHECK_THROWS_AS(correct_at(oracle_for(cw), a, scheme_like), std::invalid_argument);
}

TEST_CASE("uncorrupted correction is exact and counts queries") {
    Rng rng(3);
    CodeParams p(13, 2, 2, 6);  // delta = 10/13
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(1, 100), 42);
    const uint64_t expected_queries = cfg.line_set.size() * cfg.line_set.size() * p.q();
    for (uint64_t ptidx : {0ull, 37ull, 100ull}) {
        auto a = point_at(p, ptidx);
        auto res = correct_at(oracle_for(cw), a, cfg);
        REQUIRE(res.symbol);
        CHECK(*res.symbol == cw.symbols[ptidx]);
        CHECK(res.queries == expected_queries);
    }
}

TEST_CASE("seeded determinism: identical inputs and seeds, identical transcripts") {
    Rng rng(5);
    CodeParams p(13, 2, 2, 6);
    auto cw = encode(p, random_poly(rng, p));
    auto corr = corrupt(cw, ChannelSpec{make_ratio(1, 169), 9, ChannelSpec::Mode::ExactCount});
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(1, 200), 777);
    auto a = point_at(p, 55);
    auto r1 = correct_at(oracle_for(corr.word), a, cfg);
    auto r2 = correct_at(oracle_for(corr.word), a, cfg);
    CHECK(r1.queries == r2.queries);
    CHECK(bool(r1.symbol) == bool(r2.symbol));
    if (r1.symbol) CHECK(*r1.symbol == *r2.symbol);
}

TEST_CASE("good-line identity: below-threshold errors leave line decoding exact") {
    Rng rng(7);
    CodeParams p(31, 2, 4, 12);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    PointIndexer idx(31, 2);
    const Rational delta0 = make_ratio(1, 32);  // 4 delta0 q = 3.875: up to 3 errors stay good
    auto a = point_at(p, 17);
    std::vector<Fp> b{p.field().from_int(3), p.field().from_int(10)};

    // plant exactly 3 errors on the line (t = 1, 2, 5), then decode each l
    auto corrupted = cw;
    for (uint32_t t : {1u, 2u, 5u}) {
        Fp tf = p.field().element_at(t);
        std::vector<Fp> pt{a[0] + tf * b[0], a[1] + tf * b[1]};
        auto& sym = corrupted.symbols[idx.index_of(pt)];
        sym[0] += p.field().one();
    }
    std::vector<Symbol> line_symbols;
    for (uint32_t t = 0; t < 31; ++t) {
        Fp tf = p.field().element_at(t);
        std::vector<Fp> pt{a[0] + tf * b[0], a[1] + tf * b[1]};
        line_symbols.push_back(corrupted.symbols[idx.index_of(pt)]);
    }
    for (const auto& l : indices_below_weight(2, 2)) {
        auto word = line_restriction_word(p, line_symbols, b, l);
        auto dec = unique_decode_uv(word);
        REQUIRE(dec);
        // the decoded restriction is exactly P^(l)(a + bT)
        auto truth = restrict_to_line(hasse_derivative(poly, l), std::span<const Fp>(a),
                                      std::span<const Fp>(b));
        CHECK(dec->poly == truth);
        // and it lies within the 4 delta0 radius used by the main algorithm
        CHECK(mpz_class(static_cast<unsigned long>(dec->differing)) * delta0.get_den() * 1 <
              4 * delta0.get_num() * 31);
    }
}

TEST_CASE("jet consistency: R~ built from the true jets satisfies the line constraints") {
    Rng rng(9);
    CodeParams p(13, 2, 3, 9);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    PointIndexer idx(13, 2);
    auto a = point_at(p, 29);
    const uint32_t c = 2;
    BinomTableModP binom(13, p.s());

    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Fp> b{p.field().element_at(rng.below(13)), p.field().element_at(rng.below(13))};
        std::vector<Symbol> line_symbols;
        for (uint32_t t = 0; t < 13; ++t) {
            Fp tf = p.field().element_at(t);
            std::vector<Fp> pt{a[0] + tf * b[0], a[1] + tf * b[1]};
            line_symbols.push_back(cw.symbols[idx.index_of(pt)]);
        }
        for (uint32_t jp = 0; jp < p.s(); ++jp) {
            // R~_{j'} = sum over wt(i') = j' of P^(i')(a) X^{i'}
            MVPoly<PrimeField> rt(p.field(), 2);
            for (const auto& ip : indices_of_weight(2, jp)) {
                rt.add_term(ip, hasse_derivative(poly, ip).eval(a));
            }
            for (const auto& l : indices_below_weight(2, c)) {
                auto word = line_restriction_word(p, line_symbols, b, l);
                auto dec = unique_decode_uv(word);
                REQUIRE(dec);
                const Fp v = jp >= l.weight() ? dec->poly.coeff(jp - l.weight()) : p.field().zero();
                CHECK(hasse_derivative(rt, l).eval(b) == v);
            }
        }
    }
}

TEST_CASE("jet combination recovers planted values through 30 percent garbage") {
    Rng rng(11);
    CodeParams p(13, 2, 3, 9);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    PointIndexer idx(13, 2);
    auto a = point_at(p, 100);
    const uint32_t c = 2;
    const auto ls = indices_below_weight(2, c);

    // directions: an injective affine grid (identity map on S^2)
    std::vector<std::vector<Fp>> dirs;
    for (uint32_t x = 0; x < 5; ++x) {
        for (uint32_t y = 0; y < 5; ++y) {
            dirs.push_back({p.field().element_at(x), p.field().element_at(y)});
        }
    }
    std::vector<std::vector<std::optional<std::vector<Fp>>>> table(dirs.size());
    for (size_t bi = 0; bi < dirs.size(); ++bi) {
        for ([[maybe_unused]] const auto& l : ls) {
            auto truth = restrict_to_line(hasse_derivative(poly, l), std::span<const Fp>(a),
                                          std::span<const Fp>(dirs[bi]));
            table[bi].push_back(truth.coeffs());
        }
    }
    // trash 30% of the directions entirely
    for (size_t bi = 0; bi < dirs.size(); ++bi) {
        if (rng.below(10) < 3) {
            for (auto& entry : table[bi]) {
                std::vector<Fp> junk;
                for (int k = 0; k < 4; ++k) junk.push_back(p.field().element_at(rng.below(13)));
                entry = junk;
            }
        }
    }
    Rng combine_rng(2024);
    auto rs = jet_combination_decode(p.field(), dirs, table, c, p.s(), combine_rng);
    REQUIRE(rs);
    for (uint32_t jp = 0; jp < p.s(); ++jp) {
        for (const auto& ip : indices_of_weight(2, jp)) {
            CHECK((*rs)[jp].coeff(ip) == hasse_derivative(poly, ip).eval(a));
        }
    }
}

TEST_CASE("uniqueness backstop: low-degree polynomials rarely vanish to order c on the grid") {
    // fraction of S^m where a nonzero degree-<s polynomial vanishes with
    // multiplicity >= c is at most s/(c|S|) = 1/5
    Rng rng(13);
    CodeParams p(31, 2, 8, 124);
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(3, 100), 1);
    const uint64_t bound = 14 * 14 / 5;  // |S|^m / 5
    for (int t = 0; t < 25; ++t) {
        const uint32_t jp = 1 + rng.below(7);
        MVPoly<PrimeField> r(p.field(), 2);
        while (r.is_zero()) {
            for (const auto& ip : indices_of_weight(2, jp)) {
                r.add_term(ip, p.field().element_at(rng.below(31)));
            }
        }
        uint64_t vanishing = 0;
        for (const auto& x : cfg.line_set) {
            for (const auto& y : cfg.line_set) {
                std::vector<Fp> b{x, y};
                if (multiplicity(r, std::span<const Fp>(b)) >= static_cast<int>(cfg.c)) ++vanishing;
            }
        }
        CHECK(vanishing <= bound);
    }
}

TEST_CASE("degenerate order c = 1 reduces to plain evaluation consensus") {
    Rng rng(15);
    CodeParams p(13, 2, 2, 16);  // delta = 10/26 < 1/2 forces gamma < 1/2 and c = 1
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(1, 25), 31);
    REQUIRE(cfg.c == 1);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    auto a = point_at(p, 77);
    auto res = correct_at(oracle_for(cw), a, cfg);
    REQUIRE(res.symbol);
    CHECK(*res.symbol == cw.symbols[77]);
}

TEST_CASE("correct_at under corruption at compact parameters") {
    Rng rng(17);
    CodeParams p(13, 2, 2, 6);  // delta = 10/13
    LocalConfig base = LocalConfig::for_delta0(p, make_ratio(1, 50), 0);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    int succ = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        auto corr = corrupt(cw, ChannelSpec{make_ratio(3, 169), 100 + static_cast<uint64_t>(t),
                                            ChannelSpec::Mode::ExactCount});
        const uint64_t ptidx = rng.below(p.length());
        auto a = point_at(p, ptidx);
        LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(1, 50), 9000 + t);
        auto res = correct_at(oracle_for(corr.word), a, cfg);
        if (res.symbol && *res.symbol == cw.symbols[ptidx]) ++succ;
    }
    CHECK(succ >= trials * 8 / 10);
}

TEST_CASE("single-line variation recovers the low-order jet") {
    Rng rng(19);
    CodeParams p(13, 2, 3, 9);  // delta = 10/13
    LocalConfig cfg0 = LocalConfig::for_delta0(p, make_ratio(1, 50), 0);
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    // uncorrupted: exact, q queries
    auto a = point_at(p, 14);
    auto res = recover_low_order_jet(oracle_for(cw), a, cfg0);
    REQUIRE(res.values);
    CHECK(res.queries == 13);
    CHECK(res.order == cfg0.c);
    Symbol expect(cw.symbols[14].begin(), cw.symbols[14].begin() + res.values->size());
    CHECK(*res.values == expect);

    // c = 1 degenerate: returns exactly (P(a))
    CodeParams p1(13, 2, 2, 16);
    LocalConfig cfg1 = LocalConfig::for_delta0(p1, make_ratio(1, 25), 5);
    REQUIRE(cfg1.c == 1);
    auto cw1 = encode(p1, random_poly(rng, p1));
    auto r1 = recover_low_order_jet(oracle_for(cw1), a, cfg1);
    REQUIRE(r1.values);
    CHECK(r1.values->size() == 1);
    CHECK((*r1.values)[0] == cw1.symbols[14][0]);
}

TEST_CASE("m-line variation: exact jets from m independent lines") {
    Rng rng(21);
    CodeParams p(31, 2, 4, 12);
    LocalConfig cfg = LocalConfig::for_delta0(p, make_ratio(1, 100), 7);
    REQUIRE(cfg.c == 4);  // c' = 8 > s: full jet
    auto poly = random_poly(rng, p);
    auto cw = encode(p, poly);
    for (uint64_t ptidx : {3ull, 500ull, 960ull}) {
        auto a = point_at(p, ptidx);
        auto res = m_line_correct(oracle_for(cw), a, cfg);
        REQUIRE(res.values);
        CHECK(res.order == 4);
        CHECK(res.queries == 62);
        CHECK(*res.values == cw.symbols[ptidx]);
    }
    CHECK_THROWS_AS(m_line_correct(oracle_for(cw), point_at(p, 0),
                                   LocalConfig::for_delta0(CodeParams(13, 1, 2, 6), make_ratio(1, 100), 1)),
                    std::invalid_argument);
}

TEST_CASE("joints lemma at tiny scale: independent vanishing directions force zero") {
    // m = 2, c <= 2, homogeneous degree j' < 2c over F_3: the vanishing set
    // {b != 0 : mult(R, b) >= c} of a nonzero R spans at most one dimension.
    PrimeField f3(3);
    for (uint32_t c = 1; c <= 2; ++c) {
        for (uint32_t jp = 1; jp < 2 * c; ++jp) {
            const auto monos = indices_of_weight(2, jp);
            const uint64_t total = pow_u64_checked(3, static_cast<uint32_t>(monos.size()), "joints");
            for (uint64_t n = 1; n < total; ++n) {
                MVPoly<PrimeField> r(f3, 2);
                uint64_t t = n;
                for (const auto& e : monos) {
                    if (t % 3) r.add_term(e, f3.from_int(static_cast<int64_t>(t % 3)));
                    t /= 3;
                }
                if (r.is_zero()) continue;
                std::vector<std::vector<Fp>> vanish;
                for (uint32_t x = 0; x < 3; ++x) {
                    for (uint32_t y = 0; y < 3; ++y) {
                        if (x == 0 && y == 0) continue;
                        std::vector<Fp> b{f3.element_at(x), f3.element_at(y)};
                        if (multiplicity(r, std::span<const Fp>(b)) >= static_cast<int>(c)) {
                            vanish.push_back(b);
                        }
                    }
                }
                // no two linearly independent vectors may both vanish to order c
                for (size_t i = 0; i < vanish.size(); ++i) {
                    for (size_t j = i + 1; j < vanish.size(); ++j) {
                        Fp det = vanish[i][0] * vanish[j][1] - vanish[i][1] * vanish[j][0];
                        CHECK(det.is_zero());
                    }
                }
            }
        }
    }
}

TEST_CASE("constant-query scheme at compact parameters") {
    // q=5, m=2, s=8, c=1: d = 20, (c+m)q = 15 < 20
    SchemeParams sp(5, 2, 8, 1);
    CHECK(sp.message_symbol_len() == 1);
    CHECK(sp.alphabet_ratio() == Rational(36));  // binom(9,2)/binom(2,2)

    // zero message -> zero codeword; queries return 0
    std::vector<std::vector<Fp>> zero(25, std::vector<Fp>(1, sp.code.field().zero()));
    auto cw = scheme_encode(sp, zero);
    for (const auto& sym : cw.symbols)
        for (const auto& v : sym) CHECK(v.is_zero());
    auto res = scheme_query(sp, oracle_for(cw), {sp.code.field().one(), sp.code.field().from_int(3)}, 4);
    REQUIRE(res.values);
    CHECK(res.queries == 5);
    CHECK((*res.values)[0].is_zero());

    // random message: the encoding carries f as the order-<c jets
    Rng rng(23);
    std::vector<std::vector<Fp>> f(25);
    for (auto& sym : f) sym.assign(1, sp.code.field().element_at(rng.below(5)));
    auto cw2 = scheme_encode(sp, f);
    for (uint64_t pt = 0; pt < 25; ++pt) {
        CHECK(cw2.symbols[pt][0] == f[pt][0]);
    }
    CHECK_THROWS_AS(SchemeParams(5, 2, 8, 3), std::invalid_argument);   // (c+m)q >= d
    CHECK_THROWS_AS(SchemeParams(5, 2, 7, 1), std::invalid_argument);   // sq odd
}
