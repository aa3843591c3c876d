#include <doctest.h>

#include "multcode/linalg.hpp"
#include "multcode/util.hpp"

using namespace multcode;

namespace {

Matrix<Fp> random_matrix(Rng& rng, const PrimeField& f, size_t rows, size_t cols) {
    Matrix<Fp> m(rows, cols, f.zero());
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = f.element_at(rng.below(f.size()));
    return m;
}

Matrix<ExtElem> random_ext_matrix(Rng& rng, const ExtField& f, size_t rows, size_t cols) {
    Matrix<ExtElem> m(rows, cols, f.zero());
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = f.element_at(rng.below(f.size()));
    return m;
}

}  // namespace

TEST_CASE("rref on a known system over F_5") {
    PrimeField f(5);
    // x + 2y = 3, 2x + 4y = 1 is inconsistent; x + 2y = 3, x + 3y = 0 solves to x=4, y=3
    Matrix<Fp> a(2, 2, f.zero());
    a.at(0, 0) = f.from_int(1);
    a.at(0, 1) = f.from_int(2);
    a.at(1, 0) = f.from_int(1);
    a.at(1, 1) = f.from_int(3);
    auto sol = solve_linear(a, {f.from_int(3), f.from_int(0)}, f.zero());
    REQUIRE(sol);
    CHECK((*sol)[0] == f.from_int(4));
    CHECK((*sol)[1] == f.from_int(2));

    Matrix<Fp> b(2, 2, f.zero());
    b.at(0, 0) = f.from_int(1);
    b.at(0, 1) = f.from_int(2);
    b.at(1, 0) = f.from_int(2);
    b.at(1, 1) = f.from_int(4);
    CHECK(!solve_linear(b, {f.from_int(3), f.from_int(1)}, f.zero()));
    CHECK(rank_of(b) == 1);
}

TEST_CASE("fast prime-field path agrees with the generic elimination") {
    Rng rng(41);
    for (uint32_t q : {2u, 3u, 31u, 251u, 65521u}) {
        PrimeField f(q);
        for (int t = 0; t < 10; ++t) {
            const size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
            Matrix<Fp> m = random_matrix(rng, f, rows, cols);
            auto fast = reduced_row_echelon(m);                // overload for Matrix<Fp>
            auto generic = reduced_row_echelon<Fp>(m);         // forced template
            CHECK(fast.pivots == generic.pivots);
            for (size_t r = 0; r < rows; ++r)
                for (size_t c = 0; c < cols; ++c) CHECK(fast.mat.at(r, c) == generic.mat.at(r, c));
        }
    }
}

TEST_CASE("solve returns an exact solution when one exists") {
    Rng rng(42);
    PrimeField f(13);
    for (int t = 0; t < 30; ++t) {
        const size_t rows = 1 + rng.below(10), cols = 1 + rng.below(10);
        Matrix<Fp> a = random_matrix(rng, f, rows, cols);
        std::vector<Fp> x0;
        for (size_t c = 0; c < cols; ++c) x0.push_back(f.element_at(rng.below(13)));
        std::vector<Fp> b(rows, f.zero());
        for (size_t r = 0; r < rows; ++r) {
            Fp acc = f.zero();
            for (size_t c = 0; c < cols; ++c) acc += a.at(r, c) * x0[c];
            b[r] = acc;
        }
        auto sol = solve_linear(a, b, f.zero());
        REQUIRE(sol);
        for (size_t r = 0; r < rows; ++r) {
            Fp acc = f.zero();
            for (size_t c = 0; c < cols; ++c) acc += a.at(r, c) * (*sol)[c];
            CHECK(acc == b[r]);
        }
    }
}

TEST_CASE("kernel vector: deterministic, last free variable one") {
    PrimeField f(7);
    // single equation x + y + z = 0: free vars y,z; last free column z
    Matrix<Fp> a(1, 3, f.zero());
    for (size_t c = 0; c < 3; ++c) a.at(0, c) = f.one();
    auto k = kernel_vector(a, f.zero(), f.one());
    REQUIRE(k);
    CHECK((*k)[2] == f.one());
    CHECK((*k)[1] == f.zero());
    CHECK((*k)[0] == f.from_int(-1));

    // full-rank square: trivial kernel
    Rng rng(4);
    for (;;) {
        Matrix<Fp> b = random_matrix(rng, f, 3, 3);
        if (rank_of(b) < 3) continue;
        CHECK(!kernel_vector(b, f.zero(), f.one()));
        break;
    }
}

TEST_CASE("kernel vectors are annihilated") {
    Rng rng(43);
    PrimeField f(31);
    for (int t = 0; t < 30; ++t) {
        const size_t rows = 1 + rng.below(8);
        const size_t cols = rows + 1 + rng.below(4);  // guaranteed nontrivial kernel
        Matrix<Fp> a = random_matrix(rng, f, rows, cols);
        auto k = kernel_vector(a, f.zero(), f.one());
        REQUIRE(k);
        bool nonzero = false;
        for (const auto& v : *k) nonzero = nonzero || !v.is_zero();
        CHECK(nonzero);
        for (size_t r = 0; r < rows; ++r) {
            Fp acc = f.zero();
            for (size_t c = 0; c < cols; ++c) acc += a.at(r, c) * (*k)[c];
            CHECK(acc == f.zero());
        }
    }
}

TEST_CASE("elimination over extension fields") {
    Rng rng(44);
    ExtField ext(PrimeField(13), 2);
    for (int t = 0; t < 10; ++t) {
        const size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
        Matrix<ExtElem> a = random_ext_matrix(rng, ext, rows, cols);
        std::vector<ExtElem> x0;
        for (size_t c = 0; c < cols; ++c) x0.push_back(ext.element_at(rng.below(ext.size())));
        std::vector<ExtElem> b(rows, ext.zero());
        for (size_t r = 0; r < rows; ++r) {
            ExtElem acc = ext.zero();
            for (size_t c = 0; c < cols; ++c) acc += a.at(r, c) * x0[c];
            b[r] = acc;
        }
        auto sol = solve_linear(a, b, ext.zero());
        REQUIRE(sol);
        for (size_t r = 0; r < rows; ++r) {
            ExtElem acc = ext.zero();
            for (size_t c = 0; c < cols; ++c) acc += a.at(r, c) * (*sol)[c];
            CHECK(acc == b[r]);
        }
    }
}

TEST_CASE("flat fp_solve agrees with solve_linear") {
    Rng rng(45);
    PrimeField f(31);
    for (int t = 0; t < 20; ++t) {
        const size_t rows = 1 + rng.below(10), cols = 1 + rng.below(10);
        Matrix<Fp> a = random_matrix(rng, f, rows, cols);
        std::vector<Fp> b;
        for (size_t r = 0; r < rows; ++r) b.push_back(f.element_at(rng.below(31)));
        detail::FpMat aug;
        aug.rows = rows;
        aug.cols = cols + 1;
        aug.a.assign(rows * (cols + 1), 0);
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < cols; ++c) aug.a[r * aug.cols + c] = a.at(r, c).value();
            aug.a[r * aug.cols + cols] = b[r].value();
        }
        auto flat = detail::fp_solve(std::move(aug), *f.rep());
        auto typed = solve_linear(a, b, f.zero());
        CHECK(bool(flat) == bool(typed));
        if (flat && typed) {
            for (size_t c = 0; c < cols; ++c) CHECK(flat->x[c] == (*typed)[c].value());
        }
    }
}
