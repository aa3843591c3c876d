#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "multcode/gf.hpp"
#include "multcode/util.hpp"

namespace multcode {

/// Dense matrix over a field element type. Rows are contiguous.
/// Constructed from a zero prototype, since elements carry their field.
template <class E>
class Matrix {
public:
    Matrix(size_t rows, size_t cols, const E& zero) : rows_(rows), cols_(cols), data_(rows * cols, zero) {
        check_cells(static_cast<uint64_t>(rows) * cols, "Matrix");
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    E& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const E& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    E* row(size_t r) { return data_.data() + r * cols_; }
    const E* row(size_t r) const { return data_.data() + r * cols_; }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

private:
    size_t rows_, cols_;
    std::vector<E> data_;
};

template <class E>
struct Echelon {
    Matrix<E> mat;               // reduced row echelon form
    std::vector<size_t> pivots;  // pivot column of row i, size = rank
    size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan over an arbitrary field.
template <class E>
Echelon<E> reduced_row_echelon(Matrix<E> a) {
    std::vector<size_t> pivots;
    size_t pr = 0;
    for (size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
        size_t sel = a.rows();
        for (size_t r = pr; r < a.rows(); ++r) {
            if (!a.at(r, c).is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel == a.rows()) continue;
        a.swap_rows(sel, pr);
        E piv_inv = a.at(pr, c).inv();
        for (size_t j = c; j < a.cols(); ++j) a.at(pr, j) = a.at(pr, j) * piv_inv;
        for (size_t r = 0; r < a.rows(); ++r) {
            if (r == pr) continue;
            E f = a.at(r, c);
            if (f.is_zero()) continue;
            for (size_t j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) - f * a.at(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return Echelon<E>{std::move(a), std::move(pivots)};
}

namespace detail {

/// Flat uint32 matrix over F_q used by the fast elimination path.
struct FpMat {
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;  // row-major

    uint32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
};

/// How many unreduced axpy passes a row can absorb before values may no
/// longer fit in 32 bits. Zero means reduce every time (q >= 2^16).
inline uint64_t axpy_batch(uint32_t q) {
    const uint64_t step = static_cast<uint64_t>(q - 1) * (q - 1);
    if (step == 0) return UINT64_MAX;
    return (0xFFFFFFFFull - q) / step;
}

/// In-place Gauss-Jordan with delayed reduction; returns pivot columns.
/// Entries of `m.a` must be < q on input and are < q on output.
std::vector<size_t> fp_rref(FpMat& m, const PrimeFieldRep& f);

/// dst[j] += mu * src[j]; plain loop the compiler can vectorize.
inline void fp_axpy(uint32_t* dst, const uint32_t* src, size_t n, uint32_t mu) {
    for (size_t j = 0; j < n; ++j) dst[j] += mu * src[j];
}

struct FpSolveResult {
    std::vector<uint32_t> x;
    bool unique;
};

/// Solves [A | b] (augmented, cols = unknowns + 1) over F_q on flat storage;
/// free variables zero. nullopt when inconsistent. For systems too large to
/// hold as Matrix<Fp>.
std::optional<FpSolveResult> fp_solve(FpMat aug, const PrimeFieldRep& f);

}  // namespace detail

/// Fast overload for prime fields.
Echelon<Fp> reduced_row_echelon(Matrix<Fp> a);

template <class E>
size_t rank_of(Matrix<E> a) {
    return reduced_row_echelon(std::move(a)).rank();
}

/// Solves A x = b exactly. Returns the solution with all free variables set
/// to zero, or nullopt if the system is inconsistent.
template <class E>
std::optional<std::vector<E>> solve_linear(const Matrix<E>& a, const std::vector<E>& b, const E& zero) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
    Matrix<E> aug(a.rows(), a.cols() + 1, zero);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto ech = reduced_row_echelon(std::move(aug));
    std::vector<E> x(a.cols(), zero);
    for (size_t i = 0; i < ech.pivots.size(); ++i) {
        if (ech.pivots[i] == a.cols()) return std::nullopt;  // pivot in the rhs column
        x[ech.pivots[i]] = ech.mat.at(i, a.cols());
    }
    return x;
}

/// Result of solve with a uniqueness flag (rank == #columns).
template <class E>
struct UniqueSolve {
    std::vector<E> x;
    bool unique;
};

template <class E>
std::optional<UniqueSolve<E>> solve_linear_checked(const Matrix<E>& a, const std::vector<E>& b, const E& zero) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
    Matrix<E> aug(a.rows(), a.cols() + 1, zero);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto ech = reduced_row_echelon(std::move(aug));
    std::vector<E> x(a.cols(), zero);
    size_t main_rank = 0;
    for (size_t i = 0; i < ech.pivots.size(); ++i) {
        if (ech.pivots[i] == a.cols()) return std::nullopt;
        x[ech.pivots[i]] = ech.mat.at(i, a.cols());
        ++main_rank;
    }
    return UniqueSolve<E>{std::move(x), main_rank == a.cols()};
}

/// One deterministic nonzero kernel vector: the last free variable set to 1,
/// all other free variables 0. nullopt when the kernel is trivial.
template <class E>
std::optional<std::vector<E>> kernel_vector(const Matrix<E>& a, const E& zero, const E& one) {
    auto ech = reduced_row_echelon(a);
    if (ech.rank() == a.cols()) return std::nullopt;
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t p : ech.pivots) is_pivot[p] = true;
    size_t free_col = a.cols();
    for (size_t c = a.cols(); c-- > 0;) {
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    }
    std::vector<E> x(a.cols(), zero);
    x[free_col] = one;
    for (size_t i = 0; i < ech.pivots.size(); ++i) {
        x[ech.pivots[i]] = zero - ech.mat.at(i, free_col);
    }
    return x;
}

}  // namespace multcode
