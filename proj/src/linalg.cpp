#include "multcode/linalg.hpp"

namespace multcode {
namespace detail {

std::vector<size_t> fp_rref(FpMat& m, const PrimeFieldRep& f) {
    const uint32_t q = f.q;
    const uint64_t batch = axpy_batch(q);
    std::vector<uint64_t> dirty(m.rows, 0);
    std::vector<size_t> pivots;

    auto reduce_row = [&](size_t r) {
        uint32_t* row = &m.a[r * m.cols];
        for (size_t j = 0; j < m.cols; ++j) row[j] = f.reduce(row[j]);
        dirty[r] = 0;
    };

    size_t pr = 0;
    for (size_t c = 0; c < m.cols && pr < m.rows; ++c) {
        // pivot search; entries may be unreduced multiples of q
        size_t sel = m.rows;
        for (size_t r = pr; r < m.rows; ++r) {
            if (f.reduce(m.at(r, c)) != 0) {
                sel = r;
                break;
            }
        }
        if (sel == m.rows) continue;
        if (sel != pr) {
            uint32_t* ra = &m.a[sel * m.cols];
            uint32_t* rb = &m.a[pr * m.cols];
            for (size_t j = 0; j < m.cols; ++j) std::swap(ra[j], rb[j]);
            std::swap(dirty[sel], dirty[pr]);
        }
        reduce_row(pr);
        uint32_t* prow = &m.a[pr * m.cols];
        const uint32_t piv = prow[c];
        if (piv != 1) {
            const uint32_t inv = f.inv_of(piv);
            for (size_t j = c; j < m.cols; ++j) prow[j] = f.reduce(static_cast<uint64_t>(prow[j]) * inv);
        }
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == pr) continue;
            const uint32_t v = f.reduce(m.at(r, c));
            if (v == 0) {
                m.at(r, c) = 0;
                continue;
            }
            const uint32_t mu = q - v;
            uint32_t* row = &m.a[r * m.cols];
            if (batch > 0) {
                if (dirty[r] >= batch) reduce_row(r);
                // row entries j < c are either true zeros or unreduced
                // multiples of q at earlier pivot columns; prow has true
                // zeros before c, so touching [c, cols) is enough.
                fp_axpy(row + c, prow + c, m.cols - c, mu);
                ++dirty[r];
            } else {
                for (size_t j = c; j < m.cols; ++j) {
                    row[j] = f.reduce(row[j] + static_cast<uint64_t>(mu) * prow[j]);
                }
            }
            m.at(r, c) = 0;
        }
        pivots.push_back(c);
        ++pr;
    }
    for (size_t r = 0; r < m.rows; ++r) {
        if (dirty[r]) reduce_row(r);
    }
    return pivots;
}

std::optional<FpSolveResult> fp_solve(FpMat aug, const PrimeFieldRep& f) {
    if (aug.cols == 0) throw std::invalid_argument("fp_solve: augmented matrix needs >= 1 column");
    const size_t unknowns = aug.cols - 1;
    auto pivots = fp_rref(aug, f);
    FpSolveResult out{std::vector<uint32_t>(unknowns, 0), false};
    size_t rank = 0;
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == unknowns) return std::nullopt;  // pivot in the rhs column
        out.x[pivots[i]] = aug.at(i, unknowns);
        ++rank;
    }
    out.unique = rank == unknowns;
    return out;
}

}  // namespace detail

Echelon<Fp> reduced_row_echelon(Matrix<Fp> a) {
    if (a.rows() == 0 || a.cols() == 0) return Echelon<Fp>{std::move(a), {}};
    const detail::PrimeFieldRep* rep = a.at(0, 0).rep();
    detail::FpMat fm;
    fm.rows = a.rows();
    fm.cols = a.cols();
    fm.a.resize(fm.rows * fm.cols);
    for (size_t r = 0; r < fm.rows; ++r) {
        for (size_t c = 0; c < fm.cols; ++c) {
            const Fp& e = a.at(r, c);
            if (e.rep() != rep) throw FieldMismatchError("matrix mixes fields");
            fm.a[r * fm.cols + c] = e.value();
        }
    }
    auto pivots = detail::fp_rref(fm, *rep);
    for (size_t r = 0; r < fm.rows; ++r) {
        for (size_t c = 0; c < fm.cols; ++c) {
            a.at(r, c) = Fp(fm.a[r * fm.cols + c], rep);
        }
    }
    return Echelon<Fp>{std::move(a), std::move(pivots)};
}

}  // namespace multcode
