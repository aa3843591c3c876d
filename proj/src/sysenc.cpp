#include "multcode/sysenc.hpp"

#include "multcode/linalg.hpp"

namespace multcode {

namespace {

/// Evaluation row of the pair (a, i) over the degree-<=d monomial basis:
/// column e carries binom(e, i) a^{e-i}.
void fill_eval_row(uint32_t* row, const CodeParams& params, const std::vector<MultiIndex>& monos,
                   const std::vector<std::vector<uint32_t>>& pows, const MultiIndex& i,
                   const BinomTableModP& binom) {
    const uint32_t q = params.q();
    for (size_t u = 0; u < monos.size(); ++u) {
        const MultiIndex& e = monos[u];
        if (!e.dominates(i)) {
            row[u] = 0;
            continue;
        }
        uint64_t v = binom.multi(e, i);
        for (uint32_t k = 0; k < params.m() && v; ++k) v = v * pows[k][e[k] - i[k]] % q;
        row[u] = static_cast<uint32_t>(v);
    }
}

std::vector<std::vector<uint32_t>> point_powers(const CodeParams& params, const std::vector<Fp>& point) {
    std::vector<std::vector<uint32_t>> pows(params.m());
    for (uint32_t k = 0; k < params.m(); ++k) {
        pows[k].reserve(params.d() + 1);
        pows[k].push_back(1 % params.q());
        for (uint32_t e = 1; e <= params.d(); ++e) {
            pows[k].push_back(static_cast<uint32_t>(static_cast<uint64_t>(pows[k].back()) *
                                                    point[k].value() % params.q()));
        }
    }
    return pows;
}

}  // namespace

InterpolatingSet build_interpolating_set(const CodeParams& params) {
    const PrimeField& field = params.field();
    const detail::PrimeFieldRep& rep = *field.rep();
    const uint32_t q = params.q();
    const auto monos = indices_up_to_degree(params.m(), params.d());
    const size_t K = monos.size();
    if (K > params.length() * params.symbol_len()) {
        throw std::invalid_argument("build_interpolating_set: message longer than the codeword");
    }
    check_cells(static_cast<uint64_t>(K) * K + K, "interpolating set basis");

    BinomTableModP binom(q, params.d() + 1);
    PointIndexer indexer(q, params.m());
    const uint64_t batch = detail::axpy_batch(q);

    std::vector<std::vector<uint32_t>> basis;            // reduced REF rows, pivot scaled to 1
    std::vector<ptrdiff_t> pivot_of(K, -1);              // column -> basis row
    InterpolatingSet set{params, {}};
    std::vector<uint32_t> row(K);

    for (uint64_t pt = 0; pt < params.length() && set.pairs.size() < K; ++pt) {
        const auto point = indexer.point_at(pt, field);
        const auto pows = point_powers(params, point);
        for (const auto& i : params.jet_indices()) {
            if (set.pairs.size() == K) break;
            fill_eval_row(row.data(), params, monos, pows, i, binom);
            // reduce against the basis left to right; delayed reduction on
            // the unvisited tail
            uint64_t dirt = 0;
            bool accepted = false;
            for (size_t col = 0; col < K; ++col) {
                const uint32_t v = rep.reduce(row[col]);
                row[col] = v;
                if (v == 0) continue;
                const ptrdiff_t br = pivot_of[col];
                if (br >= 0) {
                    const uint32_t mu = q - v;
                    const uint32_t* brow = basis[static_cast<size_t>(br)].data();
                    if (batch > 0) {
                        if (dirt >= batch) {
                            for (size_t j = col; j < K; ++j) row[j] = rep.reduce(row[j]);
                            dirt = 0;
                        }
                        detail::fp_axpy(row.data() + col, brow + col, K - col, mu);
                        ++dirt;
                    } else {
                        for (size_t j = col; j < K; ++j) {
                            row[j] = rep.reduce(row[j] + static_cast<uint64_t>(mu) * brow[j]);
                        }
                    }
                    row[col] = 0;
                } else {
                    // new pivot: finalize the row and keep the pair
                    for (size_t j = col; j < K; ++j) row[j] = rep.reduce(row[j]);
                    if (row[col] != 1) {
                        const uint32_t inv = rep.inv_of(row[col]);
                        for (size_t j = col; j < K; ++j) {
                            row[j] = rep.reduce(static_cast<uint64_t>(row[j]) * inv);
                        }
                    }
                    pivot_of[col] = static_cast<ptrdiff_t>(basis.size());
                    basis.push_back(row);
                    set.pairs.emplace_back(point, i);
                    accepted = true;
                    break;
                }
            }
            (void)accepted;  // a fully reduced row is dependent and skipped
        }
    }
    if (set.pairs.size() != K) {
        throw std::logic_error("build_interpolating_set: rank deficiency (cannot happen when d < sq)");
    }
    return set;
}

MVPoly<PrimeField> interpolate_from_set(const InterpolatingSet& set, const std::vector<Fp>& message) {
    const CodeParams& params = set.params;
    const PrimeField& field = params.field();
    const auto monos = indices_up_to_degree(params.m(), params.d());
    const size_t K = monos.size();
    if (message.size() != set.pairs.size() || set.pairs.size() != K) {
        throw std::invalid_argument("interpolate_from_set: message length must equal binom(d+m, m)");
    }
    check_cells(static_cast<uint64_t>(K) * (K + 1), "systematic interpolation");

    BinomTableModP binom(params.q(), params.d() + 1);
    detail::FpMat aug;
    aug.rows = K;
    aug.cols = K + 1;
    aug.a.assign(K * (K + 1), 0);
    for (size_t r = 0; r < K; ++r) {
        const auto& [point, i] = set.pairs[r];
        const auto pows = point_powers(params, point);
        fill_eval_row(&aug.a[r * aug.cols], params, monos, pows, i, binom);
        aug.a[r * aug.cols + K] = message[r].value();
    }
    auto sol = detail::fp_solve(std::move(aug), *field.rep());
    if (!sol || !sol->unique) {
        throw std::logic_error("interpolate_from_set: set invariant violated (system not uniquely solvable)");
    }
    MVPoly<PrimeField> poly(field, params.m());
    for (size_t u = 0; u < K; ++u) {
        if (sol->x[u]) poly.add_term(monos[u], field.from_int(sol->x[u]));
    }
    return poly;
}

Codeword systematic_encode(const CodeParams& params, const InterpolatingSet& set,
                           const std::vector<Fp>& message) {
    if (!(set.params == params)) throw std::invalid_argument("systematic_encode: set built for other params");
    return encode(params, interpolate_from_set(set, message));
}

std::vector<Fp> read_message(const Codeword& word, const InterpolatingSet& set) {
    if (!(word.params == set.params)) throw std::invalid_argument("read_message: parameter mismatch");
    PointIndexer indexer(word.params.q(), word.params.m());
    std::vector<Fp> out;
    out.reserve(set.pairs.size());
    for (const auto& [point, i] : set.pairs) {
        out.push_back(word.symbols[indexer.index_of(point)][word.params.jet_position(i)]);
    }
    return out;
}

LocalDecodeResult local_decode_message(const SymbolOracle& oracle, const InterpolatingSet& set,
                                       size_t index, const LocalConfig& cfg) {
    if (!(cfg.params == set.params)) {
        throw std::invalid_argument("local_decode_message: config built for other params");
    }
    if (index >= set.pairs.size()) throw std::out_of_range("local_decode_message: index out of range");
    const auto& [point, i] = set.pairs[index];
    CorrectionResult res = correct_at(oracle, point, cfg);
    if (!res.symbol) return LocalDecodeResult{std::nullopt, res.queries};
    return LocalDecodeResult{(*res.symbol)[set.params.jet_position(i)], res.queries};
}

}  // namespace multcode
