#include "multcode/localdec.hpp"

#include <algorithm>
#include <cassert>

#include "multcode/linalg.hpp"

namespace multcode {

namespace {

/// floor(r * s) for nonnegative rational r.
uint32_t floor_times(const Rational& r, uint32_t s) {
    mpz_class v = (r.get_num() * s) / r.get_den();
    return static_cast<uint32_t>(v.get_ui());
}

std::vector<Fp> first_elements(const PrimeField& field, uint64_t count) {
    std::vector<Fp> out;
    out.reserve(count);
    for (uint64_t v = 0; v < count; ++v) out.push_back(field.element_at(v));
    return out;
}

std::vector<Fp> random_point(Rng& rng, const PrimeField& field, uint32_t m) {
    std::vector<Fp> pt;
    pt.reserve(m);
    for (uint32_t k = 0; k < m; ++k) pt.push_back(field.element_at(rng.below(field.size())));
    return pt;
}

std::vector<Fp> random_nonzero_point(Rng& rng, const PrimeField& field, uint32_t m) {
    for (;;) {
        auto pt = random_point(rng, field, m);
        for (const auto& x : pt)
            if (!x.is_zero()) return pt;
    }
}

bool linearly_independent(const PrimeField& field, const std::vector<std::vector<Fp>>& vecs) {
    if (vecs.empty()) return true;
    const size_t m = vecs[0].size();
    Matrix<Fp> mat(vecs.size(), m, field.zero());
    for (size_t r = 0; r < vecs.size(); ++r)
        for (size_t c = 0; c < m; ++c) mat.at(r, c) = vecs[r][c];
    return rank_of(std::move(mat)) == vecs.size();
}

/// Per-l tables for assembling the line words of Eq-style restrictions:
/// (ell_{b,l}(t))_j = sum over wt(i)=j of binom(l+i, l) r^{(l+i)}(a+bt) b^i.
struct RestrictionTables {
    struct Term {
        size_t sym_pos;         // position of l+i in the code symbol
        uint32_t binom;         // binom(l+i, l) mod q
        std::vector<uint32_t> i;  // exponent of b
    };
    std::vector<MultiIndex> ls;                          // wt(l) < c, graded-lex
    std::vector<std::vector<std::vector<Term>>> terms;   // [l][j][...]
};

RestrictionTables build_restriction_tables(const CodeParams& params, uint32_t c) {
    RestrictionTables t;
    t.ls = indices_below_weight(params.m(), c);
    BinomTableModP binom(params.q(), params.s());
    t.terms.resize(t.ls.size());
    for (size_t li = 0; li < t.ls.size(); ++li) {
        const MultiIndex& l = t.ls[li];
        const uint32_t order = params.s() - l.weight();
        t.terms[li].resize(order);
        for (uint32_t j = 0; j < order; ++j) {
            for (const auto& i : indices_of_weight(params.m(), j)) {
                const MultiIndex li_sum = l.plus(i);
                t.terms[li][j].push_back(RestrictionTables::Term{
                    params.jet_position(li_sum), binom.multi(li_sum, l), i.exps()});
            }
        }
    }
    return t;
}

/// Powers of the coordinates of b up to exponent s-1.
std::vector<std::vector<Fp>> direction_powers(const CodeParams& params, const std::vector<Fp>& b) {
    std::vector<std::vector<Fp>> pows(params.m());
    for (uint32_t k = 0; k < params.m(); ++k) {
        pows[k].reserve(params.s());
        pows[k].push_back(params.field().one());
        for (uint32_t e = 1; e < params.s(); ++e) pows[k].push_back(pows[k].back() * b[k]);
    }
    return pows;
}

ReceivedWordUV<PrimeField> assemble_line_word(const CodeParams& params,
                                              const std::vector<Symbol>& line_symbols,
                                              const std::vector<std::vector<Fp>>& bpow,
                                              const RestrictionTables& tables, size_t li) {
    const MultiIndex& l = tables.ls[li];
    const uint32_t order = params.s() - l.weight();
    UVCodeParams<PrimeField> up(params.field(), order, params.d() - l.weight());
    ReceivedWordUV<PrimeField> word{up, {}};
    word.symbols.reserve(params.q());
    for (uint32_t t = 0; t < params.q(); ++t) {
        std::vector<Fp> sym;
        sym.reserve(order);
        for (uint32_t j = 0; j < order; ++j) {
            Fp acc = params.field().zero();
            for (const auto& term : tables.terms[li][j]) {
                if (term.binom == 0) continue;
                Fp bp = params.field().one();
                for (uint32_t k = 0; k < params.m(); ++k) bp = bp * bpow[k][term.i[k]];
                acc += params.field().from_int(term.binom) * line_symbols[t][term.sym_pos] * bp;
            }
            sym.push_back(acc);
        }
        word.symbols.push_back(std::move(sym));
    }
    return word;
}

/// Queries all q points of the line a + bt, in t order.
std::vector<Symbol> query_line(const SymbolOracle& oracle, const CodeParams& params,
                               const std::vector<Fp>& a, const std::vector<Fp>& b, uint64_t& queries) {
    std::vector<Symbol> out;
    out.reserve(params.q());
    std::vector<Fp> pt(a);
    for (uint32_t t = 0; t < params.q(); ++t) {
        const Fp tf = params.field().element_at(t);
        for (uint32_t k = 0; k < params.m(); ++k) pt[k] = a[k] + tf * b[k];
        out.push_back(oracle(pt));
        ++queries;
    }
    return out;
}

/// Decodes the (b, l) line word. max_radius, when set, additionally requires
/// the decoded restriction to lie strictly within that fraction; otherwise
/// the decoder's own half-distance gate is the only requirement.
std::optional<std::vector<Fp>> decode_line(const CodeParams& params, const std::vector<Symbol>& line_symbols,
                                           const std::vector<std::vector<Fp>>& bpow,
                                           const RestrictionTables& tables, size_t li,
                                           const Rational* max_radius) {
    auto word = assemble_line_word(params, line_symbols, bpow, tables, li);
    auto dec = unique_decode_uv(word);
    if (!dec) return std::nullopt;
    if (max_radius) {
        // differing/q < radius  <=>  differing * den < num * q
        const mpz_class lhs = mpz_class(static_cast<unsigned long>(dec->differing)) * max_radius->get_den();
        const mpz_class rhs = max_radius->get_num() * params.q();
        if (!(lhs < rhs)) return std::nullopt;
    }
    return dec->poly.coeffs();
}

/// R^{(l)}(b) as a linear functional on the coefficients of a homogeneous
/// degree-j' polynomial: coefficient of unknown i' is binom(i', l) b^{i'-l}.
std::vector<Fp> constraint_row(const PrimeField& field, const std::vector<MultiIndex>& unknowns,
                               const MultiIndex& l, const std::vector<std::vector<Fp>>& bpow,
                               const BinomTableModP& binom) {
    std::vector<Fp> row;
    row.reserve(unknowns.size());
    for (const auto& ip : unknowns) {
        if (!ip.dominates(l)) {
            row.push_back(field.zero());
            continue;
        }
        const uint32_t b = binom.multi(ip, l);
        if (b == 0) {
            row.push_back(field.zero());
            continue;
        }
        Fp bp = field.one();
        const MultiIndex diff = ip.minus(l);
        for (size_t k = 0; k < diff.arity(); ++k) bp = bp * bpow[k][diff[k]];
        row.push_back(field.from_int(b) * bp);
    }
    return row;
}

}  // namespace

LocalConfig LocalConfig::for_delta0(const CodeParams& params, const Rational& delta0, uint64_t seed) {
    const Rational delta = params.min_distance_lb();
    if (delta0 < 0 || delta0 * 8 >= delta) {
        throw std::invalid_argument("LocalConfig: delta0 must satisfy 0 <= delta0 < delta/8");
    }
    Rational gamma = (delta - 8 * delta0) / (1 - 8 * delta0);
    gamma.canonicalize();
    const uint32_t c = floor_times(gamma, params.s()) + 1;
    const uint64_t set_size = (5ull * params.s() + c - 1) / c;
    if (set_size > params.q()) {
        throw std::invalid_argument("LocalConfig: |S| = ceil(5s/c) exceeds q at these parameters");
    }
    return LocalConfig{params, delta0, gamma, c, first_elements(params.field(), set_size), true, seed};
}

LocalConfig LocalConfig::with_order(const CodeParams& params, const Rational& delta0, uint32_t c,
                                    uint64_t seed) {
    if (c < 1 || c > params.s()) throw std::invalid_argument("LocalConfig: need 1 <= c <= s");
    const uint64_t set_size = (5ull * params.s() + c - 1) / c;
    const bool complete = set_size <= params.q();
    return LocalConfig{params,
                       delta0,
                       ratio_of_counts(c - 1, params.s()),
                       c,
                       first_elements(params.field(), complete ? set_size : params.q()),
                       complete,
                       seed};
}

ReceivedWordUV<PrimeField> line_restriction_word(const CodeParams& params,
                                                 const std::vector<Symbol>& line_symbols,
                                                 const std::vector<Fp>& b, const MultiIndex& l) {
    if (line_symbols.size() != params.q()) throw std::invalid_argument("need q symbols along the line");
    if (l.weight() >= params.s()) throw std::invalid_argument("wt(l) must be < s");
    auto tables = build_restriction_tables(params, l.weight() + 1);
    size_t li = 0;
    while (!(tables.ls[li] == l)) ++li;
    return assemble_line_word(params, line_symbols, direction_powers(params, b), tables, li);
}

CorrectionResult correct_at(const SymbolOracle& oracle, const std::vector<Fp>& a, const LocalConfig& cfg) {
    const CodeParams& params = cfg.params;
    const PrimeField& field = params.field();
    const uint32_t m = params.m();
    const uint32_t q = params.q();
    if (a.size() != m) throw std::invalid_argument("correct_at: point arity mismatch");
    if (!cfg.line_set_complete) {
        throw std::invalid_argument("correct_at: ceil(5s/c) exceeds q; configuration unusable");
    }

    Rng rng(cfg.seed);
    const uint64_t grid = pow_u64_checked(cfg.line_set.size(), m, "direction grid");

    // Pick the direction grid B = {z + sum alpha_j y_j : alpha in S^m} with
    // the y_j spanning and the affine map injective; redraw on degeneracy.
    std::vector<std::vector<Fp>> directions;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 64) throw std::runtime_error("correct_at: could not draw a nondegenerate grid");
        const std::vector<Fp> z = random_point(rng, field, m);
        std::vector<std::vector<Fp>> ys;
        for (uint32_t j = 0; j < m; ++j) ys.push_back(random_point(rng, field, m));
        if (!linearly_independent(field, ys)) continue;

        directions.clear();
        directions.reserve(grid);
        std::vector<size_t> alpha(m, 0);
        for (uint64_t count = 0; count < grid; ++count) {
            std::vector<Fp> b(z);
            for (uint32_t j = 0; j < m; ++j) {
                for (uint32_t k = 0; k < m; ++k) b[k] += cfg.line_set[alpha[j]] * ys[j][k];
            }
            directions.push_back(std::move(b));
            for (uint32_t j = m; j-- > 0;) {
                if (++alpha[j] < cfg.line_set.size()) break;
                alpha[j] = 0;
            }
        }
        // injectivity of the affine map on S^m
        PointIndexer indexer(q, m);
        std::vector<uint64_t> packed;
        packed.reserve(grid);
        for (const auto& b : directions) packed.push_back(indexer.index_of(b));
        std::sort(packed.begin(), packed.end());
        if (std::adjacent_find(packed.begin(), packed.end()) == packed.end()) break;
    }

    uint64_t queries = 0;
    std::vector<std::vector<Symbol>> lines;
    lines.reserve(directions.size());
    for (const auto& b : directions) lines.push_back(query_line(oracle, params, a, b, queries));
    if (queries != grid * q) throw std::logic_error("correct_at: query accounting violated");

    const auto tables = build_restriction_tables(params, cfg.c);
    const Rational radius = cfg.delta0 * 4;
    std::vector<std::vector<std::optional<std::vector<Fp>>>> line_coeffs(directions.size());
    for (size_t bi = 0; bi < directions.size(); ++bi) {
        const auto bpow = direction_powers(params, directions[bi]);
        line_coeffs[bi].reserve(tables.ls.size());
        for (size_t li = 0; li < tables.ls.size(); ++li) {
            line_coeffs[bi].push_back(decode_line(params, lines[bi], bpow, tables, li, &radius));
        }
    }

    auto combined = jet_combination_decode(field, directions, line_coeffs, cfg.c, params.s(), rng);
    if (!combined) return CorrectionResult{std::nullopt, queries};

    Symbol sym;
    sym.reserve(params.symbol_len());
    for (const auto& i : params.jet_indices()) sym.push_back((*combined)[i.weight()].coeff(i));
    return CorrectionResult{std::move(sym), queries};
}

std::optional<std::vector<MVPoly<PrimeField>>> jet_combination_decode(
    const PrimeField& field, const std::vector<std::vector<Fp>>& directions,
    const std::vector<std::vector<std::optional<std::vector<Fp>>>>& line_coeffs, uint32_t c, uint32_t s,
    Rng& rng) {
    if (directions.empty()) return std::nullopt;
    const uint32_t m = static_cast<uint32_t>(directions[0].size());
    const auto ls = indices_below_weight(m, c);
    BinomTableModP binom(field.modulus(), s);

    std::vector<std::vector<std::vector<Fp>>> bpows;
    bpows.reserve(directions.size());
    for (const auto& b : directions) {
        std::vector<std::vector<Fp>> pows(m);
        for (uint32_t k = 0; k < m; ++k) {
            pows[k].push_back(field.one());
            for (uint32_t e = 1; e < s; ++e) pows[k].push_back(pows[k].back() * b[k]);
        }
        bpows.push_back(std::move(pows));
    }

    std::vector<MVPoly<PrimeField>> out;
    for (uint32_t jp = 0; jp < s; ++jp) {
        const auto unknowns = indices_of_weight(m, jp);
        const size_t K = unknowns.size();

        // A direction is usable for this j' when every line decode whose
        // coefficient the constraints read actually succeeded.
        std::vector<size_t> usable;
        for (size_t bi = 0; bi < directions.size(); ++bi) {
            bool ok = true;
            for (size_t li = 0; li < ls.size() && ok; ++li) {
                if (ls[li].weight() <= jp && !line_coeffs[bi][li]) ok = false;
            }
            if (ok) usable.push_back(bi);
        }
        if (usable.empty()) return std::nullopt;

        auto rows_of = [&](size_t bi) {
            std::pair<std::vector<std::vector<Fp>>, std::vector<Fp>> out_rows;
            for (size_t li = 0; li < ls.size(); ++li) {
                const MultiIndex& l = ls[li];
                out_rows.first.push_back(constraint_row(field, unknowns, l, bpows[bi], binom));
                if (l.weight() > jp) {
                    out_rows.second.push_back(field.zero());
                } else {
                    const auto& coeffs = *line_coeffs[bi][li];
                    const uint32_t idx = jp - l.weight();
                    out_rows.second.push_back(idx < coeffs.size() ? coeffs[idx] : field.zero());
                }
            }
            return out_rows;
        };

        auto agrees = [&](size_t bi, const std::vector<Fp>& x) {
            for (size_t li = 0; li < ls.size(); ++li) {
                if (ls[li].weight() <= jp && !line_coeffs[bi][li]) return false;
            }
            auto [rows, rhs] = rows_of(bi);
            for (size_t r = 0; r < rows.size(); ++r) {
                Fp acc = field.zero();
                for (size_t u = 0; u < K; ++u) acc += rows[r][u] * x[u];
                if (!(acc == rhs[r])) return false;
            }
            return true;
        };

        // Column rank must be attainable at all; check once with every
        // usable direction stacked.
        {
            Matrix<Fp> all(usable.size() * ls.size(), K, field.zero());
            size_t r = 0;
            for (size_t bi : usable) {
                for (size_t li = 0; li < ls.size(); ++li) {
                    auto row = constraint_row(field, unknowns, ls[li], bpows[bi], binom);
                    for (size_t u = 0; u < K; ++u) all.at(r, u) = row[u];
                    ++r;
                }
            }
            if (rank_of(std::move(all)) < K) return std::nullopt;
        }

        bool accepted = false;
        MVPoly<PrimeField> result(field, m);
        for (int attempt = 0; attempt < 200 && !accepted; ++attempt) {
            // sample directions without replacement until the stacked system
            // determines the coefficients
            std::vector<size_t> perm(usable);
            for (size_t i = 0; i + 1 < perm.size(); ++i) {
                const size_t j = i + rng.below(perm.size() - i);
                std::swap(perm[i], perm[j]);
            }
            std::vector<std::vector<Fp>> rows;
            std::vector<Fp> rhs;
            size_t rank = 0;
            bool determined = false;
            for (size_t pi = 0; pi < perm.size() && !determined; ++pi) {
                auto [brows, brhs] = rows_of(perm[pi]);
                rows.insert(rows.end(), brows.begin(), brows.end());
                rhs.insert(rhs.end(), brhs.begin(), brhs.end());
                Matrix<Fp> mat(rows.size(), K, field.zero());
                for (size_t r = 0; r < rows.size(); ++r)
                    for (size_t u = 0; u < K; ++u) mat.at(r, u) = rows[r][u];
                rank = reduced_row_echelon(std::move(mat)).rank();
                determined = rank == K;
            }
            if (!determined) continue;

            Matrix<Fp> mat(rows.size(), K, field.zero());
            for (size_t r = 0; r < rows.size(); ++r)
                for (size_t u = 0; u < K; ++u) mat.at(r, u) = rows[r][u];
            auto sol = solve_linear_checked(mat, rhs, field.zero());
            if (!sol || !sol->unique) continue;

            size_t agree = 0;
            for (size_t bi = 0; bi < directions.size(); ++bi) {
                if (agrees(bi, sol->x)) ++agree;
            }
            if (3 * agree >= directions.size()) {
                MVPoly<PrimeField> r(field, m);
                for (size_t u = 0; u < K; ++u) r.add_term(unknowns[u], sol->x[u]);
                result = std::move(r);
                accepted = true;
            }
        }
        if (!accepted) return std::nullopt;
        out.push_back(std::move(result));
    }
    return out;
}

PartialJetResult recover_low_order_jet(const SymbolOracle& oracle, const std::vector<Fp>& a,
                                       const LocalConfig& cfg) {
    const CodeParams& params = cfg.params;
    if (a.size() != params.m()) throw std::invalid_argument("recover_low_order_jet: point arity mismatch");
    Rng rng(cfg.seed);
    const std::vector<Fp> b = random_nonzero_point(rng, params.field(), params.m());

    uint64_t queries = 0;
    const auto line_symbols = query_line(oracle, params, a, b, queries);
    if (queries != params.q()) throw std::logic_error("recover_low_order_jet: query accounting violated");

    const auto tables = build_restriction_tables(params, cfg.c);
    const auto bpow = direction_powers(params, b);
    std::vector<Fp> values;
    values.reserve(tables.ls.size());
    for (size_t li = 0; li < tables.ls.size(); ++li) {
        auto coeffs = decode_line(params, line_symbols, bpow, tables, li, nullptr);
        if (!coeffs) return PartialJetResult{std::nullopt, cfg.c, queries};
        // Q_{b,l}(0) = P^{(l)}(a)
        values.push_back(coeffs->empty() ? params.field().zero() : (*coeffs)[0]);
    }
    return PartialJetResult{std::move(values), cfg.c, queries};
}

PartialJetResult m_line_correct(const SymbolOracle& oracle, const std::vector<Fp>& a,
                                const LocalConfig& cfg) {
    const CodeParams& params = cfg.params;
    const uint32_t m = params.m();
    if (m < 2) throw std::invalid_argument("m_line_correct: requires m >= 2");
    if (a.size() != m) throw std::invalid_argument("m_line_correct: point arity mismatch");
    const PrimeField& field = params.field();

    Rng rng(cfg.seed);
    std::vector<std::vector<Fp>> dirs;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 256) throw std::runtime_error("m_line_correct: could not draw independent lines");
        dirs.clear();
        for (uint32_t j = 0; j < m; ++j) dirs.push_back(random_nonzero_point(rng, field, m));
        if (linearly_independent(field, dirs)) break;
    }

    uint64_t queries = 0;
    const auto tables = build_restriction_tables(params, cfg.c);
    std::vector<std::vector<std::optional<std::vector<Fp>>>> line_coeffs(m);
    std::vector<std::vector<std::vector<Fp>>> bpows;
    for (uint32_t bi = 0; bi < m; ++bi) {
        const auto line_symbols = query_line(oracle, params, a, dirs[bi], queries);
        const auto bpow = direction_powers(params, dirs[bi]);
        for (size_t li = 0; li < tables.ls.size(); ++li) {
            line_coeffs[bi].push_back(decode_line(params, line_symbols, bpow, tables, li, nullptr));
            if (!line_coeffs[bi].back()) return PartialJetResult{std::nullopt, 0, queries};
        }
        bpows.push_back(bpow);
    }
    if (queries != static_cast<uint64_t>(m) * params.q()) {
        throw std::logic_error("m_line_correct: query accounting violated");
    }

    // c' = c m/(m-1); solvable orders are the integers below min(c', s)
    const Rational cprime = ratio_of_counts(static_cast<uint64_t>(cfg.c) * m, m - 1);
    uint32_t order_bound;
    if (cprime >= params.s()) {
        order_bound = params.s();
    } else {
        const mpz_class fl = cprime.get_num() / cprime.get_den();
        const bool integral = cprime.get_num() % cprime.get_den() == 0;
        order_bound = static_cast<uint32_t>(fl.get_ui()) + (integral ? 0 : 1);
    }

    BinomTableModP binom(params.q(), params.s());
    std::vector<Fp> values;
    for (uint32_t jp = 0; jp < order_bound; ++jp) {
        const auto unknowns = indices_of_weight(m, jp);
        const size_t K = unknowns.size();
        Matrix<Fp> mat(static_cast<size_t>(m) * tables.ls.size(), K, field.zero());
        std::vector<Fp> rhs;
        size_t r = 0;
        for (uint32_t bi = 0; bi < m; ++bi) {
            for (size_t li = 0; li < tables.ls.size(); ++li) {
                auto row = constraint_row(field, unknowns, tables.ls[li], bpows[bi], binom);
                for (size_t u = 0; u < K; ++u) mat.at(r, u) = row[u];
                ++r;
                const uint32_t lw = tables.ls[li].weight();
                if (lw > jp) {
                    rhs.push_back(field.zero());
                } else {
                    const auto& coeffs = *line_coeffs[bi][li];
                    const uint32_t idx = jp - lw;
                    rhs.push_back(idx < coeffs.size() ? coeffs[idx] : field.zero());
                }
            }
        }
        auto sol = solve_linear_checked(mat, rhs, field.zero());
        if (!sol || !sol->unique) return PartialJetResult{std::nullopt, order_bound, queries};
        for (const auto& i : indices_of_weight(m, jp)) {
            size_t u = 0;
            while (!(unknowns[u] == i)) ++u;
            values.push_back(sol->x[u]);
        }
    }
    return PartialJetResult{std::move(values), order_bound, queries};
}

SchemeParams::SchemeParams(uint32_t q, uint32_t m, uint32_t s, uint32_t c_)
    : code((static_cast<uint64_t>(s) * q % 2 == 0)
               ? CodeParams(q, m, s, static_cast<uint32_t>(static_cast<uint64_t>(s) * q / 2))
               : throw std::invalid_argument("SchemeParams: s*q must be even for designed distance 1/2")),
      c(c_),
      delta0(make_ratio(1, 100)) {
    if (c < 1 || c > s) throw std::invalid_argument("SchemeParams: need 1 <= c <= s");
    if (static_cast<uint64_t>(c + m) * q >= code.d()) {
        throw std::invalid_argument("SchemeParams: need (c+m)q < d");
    }
}

uint64_t SchemeParams::message_symbol_len() const {
    return binomial_u64(code.m() + c - 1, code.m());
}

Rational SchemeParams::alphabet_ratio() const {
    Rational r(binomial_z(code.m() + code.s() - 1, code.m()), binomial_z(code.m() + c - 1, code.m()));
    r.canonicalize();
    return r;
}

Codeword scheme_encode(const SchemeParams& sp, const std::vector<std::vector<Fp>>& f) {
    const CodeParams& code = sp.code;
    const PrimeField& field = code.field();
    const uint32_t m = code.m();
    const uint64_t n = code.length();
    const auto ls = indices_below_weight(m, sp.c);
    if (f.size() != n) throw std::invalid_argument("scheme_encode: message must have q^m entries");
    for (const auto& sym : f) {
        if (sym.size() != ls.size()) throw std::invalid_argument("scheme_encode: message symbol length");
    }

    const uint32_t D = sp.interp_degree();
    const auto monos = indices_up_to_degree(m, D);
    const size_t K = monos.size();
    const size_t rows = n * ls.size();
    check_cells(static_cast<uint64_t>(rows) * (K + 1), "scheme_encode system");

    BinomTableModP binom(code.q(), D + 1);
    PointIndexer indexer(code.q(), m);
    detail::FpMat aug;
    aug.rows = rows;
    aug.cols = K + 1;
    aug.a.assign(rows * (K + 1), 0);

    size_t r = 0;
    for (uint64_t pt = 0; pt < n; ++pt) {
        const auto point = indexer.point_at(pt, field);
        std::vector<std::vector<uint32_t>> pows(m);
        for (uint32_t k = 0; k < m; ++k) {
            pows[k].reserve(D + 1);
            pows[k].push_back(1 % code.q());
            for (uint32_t e = 1; e <= D; ++e) {
                pows[k].push_back(static_cast<uint32_t>(
                    static_cast<uint64_t>(pows[k].back()) * point[k].value() % code.q()));
            }
        }
        for (size_t li = 0; li < ls.size(); ++li, ++r) {
            const MultiIndex& l = ls[li];
            uint32_t* row = &aug.a[r * aug.cols];
            for (size_t u = 0; u < K; ++u) {
                const MultiIndex& e = monos[u];
                if (!e.dominates(l)) continue;
                uint64_t v = binom.multi(e, l);
                if (v == 0) continue;
                for (uint32_t k = 0; k < m; ++k) v = v * pows[k][e[k] - l[k]] % code.q();
                row[u] = static_cast<uint32_t>(v);
            }
            row[K] = f[pt][li].value();
        }
    }

    auto sol = detail::fp_solve(std::move(aug), *field.rep());
    if (!sol) {
        throw std::runtime_error("scheme_encode: interpolation system infeasible at these parameters");
    }
    MVPoly<PrimeField> poly(field, m);
    for (size_t u = 0; u < K; ++u) {
        if (sol->x[u]) poly.add_term(monos[u], field.from_int(sol->x[u]));
    }
    return encode(code, poly);
}

PartialJetResult scheme_query(const SchemeParams& sp, const SymbolOracle& oracle, const std::vector<Fp>& a,
                              uint64_t seed) {
    const LocalConfig cfg = LocalConfig::with_order(sp.code, sp.delta0, sp.c, seed);
    return recover_low_order_jet(oracle, a, cfg);
}

}  // namespace multcode
