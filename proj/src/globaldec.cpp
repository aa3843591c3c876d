#include "multcode/globaldec.hpp"

#include <algorithm>

#include "multcode/linalg.hpp"

namespace multcode {

namespace {

/// Product of basis-element powers a^i.
ExtElem basis_power(const Basis& basis, const MultiIndex& i) {
    ExtElem acc = basis.ext.one();
    for (size_t k = 0; k < basis.elems.size(); ++k) acc = acc * basis.elems[k].pow(i[k]);
    return acc;
}

uint32_t floor_times(const Rational& r, uint32_t s) {
    mpz_class v = (r.get_num() * s) / r.get_den();
    return static_cast<uint32_t>(v.get_ui());
}

}  // namespace

Basis::Basis(const ExtField& ext_, std::vector<ExtElem> elems_) : ext(ext_), elems(std::move(elems_)) {
    const uint32_t m = ext.degree();
    if (elems.size() != m) throw std::invalid_argument("Basis: need exactly m elements");
    PrimeField base = ext.base();
    Matrix<Fp> mat(m, m, base.zero());
    for (uint32_t r = 0; r < m; ++r) {
        auto coords = elems[r].coeffs();
        for (uint32_t c = 0; c < m; ++c) mat.at(r, c) = coords[c];
    }
    if (rank_of(std::move(mat)) != m) {
        throw std::invalid_argument("Basis: coordinate matrix is singular over F_q");
    }
}

TraceCurve::TraceCurve(Basis basis) : basis_(std::move(basis)) {
    const ExtField& ext = basis_.ext;
    const uint64_t n = ext.size();
    PointIndexer indexer(ext.characteristic(), ext.degree());
    t_to_point_.assign(n, 0);
    point_to_t_.assign(n, n);  // n = "unset"
    for (uint64_t t = 0; t < n; ++t) {
        const uint64_t pt = indexer.index_of(eval(ext.element_at(t)));
        t_to_point_[t] = pt;
        if (point_to_t_[pt] != n) {
            throw std::logic_error("TraceCurve: gamma is not injective (basis invariant violated)");
        }
        point_to_t_[pt] = t;
    }
}

std::vector<Fp> TraceCurve::eval(const ExtElem& t) const {
    std::vector<Fp> pt;
    pt.reserve(basis_.elems.size());
    for (const auto& a : basis_.elems) pt.push_back(trace(a * t));
    return pt;
}

bool is_general_position(const ExtField& ext, const std::vector<Basis>& bases, uint32_t s, uint32_t c) {
    const uint32_t m = ext.degree();
    const auto monos = indices_up_to_degree(m, s);
    const auto ls = indices_below_weight(m, c);
    const size_t rows = bases.size() * ls.size();
    Matrix<ExtElem> sys(rows, monos.size(), ext.zero());
    BinomTableModP binom(ext.characteristic(), s + 1);

    size_t r = 0;
    for (const auto& basis : bases) {
        for (const auto& l : ls) {
            for (size_t u = 0; u < monos.size(); ++u) {
                const MultiIndex& e = monos[u];
                if (!e.dominates(l)) continue;
                const uint32_t b = binom.multi(e, l);
                if (b == 0) continue;
                sys.at(r, u) = ext.from_int(b) * basis_power(basis, e.minus(l));
            }
            ++r;
        }
    }
    return rank_of(std::move(sys)) == monos.size();
}

CurveFamily make_general_position_bases(uint32_t q, uint32_t m, uint32_t s, uint32_t c) {
    if (c < 1 || c > s) throw std::invalid_argument("make_general_position_bases: need 1 <= c <= s");
    if (s >= q) throw std::invalid_argument("make_general_position_bases: need s < q");
    const uint32_t side = (s + c - 1) / c;  // ceil(s/c)
    if (side > q) throw std::invalid_argument("make_general_position_bases: grid side exceeds q");

    PrimeField base(q);
    ExtField ext(base, m);
    // power basis (1, beta, beta^2, ...)
    std::vector<ExtElem> power;
    ExtElem beta = ext.generator();
    ExtElem cur = ext.one();
    for (uint32_t k = 0; k < m; ++k) {
        power.push_back(cur);
        cur = cur * beta;
    }

    std::vector<Basis> bases;
    const uint64_t count = pow_u64_checked(side, m, "grid family");
    std::vector<uint32_t> offs(m, 0);
    for (uint64_t i = 0; i < count; ++i) {
        std::vector<ExtElem> elems(power);
        for (uint32_t k = 0; k < m; ++k) elems[k] = elems[k] + ext.from_int(offs[k]);
        bases.emplace_back(ext, std::move(elems));
        for (uint32_t k = m; k-- > 0;) {
            if (++offs[k] < side) break;
            offs[k] = 0;
        }
    }

    if (!is_general_position(ext, bases, s, c)) {
        throw std::runtime_error("make_general_position_bases: grid family fails (s,c)-general position at q=" +
                                 std::to_string(q) + " m=" + std::to_string(m) + " s=" + std::to_string(s) +
                                 " c=" + std::to_string(c));
    }

    CurveFamily family{ext, s, c, {}};
    family.curves.reserve(bases.size());
    for (auto& b : bases) family.curves.emplace_back(std::move(b));
    return family;
}

ReceivedWordUV<ExtField> curve_received_word(const Codeword& word, const TraceCurve& curve,
                                             const MultiIndex& l, uint32_t c) {
    const CodeParams& params = word.params;
    const ExtField& ext = curve.ext();
    if (params.q() != ext.characteristic() || params.m() != ext.degree()) {
        throw FieldMismatchError("curve_received_word: curve field does not match the code");
    }
    if (l.weight() >= c || c > params.s()) throw std::invalid_argument("curve_received_word: bad l or c");
    const uint32_t order = params.s() - c + 1;
    const uint64_t dq = static_cast<uint64_t>(params.d()) *
                        pow_u64_checked(params.q(), params.m() - 1, "curve degree");
    UVCodeParams<ExtField> up(ext, order, static_cast<uint32_t>(dq));

    // per-j term tables: positions of l+i in the symbol, binomials, a^i
    BinomTableModP binom(params.q(), params.s());
    struct Term {
        size_t sym_pos;
        ExtElem factor;  // binom(i+l, l) * a^i
    };
    std::vector<std::vector<Term>> terms(order);
    for (uint32_t j = 0; j < order; ++j) {
        for (const auto& i : indices_of_weight(params.m(), j)) {
            const MultiIndex il = i.plus(l);
            const uint32_t b = binom.multi(il, l);
            if (b == 0) continue;
            terms[j].push_back(Term{params.jet_position(il), ext.from_int(b) * basis_power(curve.basis(), i)});
        }
    }

    ReceivedWordUV<ExtField> out{up, {}};
    const uint64_t n = ext.size();
    out.symbols.reserve(n);
    for (uint64_t t = 0; t < n; ++t) {
        const Symbol& sym = word.symbols[curve.point_of_t(t)];
        std::vector<ExtElem> entry;
        entry.reserve(order);
        for (uint32_t j = 0; j < order; ++j) {
            ExtElem acc = ext.zero();
            for (const auto& term : terms[j]) acc += term.factor * ext.embed(sym[term.sym_pos]);
            entry.push_back(acc);
        }
        out.symbols.push_back(std::move(entry));
    }
    return out;
}

UVPoly<ExtField> compose_with_curve(const MVPoly<ExtField>& poly, const MultiIndex& l, const Basis& basis) {
    const ExtField& ext = basis.ext;
    const uint32_t m = ext.degree();
    const uint32_t q = ext.characteristic();
    const uint64_t curve_deg = pow_u64_checked(q, m - 1, "trace curve degree");
    const int pd = poly.total_degree();
    if (pd > 0 && static_cast<uint64_t>(pd) * curve_deg > 20000) {
        throw CapacityError("compose_with_curve: symbolic expansion exceeds the desk-scale guard");
    }

    const MVPoly<ExtField> deriv = hasse_derivative(poly, l);

    // trace polynomial of each coordinate: sum_k (a_j)^{q^k} T^{q^k}
    std::vector<UVPoly<ExtField>> coord;
    coord.reserve(m);
    for (uint32_t k = 0; k < m; ++k) {
        std::vector<ExtElem> coeffs(curve_deg + 1, ext.zero());
        ExtElem a = basis.elems[k];
        uint64_t e = 1;
        for (uint32_t f = 0; f < m; ++f) {
            coeffs[e] += a;
            a = a.pow(q);
            e *= q;
        }
        coord.emplace_back(ext, std::move(coeffs));
    }

    // powers built on demand
    std::vector<std::vector<UVPoly<ExtField>>> pows(m);
    for (uint32_t k = 0; k < m; ++k) pows[k].push_back(UVPoly<ExtField>(ext, {ext.one()}));
    auto power = [&](uint32_t k, uint32_t e) -> const UVPoly<ExtField>& {
        while (pows[k].size() <= e) pows[k].push_back(pows[k].back() * coord[k]);
        return pows[k][e];
    };

    UVPoly<ExtField> out(ext);
    for (const auto& [i, cf] : deriv.terms()) {
        UVPoly<ExtField> term(ext, {cf});
        for (uint32_t k = 0; k < m; ++k) {
            if (i[k]) term = term * power(k, i[k]);
        }
        out = out + term;
    }
    return out;
}

std::optional<MVPoly<PrimeField>> global_unique_decode(const Codeword& word, const Rational& delta0) {
    const CodeParams& params = word.params;
    const PrimeField& field = params.field();
    const uint32_t q = params.q(), m = params.m(), s = params.s(), d = params.d();

    const Rational delta = params.min_distance_lb();
    if (delta0 < 0 || delta0 * 2 >= delta) {
        throw std::invalid_argument("global_unique_decode: need delta0 < delta/2");
    }
    Rational gamma = (delta - 2 * delta0) / (1 - 2 * delta0);
    gamma.canonicalize();
    const uint32_t c = floor_times(gamma, s) + 1;

    CurveFamily family = make_general_position_bases(q, m, s, c);
    const ExtField& ext = family.ext;
    const uint64_t n_ext = ext.size();

    // the univariate code along the curves must still unique-decode delta0
    const uint32_t order = s - c + 1;
    const uint64_t dq = static_cast<uint64_t>(d) * pow_u64_checked(q, m - 1, "curve degree");
    {
        const uint64_t sn = static_cast<uint64_t>(order) * n_ext;
        if (dq >= sn) throw std::invalid_argument("global_unique_decode: curve code has no distance");
        // delta_uv / 2 > delta0  <=>  (sn - dq) * den > 2 num sn
        const mpz_class lhs = mpz_class(static_cast<unsigned long>(sn - dq)) * delta0.get_den();
        const mpz_class rhs = 2 * delta0.get_num() * mpz_class(static_cast<unsigned long>(sn));
        if (!(lhs > rhs)) {
            throw std::invalid_argument("global_unique_decode: delta0 beyond the curve code's half distance");
        }
    }

    const auto ls = indices_below_weight(m, c);
    const size_t M = family.curves.size();

    // decode every curve word; keep the jets of each recovered Q_{i,l} at
    // every t (orders < s)
    BinomTableModP binom_ext(q, static_cast<uint32_t>(dq) + 1);
    // jet_vals[i][li][j][t] = Q_{i,l}^{(j)}(element_at(t))
    std::vector<std::vector<std::vector<std::vector<ExtElem>>>> jet_vals(M);
    for (size_t i = 0; i < M; ++i) {
        jet_vals[i].resize(ls.size());
        for (size_t li = 0; li < ls.size(); ++li) {
            auto curve_word = curve_received_word(word, family.curves[i], ls[li], c);
            auto dec = unique_decode_uv(curve_word);
            if (!dec) return std::nullopt;
            // within delta0: differing/n_ext < delta0
            const mpz_class lhs = mpz_class(static_cast<unsigned long>(dec->differing)) * delta0.get_den();
            const mpz_class rhs = delta0.get_num() * mpz_class(static_cast<unsigned long>(n_ext));
            if (!(lhs < rhs)) return std::nullopt;

            auto& per_j = jet_vals[i][li];
            per_j.resize(s);
            for (uint32_t j = 0; j < s; ++j) {
                const UVPoly<ExtField> dj = hasse_derivative(dec->poly, j, binom_ext);
                auto& row = per_j[j];
                row.reserve(n_ext);
                for (uint64_t t = 0; t < n_ext; ++t) row.push_back(dj.eval(ext.element_at(t)));
            }
        }
    }

    // recover the order-s jets of P at every point by solving the
    // general-position systems
    BinomTableModP binom(q, s + 1);
    const uint64_t n_points = params.length();
    std::vector<Symbol> jets(n_points);
    for (auto& sym : jets) sym.assign(params.symbol_len(), field.zero());

    for (uint32_t jp = 0; jp < s; ++jp) {
        const auto unknowns = indices_of_weight(m, jp);
        const size_t K = unknowns.size();
        // rows (shared across points): for i in [M], l with wt(l) <= jp
        std::vector<std::pair<size_t, size_t>> row_keys;  // (curve, l index)
        for (size_t i = 0; i < M; ++i) {
            for (size_t li = 0; li < ls.size(); ++li) {
                if (ls[li].weight() <= jp) row_keys.emplace_back(i, li);
            }
        }
        Matrix<ExtElem> sys(row_keys.size(), K, ext.zero());
        for (size_t r = 0; r < row_keys.size(); ++r) {
            const auto& [ci, li] = row_keys[r];
            const MultiIndex& l = ls[li];
            for (size_t u = 0; u < K; ++u) {
                const MultiIndex& ip = unknowns[u];
                if (!ip.dominates(l)) continue;
                const uint32_t b = binom.multi(ip, l);
                if (b == 0) continue;
                sys.at(r, u) =
                    ext.from_int(b) * basis_power(family.curves[ci].basis(), ip.minus(l));
            }
        }
        // Solve once per point with the per-point right-hand side.
        for (uint64_t pt = 0; pt < n_points; ++pt) {
            std::vector<ExtElem> rhs;
            rhs.reserve(row_keys.size());
            for (const auto& [ci, li] : row_keys) {
                const uint64_t t = family.curves[ci].t_of_point(pt);
                rhs.push_back(jet_vals[ci][li][jp - ls[li].weight()][t]);
            }
            auto sol = solve_linear_checked(sys, rhs, ext.zero());
            if (!sol || !sol->unique) return std::nullopt;
            for (size_t u = 0; u < K; ++u) {
                // the jets of P live in the base field
                const auto coords = sol->x[u].coeffs();
                for (uint32_t k = 1; k < m; ++k) {
                    if (!coords[k].is_zero()) return std::nullopt;
                }
                jets[pt][params.jet_position(unknowns[u])] = coords[0];
            }
        }
    }

    // interpolate P of degree <= d from all jets
    const auto monos = indices_up_to_degree(m, d);
    const size_t K = monos.size();
    const size_t rows = n_points * params.symbol_len();
    check_cells(static_cast<uint64_t>(rows) * (K + 1), "global interpolation");
    detail::FpMat aug;
    aug.rows = rows;
    aug.cols = K + 1;
    aug.a.assign(rows * (K + 1), 0);
    PointIndexer indexer(q, m);
    BinomTableModP binom_d(q, d + 1);
    size_t r = 0;
    for (uint64_t pt = 0; pt < n_points; ++pt) {
        const auto point = indexer.point_at(pt, field);
        std::vector<std::vector<uint32_t>> pows(m);
        for (uint32_t k = 0; k < m; ++k) {
            pows[k].push_back(1 % q);
            for (uint32_t e = 1; e <= d; ++e) {
                pows[k].push_back(
                    static_cast<uint32_t>(static_cast<uint64_t>(pows[k].back()) * point[k].value() % q));
            }
        }
        for (size_t li = 0; li < params.jet_indices().size(); ++li, ++r) {
            const MultiIndex& l = params.jet_indices()[li];
            uint32_t* row = &aug.a[r * aug.cols];
            for (size_t u = 0; u < K; ++u) {
                const MultiIndex& e = monos[u];
                if (!e.dominates(l)) continue;
                uint64_t v = binom_d.multi(e, l);
                if (v == 0) continue;
                for (uint32_t k = 0; k < m; ++k) v = v * pows[k][e[k] - l[k]] % q;
                row[u] = static_cast<uint32_t>(v);
            }
            row[K] = jets[pt][li].value();
        }
    }
    auto sol = detail::fp_solve(std::move(aug), *field.rep());
    if (!sol || !sol->unique) return std::nullopt;

    MVPoly<PrimeField> poly(field, m);
    for (size_t u = 0; u < K; ++u) {
        if (sol->x[u]) poly.add_term(monos[u], field.from_int(sol->x[u]));
    }

    // final verification gate: strictly within delta0
    const uint64_t differing = count_differing(encode(params, poly), word);
    const mpz_class lhs = mpz_class(static_cast<unsigned long>(differing)) * delta0.get_den();
    const mpz_class rhs = delta0.get_num() * mpz_class(static_cast<unsigned long>(n_points));
    if (!(lhs < rhs)) return std::nullopt;
    return poly;
}

}  // namespace multcode
