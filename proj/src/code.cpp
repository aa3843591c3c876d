#include "multcode/code.hpp"

#include <algorithm>

namespace multcode {

CodeParams::CodeParams(uint32_t q, uint32_t m, uint32_t s, uint32_t d)
    : q_(q), m_(m), s_(s), d_(d), field_(q), length_(0) {
    if (m < 1) throw std::invalid_argument("CodeParams: m must be >= 1");
    if (s < 1) throw std::invalid_argument("CodeParams: s must be >= 1");
    if (static_cast<uint64_t>(d) >= static_cast<uint64_t>(s) * q) {
        throw std::invalid_argument("CodeParams: need d < s*q for positive designed distance");
    }
    length_ = pow_u64_checked(q, m, "CodeParams length");
    jets_ = indices_below_weight(m, s);
    check_cells(length_ * jets_.size(), "CodeParams codeword");
}

size_t CodeParams::jet_position(const MultiIndex& i) const {
    auto it = std::lower_bound(jets_.begin(), jets_.end(), i);
    if (it == jets_.end() || !(*it == i)) throw std::out_of_range("jet_position: index not in symbol");
    return static_cast<size_t>(it - jets_.begin());
}

Rational CodeParams::min_distance_lb() const {
    const uint64_t sq = static_cast<uint64_t>(s_) * q_;
    return ratio_of_counts(sq - d_, sq);
}

Codeword encode(const CodeParams& params, const MVPoly<PrimeField>& poly) {
    if (!(poly.field() == params.field())) throw FieldMismatchError("encode: polynomial over wrong field");
    if (poly.arity() != params.m()) throw std::invalid_argument("encode: polynomial arity != m");
    if (poly.total_degree() > static_cast<int>(params.d())) {
        throw std::invalid_argument("encode: polynomial degree exceeds d");
    }

    const uint64_t n = params.length();
    Codeword out{params, std::vector<Symbol>(n)};
    for (auto& sym : out.symbols) sym.assign(params.symbol_len(), params.field().zero());

    BinomTableModP binom(params.q(), static_cast<uint32_t>(std::max(poly.total_degree(), 0)) + 1);
    for (size_t pos = 0; pos < params.jet_indices().size(); ++pos) {
        const MVPoly<PrimeField> deriv = hasse_derivative(poly, params.jet_indices()[pos], binom);
        const std::vector<Fp> values = evaluate_everywhere(deriv);
        for (uint64_t pt = 0; pt < n; ++pt) out.symbols[pt][pos] = values[pt];
    }
    return out;
}

RateDistance rate_and_distance(const CodeParams& params) {
    const mpz_class message = binomial_z(params.d() + params.m(), params.m());
    const mpz_class sym = binomial_z(params.s() + params.m() - 1, params.m());
    mpz_class block = 1;
    for (uint32_t j = 0; j < params.m(); ++j) block *= params.q();
    Rational rate(message, sym * block);
    rate.canonicalize();
    return RateDistance{rate, params.min_distance_lb()};
}

Rational rate_lower_bound(const CodeParams& params) {
    Rational base = ratio_of_counts(params.s(), params.m() + params.s()) *
                    ratio_of_counts(params.d(), static_cast<uint64_t>(params.s()) * params.q());
    Rational acc = 1;
    for (uint32_t j = 0; j < params.m(); ++j) acc *= base;
    acc.canonicalize();
    return acc;
}

uint64_t count_differing(const Codeword& a, const Codeword& b) {
    if (!(a.params == b.params)) throw FieldMismatchError("codewords have different parameters");
    if (a.symbols.size() != b.symbols.size()) throw std::invalid_argument("codeword length mismatch");
    uint64_t cnt = 0;
    for (size_t i = 0; i < a.symbols.size(); ++i) {
        if (a.symbols[i] != b.symbols[i]) ++cnt;
    }
    return cnt;
}

Rational hamming_distance(const Codeword& a, const Codeword& b) {
    return ratio_of_counts(count_differing(a, b), a.params.length());
}

}  // namespace multcode
