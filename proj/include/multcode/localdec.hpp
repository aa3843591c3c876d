#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "multcode/code.hpp"
#include "multcode/rational.hpp"
#include "multcode/unidec.hpp"

namespace multcode {

/// Configuration of the local correction algorithms.
///
/// The delta0-derived constructor follows the main algorithm's parameter
/// rules: gamma = (delta - 8 delta0) / (1 - 8 delta0), c = floor(gamma s) + 1,
/// S = the first ceil(5s/c) field elements. with_order pins c directly (used
/// by the constant-query scheme, which fixes gamma independently of delta0);
/// such configs may have |S| truncated to q, and correct_at refuses them
/// when the untruncated size would exceed q.
struct LocalConfig {
    CodeParams params;
    Rational delta0;
    Rational gamma;
    uint32_t c;
    std::vector<Fp> line_set;  // S
    bool line_set_complete;    // |S| == ceil(5s/c)
    uint64_t seed;

    static LocalConfig for_delta0(const CodeParams& params, const Rational& delta0, uint64_t seed);
    static LocalConfig with_order(const CodeParams& params, const Rational& delta0, uint32_t c,
                                  uint64_t seed);
};

/// Oracle access to a received word: full symbol at a point.
using SymbolOracle = std::function<Symbol(const std::vector<Fp>&)>;

inline SymbolOracle oracle_for(const Codeword& word) {
    return [&word](const std::vector<Fp>& pt) {
        PointIndexer indexer(word.params.q(), word.params.m());
        return word.symbols[indexer.index_of(pt)];
    };
}

struct CorrectionResult {
    std::optional<Symbol> symbol;  // the order-s jet at the queried point
    uint64_t queries = 0;
};

/// Main local correction: queries a grid of |S|^m directions through a
/// (|S|^m * q oracle reads), recovers P^(l) on every line by univariate
/// decoding at radius 4*delta0, and combines the per-line jets by decoding
/// the constant-degree multiplicity code over the direction grid.
CorrectionResult correct_at(const SymbolOracle& oracle, const std::vector<Fp>& a, const LocalConfig& cfg);

/// Step-4 subproblem: given the table of decoded line-restriction
/// coefficients (nullopt where the line decode failed), find for each
/// j' < s the homogeneous degree-j' polynomial R_j' consistent with at least
/// one third of the directions. Consensus sampling: solve from a minimal
/// random subset, verify against all of B, retry up to 200 rounds.
std::optional<std::vector<MVPoly<PrimeField>>> jet_combination_decode(
    const PrimeField& field, const std::vector<std::vector<Fp>>& directions,
    const std::vector<std::vector<std::optional<std::vector<Fp>>>>& line_coeffs, uint32_t c, uint32_t s,
    Rng& rng);

struct PartialJetResult {
    std::optional<std::vector<Fp>> values;  // jets over {i : wt(i) < order}
    uint32_t order = 0;
    uint64_t queries = 0;
};

/// Single-line variation: recovers P^(<c)(a) from one random line
/// (q queries). Fails if any per-line univariate decode fails.
PartialJetResult recover_low_order_jet(const SymbolOracle& oracle, const std::vector<Fp>& a,
                                       const LocalConfig& cfg);

/// m-line variation: m random linearly independent lines determine the jets
/// up to order c' = c*m/(m-1) exactly (no consensus needed); recovers
/// P^(<min(c',s))(a) with m*q queries. Requires m >= 2.
PartialJetResult m_line_correct(const SymbolOracle& oracle, const std::vector<Fp>& a,
                                const LocalConfig& cfg);

/// The order-(s - wt(l)) received word ell_{b,l} on the line a + bT,
/// assembled from the queried symbols via the restriction identity.
ReceivedWordUV<PrimeField> line_restriction_word(const CodeParams& params,
                                                 const std::vector<Symbol>& line_symbols,
                                                 const std::vector<Fp>& b, const MultiIndex& l);

/// Constant-query large-alphabet scheme: messages are functions
/// f : F_q^m -> (order-<c jets); the encoder interpolates P of degree at
/// most (c+m)q with P^(<c)(a) = f(a) everywhere and transmits its order-s
/// encoding at d = sq/2 (designed distance 1/2, delta0 = 1/100 preset).
struct SchemeParams {
    CodeParams code;  // (q, m, s, d = sq/2)
    uint32_t c;
    Rational delta0;

    SchemeParams(uint32_t q, uint32_t m, uint32_t s, uint32_t c);

    uint64_t message_symbol_len() const;  // binom(m+c-1, m)
    uint32_t interp_degree() const { return (c + code.m()) * code.q(); }
    /// log|Sigma| / log|Sigma_0| as the exact binomial ratio.
    Rational alphabet_ratio() const;
};

/// f has q^m entries (point-lex order), each of length binom(m+c-1, m)
/// (graded-lex jets of order < c). Throws if the interpolation system is
/// infeasible.
Codeword scheme_encode(const SchemeParams& sp, const std::vector<std::vector<Fp>>& f);

/// Recovers f(a) with q queries via the single-line correction.
PartialJetResult scheme_query(const SchemeParams& sp, const SymbolOracle& oracle, const std::vector<Fp>& a,
                              uint64_t seed);

}  // namespace multcode
