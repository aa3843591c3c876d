#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "multcode/code.hpp"
#include "multcode/localdec.hpp"

namespace multcode {

/// An ordered set of binom(d+m, m) (point, derivative-index) pairs on which
/// degree-<=d polynomials are uniquely determined; the backbone of
/// systematic encoding. Built greedily: candidates are scanned in
/// (point-lex, graded-lex) order and kept exactly when their evaluation row
/// increases the rank.
struct InterpolatingSet {
    CodeParams params;
    std::vector<std::pair<std::vector<Fp>, MultiIndex>> pairs;
};

InterpolatingSet build_interpolating_set(const CodeParams& params);

/// The unique degree-<=d polynomial matching the message on the set.
MVPoly<PrimeField> interpolate_from_set(const InterpolatingSet& set, const std::vector<Fp>& message);

/// Encodes a message of binom(d+m, m) field elements; reading the set's
/// coordinates off the result reproduces the message verbatim.
Codeword systematic_encode(const CodeParams& params, const InterpolatingSet& set,
                           const std::vector<Fp>& message);

/// The message as read off a (code)word at the set's coordinates.
std::vector<Fp> read_message(const Codeword& word, const InterpolatingSet& set);

struct LocalDecodeResult {
    std::optional<Fp> value;
    uint64_t queries = 0;
};

/// Local decoding of one message symbol: maps the index to its (point,
/// derivative) pair, locally corrects the full jet there, and projects.
LocalDecodeResult local_decode_message(const SymbolOracle& oracle, const InterpolatingSet& set,
                                       size_t index, const LocalConfig& cfg);

}  // namespace multcode
