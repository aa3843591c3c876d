#pragma once

#include <cstdint>
#include <vector>

#include "multcode/code.hpp"
#include "multcode/rational.hpp"

namespace multcode {

/// Symbol corruption channel. A corrupted symbol is replaced by a uniformly
/// random different symbol. Exact-count mode corrupts exactly
/// floor(rate * q^m) positions chosen uniformly without replacement;
/// Bernoulli mode flips each position independently with the exact
/// rational probability.
struct ChannelSpec {
    enum class Mode { ExactCount, Bernoulli };

    Rational rate;
    uint64_t seed = 0;
    Mode mode = Mode::ExactCount;
};

struct CorruptionResult {
    Codeword word;
    std::vector<uint64_t> positions;  // corrupted point indices, ascending
};

CorruptionResult corrupt(const Codeword& input, const ChannelSpec& spec);

}  // namespace multcode
