#include "multcode/channel.hpp"

#include <algorithm>

#include "multcode/util.hpp"

namespace multcode {

namespace {

Symbol random_different_symbol(Rng& rng, const Symbol& original, const PrimeField& field) {
    Symbol sym(original.size(), field.zero());
    do {
        for (auto& x : sym) x = field.element_at(rng.below(field.size()));
    } while (sym == original);
    return sym;
}

}  // namespace

CorruptionResult corrupt(const Codeword& input, const ChannelSpec& spec) {
    if (spec.rate < 0 || spec.rate >= 1) throw std::invalid_argument("corrupt: rate must be in [0, 1)");
    const uint64_t n = input.params.length();
    Rng rng(spec.seed);
    CorruptionResult out{input, {}};

    if (spec.mode == ChannelSpec::Mode::ExactCount) {
        // floor(rate * n) positions, uniform without replacement
        mpz_class k_z = (spec.rate.get_num() * n) / spec.rate.get_den();
        const uint64_t k = k_z.get_ui();
        std::vector<uint64_t> idx(n);
        for (uint64_t i = 0; i < n; ++i) idx[i] = i;
        for (uint64_t i = 0; i < k; ++i) {
            const uint64_t j = i + rng.below(n - i);
            std::swap(idx[i], idx[j]);
        }
        out.positions.assign(idx.begin(), idx.begin() + k);
        std::sort(out.positions.begin(), out.positions.end());
    } else {
        // exact Bernoulli(rate): draw uniform below den, corrupt when < num
        const mpz_class num = spec.rate.get_num();
        const mpz_class den = spec.rate.get_den();
        if (!den.fits_ulong_p()) throw std::invalid_argument("corrupt: rate denominator too large");
        const uint64_t den_u = den.get_ui();
        const uint64_t num_u = num.get_ui();
        for (uint64_t i = 0; i < n; ++i) {
            if (rng.below(den_u) < num_u) out.positions.push_back(i);
        }
    }

    for (uint64_t pos : out.positions) {
        out.word.symbols[pos] = random_different_symbol(rng, input.symbols[pos], input.params.field());
    }
    return out;
}

}  // namespace multcode
