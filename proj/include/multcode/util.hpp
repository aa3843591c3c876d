#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace multcode {

// Mixing incompatible field values (different modulus or extension).
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Division or inversion of zero.
struct DivisionByZeroError : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed input file or JSON payload.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An instance exceeds a size guard (memory cells, enumeration bound,
// symbolic expansion bound).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic RNG. All randomness in the library flows through this
/// wrapper so that identical seeds give identical transcripts on every
/// platform (uniform_int_distribution is not portable; rejection sampling
/// on the raw mt19937_64 stream is).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Uniform integer in [0, n), unbiased. n >= 1.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        if (n == 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 eng_;
};

/// Memory guard: maximum number of field elements any single structure may
/// allocate. Controlled by MULTCODE_MAX_CELLS (default 10^8).
uint64_t memory_cell_limit();

inline void check_cells(uint64_t cells, const char* what) {
    if (cells > memory_cell_limit()) {
        throw CapacityError(std::string(what) + ": instance needs " + std::to_string(cells) +
                            " field elements, limit is " + std::to_string(memory_cell_limit()) +
                            " (MULTCODE_MAX_CELLS)");
    }
}

/// base^exp with overflow detection.
inline uint64_t pow_u64_checked(uint64_t base, uint32_t exp, const char* what = "pow") {
    uint64_t result = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) {
            throw CapacityError(std::string(what) + ": power overflows 64 bits");
        }
        result *= base;
    }
    return result;
}

}  // namespace multcode
