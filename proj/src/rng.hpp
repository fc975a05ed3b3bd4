#pragma once

#include <cstdint>
#include <initializer_list>

namespace hetsearch {

using uint128 = unsigned __int128;

// Deterministic 64-bit generator (splitmix64). Sub-streams are derived by
// hashing a counter path into a fresh state, so the values one stream
// produces never depend on how much another stream has consumed. This is
// what makes whole runs bit-reproducible from a single master seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next();

    // Uniform in [0, bound), bound > 0. Unbiased via rejection.
    uint64_t below(uint64_t bound);
    uint128 below128(uint128 bound);

    // Uniform over the inclusive range [lo, hi].
    int64_t uniform_int(int64_t lo, int64_t hi);

    // Derive an independent stream keyed by (master state, path...).
    Rng derived(std::initializer_list<uint64_t> path) const;

    static uint64_t mix(uint64_t a, uint64_t b);

private:
    uint64_t state_;
};

}  // namespace hetsearch
