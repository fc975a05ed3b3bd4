#include "rng.hpp"

namespace hetsearch {

namespace {

uint64_t splitmix_finalize(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix_finalize(state_);
}

uint64_t Rng::mix(uint64_t a, uint64_t b) {
    return splitmix_finalize(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 12) + (a >> 4)));
}

Rng Rng::derived(std::initializer_list<uint64_t> path) const {
    uint64_t h = state_;
    for (uint64_t v : path) {
        h = mix(h, v);
    }
    return Rng(h);
}

uint64_t Rng::below(uint64_t bound) {
    // threshold = 2^64 mod bound; values under it would bias the modulus.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

uint128 Rng::below128(uint128 bound) {
    if (bound <= static_cast<uint128>(UINT64_MAX)) {
        uint64_t b = static_cast<uint64_t>(bound);
        if (b == 0) {
            // bound == 2^64: every 64-bit value is in range... only reachable
            // when the caller passed 0; treat as full 64-bit draw.
            return next();
        }
        return below(b);
    }
    uint128 threshold = (static_cast<uint128>(0) - bound) % bound;
    for (;;) {
        uint128 r = (static_cast<uint128>(next()) << 64) | next();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
    uint64_t draw = (span == UINT64_MAX) ? next() : below(span + 1);
    return static_cast<int64_t>(static_cast<uint64_t>(lo) + draw);
}

}  // namespace hetsearch
