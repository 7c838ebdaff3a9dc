#pragma once

#include <cstdint>

namespace fibrecount::detail {

using u128 = unsigned __int128;
using i128 = __int128;

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((u128(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Exact floor(sqrt(n)) for n >= 0.
int64_t isqrt_i64(int64_t n);

// Inverse of a mod p (p prime, a not divisible by p), via extended Euclid.
int64_t mod_inverse_i64(int64_t a, int64_t p);

// splitmix64: tiny, fully specified generator.  Used everywhere a seeded
// stream is needed so results do not depend on the standard library.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound >= 1.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }
};

// Stream-splitting scheme: substream k of a seed is seeded with
// splitmix(seed ^ GOLDEN*(k+1)).  Documented so parallel runs are
// reproducible by construction.
inline SplitMix64 split_stream(uint64_t seed, uint64_t stream_index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1)));
    return SplitMix64(mixer.next());
}

} // namespace fibrecount::detail
