#pragma once

#include <cmath>
#include <cstdint>

namespace pursuitlab {

// xoshiro256++ seeded through splitmix64, with cheap independent streams:
// stream i of master seed s is seeded by the i-th output of the splitmix64
// sequence started at s. Trial i of any batch run uses stream i, so results
// do not depend on how trials are scheduled across threads.
//
// Self-contained on purpose: <random> distributions differ across standard
// libraries, and the output files must be reproducible for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t st = seed;
        for (auto& word : s_) word = splitmix_next(st);
    }

    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
        return splitmix_mix(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
    }

    static Rng stream(std::uint64_t master, std::uint64_t idx) {
        return Rng(stream_seed(master, idx));
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // [0, 1)
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Index in [0, n)
    int index(int n) { return int(next_u64() % std::uint64_t(n)); }

    // Standard normal via Box-Muller; consumes exactly two draws per call.
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix_mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t splitmix_next(std::uint64_t& state) {
        state += 0x9E3779B97F4A7C15ULL;
        return splitmix_mix(state);
    }

    std::uint64_t s_[4];
};

}
