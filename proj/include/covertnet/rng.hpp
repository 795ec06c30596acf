#pragma once

#include <cmath>
#include <cstdint>

namespace covertnet::rng {

// splitmix64 step; also used to derive sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed for (master, stream, index). Every randomized routine in
// the project draws from a stream derived this way, so trials are reproducible
// independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xd6e8feb86659fd93ULL;
    std::uint64_t b = splitmix64(s);
    s ^= index * 0xa5a5a5a5a5a5a5a5ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b + 0x632be59bd9b4e019ULL) ^ c;
}

// Stream identifiers (keep stable: they are part of the reproducibility contract).
enum Stream : std::uint64_t {
    kTopology = 1,
    kRealization = 2,
    kUniformSelection = 3,
    kOracle = 4,
    kScenarioFamily = 5,
};

// xoshiro256++ with explicit, platform-independent output transforms.
// std::mt19937_64 would also be portable, but the std distributions are not;
// all variate transforms are therefore spelled out here.
class Generator {
public:
    explicit Generator(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // exponential with the given mean; mean 0 collapses to 0
    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // Lemire-style rejection-free enough for simulation use; keep exact
        // rejection to avoid modulo bias.
        std::uint64_t x, r;
        do {
            x = next_u64();
            r = x % n;
        } while (x - r > std::uint64_t(0) - n);
        return r;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace covertnet::rng
