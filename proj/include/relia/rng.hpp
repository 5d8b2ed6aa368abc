#pragma once

#include <cstdint>

namespace relia {

// splitmix64; used to expand a user seed into generator state and to derive
// independent per-replication seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ by Blackman and Vigna. Small, fast, and fully specified, so
// simulation streams are reproducible from the documented seed alone.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() {
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

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1); rejects exact zeros so log(u) is always finite.
    double uniform_open01() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t sm = base + 0x632be59bd9b4e019ULL * (index + 1);
    return splitmix64(sm);
}

}  // namespace relia
