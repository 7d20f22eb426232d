#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Deterministic random number streams. Every Monte Carlo path draws from its
// own substream derived from (master seed, path index) alone, so results do
// not depend on execution order or worker count.

namespace fads {

// SplitMix64 finalizer. Bijective 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ (Blackman/Vigna). Main generator behind every sampler.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    // Stream for one logical path: state is a pure function of
    // (master_seed, stream_index), independent of call order.
    static Xoshiro256pp substream(std::uint64_t master_seed, std::uint64_t stream_index) {
        const std::uint64_t tag = mix64(0x9E3779B97F4A7C15ull * (stream_index + 1));
        return Xoshiro256pp(mix64(master_seed ^ tag));
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

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_;
};

// Standard normal variates via Box-Muller, two per transform.
class NormalSampler {
public:
    explicit NormalSampler(Xoshiro256pp gen) : gen_(gen) {}

    NormalSampler(std::uint64_t master_seed, std::uint64_t stream_index)
        : gen_(Xoshiro256pp::substream(master_seed, stream_index)) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = gen_.uniform01();
        const double u2 = gen_.uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    Xoshiro256pp gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fads
