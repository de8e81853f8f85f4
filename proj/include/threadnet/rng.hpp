#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace threadnet {

// SplitMix64 counter generator. Streams are derived arithmetically: worker
// i of a run seeded with s uses SplitMix64(s + i), and the mixing function
// decorrelates adjacent seeds. Cheap to construct, trivially reproducible
// across platforms and worker counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Lemire rejection-free-enough bound; bias is negligible for the
        // n << 2^64 range used here, but reject to keep draws exact.
        std::uint64_t threshold = (0 - n) % n;
        while (true) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Exponential with the given mean.
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // Index drawn proportionally to non-negative weights.
    std::size_t weighted(std::span<const double> weights) {
        double total = 0;
        for (double w : weights) total += w;
        double u = uniform() * total;
        double cum = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            cum += weights[i];
            if (u < cum) return i;
        }
        return weights.size() - 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace threadnet
