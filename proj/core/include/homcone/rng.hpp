#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace homcone {

// Seeded generator whose derived draws are identical across standard libraries
// (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on {0, ..., k-1}.
    int index(int k) { return static_cast<int>(uniform() * k); }

    double normal()
    {
        double u = 1.0 - uniform();
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace homcone
