#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace imgq {

/// Seeded generator whose derived draws are fully specified here, unlike
/// the std distributions whose output differs between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n), rejection-sampled.
    std::uint64_t below(std::uint64_t n);
    /// Box-Muller, one draw per call.
    double normal();
    /// Knuth's product method; fine for the small rates used here.
    std::uint64_t poisson(double lambda);
    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace imgq
