#pragma once

#include <cstdint>
#include <random>

namespace cascade {

/// Seeded Gaussian stream. Box-Muller on top of mt19937_64 rather than
/// std::normal_distribution, whose output is implementation defined; runs
/// must be bit-reproducible for a given seed.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double normal();
    double uniform();  // in [0, 1)

    /// Derive an independent stream for ensemble member `index` (seed-ordered
    /// deterministic reduction relies on this being a pure function).
    static std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cascade
