#include "cascade/rng.hpp"

#include <cmath>

namespace cascade {

double GaussianRng::uniform() {
    // 53-bit mantissa from the top bits; strictly inside [0, 1).
    return (engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t GaussianRng::substream_seed(std::uint64_t base_seed, std::uint64_t index) {
    // SplitMix64 finalizer over (seed, index).
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace cascade
