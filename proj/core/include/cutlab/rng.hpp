#pragma once

#include <cmath>
#include <cstdint>

namespace cutlab {

// SplitMix64 stream. Used instead of <random> distributions so that every
// draw is bit-identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n), unbiased via rejection
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    int next_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform angle in [0, 2*pi)
    double next_angle() { return next_unit() * 6.283185307179586476925286766559; }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    // standard normal via Box-Muller, one value cached per pair
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Derives an independent stream seed from a base seed and a tag. Chain calls
// to key streams by (instance, purpose, ...) tuples.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
    Rng r(base ^ (0x9e3779b97f4a7c15ULL + tag * 0xd1b54a32d192ed03ULL));
    return r.next_u64();
}

}  // namespace cutlab
