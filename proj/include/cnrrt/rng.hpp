#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace cnrrt
{

/// Seeded generator shared by every randomized routine.
///
/// The bit stream comes from std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. The distribution mappings are written out here
/// because the std::*_distribution adaptors are implementation-defined and
/// differ between standard libraries. Together this gives identical draws
/// for identical seeds on every platform.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n)
    {
        // Rejection on the top of the range keeps the result unbiased.
        const std::uint64_t limit = (0 - n) % n;
        for (;;)
        {
            const std::uint64_t r = engine_();
            if (r >= limit)
            {
                return r % n;
            }
        }
    }

    int uniform_int(int lo, int hi) // inclusive
    {
        return lo + static_cast<int>(index(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u = uniform();
        while (u <= 0.0)
        {
            u = uniform();
        }
        const double v = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        spare_ = mag * std::sin(angle);
        has_spare_ = true;
        return mag * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b)
{
    return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

template <typename... Rest>
constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b, Rest... rest)
{
    return combine_seed(combine_seed(a, b), static_cast<std::uint64_t>(rest)...);
}

/// 64-bit FNV-1a, used to turn planner labels into seed components.
constexpr std::uint64_t hash_name(std::string_view name)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace cnrrt
