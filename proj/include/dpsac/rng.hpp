#pragma once
#include <cstdint>
#include <string_view>

namespace dpsac {

// Deterministic splittable generator. Streams derived from (seed, label) are
// independent, so adding draws in one component never perturbs another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng stream(std::uint64_t seed, std::string_view label) {
        std::uint64_t h = seed;
        for (char c : label) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 0x100000001b3ULL;
        }
        Rng r(h);
        r.next_u64();  // decorrelate nearby seeds
        return r;
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return next_double() < p;
    }

private:
    std::uint64_t state_;
};

}  // namespace dpsac
