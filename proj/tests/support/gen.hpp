#pragma once

// Seeded generators for the property suites. A fixed default seed keeps
// ctest runs reproducible; RAMFIELD_SEED overrides it.

#include <cstdint>
#include <cstdlib>
#include <random>

namespace testgen {

inline std::uint64_t seed() {
    if (const char* s = std::getenv("RAMFIELD_SEED")) return std::strtoull(s, nullptr, 10);
    return 20261018;
}

class Gen {
public:
    explicit Gen(std::uint64_t salt = 0) : rng_(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }
    // integer prime to p in [1, bound)
    long unit(int p, long bound) {
        for (;;) {
            const long u = range(1, bound - 1);
            if (u % p != 0) return u;
        }
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testgen
