#pragma once

#include <cstdint>

namespace fqgeom {

// splitmix64. Self-contained so that seeded runs are byte-identical across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n), unbiased by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

private:
    std::uint64_t state_;
};

// Independent stream derived from (seed, id); stable under any work
// partitioning, so sampled results do not depend on the worker count.
inline Rng substream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng mix(seed ^ (stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return Rng(mix.next_u64());
}

} // namespace fqgeom
