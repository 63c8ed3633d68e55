#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace hybridsim {

// Deterministic RNG wrapper. std::mt19937_64 has a portable, standardized
// output sequence, but the std distributions do not, so bounded draws are
// implemented here (rejection sampling, no modulo bias). Every consumer
// documents its draw order; replaying the same seed replays the same world.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return lo;  // full 64-bit span cannot happen with int bounds
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return static_cast<int>(lo + static_cast<long long>(r % span));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace hybridsim
