#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace supercliff {

// SplitMix64 finalizer. Fixed constants, identical on every platform.
constexpr uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled bounded sampling and shuffling. The standard
// distributions are implementation-defined, so none are used here; every
// draw below is reproducible bit-for-bit from the seed on any platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, bound), unbiased via rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t x = engine_();
            if (x >= threshold) {
                return x % bound;
            }
        }
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (size_t i = v.size(); i > 1; i--) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // k distinct values from [0, n), in random order (partial Fisher-Yates).
    std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t k) {
        std::vector<uint32_t> pool(n);
        for (uint32_t i = 0; i < n; i++) {
            pool[i] = i;
        }
        for (uint32_t i = 0; i < k; i++) {
            std::swap(pool[i], pool[i + below(n - i)]);
        }
        pool.resize(k);
        return pool;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace supercliff
