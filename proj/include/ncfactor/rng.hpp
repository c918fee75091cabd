#pragma once

#include <cstdint>

namespace ncfactor {

// Deterministic 64-bit generator (splitmix64 core). We avoid
// std::uniform_int_distribution so that streams are identical across
// standard library implementations; seeds printed in failure reports can
// then reproduce a run anywhere.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound >= 1.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Independent stream for (this seed, salt); used to split per-trial
  // randomness deterministically.
  SeededRng derive(uint64_t salt) const {
    SeededRng mixer(seed_ ^ (0x2545f4914f6cdd1dull * (salt + 1)));
    mixer.next();
    return SeededRng(mixer.next());
  }

 private:
  uint64_t seed_;
  uint64_t state_;
};

}  // namespace ncfactor
