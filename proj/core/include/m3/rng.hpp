#pragma once

#include <cstdint>

namespace m3 {

// splitmix64. Chosen over std engines so refill streams are identical
// across platforms and standard libraries; logs replay bit-for-bit.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Rejection-free modulo is fine here: n is tiny
    // (color counts, board sizes) so the bias is far below observability.
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform color code in [1..colors].
    int color(int colors) { return 1 + static_cast<int>(below(static_cast<uint64_t>(colors))); }

    uint64_t state() const { return state_; }

    friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

  private:
    uint64_t state_;
};

}  // namespace m3
