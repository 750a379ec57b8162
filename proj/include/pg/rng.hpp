#ifndef PG_RNG_HPP
#define PG_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pg {

// Counter-based splittable generator (splitmix64 finalizer). A stream is
// identified by an immutable key; draws advance a local counter only, and
// child(a) derives an independent stream from (key, a). Protocols key their
// per-iteration streams as Rng(seed).child(trial).child(t), so any draw is a
// pure function of (seed, trial, t, draw index) and trials can run in
// parallel without shared state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x8c95b3a1d2f40d17ull)) {}

    Rng child(std::uint64_t a) const { return Rng(key_ ^ mix(a + 0x9e3779b97f4a7c15ull), 0); }

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++ctr_); }

    // Unbiased-enough uniform draw in [0, n) via multiply-shift reduction.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes two draws.
    double next_normal() {
        double u = next_unit();
        double v = next_unit();
        if (u <= 0.0) u = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
    }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

  private:
    Rng(std::uint64_t key, int) : key_(key) {}
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace pg

#endif
