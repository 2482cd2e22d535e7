#pragma once

#include <cstdint>
#include <random>

namespace tlab {

// Deterministic, platform-independent sampling. mt19937_64 output is fully
// specified by the standard; std::*_distribution is not, so bits are mapped
// to doubles by hand. Streams are decorrelated by splitmix64 on (seed, id).
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 0x9e3779b97f4a7c15ULL + 1))) {}

  uint64_t bits() { return eng_(); }

  // uniform in [0,1) with 53 significant bits
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  // integer uniform in [0, n) by rejection (unbiased, deterministic)
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do { v = eng_(); } while (v >= limit);
    return v % n;
  }

  int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive bounds
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // standard normal via Box-Muller on explicit bits
  double normal() {
    if (have_spare_) { have_spare_ = false; return spare_; }
    double u1, u2;
    do { u1 = unit(); } while (u1 <= 0.0);
    u2 = unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tlab
