#ifndef BETHE_RNG_HPP
#define BETHE_RNG_HPP

#include <complex>
#include <cstdint>

namespace bethe {

// Self-contained splitmix64 generator. Reproducible across platforms and
// standard libraries, which std::uniform_real_distribution is not; every
// randomized sweep in this project forks one of these per work item so that
// results do not depend on the parallel schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform over the closed disk |z| <= radius
  std::complex<double> in_disk(double radius) {
    const double ang = 6.283185307179586476925286766559 * uniform();
    const double rad = radius * std::sqrt(uniform());
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  // re, im independently uniform in [-half, half]
  std::complex<double> in_box(double half) {
    return {uniform(-half, half), uniform(-half, half)};
  }

  // Decorrelated stream for work item `stream` of a sweep seeded with `seed`.
  static Rng fork(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed ^ (0x632be59bd9b4e019ull * (stream + 1)));
    mixer.next();
    return Rng(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace bethe

#endif
