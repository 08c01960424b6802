#pragma once

#include <cstdint>
#include <cmath>

namespace kdekit {

//! Small self-contained PRNG (splitmix64 core) with uniform and normal draws.
//! Results are identical across platforms and standard libraries, which keeps
//! seeded runs byte-reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64()
  {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  //! Uniform on (0, 1].
  double uniform01()
  {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  //! Uniform index in [0, n).
  std::size_t uniform_index(std::size_t n)
  {
    const double u = uniform01();
    std::size_t i = static_cast<std::size_t>(u * static_cast<double>(n));
    return (i >= n) ? n - 1 : i;
  }

  //! Standard normal via Box-Muller; pairs are cached.
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586477 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  //! Independent stream derived from (seed, a, b); used to decouple parallel
  //! or per-replicate draws from scheduling order.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
  {
    Rng mixer(seed);
    mixer.state_ ^= mixer.next_u64() + 0x9e3779b97f4a7c15ull * (a + 1);
    mixer.state_ ^= mixer.next_u64() + 0x9e3779b97f4a7c15ull * (b + 1);
    return Rng(mixer.next_u64());
  }

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace kdekit
