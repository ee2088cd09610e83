#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace glkde {

//! SplitMix64 finalizer.
constexpr std::uint64_t
splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Order-sensitive combination of a master seed with stream coordinates
//! (cell indices, replication index, ...).
constexpr std::uint64_t
mix_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates)
{
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : coordinates) {
    h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  }
  return h;
}

//! 64-bit Mersenne Twister with explicitly specified variate transforms, so
//! streams are identical across standard library implementations.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(splitmix64(seed))
  {}

  std::uint64_t next() { return engine_(); }

  //! Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  //! Fair coin mapped to {0, 1}.
  double bernoulli_half() { return static_cast<double>(next() >> 63); }

  //! Standard normal by the Marsaglia polar method.
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace glkde
