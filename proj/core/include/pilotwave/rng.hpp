#pragma once

#include <cstdint>
#include <random>

namespace pilotwave {

// Stream splitting rule used everywhere a seed fans out: the stream id is
// XOR-ed into the user seed and the result is passed through the splitmix64
// finalizer before seeding the engine.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ stream);
}

// Fixed stream ids so that independent consumers of one run seed never share
// a sequence.
namespace streams {
inline constexpr std::uint64_t kBornSampling = 0x01;
inline constexpr std::uint64_t kMeasurement = 0x02;
inline constexpr std::uint64_t kChsh = 0x03;
inline constexpr std::uint64_t kBases = 0x04;
inline constexpr std::uint64_t kOperators = 0x05;
}  // namespace streams

// mt19937_64 with platform-independent conversion to doubles (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) by rejection, unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pilotwave
