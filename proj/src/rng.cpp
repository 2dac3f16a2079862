#include "qef/rng.hpp"

#include <cmath>

namespace qef {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::generate(std::array<std::uint32_t, 4> c,
                                                  std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMul0, c[0], hi0, lo0);
    mul_hi_lo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

void NormalStream::fill(std::uint64_t sample, double* out, std::size_t count) const {
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::size_t produced = 0;
  std::uint32_t block = 0;
  while (produced < count) {
    const std::array<std::uint32_t, 4> w = Philox4x32::generate(
        {static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32), block,
         stream_},
        key);
    // Two 53-bit uniforms strictly inside (0,1), then Box-Muller.
    const std::uint64_t a = (static_cast<std::uint64_t>(w[1]) << 32) | w[0];
    const std::uint64_t b = (static_cast<std::uint64_t>(w[3]) << 32) | w[2];
    const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1p-53;
    const double u2 = (static_cast<double>(b >> 11) + 0.5) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[produced++] = r * std::cos(kTwoPi * u2);
    if (produced < count) out[produced++] = r * std::sin(kTwoPi * u2);
    ++block;
  }
}

}  // namespace qef
