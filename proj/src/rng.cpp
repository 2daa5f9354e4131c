#include "ddsim/rng.hpp"

#include <cmath>

namespace dd {

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
  constexpr uint64_t m0 = 0xD2511F53, m1 = 0xCD9E8D57;
  constexpr uint32_t w0 = 0x9E3779B9, w1 = 0xBB67AE85;
  std::array<uint32_t, 4> c = counter;
  std::array<uint32_t, 2> k = key;
  for (int round = 0; round < 10; round++) {
    const uint64_t p0 = m0 * c[0];
    const uint64_t p1 = m1 * c[2];
    c = {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
         static_cast<uint32_t>(p1),
         static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
         static_cast<uint32_t>(p0)};
    k[0] += w0;
    k[1] += w1;
  }
  return c;
}

double uniform_from_bits(uint32_t word) {
  return (static_cast<double>(word) + 0.5) * 0x1p-32;
}

member_variates draw_member_variates(uint64_t seed, uint64_t index) {
  const std::array<uint32_t, 4> counter = {
      static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32), 0u, 0u};
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
  const std::array<uint32_t, 4> words = philox4x32(counter, key);
  const double u0 = uniform_from_bits(words[0]);
  const double u1 = uniform_from_bits(words[1]);
  // box-muller
  const double z = std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * M_PI * u1);
  return {z, uniform_from_bits(words[2]), uniform_from_bits(words[3])};
}

}  // namespace dd
