#pragma once

#include <array>
#include <cstdint>

namespace dd {

// philox4x32-10 counter-based generator: one block per (counter, key) pair,
// reproducible independently of evaluation order
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// map a 32-bit word to (0, 1)
double uniform_from_bits(uint32_t word);

// per-member randomness for monte carlo: one philox block indexed by
// (sample index, seed) yields the bath variate and both error coordinates
struct member_variates {
  double z_bath;   // standard normal
  double p_eps;    // uniform (0, 1)
  double p_nz;     // uniform (0, 1)
};

member_variates draw_member_variates(uint64_t seed, uint64_t index);

}  // namespace dd
