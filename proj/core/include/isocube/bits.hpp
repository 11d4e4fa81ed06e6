#pragma once

#include <bit>
#include <cstdint>

namespace isocube::bits {

/// Gathers the bits of `value` selected by `mask` into the low bits, keeping
/// their relative order (software PEXT).
constexpr std::uint32_t compress(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  while (mask != 0) {
    const std::uint32_t low = mask & (~mask + 1);
    if (value & low) out |= (std::uint32_t{1} << k);
    ++k;
    mask &= mask - 1;
  }
  return out;
}

/// Inverse of compress: scatters the low bits of `packed` onto the positions
/// set in `mask` (software PDEP).
constexpr std::uint32_t expand(std::uint32_t packed, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  while (mask != 0) {
    const std::uint32_t low = mask & (~mask + 1);
    if (packed & (std::uint32_t{1} << k)) out |= low;
    ++k;
    mask &= mask - 1;
  }
  return out;
}

constexpr std::uint32_t low_mask(int n) {
  return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

/// Next integer with the same popcount (Gosper's hack). Caller bounds the range.
constexpr std::uint32_t next_same_popcount(std::uint32_t v) {
  const std::uint32_t c = v & (~v + 1);
  const std::uint32_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace isocube::bits
