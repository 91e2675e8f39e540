#pragma once

// Counter-based random numbers (Philox4x32-10): every variate is a pure
// function of (seed, stream, index), so parallel sampling is reproducible
// and independent of evaluation order.

#include <array>
#include <cstdint>

namespace epz {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// uniform in [0,1) with 53 random bits, keyed by (seed, stream, index)
double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// second independent uniform from the same counter block
double u01b(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

} // namespace epz
