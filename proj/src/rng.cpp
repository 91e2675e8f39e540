#include "epzeros/rng.hpp"

namespace epz {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, std::array<std::uint32_t, 2>& k) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) round_once(ctr, key);
    return ctr;
}

namespace {

inline std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                          std::uint64_t index) {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                        static_cast<std::uint32_t>(seed >> 32)};
    return philox4x32(ctr, key);
}

inline double to_u01(std::uint32_t a, std::uint32_t b) {
    std::uint64_t bits = (static_cast<std::uint64_t>(a) << 32) | b;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto x = block(seed, stream, index);
    return to_u01(x[0], x[1]);
}

double u01b(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto x = block(seed, stream, index);
    return to_u01(x[2], x[3]);
}

} // namespace epz
