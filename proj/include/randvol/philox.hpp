#pragma once
// Counter-based RNG (Philox-4x32-10). A sample value is a pure function of
// (seed, index), so parallel chunks reproduce the serial stream exactly.

#include <cmath>
#include <cstdint>

namespace randvol {

namespace detail {
inline void philox_round(uint32_t c[4], const uint32_t k[2]) {
    uint64_t p0 = uint64_t{0xD2511F53u} * c[0];
    uint64_t p1 = uint64_t{0xCD9E8D57u} * c[2];
    uint32_t c1 = c[1], c3 = c[3];
    c[0] = uint32_t(p1 >> 32) ^ c1 ^ k[0];
    c[1] = uint32_t(p1);
    c[2] = uint32_t(p0 >> 32) ^ c3 ^ k[1];
    c[3] = uint32_t(p0);
}
}  // namespace detail

// 64 random bits for counter block `idx` under key `seed`.
inline uint64_t philox64(uint64_t seed, uint64_t idx) {
    uint32_t c[4] = {uint32_t(idx), uint32_t(idx >> 32), 0u, 0u};
    uint32_t k[2] = {uint32_t(seed), uint32_t(seed >> 32)};
    for (int r = 0; r < 10; ++r) {
        detail::philox_round(c, k);
        k[0] += 0x9E3779B9u;
        k[1] += 0xBB67AE85u;
    }
    return uint64_t(c[0]) | (uint64_t(c[1]) << 32);
}

// Uniform in the open interval (0,1): 53-bit mantissa with half-ulp offset,
// never exactly 0 or 1 (safe under log()).
inline double u01(uint64_t seed, uint64_t idx) {
    return (double(philox64(seed, idx) >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair from two counter slots.
inline void gauss_pair(uint64_t seed, uint64_t idx0, double& g0, double& g1) {
    double u = u01(seed, idx0), v = u01(seed, idx0 + 1);
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 6.283185307179586476925286766559 * v;
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
}

}  // namespace randvol
