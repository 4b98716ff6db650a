#pragma once

#include <cstdint>
#include <random>

#include "cipher.hpp"

namespace chaocrypt {

// Fresh key with initial conditions drawn uniformly from (0.01, 0.99) and the
// documented defaults for mu, a, b, n_iter. Deterministic for a given seed.
inline MasterKey generate_key(std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const auto draw = [&eng] {
        const double u = static_cast<double>(eng() >> 11) * 0x1p-53; // [0,1)
        return 0.01 + 0.98 * u;
    };
    MasterKey key;
    key.x = draw();
    key.y = draw();
    key.v = draw();
    key.w = draw();
    return key;
}

} // namespace chaocrypt
