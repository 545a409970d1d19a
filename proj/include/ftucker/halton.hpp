#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ftucker {

/// Van der Corput radical inverse of `index` in `base`, in (0,1) for index >= 1.
inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

/// Halton points in (-1,1)^3 with bases (2,3,5); element indices start at
/// offset + 1 and each coordinate is mapped by t -> 2t - 1.
inline std::vector<std::array<double, 3>> halton_points(std::size_t count, std::uint64_t offset = 0) {
    if (count == 0)
        throw std::invalid_argument("halton_points: count must be at least 1");
    static constexpr std::array<std::uint32_t, 3> bases{2, 3, 5};
    std::vector<std::array<double, 3>> pts(count);
    for (std::size_t n = 0; n < count; ++n)
        for (std::size_t d = 0; d < 3; ++d)
            pts[n][d] = 2.0 * radical_inverse(offset + n + 1, bases[d]) - 1.0;
    return pts;
}

} // namespace ftucker
