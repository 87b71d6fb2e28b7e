#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace mahler {

/// Sobol low-discrepancy points in up to kMaxDims dimensions (Joe–Kuo
/// direction numbers), 32-bit resolution.
class SobolSequence {
public:
    static constexpr std::size_t kMaxDims = 8;
    static constexpr int kBits = 32;

    explicit SobolSequence(std::size_t dims);

    std::size_t dims() const noexcept { return dims_; }

    /// Integer coordinates of the point with Gray-code rank `index`.
    void point(std::uint64_t index, std::span<std::uint32_t> out) const;
    /// Advances integer coordinates from Gray-code rank `index` to `index + 1`.
    void advance(std::uint64_t index, std::span<std::uint32_t> coords) const;

private:
    std::size_t dims_;
    std::array<std::array<std::uint32_t, kBits>, kMaxDims> directions_{};
};

}  // namespace mahler
