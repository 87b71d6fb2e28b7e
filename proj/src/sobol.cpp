#include "mahler/sobol.hpp"

#include <bit>
#include <stdexcept>

namespace mahler {
namespace {

struct Primitive {
    int degree;
    std::uint32_t coefficients;
    std::array<std::uint32_t, 5> initial;
};

// new-joe-kuo-6.21201, dimensions 2..8.
constexpr std::array<Primitive, SobolSequence::kMaxDims - 1> kPrimitives{{
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
}};

}  // namespace

SobolSequence::SobolSequence(std::size_t dims) : dims_(dims) {
    if (dims == 0 || dims > kMaxDims) throw std::invalid_argument("Sobol dimension must be in [1, 8]");
    for (int i = 0; i < kBits; ++i) directions_[0][i] = std::uint32_t{1} << (kBits - 1 - i);
    for (std::size_t d = 1; d < dims; ++d) {
        const Primitive& prim = kPrimitives[d - 1];
        auto& v = directions_[d];
        const int s = prim.degree;
        for (int i = 0; i < kBits; ++i) {
            if (i < s) {
                v[i] = prim.initial[i] << (kBits - 1 - i);
                continue;
            }
            std::uint32_t x = v[i - s] ^ (v[i - s] >> s);
            for (int k = 1; k < s; ++k)
                if ((prim.coefficients >> (s - 1 - k)) & 1u) x ^= v[i - k];
            v[i] = x;
        }
    }
}

void SobolSequence::point(std::uint64_t index, std::span<std::uint32_t> out) const {
    const std::uint64_t gray = index ^ (index >> 1);
    for (std::size_t d = 0; d < dims_; ++d) {
        std::uint32_t x = 0;
        for (int bit = 0; bit < kBits; ++bit)
            if ((gray >> bit) & 1u) x ^= directions_[d][bit];
        out[d] = x;
    }
}

void SobolSequence::advance(std::uint64_t index, std::span<std::uint32_t> coords) const {
    const int bit = std::countr_zero(index + 1);
    for (std::size_t d = 0; d < dims_; ++d) coords[d] ^= directions_[d][bit];
}

}  // namespace mahler
