#pragma once

#include <cstdint>
#include <random>

namespace mahler {

/// Selects between the OpenMP kernels and their serial reference loops.
/// Both produce bit-identical results; the reference exists for tests and
/// benchmarks.
enum class Execution { serial, parallel };

/// Points per reduction block. Partial sums are formed per block and then
/// added in block order, so results do not depend on thread scheduling.
inline constexpr std::size_t kBlockSize = 4096;

/// Engine for substream `stream` of `seed`. Streams are decorrelated by
/// feeding both words through std::seed_seq.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_uniform(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace mahler
