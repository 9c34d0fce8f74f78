#ifndef INCOMPLETE_RNG_HPP
#define INCOMPLETE_RNG_HPP

#include <cstdint>
#include <random>

namespace incomplete {

/// splitmix64 finalizer; good avalanche, used to derive independent
/// sub-stream seeds from (master seed, stream index).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(mix64(master) ^ mix64(index + 0x51ED270B4C4BD1F1ull));
}

/// Engine for sub-stream `index` of the given master seed. Results are
/// reproducible independently of scheduling as long as each parallel unit
/// of work owns a distinct index.
inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64(substream_seed(master, index));
}

} // namespace incomplete

#endif
