#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace divlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr const char* version = "0.1.0";

// Thrown when a least-squares design matrix is rank-deficient or too
// ill-conditioned for the requested fit.
struct conditioning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a request exceeds the configured sieve/memory budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Narrows a 128-bit accumulator to u64, throwing instead of wrapping.
inline u64 narrow_u128(u128 v, const char* what) {
    if (v > static_cast<u128>(UINT64_MAX))
        throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
    return static_cast<u64>(v);
}

// Deterministic map of a raw 64-bit random word onto [0, n); multiply-shift
// reduction, identical on every platform (unlike std::uniform_int_distribution).
inline u64 bounded_rand(u64 word, u64 n) {
    return static_cast<u64>((static_cast<u128>(word) * n) >> 64);
}

}  // namespace divlab
