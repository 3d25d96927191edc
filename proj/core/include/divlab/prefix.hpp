#pragma once

#include <vector>

#include "divlab/common.hpp"

namespace divlab {

// Shared prefix-sum table of d(n): one sieve pass per (T, H, U)-style job,
// then every Delta evaluation is an O(1) lookup plus main-term arithmetic.
class DivisorPrefix {
public:
    // Builds sum table for n <= limit (parallel sieve, deterministic).
    explicit DivisorPrefix(u64 limit);

    u64 limit() const { return limit_; }

    // Sum_{m <= n} d(m); n may be 0.
    i64 sum(u64 n) const { return prefix_[n]; }

    u64 d(u64 n) const { return static_cast<u64>(prefix_[n] - prefix_[n - 1]); }

    // Delta(x) = sum_{n <= x} d(n) - x(log x + 2*gamma - 1), the inclusive
    // convention at integer x. Main term evaluated in long double.
    long double delta(long double x) const;

private:
    u64 limit_;
    std::vector<i64> prefix_;
};

}  // namespace divlab
