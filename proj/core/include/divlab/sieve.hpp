#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "divlab/common.hpp"

namespace divlab {

// Which arithmetic function a sieve pass tabulates. d(n) is dk with k = 2,
// d_1 is identically 1, omega counts distinct prime factors, bigomega counts
// them with multiplicity.
enum class func_tag { dk, omega, bigomega };

struct FuncKind {
    func_tag tag = func_tag::dk;
    int k = 2;  // only meaningful for func_tag::dk
};

struct DivisorBlock {
    u64 lo = 1;   // inclusive
    u64 hi = 1;   // exclusive
    FuncKind kind;
    std::vector<u64> values;  // values[i] = f(lo + i)
};

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), primes ascending
};

// Inputs above this bound are rejected with std::range_error: marking
// arithmetic (m += p, p*p <= hi) must stay clear of u64 wraparound.
inline constexpr u64 sieve_limit = u64(1) << 62;

inline constexpr u64 default_block_size = u64(1) << 16;

// Number of k-part ordered factorizations of p^e: binom(k+e-1, e).
// Throws std::overflow_error if the value exceeds 64 bits.
u64 dk_prime_power(int k, u32 e);

// Product of dk_prime_power over the factor list (multiplicativity).
// k = 1 gives 1, empty factorization gives 1. Overflow throws.
u64 dk_of_factorization(const Factorization& f, int k);

// ~O(n^{1/4}) factorization for 64-bit n: trial division by small primes,
// then deterministic Miller-Rabin + Brent's rho. n = 1 -> empty list.
Factorization factorize(u64 n);

bool is_prime(u64 n);

std::vector<u32> primes_up_to(u32 n);

// d applied k times; iterates via factorize (arguments shrink rapidly).
u64 iterate_d(u64 n, int k);

// Convenience point evaluations.
u64 d_of(u64 n);
u64 dk_of(u64 n, int k);

// Sieves [lo, hi) into consecutive blocks of at most block_size values.
// Blocks are computed in parallel but returned in range order; output is
// bit-identical for any block_size and worker count.
std::vector<DivisorBlock> sieve_range(u64 lo, u64 hi, FuncKind kind,
                                      u64 block_size = default_block_size);

// Streaming variant: fn is invoked on each block strictly in range order,
// while later blocks may be computed concurrently. Use for ranges whose
// full value table would not fit in memory.
void for_each_block(u64 lo, u64 hi, FuncKind kind, u64 block_size,
                    const std::function<void(const DivisorBlock&)>& fn);

// Sum of f(n) over [lo, hi) in 128-bit, one streaming pass.
u128 sum_range(u64 lo, u64 hi, FuncKind kind,
               u64 block_size = default_block_size);

// Sum_{n <= x} d(n) by the hyperbola identity 2 sum_{m <= sqrt(x)} floor(x/m)
// - floor(sqrt(x))^2, exact in O(sqrt(x)) with no table.
u64 divisor_sum_hyperbola(u64 x);

// Materialized values for [lo, hi): out[i] = f(lo + i).
std::vector<u64> sieve_values(u64 lo, u64 hi, FuncKind kind,
                              u64 block_size = default_block_size);

}  // namespace divlab
