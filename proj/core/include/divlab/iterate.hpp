#pragma once

#include <span>
#include <utility>
#include <vector>

#include "divlab/common.hpp"
#include "divlab/sieve.hpp"

namespace divlab {

// Integer held as its prime factorization; the value itself may exceed any
// native word, so magnitude lives in log_n.
struct PrimorialLikeNumber {
    std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), ascending
    double log_n = 0;
    std::vector<std::pair<u64, u32>> d_factors;  // factorization of d(n)
};

// Factorization of d(m) for m given by its factorization: merges the
// factorizations of each exponent + 1.
std::vector<std::pair<u64, u32>> divisor_count_factors(
    std::span<const std::pair<u64, u32>> factors);

// p_1^(p_1-1) ... p_k^(p_k-1); d(N) = p_1 ... p_k, so d(d(N)) = 2^k.
PrimorialLikeNumber ramanujan_number(int k);

struct RamanujanBoundCheck {
    double lhs = 0;  // log d(d(N)) = k log 2
    double rhs = 0;  // sqrt(2 log N)/loglog N * log 4
    bool holds = false;
};

RamanujanBoundCheck ramanujan_lower_bound_check(int k);

// N_1 = product of the first r primes; given N_j = prod p_i^(r_i), the next
// level raises consecutive prime blocks of sizes r_1, r_2, ... to the powers
// p_1 - 1, p_2 - 1, ...; then d applied j times to N_j collapses to 2^r.
struct ErdosKataiSequence {
    u64 r = 0;
    std::vector<PrimorialLikeNumber> levels;  // N_1 .. N_depth (or fewer)
    bool truncated = false;  // stopped by the factor-count budget
};

ErdosKataiSequence erdos_katai_sequence(u64 r, int depth,
                                        u64 factor_budget = u64(1) << 20);

struct FibonacciTable {
    std::vector<u64> values;  // l_{-1}, l_0, ..., l_{k_max}
    u64 at(int k) const;      // k from -1 upward
};

// l_{-1} = 0, l_0 = 1, l_k = l_{k-1} + l_{k-2}; k_max <= 91 fits in 64 bits.
FibonacciTable fibonacci_table(int k_max);

struct RecordEntry {
    u64 n = 0;
    u64 value = 0;
    double normalized = 0;  // for k = 2: log(value) loglog(n)/sqrt(log n)
};

struct RecordScan {
    u64 x_max = 0;
    int k = 2;
    std::vector<RecordEntry> records;  // strictly increasing in n and value
};

// Streams n = 2..x_max recording running maxima of the k-fold iterate of d.
RecordScan scan_iterated_max(u64 x_max, int k);

struct IteratedSum {
    u64 x = 0;
    int k = 2;
    u64 sum = 0;
    double normalized = 0;  // sum/(x log_k x), k-fold iterated log
};

IteratedSum sum_iterated(u64 x, int k);

// Same sum flushed at each checkpoint in one pass; xs strictly increasing.
std::vector<IteratedSum> sum_iterated_checkpoints(std::span<const u64> xs, int k);

struct IvicScan {
    u64 x = 0;
    FuncKind kind;  // f in sum f(n + f(n)); d is kind {dk, 2}
    u64 sum = 0;
    double b_estimate = 0;  // sum/(x log x)
};

IvicScan ivic_conjecture_scan(u64 x, FuncKind kind = FuncKind{});

enum class erdos_regime { full_interval, supercritical, subcritical };

const char* erdos_regime_name(erdos_regime regime);

struct ErdosShortResult {
    u64 samples = 0;
    u64 window = 0;  // x drawn uniformly from [window, 2 window]
    u64 seed = 0;
    double c = 0;      // strength of the exp(+-c sqrt(loglog x)) factor
    double delta = 0;  // acceptance half-width around ratio 1
    erdos_regime regime = erdos_regime::supercritical;
    double fraction = 0;    // share of samples with ratio in [1-delta, 1+delta]
    double mean_ratio = 0;
    double mean_length = 0;  // average number of summed terms
};

// Ratio sum_{n <= g(x)} d(x+n) / (g(x) log x) where g is x itself
// (full_interval) or (log x)^(2 log 2 - 1) exp(+-c sqrt(loglog x)).
ErdosShortResult erdos_short_interval_check(u64 samples, erdos_regime regime,
                                            double c, u64 window, u64 seed,
                                            double delta = 0.25);

struct DkPlusSum {
    u64 x = 0;
    int k = 1;
    u64 sum = 0;            // sum of max_{0 <= h < k} d(n+h)
    double normalized = 0;  // sum/(k x log x)
};

DkPlusSum dk_plus_sum(u64 x, int k);

}  // namespace divlab
