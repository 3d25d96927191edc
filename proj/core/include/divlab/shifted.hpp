#pragma once

#include <functional>
#include <span>
#include <vector>

#include "divlab/common.hpp"

namespace divlab {

// Summation range for correlation sums: n <= N, or N < n <= 2N.
enum class range_mode { upto_n, dyadic };

const char* range_mode_name(range_mode mode);

struct ShiftedSumRecord {
    int k = 2;
    u64 f = 1;
    u64 N = 0;
    range_mode mode = range_mode::upto_n;
    u64 sum = 0;           // sum of d_k(n) d_k(n+f) over the range
    double fitted_main = 0;
    double residual = 0;   // sum - fitted_main
};

// Exact correlation sum, one sieve pass over [lo, hi + f], 128-bit
// accumulation. k in {2,...,6}, N >= 1, f >= 1.
u64 shifted_sum(int k, u64 N, u64 f, range_mode mode = range_mode::upto_n);

// Sums at several strictly increasing N sharing one sieve pass.
std::vector<ShiftedSumRecord> shifted_checkpoints(int k, u64 f,
                                                  std::span<const u64> Ns,
                                                  range_mode mode = range_mode::upto_n);

// sums[f-1] = correlation sum at shift f, for f = 1..fmax, one sieve pass.
std::vector<u64> shifted_sums_multi_f(int k, u64 N, u64 fmax,
                                      range_mode mode = range_mode::upto_n);

// Sum over d | gcd(h, q) of d * mu(q/d); h = 0 uses gcd(0, q) = q.
i64 ramanujan_sum(u64 q, u64 h);

struct InghamFit {
    int k = 2;
    u64 f = 1;
    std::vector<double> coeffs;  // sum ~ N * (coeffs[0] + coeffs[1] log N + ...)
    double max_rel_residual = 0;

    double eval_main(double N) const;
    double leading() const { return coeffs.back(); }
    // Named accessors for k = 2: c1 N log^2 N + c2 N log N + c3 N.
    double c1() const;
    double c2() const;
    double c3() const;
};

struct InghamAnalysis {
    InghamFit fit;
    std::vector<ShiftedSumRecord> records;
};

// Least-squares fit of sum/N against powers of log N up to degree 2k-2.
// Requires at least 2k-1 records, strictly increasing N, max N >= 10 min N;
// too few or too clustered checkpoints raise conditioning_error.
InghamFit fit_log_poly(int k, u64 f, std::span<const ShiftedSumRecord> records);

// Computes the checkpoint sums, fits them, and fills fitted_main/residual.
InghamAnalysis fit_ingham(int k, u64 f, std::span<const u64> checkpoints,
                          range_mode mode = range_mode::upto_n);

struct AveragedDelta3 {
    u64 N = 0;
    u64 H = 0;
    double sum_residuals = 0;  // sum over h <= H of the fit residual at N
    double band = 0;           // 5 (H^2 + N^(4/3)) N^0.05
    bool within_band = false;
};

// Residual of the dyadic d_3 correlation sum after a per-shift degree-4 fit
// over checkpoints N/32, N/16, ..., N, summed over shifts h <= H.
AveragedDelta3 averaged_delta3(u64 N, u64 H);

struct SingularSeries {
    double value = 0;
    double tail_bound = 0;  // bound on the mass dropped beyond q_max
    u64 q_max = 0;
};

// Sum over q <= q_max of c_q(h) q^-2 Qk(x, q)^2 for a caller-supplied Qk.
// For h = 0 the c_q(0)/q^2 tail diverges and tail_bound is +infinity.
SingularSeries singular_series(double x, u64 h,
                               const std::function<double(double, u64)>& Qk,
                               u64 q_max = 10000);

}  // namespace divlab
