#pragma once

#include <array>
#include <span>
#include <vector>

#include "divlab/common.hpp"
#include "divlab/prefix.hpp"

namespace divlab {

enum class interval_stat_mode { discrete, integral };

const char* interval_stat_mode_name(interval_stat_mode mode);

struct ShortIntervalStat {
    double T = 0;
    double H = 0;
    double U = 0;
    double mean_square = 0;
    interval_stat_mode mode = interval_stat_mode::discrete;
    std::array<double, 4> fitted_cubic{};  // c0..c3 in L = log(sqrt(T)/U)
};

// Sum over integers n in [T, 2T] of (Delta(n+U) - Delta(n))^2, exact from the
// prefix table. Requires 1 <= U <= sqrt(T)/2 and prefix coverage of 2T + U.
ShortIntervalStat diff_mean_square_discrete(u64 T, u64 U, const DivisorPrefix& prefix);

// Integral over [T, T+H] of (Delta(x+U) - Delta(x))^2 dx. Between divisor
// jumps the integrand is smooth; each piece is integrated by 8-point
// Gauss-Legendre, which is exact to rounding at these scales.
ShortIntervalStat diff_mean_square_integral(double T, double H, double U,
                                            const DivisorPrefix& prefix);

// (1/4pi^2) sum_{n <= T/(2U)} d(n)^2 n^{-3/2} Int_T^{T+H} sqrt(x)
// 4 sin^2(pi U sqrt(n/x)) dx. Terms are summed smallest magnitude first
// (descending n); each x-integral uses adaptive Simpson at 1e-8 relative.
double jutila_rhs(double T, double H, double U, std::span<const u64> d_table);
double jutila_rhs(double T, double H, double U);  // sieves its own d table

// Integral over [T, T+H] of sup_{0 <= u <= U} |Delta(x+u) - Delta(x)|^2 dx.
// The sup is exact: between jumps the difference decreases in u, so the
// candidates are the post-jump values, the pre-jump limits, and u = U.
double max_window_stat(double T, double H, double U, const DivisorPrefix& prefix);

struct LargeValueInterval {
    double start = 0;
    double end = 0;
    int sign = 0;  // +1 where Delta >= c+ T^(1/4), -1 where Delta <= -c- T^(1/4)
};

struct LargeValueReport {
    double T = 0, H = 0, U = 0;
    double c_plus = 0, c_minus = 0;
    u64 positive_intervals = 0;  // maximal runs of length >= U, by sign
    u64 negative_intervals = 0;
    std::vector<LargeValueInterval> interval_list;
    // Asymptotic-regime flags (desk-scale runs normally sit outside):
    // T^(131/416) <= U <= sqrt(T)/log^5 T and T^(1/4) U log^5 T loglog T <= H <= T.
    bool u_in_regime = false;
    bool h_in_regime = false;
};

// Scans [T, T+H] in cells of width U/4. A cell counts positive when Delta
// attains c+ T^(1/4) somewhere in it (negative analogously with -c- T^(1/4));
// consecutive qualifying cells coalesce into maximal subintervals and those of
// length >= U are counted, each re-verified at 3 witness points.
LargeValueReport detect_large_values(double T, double H, double U, double c_plus,
                                     double c_minus, const DivisorPrefix& prefix);

struct ShortIntervalCubicFit {
    u64 T = 0;
    std::array<double, 4> coeffs{};  // mean_square/(T U) ~ sum_j coeffs[j] L^j
    std::vector<ShortIntervalStat> stats;
    double c3() const { return coeffs[3]; }
};

// Discrete mean squares at several window widths U, fitted as a cubic in
// L = log(sqrt(T)/U) after dividing by T U.
ShortIntervalCubicFit fit_short_interval_cubic(u64 T, std::span<const u64> Us,
                                               const DivisorPrefix& prefix);

}  // namespace divlab
