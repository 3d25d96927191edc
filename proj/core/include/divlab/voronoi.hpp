#pragma once

#include <span>
#include <vector>

#include "divlab/common.hpp"
#include "divlab/prefix.hpp"

namespace divlab {

struct VoronoiEval {
    double x = 2;
    u64 trunc_n = 2;   // series truncated at n <= trunc_n
    double approx = 0;
    double exact = 0;
    double abs_err = 0;
};

// Truncated oscillating expansion of Delta(x):
//   (1/(pi sqrt 2)) x^{1/4} sum_{n<=N} d(n) n^{-3/4} cos(4 pi sqrt(nx) - pi/4),
// phases in long double, Kahan-compensated summation, terms in fixed order.
// d_table[i] must hold d(i+1) for i < N. Requires 2 <= N <= x.
VoronoiEval delta_voronoi(double x, u64 N, std::span<const u64> d_table,
                          double exact);

// Convenience: exact value from a prefix table covering floor(x).
VoronoiEval delta_voronoi(double x, u64 N, std::span<const u64> d_table,
                          const DivisorPrefix& prefix);

// `count` evaluation points floor(linspace(xmin, xmax)) + 1/2 (half-integers
// dodge the jump discontinuity), evaluated in parallel, output in grid order.
std::vector<VoronoiEval> voronoi_grid(double xmin, double xmax, std::size_t count,
                                      u64 N, std::span<const u64> d_table,
                                      const DivisorPrefix& prefix);

// Magnitude of one series term, (1/(pi sqrt 2)) x^{1/4} d(n) n^{-3/4}.
double voronoi_term_magnitude(double x, u64 n, u64 d_n);

}  // namespace divlab
