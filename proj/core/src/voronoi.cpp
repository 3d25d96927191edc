#include "divlab/voronoi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "divlab/parallel.hpp"

namespace divlab {

namespace {

constexpr long double pi_l = std::numbers::pi_v<long double>;

long double series_value(long double x, u64 N, std::span<const long double> coef) {
    // coef[i] = d(i+1) * (i+1)^{-3/4}; phase 4 pi sqrt(n x) stays accurate in
    // long double for n x well below 1e14 (argument error << 1e-10 rad here).
    long double sum = 0.0L, comp = 0.0L;
    for (u64 n = 1; n <= N; ++n) {
        long double phase = 4.0L * pi_l * std::sqrt(static_cast<long double>(n) * x);
        long double term = coef[n - 1] * std::cos(phase - pi_l / 4.0L);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::pow(x, 0.25L) / (pi_l * std::sqrt(2.0L)) * sum;
}

std::vector<long double> make_coef(u64 N, std::span<const u64> d_table) {
    if (d_table.size() < N)
        throw std::invalid_argument("delta_voronoi: d_table shorter than N");
    std::vector<long double> coef(N);
    for (u64 n = 1; n <= N; ++n)
        coef[n - 1] = static_cast<long double>(d_table[n - 1]) *
                      std::pow(static_cast<long double>(n), -0.75L);
    return coef;
}

void check_args(double x, u64 N) {
    if (x < 2) throw std::invalid_argument("delta_voronoi: x >= 2");
    if (N < 2) throw std::invalid_argument("delta_voronoi: N >= 2");
    if (static_cast<double>(N) > x)
        throw std::invalid_argument("delta_voronoi: requires N <= x");
}

VoronoiEval assemble(double x, u64 N, long double approx, long double exact) {
    VoronoiEval e;
    e.x = x;
    e.trunc_n = N;
    e.approx = static_cast<double>(approx);
    e.exact = static_cast<double>(exact);
    e.abs_err = std::abs(e.approx - e.exact);
    return e;
}

}  // namespace

VoronoiEval delta_voronoi(double x, u64 N, std::span<const u64> d_table, double exact) {
    check_args(x, N);
    auto coef = make_coef(N, d_table);
    return assemble(x, N, series_value(x, N, coef), exact);
}

VoronoiEval delta_voronoi(double x, u64 N, std::span<const u64> d_table,
                          const DivisorPrefix& prefix) {
    check_args(x, N);
    auto coef = make_coef(N, d_table);
    return assemble(x, N, series_value(x, N, coef),
                    prefix.delta(static_cast<long double>(x)));
}

std::vector<VoronoiEval> voronoi_grid(double xmin, double xmax, std::size_t count,
                                      u64 N, std::span<const u64> d_table,
                                      const DivisorPrefix& prefix) {
    if (count == 0) return {};
    if (xmax < xmin) throw std::invalid_argument("voronoi_grid: xmax >= xmin");
    auto coef = make_coef(N, d_table);

    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
        double t = count > 1 ? xmin + (xmax - xmin) * static_cast<double>(i) /
                                          static_cast<double>(count - 1)
                             : xmin;
        xs[i] = std::floor(t) + 0.5;
    }

    std::vector<VoronoiEval> out(count);
    for_each_chunk(0, count, 8, [&](std::size_t, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            check_args(xs[i], N);
            long double x = static_cast<long double>(xs[i]);
            out[i] = assemble(xs[i], N, series_value(x, N, coef), prefix.delta(x));
        }
    });
    return out;
}

double voronoi_term_magnitude(double x, u64 n, u64 d_n) {
    return std::pow(x, 0.25) / (std::numbers::pi * std::sqrt(2.0)) *
           static_cast<double>(d_n) * std::pow(static_cast<double>(n), -0.75);
}

}  // namespace divlab
