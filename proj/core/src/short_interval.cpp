#include "divlab/short_interval.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "divlab/main_term.hpp"
#include "divlab/parallel.hpp"
#include "divlab/sieve.hpp"
#include "fit_internal.hpp"

namespace divlab {

namespace {

long double main_sum(long double x) {
    static const long double two_gamma_m1 = 2.0L * builtin_laurent().gamma[0] - 1.0L;
    return x * (std::log(x) + two_gamma_m1);
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr int gl_n = 8;
constexpr double gl_x[gl_n] = {
    -0.96028985649753623168356086857, -0.79666647741362673959155393647,
    -0.52553240991632898581773904918, -0.18343464249564980493947614236,
    0.18343464249564980493947614236,  0.52553240991632898581773904918,
    0.79666647741362673959155393647,  0.96028985649753623168356086857};
constexpr double gl_w[gl_n] = {
    0.10122853629037625915253135431, 0.22238103445337447054435599443,
    0.31370664587788728733796220199, 0.36268378337836198296515044928,
    0.36268378337836198296515044928, 0.31370664587788728733796220199,
    0.22238103445337447054435599443, 0.10122853629037625915253135431};

double simpson_est(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(const F& f, double a, double m, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_est(a, m, fa, flm, fm);
    double right = simpson_est(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson_est(a, b, fa, fm, fb);
    double tol = std::abs(whole) * rel_tol;
    return adaptive_step(f, a, m, b, fa, fm, fb, whole, tol, 20);
}

// Merges per-chunk partial sums in chunk order so the result does not depend
// on the worker count.
template <class Fn>
long double chunked_sum(u64 lo, u64 hi, u64 chunk, const Fn& piece) {
    std::vector<long double> partial(chunk_count(lo, hi, chunk), 0.0L);
    for_each_chunk(lo, hi, chunk, [&](std::size_t idx, u64 a, u64 b) {
        partial[idx] = piece(a, b);
    });
    long double total = 0.0L;
    for (long double p : partial) total += p;
    return total;
}

// Max/min of Delta at the integer jump points inside a sliding window
// (x, x+U], maintained with monotone deques as the window advances.
struct JumpWindow {
    const std::vector<double>& post;  // Delta(m), jump included
    const std::vector<double>& pre;   // Delta(m) - d(m), limit from the left
    u64 off;
    u64 next_push;
    std::deque<u64> dmax, dmin;

    JumpWindow(const std::vector<double>& post_, const std::vector<double>& pre_,
               u64 off_, u64 first)
        : post(post_), pre(pre_), off(off_), next_push(first) {}

    void extend_to(u64 m_hi) {
        for (; next_push <= m_hi; ++next_push) {
            double v = post[next_push - off];
            while (!dmax.empty() && post[dmax.back() - off] <= v) dmax.pop_back();
            dmax.push_back(next_push);
            double w = pre[next_push - off];
            while (!dmin.empty() && pre[dmin.back() - off] >= w) dmin.pop_back();
            dmin.push_back(next_push);
        }
    }

    void drop_below(u64 m_lo) {
        while (!dmax.empty() && dmax.front() < m_lo) dmax.pop_front();
        while (!dmin.empty() && dmin.front() < m_lo) dmin.pop_front();
    }

    bool empty() const { return dmax.empty(); }
    double max_post() const { return post[dmax.front() - off]; }
    double min_pre() const { return pre[dmin.front() - off]; }
};

}  // namespace

const char* interval_stat_mode_name(interval_stat_mode mode) {
    return mode == interval_stat_mode::discrete ? "discrete" : "integral";
}

ShortIntervalStat diff_mean_square_discrete(u64 T, u64 U, const DivisorPrefix& prefix) {
    if (T < 4) throw std::invalid_argument("diff_mean_square_discrete: T >= 4");
    if (U < 1 || static_cast<double>(U) > 0.5 * std::sqrt(static_cast<double>(T)))
        throw std::invalid_argument("diff_mean_square_discrete: 1 <= U <= sqrt(T)/2");
    if (2 * T + U > prefix.limit())
        throw resource_error("diff_mean_square_discrete: prefix table ends before 2T+U");

    long double total = chunked_sum(T, 2 * T + 1, u64(1) << 16, [&](u64 a, u64 b) {
        long double part = 0.0L;
        for (u64 n = a; n < b; ++n) {
            long double diff =
                static_cast<long double>(prefix.sum(n + U) - prefix.sum(n)) -
                (main_sum(static_cast<long double>(n + U)) -
                 main_sum(static_cast<long double>(n)));
            part += diff * diff;
        }
        return part;
    });

    ShortIntervalStat st;
    st.T = static_cast<double>(T);
    st.H = static_cast<double>(T);  // the range [T, 2T] has length T
    st.U = static_cast<double>(U);
    st.mean_square = static_cast<double>(total);
    st.mode = interval_stat_mode::discrete;
    return st;
}

ShortIntervalStat diff_mean_square_integral(double T, double H, double U,
                                            const DivisorPrefix& prefix) {
    if (T < 2 || H < 0 || U <= 0)
        throw std::invalid_argument("diff_mean_square_integral: T >= 2, H >= 0, U > 0");
    ShortIntervalStat st;
    st.T = T;
    st.H = H;
    st.U = U;
    st.mode = interval_stat_mode::integral;
    if (H == 0) return st;
    double Tend = T + H;
    if (std::floor(Tend + U) + 1 > static_cast<double>(prefix.limit()))
        throw resource_error("diff_mean_square_integral: prefix table ends before T+H+U");

    u64 u_lo = static_cast<u64>(std::floor(T));
    u64 u_hi = static_cast<u64>(std::ceil(Tend));
    bool integral_U = U == std::floor(U);

    long double total = chunked_sum(u_lo, u_hi, 8192, [&](u64 a, u64 b) {
        long double part = 0.0L;
        for (u64 m0 = a; m0 < b; ++m0) {
            double plo = std::max(static_cast<double>(m0), T);
            double phi = std::min(static_cast<double>(m0) + 1.0, Tend);
            if (plo >= phi) continue;
            double cut = phi;
            if (!integral_U) {
                double s = std::ceil(static_cast<double>(m0) + U) - U;
                if (s > plo && s < phi) cut = s;
            }
            for (int half = 0; half < 2; ++half) {
                double sa = half == 0 ? plo : cut;
                double sb = half == 0 ? cut : phi;
                if (sa >= sb) continue;
                i64 A = prefix.sum(static_cast<u64>(std::floor(sa + U))) -
                        prefix.sum(m0);
                double mid = 0.5 * (sa + sb), hw = 0.5 * (sb - sa);
                for (int i = 0; i < gl_n; ++i) {
                    double x = mid + hw * gl_x[i];
                    long double g = static_cast<long double>(A) -
                                    (main_sum(static_cast<long double>(x) + U) -
                                     main_sum(static_cast<long double>(x)));
                    part += gl_w[i] * hw * g * g;
                }
            }
        }
        return part;
    });

    st.mean_square = static_cast<double>(total);
    return st;
}

double jutila_rhs(double T, double H, double U, std::span<const u64> d_table) {
    if (T < 2 || H <= 0 || U < 1)
        throw std::invalid_argument("jutila_rhs: T >= 2, H > 0, U >= 1");
    u64 nmax = static_cast<u64>(std::floor(T / (2.0 * U)));
    if (nmax < 1) return 0.0;
    if (d_table.size() < nmax)
        throw std::invalid_argument("jutila_rhs: d_table shorter than T/(2U)");

    std::vector<double> contrib(nmax);
    for_each_chunk(1, nmax + 1, 64, [&](std::size_t, u64 a, u64 b) {
        for (u64 n = a; n < b; ++n) {
            double rn = static_cast<double>(n);
            auto f = [&](double x) {
                double s = std::sin(std::numbers::pi * U * std::sqrt(rn / x));
                return std::sqrt(x) * 4.0 * s * s;
            };
            double I = adaptive_simpson(f, T, T + H, 1e-8);
            double dn = static_cast<double>(d_table[n - 1]);
            contrib[n - 1] = dn * dn * std::pow(rn, -1.5) * I;
        }
    });

    long double acc = 0.0L;  // ascending term magnitude, so descending n
    for (u64 n = nmax; n >= 1; --n) acc += contrib[n - 1];
    return static_cast<double>(acc / (4.0L * std::numbers::pi_v<long double> *
                                      std::numbers::pi_v<long double>));
}

double jutila_rhs(double T, double H, double U) {
    if (T < 2 || H <= 0 || U < 1)
        throw std::invalid_argument("jutila_rhs: T >= 2, H > 0, U >= 1");
    u64 nmax = static_cast<u64>(std::floor(T / (2.0 * U)));
    if (nmax < 1) return 0.0;
    auto d_table = sieve_values(1, nmax + 1, FuncKind{func_tag::dk, 2});
    return jutila_rhs(T, H, U, d_table);
}

double max_window_stat(double T, double H, double U, const DivisorPrefix& prefix) {
    if (T < 2 || H < 0 || U <= 0)
        throw std::invalid_argument("max_window_stat: T >= 2, H >= 0, U > 0");
    if (H == 0) return 0.0;
    double Tend = T + H;
    u64 m_top = static_cast<u64>(std::floor(Tend + U));
    if (m_top + 1 > prefix.limit())
        throw resource_error("max_window_stat: prefix table ends before T+H+U");
    u64 off = static_cast<u64>(std::floor(T));
    if (m_top - off + 1 > (u64(1) << 27))
        throw resource_error("max_window_stat: jump table beyond 2^27 entries");

    std::vector<double> post(m_top - off + 1), pre(m_top - off + 1);
    for (u64 m = off + 1; m <= m_top; ++m) {
        double v = static_cast<double>(static_cast<long double>(prefix.sum(m)) -
                                       main_sum(static_cast<long double>(m)));
        post[m - off] = v;
        pre[m - off] = v - static_cast<double>(prefix.d(m));
    }

    u64 u_lo = off;
    u64 u_hi = static_cast<u64>(std::ceil(Tend));
    bool integral_U = U == std::floor(U);

    long double total = chunked_sum(u_lo, u_hi, 8192, [&](u64 a, u64 b) {
        long double part = 0.0L;
        JumpWindow win(post, pre, off, a + 1);
        for (u64 m0 = a; m0 < b; ++m0) {
            double plo = std::max(static_cast<double>(m0), T);
            double phi = std::min(static_cast<double>(m0) + 1.0, Tend);
            if (plo >= phi) continue;
            win.drop_below(m0 + 1);
            double cut = phi;
            if (!integral_U) {
                double s = std::ceil(static_cast<double>(m0) + U) - U;
                if (s > plo && s < phi) cut = s;
            }
            i64 P0 = prefix.sum(m0);
            for (int half = 0; half < 2; ++half) {
                double sa = half == 0 ? plo : cut;
                double sb = half == 0 ? cut : phi;
                if (sa >= sb) continue;
                u64 q0 = std::min(m_top, static_cast<u64>(std::floor(sa + U)));
                win.extend_to(q0);
                i64 P1 = prefix.sum(q0);
                double mid = 0.5 * (sa + sb), hw = 0.5 * (sb - sa);
                for (int i = 0; i < gl_n; ++i) {
                    double x = mid + hw * gl_x[i];
                    double dx = static_cast<double>(
                        static_cast<long double>(P0) -
                        main_sum(static_cast<long double>(x)));
                    double dxU = static_cast<double>(
                        static_cast<long double>(P1) -
                        main_sum(static_cast<long double>(x) + U));
                    double pos = win.empty() ? 0.0
                                             : std::max(0.0, win.max_post() - dx);
                    double neg = std::min(0.0, dxU - dx);
                    if (!win.empty()) neg = std::min(neg, win.min_pre() - dx);
                    double v = std::max(pos, -neg);
                    part += gl_w[i] * hw * v * v;
                }
            }
        }
        return part;
    });

    return static_cast<double>(total);
}

LargeValueReport detect_large_values(double T, double H, double U, double c_plus,
                                     double c_minus, const DivisorPrefix& prefix) {
    if (T < 2 || H <= 0 || U <= 0)
        throw std::invalid_argument("detect_large_values: T >= 2, H > 0, U > 0");
    if (c_plus <= 0 || c_minus <= 0)
        throw std::invalid_argument("detect_large_values: thresholds > 0");
    double Tend = T + H;
    if (std::floor(Tend) + 1 > static_cast<double>(prefix.limit()))
        throw resource_error("detect_large_values: prefix table ends before T+H");

    LargeValueReport rep;
    rep.T = T;
    rep.H = H;
    rep.U = U;
    rep.c_plus = c_plus;
    rep.c_minus = c_minus;
    double L = std::log(T);
    double loglogT = std::log(L);
    rep.u_in_regime = U >= std::pow(T, 131.0 / 416.0) &&
                      U <= std::sqrt(T) / std::pow(L, 5.0);
    rep.h_in_regime = H >= std::pow(T, 0.25) * U * std::pow(L, 5.0) * loglogT &&
                      H <= T;

    double thr_pos = c_plus * std::pow(T, 0.25);
    double thr_neg = -c_minus * std::pow(T, 0.25);
    double step = U / 4.0;
    u64 ncells = static_cast<u64>(std::ceil(H / step));

    struct Cell {
        bool pos = false, neg = false;
        double wit_pos = 0;  // x with Delta(x) >= threshold
        double wit_neg = 0;  // left endpoint limit with Delta(x-) <= threshold
    };
    std::vector<Cell> cells(ncells);

    auto delta_at = [&](double x) {
        return static_cast<double>(
            static_cast<long double>(prefix.sum(static_cast<u64>(std::floor(x)))) -
            main_sum(static_cast<long double>(x)));
    };
    auto delta_before = [&](double x) {
        u64 n = static_cast<u64>(std::ceil(x)) - 1;  // floor of the open left side
        return static_cast<double>(static_cast<long double>(prefix.sum(n)) -
                                   main_sum(static_cast<long double>(x)));
    };

    for_each_chunk(0, ncells, 256, [&](std::size_t, u64 a, u64 b) {
        for (u64 j = a; j < b; ++j) {
            double ca = T + static_cast<double>(j) * step;
            double cb = std::min(ca + step, Tend);
            if (ca >= cb) continue;
            Cell c;
            double sup = delta_at(ca), wit_sup = ca;
            double inf = 0.0, wit_inf = 0.0;
            bool have_inf = false;
            double e = std::min(std::floor(ca) + 1.0, cb);
            for (;;) {
                double v = delta_before(e);
                if (!have_inf || v < inf) {
                    inf = v;
                    wit_inf = e;
                    have_inf = true;
                }
                if (e >= cb) break;
                double atj = delta_at(e);  // integer point, jump included
                if (atj > sup) {
                    sup = atj;
                    wit_sup = e;
                }
                e = std::min(e + 1.0, cb);
            }
            c.pos = sup >= thr_pos;
            c.wit_pos = wit_sup;
            c.neg = inf <= thr_neg;
            c.wit_neg = wit_inf;
            cells[j] = c;
        }
    });

    auto emit_runs = [&](bool Cell::*flag, double Cell::*witness, double thr,
                         bool below, int sign) {
        u64 count = 0;
        u64 j = 0;
        while (j < ncells) {
            if (!(cells[j].*flag)) {
                ++j;
                continue;
            }
            u64 j0 = j;
            while (j < ncells && cells[j].*flag) ++j;
            double start = T + static_cast<double>(j0) * step;
            double end = std::min(T + static_cast<double>(j) * step, Tend);
            if (end - start >= U - 1e-9 * U) {
                u64 picks[3] = {j0, (j0 + j - 1) / 2, j - 1};
                for (u64 p : picks) {
                    double w = cells[p].*witness;
                    double v = below ? delta_before(w) : delta_at(w);
                    if (below ? v > thr : v < thr)
                        throw std::logic_error("detect_large_values: witness recheck failed");
                }
                ++count;
                rep.interval_list.push_back({start, end, sign});
            }
        }
        return count;
    };
    rep.positive_intervals = emit_runs(&Cell::pos, &Cell::wit_pos, thr_pos, false, 1);
    rep.negative_intervals = emit_runs(&Cell::neg, &Cell::wit_neg, thr_neg, true, -1);
    std::sort(rep.interval_list.begin(), rep.interval_list.end(),
              [](const LargeValueInterval& x, const LargeValueInterval& y) {
                  return x.start < y.start;
              });
    return rep;
}

ShortIntervalCubicFit fit_short_interval_cubic(u64 T, std::span<const u64> Us,
                                               const DivisorPrefix& prefix) {
    if (Us.size() < 4)
        throw conditioning_error("fit_short_interval_cubic: need at least 4 widths");
    ShortIntervalCubicFit out;
    out.T = T;
    std::vector<double> L, y;
    for (u64 U : Us) {
        ShortIntervalStat st = diff_mean_square_discrete(T, U, prefix);
        L.push_back(std::log(std::sqrt(static_cast<double>(T)) /
                             static_cast<double>(U)));
        y.push_back(st.mean_square /
                    (static_cast<double>(T) * static_cast<double>(U)));
        out.stats.push_back(st);
    }
    auto c = detail::fit_polynomial(L, y, 3);
    std::copy(c.begin(), c.end(), out.coeffs.begin());
    for (auto& st : out.stats) st.fitted_cubic = out.coeffs;
    return out;
}

}  // namespace divlab
