#include "divlab/main_term.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "divlab/sieve.hpp"

namespace divlab {

namespace {

// Truncated power-series product c = a*b, all of fixed length `len`.
std::vector<long double> series_mul(const std::vector<long double>& a,
                                    const std::vector<long double>& b,
                                    std::size_t len) {
    std::vector<long double> c(len, 0.0L);
    for (std::size_t i = 0; i < len; ++i) {
        if (a[i] == 0.0L) continue;
        for (std::size_t j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

long double factorial_ld(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

const LaurentCoeffs& builtin_laurent() {
    static const LaurentCoeffs lc{{
        0.577215664901532860606512090082L,    // gamma_0
        -0.0728158454836767248605863758749L,  // gamma_1
        -0.00969036319287231848453038603521L, // gamma_2
        0.00205383442030334586616004654275L,  // gamma_3
        0.00232537006546730005746817017753L,  // gamma_4
        0.000793323817301062701753334877444L, // gamma_5
    }};
    return lc;
}

std::vector<ExponentRow> exponent_table() {
    return {
        {2, {1, 4}, {1, 4}, std::make_pair(131, 416)},
        {3, {1, 3}, {1, 3}, std::nullopt},
        {4, {3, 8}, {3, 8}, std::nullopt},
        {5, {2, 5}, {9, 20}, std::nullopt},
        {6, {5, 12}, {1, 2}, std::nullopt},
    };
}

MainTermPoly residue_poly(int k, const LaurentCoeffs& laurent) {
    if (k < 1) throw std::invalid_argument("residue_poly: k >= 1");
    if (laurent.order() < static_cast<std::size_t>(k))
        throw std::invalid_argument("residue_poly: requires Laurent order >= " +
                                    std::to_string(k) + ", have " +
                                    std::to_string(laurent.order()));
    const std::size_t len = static_cast<std::size_t>(k);

    // zeta(s) = A(w)/w with w = s-1 and A(w) = 1 + sum_j (-1)^j gamma_j w^{j+1}/j!.
    // The residue of zeta^k x^w / s is the w^{k-1} coefficient of
    // A(w)^k e^{w log x} / (1+w), a polynomial in log x.
    std::vector<long double> a(len, 0.0L);
    a[0] = 1.0L;
    for (std::size_t j = 0; j + 1 < len; ++j) {
        long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
        a[j + 1] = sign * laurent.gamma[j] / factorial_ld(static_cast<int>(j));
    }

    std::vector<long double> ak(len, 0.0L);
    ak[0] = 1.0L;
    for (int i = 0; i < k; ++i) ak = series_mul(ak, a, len);

    // Divide by (1+w): geometric series, b_m = sum_{i<=m} (-1)^{m-i} ak_i.
    std::vector<long double> b(len, 0.0L);
    for (std::size_t m = 0; m < len; ++m) {
        long double s = 0.0L;
        for (std::size_t i = 0; i <= m; ++i) {
            long double sign = ((m - i) % 2 == 0) ? 1.0L : -1.0L;
            s += sign * ak[i];
        }
        b[m] = s;
    }

    MainTermPoly poly;
    poly.k = k;
    poly.coeffs.assign(len, 0.0L);
    // w^{k-1} coefficient of B(w) e^{wL}: sum_m b_m L^{k-1-m}/(k-1-m)!.
    for (std::size_t m = 0; m < len; ++m) {
        std::size_t j = len - 1 - m;  // power of log x
        poly.coeffs[j] = b[m] / factorial_ld(static_cast<int>(j));
    }
    return poly;
}

long double main_term_value(const MainTermPoly& poly, long double x) {
    return x * poly.eval(std::log(x));
}

u64 sum_dk(u64 limit, int k) {
    if (limit == 0) return 0;
    FuncKind kind{func_tag::dk, k};
    return narrow_u128(sum_range(1, limit + 1, kind), "sum_dk");
}

ErrorSample delta_sample(double x, const MainTermPoly& poly, u64 exact_sum) {
    if (x < 1) throw std::invalid_argument("delta_sample: x >= 1");
    ErrorSample s;
    s.x = x;
    s.exact_sum = exact_sum;
    long double main = main_term_value(poly, static_cast<long double>(x));
    s.main = static_cast<double>(main);
    s.delta = static_cast<double>(static_cast<long double>(exact_sum) - main);
    return s;
}

ErrorSample delta_k(double x, int k) {
    if (x < 1) throw std::invalid_argument("delta_k: x >= 1");
    if (x > 17179869184.0)  // 2^34
        throw resource_error("delta_k: x beyond sieve budget 2^34");
    MainTermPoly poly = residue_poly(k);
    u64 sum = sum_dk(static_cast<u64>(x), k);
    return delta_sample(x, poly, sum);
}

long double integral_power_log(int a, int j, long double x) {
    if (a < 0 || j < 0) throw std::invalid_argument("integral_power_log: a, j >= 0");
    // Antiderivative F(t) = t^{a+1} sum_{i=0}^{j} (-1)^{j-i} (j!/i!) log^i t /(a+1)^{j-i+1}.
    const long double ap1 = a + 1;
    auto F = [&](long double t, long double log_t) {
        long double term = 1.0L / ap1;  // i = j term coefficient j!/j! /(a+1)
        long double s = 0.0L;
        // walk i = j down to 0, accumulating (j!/i!)/(a+1)^{j-i+1}
        std::vector<long double> coef(static_cast<std::size_t>(j) + 1);
        for (int i = j; i >= 0; --i) {
            coef[static_cast<std::size_t>(i)] = term;
            term *= static_cast<long double>(i) / ap1;
        }
        long double lp = 1.0L;
        for (int i = 0; i <= j; ++i) {
            long double sign = ((j - i) % 2 == 0) ? 1.0L : -1.0L;
            s += sign * coef[static_cast<std::size_t>(i)] * lp;
            lp *= log_t;
        }
        return std::pow(t, ap1) * s;
    };
    return F(x, std::log(x)) - F(1.0L, 0.0L);
}

namespace {

// Closed-form integration of (S - x p(log x))^2 over pieces where the
// summatory value S is constant. Antiderivatives collapse to
//   G1(x) = int x p(log x) dx   = x^2 * Phi1(log x) + C,
//   G2(x) = int x^2 p(log x)^2 dx = x^3 * Phi2(log x) + C,
// with Phi1, Phi2 fixed polynomials precombined from the main-term
// coefficients, so each endpoint costs one log and two Horner passes.
struct PiecewiseIntegrator {
    std::vector<long double> phi1, phi2;

    explicit PiecewiseIntegrator(const MainTermPoly& poly) {
        const std::size_t k = poly.coeffs.size();
        std::vector<long double> sq(2 * k - 1, 0.0L);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sq[i + j] += poly.coeffs[i] * poly.coeffs[j];
        phi1 = combine(poly.coeffs, 1);
        phi2 = combine(sq, 2);
    }

    // int x^a log^j x dx = x^{a+1} sum_{i<=j} (-1)^{j-i} (j!/i!) (a+1)^{i-j-1} log^i x.
    static std::vector<long double> combine(const std::vector<long double>& c, int a) {
        std::vector<long double> phi(c.size(), 0.0L);
        const long double ap1 = a + 1;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0.0L) continue;
            long double w = 1.0L / ap1;  // (j!/i!)/(a+1)^{j-i+1} at i = j
            for (std::size_t i = j + 1; i-- > 0;) {
                long double sign = ((j - i) % 2 == 0) ? 1.0L : -1.0L;
                phi[i] += sign * c[j] * w;
                w *= static_cast<long double>(i) / ap1;
            }
        }
        return phi;
    }

    static long double horner(const std::vector<long double>& c, long double z) {
        long double v = 0.0L;
        for (std::size_t j = c.size(); j-- > 0;) v = v * z + c[j];
        return v;
    }

    struct Endpoint {
        long double x, g1, g2;
    };

    Endpoint at(long double x) const {
        long double lx = std::log(x);
        long double x2 = x * x;
        return {x, x2 * horner(phi1, lx), x2 * x * horner(phi2, lx)};
    }

    static long double piece(long double S, const Endpoint& e0, const Endpoint& e1) {
        return S * S * (e1.x - e0.x) - 2.0L * S * (e1.g1 - e0.g1) + (e1.g2 - e0.g2);
    }
};

}  // namespace

std::vector<double> mean_square_checkpoints(int k, const std::vector<double>& Xs,
                                            integration_mode mode, u64 samples) {
    if (Xs.empty()) return {};
    for (std::size_t i = 0; i < Xs.size(); ++i) {
        if (Xs[i] < 1) throw std::invalid_argument("mean_square: X >= 1");
        if (i && Xs[i] <= Xs[i - 1])
            throw std::invalid_argument("mean_square: checkpoints strictly ascending");
    }
    const double Xmax = Xs.back();
    MainTermPoly poly = residue_poly(k);

    if (mode == integration_mode::exact) {
        if (Xmax > 2147483648.0)  // 2^31
            throw resource_error("mean_square exact mode capped at X <= 2^31; use sampled");
        PiecewiseIntegrator integ(poly);
        std::vector<double> out(Xs.size(), 0.0);
        const u64 nmax = static_cast<u64>(Xmax);

        long double acc = 0.0L;  // integral over [1, current piece start]
        u64 S = 0;
        std::size_t ci = 0;
        PiecewiseIntegrator::Endpoint prev = integ.at(1.0L);

        for_each_block(1, nmax + 1, FuncKind{func_tag::dk, k}, default_block_size,
            [&](const DivisorBlock& blk) {
                for (u64 n = blk.lo; n < blk.hi; ++n) {
                    S += blk.values[n - blk.lo];
                    // S now covers [n, n+1); flush checkpoints landing in it
                    const u64 n_next = n + 1;
                    while (ci < Xs.size() && Xs[ci] < static_cast<double>(n_next)) {
                        auto ec = integ.at(static_cast<long double>(Xs[ci]));
                        out[ci] = static_cast<double>(
                            acc + PiecewiseIntegrator::piece(static_cast<long double>(S), prev, ec));
                        ++ci;
                    }
                    if (static_cast<double>(n_next) > Xmax) break;
                    auto next = integ.at(static_cast<long double>(n_next));
                    acc += PiecewiseIntegrator::piece(static_cast<long double>(S), prev, next);
                    prev = next;
                }
            });
        return out;
    }

    // Sampled: midpoint rule with `samples` points over [1, Xmax], checkpoint
    // values by partial sums at the nearest sample boundary.
    if (samples < 100) throw std::invalid_argument("mean_square sampled: samples >= 100");
    const long double h = (static_cast<long double>(Xmax) - 1.0L) / samples;
    std::vector<double> out(Xs.size(), 0.0);
    std::size_t ci = 0;
    long double acc = 0.0L;
    u64 S = 0;
    u64 next_n = 1;  // next integer whose d_k must be added to S
    const u64 nmax = static_cast<u64>(Xmax);

    std::vector<u64> targets(samples);
    for (u64 i = 0; i < samples; ++i) {
        long double x = 1.0L + (i + 0.5L) * h;
        targets[i] = static_cast<u64>(x);
    }

    u64 i = 0;
    for_each_block(1, nmax + 1, FuncKind{func_tag::dk, k}, default_block_size,
        [&](const DivisorBlock& blk) {
            while (i < samples && targets[i] < blk.hi) {
                while (next_n <= targets[i]) {
                    S += blk.values[next_n - blk.lo];
                    ++next_n;
                }
                long double x = 1.0L + (i + 0.5L) * h;
                while (ci < Xs.size() && x >= static_cast<long double>(Xs[ci])) {
                    out[ci] = static_cast<double>(acc);
                    ++ci;
                }
                long double d = static_cast<long double>(S) - main_term_value(poly, x);
                acc += d * d * h;
                ++i;
            }
            // advance S through the rest of the block so the next block starts clean
            while (next_n < blk.hi) {
                S += blk.values[next_n - blk.lo];
                ++next_n;
            }
        });
    while (ci < Xs.size()) out[ci++] = static_cast<double>(acc);
    return out;
}

double mean_square_delta(int k, double X, integration_mode mode, u64 samples) {
    return mean_square_checkpoints(k, {X}, mode, samples).front();
}

}  // namespace divlab
