#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "divlab/common.hpp"

namespace divlab {

// Laurent data for zeta about s = 1 with the convention
//   zeta(s) = 1/(s-1) + sum_{j>=0} (-1)^j gamma_j (s-1)^j / j!,
// so gamma_0 is Euler's constant. order() = number of gamma_j available.
struct LaurentCoeffs {
    std::vector<long double> gamma;
    std::size_t order() const { return gamma.size(); }
};

// gamma_0..gamma_5, frozen to 30 digits; enough for residue_poly up to k = 6.
// Tests regenerate each value independently to >= 12 digits.
const LaurentCoeffs& builtin_laurent();

// p_{k-1}: coeffs[j] multiplies (log x)^j; degree exactly k-1,
// leading coefficient 1/(k-1)!.
struct MainTermPoly {
    int k = 1;
    std::vector<long double> coeffs;
    long double eval(long double log_x) const {
        long double v = 0.0L;
        for (std::size_t j = coeffs.size(); j-- > 0;) v = v * log_x + coeffs[j];
        return v;
    }
};

// One point evaluation of the error term: delta = exact_sum - x*p_{k-1}(log x).
struct ErrorSample {
    double x = 1;
    u64 exact_sum = 0;
    double main = 0;
    double delta = 0;
};

// Mean-square rows beta_k: proved lower (k-1)/(2k) and best known upper
// bounds as exact rationals. alpha_upper (pointwise exponent) is recorded
// only where the source states one (k = 2: 131/416).
struct ExponentRow {
    int k;
    std::pair<int, int> beta_lower;
    std::pair<int, int> beta_upper;
    std::optional<std::pair<int, int>> alpha_upper;
};

std::vector<ExponentRow> exponent_table();  // k = 2..6

// Residue at s = 1 of zeta^k(s) x^{s-1} / s as a polynomial in log x.
// Requires laurent.order() >= k; throws std::invalid_argument naming the
// required order otherwise.
MainTermPoly residue_poly(int k, const LaurentCoeffs& laurent = builtin_laurent());

// x * p_{k-1}(log x) in extended precision.
long double main_term_value(const MainTermPoly& poly, long double x);

// Sum_{n <= limit} d_k(n), one parallel streaming pass.
u64 sum_dk(u64 limit, int k);

// Assembles an ErrorSample from a precomputed exact sum.
ErrorSample delta_sample(double x, const MainTermPoly& poly, u64 exact_sum);

// Convenience: sieves the sum internally. Guarded at x <= 2^34 so a typo
// cannot launch an hours-long pass; throws resource_error beyond.
ErrorSample delta_k(double x, int k);

enum class integration_mode { exact, sampled };

// int_1^X Delta_k^2(x) dx. `exact` integrates each unit interval with the
// closed-form antiderivatives of x^a log^j x; `sampled` uses midpoint
// sampling with `samples` points (the fallback for X beyond the exact
// budget of 2^31).
double mean_square_delta(int k, double X, integration_mode mode,
                         u64 samples = 100000);

// Same pass, values of the integral at each checkpoint (ascending, all
// within budget). Used for slope fits over X.
std::vector<double> mean_square_checkpoints(int k, const std::vector<double>& Xs,
                                            integration_mode mode,
                                            u64 samples = 100000);

// int_1^x t^a (log t)^j dt, exact closed form (a >= 0, j >= 0).
long double integral_power_log(int a, int j, long double x);

}  // namespace divlab
