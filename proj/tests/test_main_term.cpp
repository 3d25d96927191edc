#include <divlab/main_term.hpp>
#include <divlab/sieve.hpp>

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace divlab;

namespace {

// Regenerates the generalized Euler constants
//   g_j = lim_N ( sum_{n<=N} log^j(n)/n - log^{j+1}(N)/(j+1) )
// without touching the library's frozen table. Each summand is paired with
// the antiderivative increment over [n-1/2, n+1/2]; the paired differences
// are tiny, so the telescoped sum avoids the cancellation that direct
// evaluation hits. One midpoint-rule tail correction f'(N+1/2)/24 closes the
// gap; the result is good to ~1e-14 absolute at N = 1e6.
long double stieltjes_oracle(int j, long double N = 1000000.0L) {
    long double sum = 0.0L, comp = 0.0L;
    for (long double n = 1; n <= N; ++n) {
        long double ln = std::log(n);
        long double f = 1.0L;
        for (int t = 0; t < j; ++t) f *= ln;
        f /= n;
        long double a = std::log(n + 0.5L);
        long double b = std::log(n - 0.5L);
        long double gap = std::log1p(1.0L / (n - 0.5L));  // a - b, full precision
        long double power_sum = 0.0L;                      // sum a^t b^{j-t}
        for (int t = 0; t <= j; ++t) {
            long double term = 1.0L;
            for (int s = 0; s < t; ++s) term *= a;
            for (int s = t; s < j; ++s) term *= b;
            power_sum += term;
        }
        long double y = (f - gap * power_sum / (j + 1)) - comp;
        long double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
    }
    long double l_half = std::log(0.5L);
    long double f_half = 1.0L;
    for (int t = 0; t <= j; ++t) f_half *= l_half;
    f_half /= (j + 1);
    long double np = N + 0.5L, ln = std::log(np);
    long double fprime =
        (j * (j > 0 ? std::pow(ln, (long double)(j - 1)) : 0.0L) -
         std::pow(ln, (long double)j)) /
        (np * np);
    return -f_half + sum + fprime / 24.0L;
}

constexpr double kGamma = 0.57721566490153286060651209008240243104;

}  // namespace

TEST_CASE("frozen Laurent coefficients match an independent limit computation") {
    auto& lc = builtin_laurent();
    REQUIRE(lc.order() >= 6);
    for (int j = 0; j < 6; ++j) {
        long double oracle = stieltjes_oracle(j);
        CHECK(std::fabs((double)(oracle - lc.gamma[j])) < 1e-12);
    }
    CHECK(std::fabs((double)lc.gamma[0] - kGamma) < 1e-17);
}

TEST_CASE("residue polynomial for the plain divisor sum is (2g-1) + log x") {
    auto p = residue_poly(2);
    REQUIRE(p.coeffs.size() == 2);
    CHECK(std::fabs((double)p.coeffs[0] - (2 * kGamma - 1)) < 1e-12);
    CHECK(std::fabs((double)p.coeffs[1] - 1.0) < 1e-15);
}

TEST_CASE("residue polynomial degree and leading coefficient for k up to 6") {
    long double fact = 1.0L;
    for (int k = 1; k <= 6; ++k) {
        auto p = residue_poly(k);
        REQUIRE((int)p.coeffs.size() == k);
        CHECK(std::fabs((double)(p.coeffs.back() * fact - 1.0L)) < 1e-12);
        fact *= k;  // next leading coefficient is 1/k!
    }
}

TEST_CASE("triple divisor sum residue constants agree with the gamma algebra") {
    // For k = 3 the constant term is 3g^2 - 3g_1 - 3g + 1 and the linear one
    // is 3g - 1; both follow from squaring the Laurent series by hand.
    auto& lc = builtin_laurent();
    auto p = residue_poly(3);
    double g = (double)lc.gamma[0], g1 = (double)lc.gamma[1];
    REQUIRE(p.coeffs.size() == 3);
    CHECK(std::fabs((double)p.coeffs[0] - (3 * g * g - 3 * g1 - 3 * g + 1)) < 1e-12);
    CHECK(std::fabs((double)p.coeffs[0] - 0.4863343131695876) < 1e-12);
    CHECK(std::fabs((double)p.coeffs[1] - (3 * g - 1)) < 1e-12);
    CHECK(std::fabs((double)p.coeffs[2] - 0.5) < 1e-15);
}

TEST_CASE("residue_poly validates the available Laurent order") {
    LaurentCoeffs tiny;
    tiny.gamma = {0.5772156649015329L};
    CHECK_NOTHROW(residue_poly(1, tiny));
    CHECK_THROWS_AS(residue_poly(2, tiny), std::invalid_argument);
    CHECK_THROWS_AS(residue_poly(0), std::invalid_argument);
}

TEST_CASE("error term at the left endpoint is 2 - 2g") {
    auto s = delta_k(1.0, 2);
    CHECK(s.exact_sum == 1);
    CHECK(std::fabs(s.delta - (2 - 2 * kGamma)) < 1e-12);
}

TEST_CASE("delta at x = 4 matches the hand-computed value") {
    auto s = delta_k(4.0, 2);
    CHECK(s.exact_sum == 8);
    double main = 4 * (std::log(4.0) + 2 * kGamma - 1);
    CHECK(std::fabs(s.delta - (8 - main)) < 1e-10);
    CHECK(std::fabs(s.delta - 1.8370972363081746) < 1e-10);
    CHECK(std::fabs(s.main + s.delta - (double)s.exact_sum) < 1e-9);
}

TEST_CASE("sum_dk agrees with a materialized sieve pass") {
    for (int k = 2; k <= 4; ++k) {
        auto vals = sieve_values(1, 100001, FuncKind{func_tag::dk, k});
        u64 direct = 0;
        for (u64 v : vals) direct += v;
        CHECK(sum_dk(100000, k) == direct);
    }
    CHECK(sum_dk(100, 2) == 482);
}

TEST_CASE("delta budget guard rejects oversized x") {
    CHECK_THROWS_AS(delta_k(3.5e10, 2), resource_error);
    CHECK_THROWS_AS(delta_k(0.5, 2), std::invalid_argument);
}

TEST_CASE("closed-form log-power integrals match small hand integrals") {
    long double e = std::exp(1.0L);
    // int_1^e t^2 log t dt = (2 e^3 + 1)/9
    CHECK(std::fabs((double)(integral_power_log(2, 1, e) - (2 * e * e * e + 1) / 9)) <
          1e-15);
    // int_1^x dt = x - 1
    CHECK(std::fabs((double)(integral_power_log(0, 0, 7.5L) - 6.5L)) < 1e-15);
    // int_1^e log^2 t dt = e - 2
    CHECK(std::fabs((double)(integral_power_log(0, 2, e) - (e - 2))) < 1e-14);
    CHECK_THROWS_AS(integral_power_log(-1, 0, 2.0L), std::invalid_argument);
}

TEST_CASE("exact and sampled mean squares agree at moderate X") {
    double exact = mean_square_delta(2, 10000.0, integration_mode::exact);
    double sampled = mean_square_delta(2, 10000.0, integration_mode::sampled, 200000);
    CHECK(std::fabs(sampled - exact) / exact < 0.03);
    CHECK(exact > 0);
}

TEST_CASE("mean square checkpoints are increasing and consistent") {
    std::vector<double> Xs = {1000, 3000, 10000, 30000};
    auto vals = mean_square_checkpoints(2, Xs, integration_mode::exact);
    REQUIRE(vals.size() == Xs.size());
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) CHECK(vals[i] < vals[i + 1]);
    CHECK(std::fabs(vals[2] - mean_square_delta(2, 10000.0, integration_mode::exact)) <
          1e-6 * vals[2]);
    std::vector<double> bad = {3000, 1000};
    CHECK_THROWS_AS(mean_square_checkpoints(2, bad, integration_mode::exact),
                    std::invalid_argument);
}

TEST_CASE("exponent table rows carry the proved rational bounds") {
    auto rows = exponent_table();
    REQUIRE(rows.size() == 5);
    for (auto& row : rows) {
        CHECK(row.beta_lower.first * 2 * row.k == (row.k - 1) * row.beta_lower.second);
        CHECK((double)row.beta_lower.first / row.beta_lower.second <=
              (double)row.beta_upper.first / row.beta_upper.second);
    }
    CHECK(rows[0].k == 2);
    REQUIRE(rows[0].alpha_upper.has_value());
    CHECK(rows[0].alpha_upper->first == 131);
    CHECK(rows[0].alpha_upper->second == 416);
}
