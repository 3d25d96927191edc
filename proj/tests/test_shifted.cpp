#include <divlab/shifted.hpp>
#include <divlab/sieve.hpp>

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace divlab;

namespace {

u64 sigma_of(u64 n) {
    u64 s = 0;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

u64 totient(u64 n) {
    u64 t = 0;
    for (u64 a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++t;
    return t;
}

i64 mobius(u64 n) {
    auto f = factorize(n);
    for (auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

}  // namespace

TEST_CASE("correlation sums match brute force over d_k tables") {
    for (int k : {2, 3}) {
        for (u64 f : {1ull, 2ull, 7ull}) {
            for (u64 N : {1ull, 10ull, 100ull, 1000ull}) {
                auto vals = sieve_values(1, 2 * N + f + 1, FuncKind{func_tag::dk, k});
                u64 upto = 0;
                for (u64 n = 1; n <= N; ++n) upto += vals[n - 1] * vals[n + f - 1];
                CHECK(shifted_sum(k, N, f, range_mode::upto_n) == upto);
                u64 dyadic = 0;
                for (u64 n = N + 1; n <= 2 * N; ++n) dyadic += vals[n - 1] * vals[n + f - 1];
                CHECK(shifted_sum(k, N, f, range_mode::dyadic) == dyadic);
            }
        }
    }
    CHECK(shifted_sum(2, 4, 1) == 18);
    CHECK(shifted_sum(2, 1, 1) == 2);
}

TEST_CASE("checkpoint sums agree with one-shot sums in both modes") {
    std::vector<u64> Ns = {50, 200, 1000, 5000};
    for (auto mode : {range_mode::upto_n, range_mode::dyadic}) {
        auto recs = shifted_checkpoints(2, 3, Ns, mode);
        REQUIRE(recs.size() == Ns.size());
        for (std::size_t i = 0; i < Ns.size(); ++i) {
            CHECK(recs[i].N == Ns[i]);
            CHECK(recs[i].mode == mode);
            CHECK(recs[i].sum == shifted_sum(2, Ns[i], 3, mode));
        }
    }
}

TEST_CASE("multi-shift pass equals per-shift sums") {
    auto sums = shifted_sums_multi_f(3, 500, 12, range_mode::upto_n);
    REQUIRE(sums.size() == 12);
    for (u64 f = 1; f <= 12; ++f) CHECK(sums[f - 1] == shifted_sum(3, 500, f));
}

TEST_CASE("shifted sum argument validation") {
    CHECK_THROWS_AS(shifted_sum(1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(shifted_sum(7, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(shifted_sum(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(shifted_sum(2, 10, 0), std::invalid_argument);
}

TEST_CASE("ramanujan sums are multiplicative in q for coprime moduli") {
    for (u64 q1 = 1; q1 <= 20; ++q1)
        for (u64 q2 = 1; q2 <= 20; ++q2) {
            if (std::gcd(q1, q2) != 1) continue;
            for (u64 h = 1; h <= 30; ++h)
                CHECK(ramanujan_sum(q1 * q2, h) ==
                      ramanujan_sum(q1, h) * ramanujan_sum(q2, h));
        }
}

TEST_CASE("ramanujan sums: periodicity, bounds and special arguments") {
    for (u64 q = 1; q <= 50; ++q) {
        for (u64 h = 1; h <= 200; ++h) {
            i64 c = ramanujan_sum(q, h);
            CHECK(c == ramanujan_sum(q, h % q == 0 ? q : h % q));
            CHECK((u64)std::llabs(c) <= sigma_of(std::gcd(h, q)));
        }
        CHECK(ramanujan_sum(q, q) == (i64)totient(q));     // h = 0 mod q
        CHECK(ramanujan_sum(q, 0) == (i64)totient(q));     // gcd(0, q) = q
        CHECK(ramanujan_sum(1, q) == 1);
        CHECK(ramanujan_sum(q, 1) == mobius(q));
    }
    CHECK(ramanujan_sum(12, 8) == -2);
    CHECK_THROWS_AS(ramanujan_sum(0, 3), std::invalid_argument);
}

TEST_CASE("log-polynomial fit rejects degenerate checkpoint sets") {
    std::vector<u64> few = {100, 1000, 10000};  // needs 2k-1 = 3 for k = 2: ok
    CHECK_NOTHROW(fit_ingham(2, 1, few));
    std::vector<u64> short_set = {100, 1000};
    CHECK_THROWS_AS(fit_ingham(2, 1, short_set), conditioning_error);
    std::vector<u64> clustered = {1000, 1100, 1200, 1300, 1400};
    CHECK_THROWS_AS(fit_ingham(2, 1, clustered), conditioning_error);
    std::vector<u64> unordered = {1000, 100, 10000};
    CHECK_THROWS_AS(fit_ingham(2, 1, unordered), std::invalid_argument);
}

TEST_CASE("leading fit coefficient tracks the divisor-sum constant per shift") {
    // The N log^2 N coefficient should land near (6/pi^2) sigma_{-1}(f);
    // measured within 0.6% for every f here at these checkpoint scales.
    std::vector<u64> cps = {10000, 100000, 1000000};
    for (u64 f = 1; f <= 8; ++f) {
        auto an = fit_ingham(2, f, cps);
        double expect = 0;
        for (u64 d = 1; d <= f; ++d)
            if (f % d == 0) expect += 1.0 / (double)d;
        expect *= 6.0 / (M_PI * M_PI);
        CHECK(an.fit.c1() > 0);
        CHECK(std::fabs(an.fit.c1() - expect) / expect < 0.05);
        CHECK(an.fit.max_rel_residual < 1e-9);
        for (auto& rec : an.records)
            CHECK(std::fabs(rec.residual) <=
                  1e-9 * std::max(1.0, (double)rec.sum));
    }
}

TEST_CASE("named cubic accessors only exist for the pair correlation") {
    std::vector<u64> cps = {100, 1000, 10000, 100000, 1000000};
    auto an = fit_ingham(3, 2, cps);
    REQUIRE(an.fit.coeffs.size() == 5);  // degree 2k-2 = 4
    CHECK_THROWS_AS(an.fit.c1(), std::logic_error);
    auto pair = fit_ingham(2, 2, {cps.begin() + 2, cps.end()});
    CHECK_NOTHROW(pair.fit.c1());
    CHECK(pair.fit.leading() == pair.fit.coeffs.back());
}

TEST_CASE("shift-averaged triple correlation residual stays in its band") {
    auto r = averaged_delta3(10000, 50);
    CHECK(r.N == 10000);
    CHECK(r.H == 50);
    CHECK(r.within_band);
    double band = 5 * (std::pow(50.0, 2) + std::pow(10000.0, 4.0 / 3)) *
                  std::pow(10000.0, 0.05);
    CHECK(std::fabs(r.band - band) / band < 1e-12);
    CHECK(std::fabs(r.sum_residuals) < r.band);
}

TEST_CASE("singular series recovers classical constants") {
    auto one = [](double, u64) { return 1.0; };
    auto s = singular_series(100.0, 1, one);
    CHECK(s.q_max == 10000);
    // sum mu(q)/q^2 = 6/pi^2
    CHECK(std::fabs(s.value - 6.0 / (M_PI * M_PI)) <= s.tail_bound);
    CHECK(s.tail_bound < 2e-4);

    // Q = 1/q turns the sum into sum mu(q)/q^4 = 90/pi^4.
    auto inv_q = [](double, u64 q) { return 1.0 / (double)q; };
    auto s4 = singular_series(100.0, 1, inv_q);
    CHECK(std::fabs(s4.value - 90.0 / std::pow(M_PI, 4)) < 1e-6);

    // sum c_q(6)/q^2 = (sigma(6)/6) * 6/pi^2 = 12/pi^2.
    auto s6 = singular_series(100.0, 6, one);
    CHECK(std::fabs(s6.value - 12.0 / (M_PI * M_PI)) <= s6.tail_bound);

    auto s0 = singular_series(100.0, 0, one);
    CHECK(std::isinf(s0.tail_bound));
}

TEST_CASE("singular series argument validation") {
    auto one = [](double, u64) { return 1.0; };
    CHECK_THROWS_AS(singular_series(100.0, 1, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(singular_series(100.0, 1, nullptr), std::invalid_argument);
}
