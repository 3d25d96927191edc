// Acceptance battery. With no arguments it runs all eleven criteria and prints
// one line per criterion; with --criterion N it runs a single one (ctest uses
// this so each criterion gets its own timeout). Exit 0 only when every
// executed criterion passes.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "divlab/iterate.hpp"
#include "divlab/main_term.hpp"
#include "divlab/parallel.hpp"
#include "divlab/prefix.hpp"
#include "divlab/shifted.hpp"
#include "divlab/short_interval.hpp"
#include "divlab/sieve.hpp"
#include "divlab/voronoi.hpp"

namespace {

using namespace divlab;

constexpr double kGamma = 0.57721566490153286060651209008240243104;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

Outcome criterion1() {
    std::atomic<u64> bad{0};
    for (int k = 2; k <= 6; ++k) {
        auto vals = sieve_values(1, 1000001, FuncKind{func_tag::dk, k});
        for_each_chunk(1, 1000001, u64(1) << 14, [&](std::size_t, u64 lo, u64 up) {
            u64 local = 0;
            for (u64 n = lo; n < up; ++n)
                if (dk_of_factorization(factorize(n), k) != vals[n - 1]) ++local;
            bad += local;
        });
    }
    auto b = static_cast<unsigned long long>(bad.load());
    return {b == 0, strf("mismatches=%llu over n <= 1e6, k = 2..6", b)};
}

Outcome criterion2() {
    std::mt19937_64 rng(2);
    unsigned long long bad = 0;
    for (int i = 0; i < 50; ++i) {
        u64 x = 1 + bounded_rand(rng(), u64(1e7));
        if (static_cast<u64>(sum_range(1, x + 1, FuncKind{})) != divisor_sum_hyperbola(x))
            ++bad;
    }
    return {bad == 0, strf("mismatches=%llu over 50 random x <= 1e7", bad)};
}

Outcome criterion3() {
    auto p2 = residue_poly(2);
    double worst = std::fabs(static_cast<double>(p2.coeffs[0]) - (2 * kGamma - 1));
    worst = std::max(worst, std::fabs(static_cast<double>(p2.coeffs[1]) - 1.0));
    double fact = 1;  // holds (k-1)! entering each iteration
    for (int k = 1; k <= 6; ++k) {
        auto p = residue_poly(k);
        worst = std::max(
            worst, std::fabs(static_cast<double>(p.coeffs.back()) * fact - 1.0));
        fact *= k;
    }
    return {worst < 1e-12,
            strf("k=2 coefficients (2g-1, 1), leading 1/(k-1)! for k <= 6, "
                 "worst deviation=%.2e",
                 worst)};
}

Outcome criterion4() {
    std::vector<double> Xs{1e4, 1e5, 1e6, 1e7};
    auto ints = mean_square_checkpoints(2, Xs, integration_mode::exact);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < Xs.size(); ++i) {
        lx.push_back(std::log(Xs[i]));
        ly.push_back(std::log(ints[i]));
    }
    double s = fit_slope(lx, ly);
    return {s >= 1.4 && s <= 1.6, strf("slope=%.4f band=[1.40, 1.60]", s)};
}

Outcome criterion5() {
    auto tab = sieve_values(1, 16001, FuncKind{});
    DivisorPrefix pre(200001);
    std::vector<double> lN, lerr, errs;
    for (u64 N : {1000, 4000, 16000}) {
        auto grid = voronoi_grid(1e5, 2e5, 100, N, tab, pre);
        double maxerr = 0;
        for (const auto& g : grid) maxerr = std::max(maxerr, g.abs_err);
        lN.push_back(std::log(static_cast<double>(N)));
        lerr.push_back(std::log(maxerr));
        errs.push_back(maxerr);
    }
    double s = fit_slope(lN, lerr);
    double leg12 = (lerr[1] - lerr[0]) / (lN[1] - lN[0]);
    double leg23 = (lerr[2] - lerr[1]) / (lN[2] - lN[1]);
    return {s <= -0.3,
            strf("slope=%.4f need <= -0.30 (legs %.3f, %.3f; max errors "
                 "%.3f / %.3f / %.3f)",
                 s, leg12, leg23, errs[0], errs[1], errs[2])};
}

Outcome criterion6() {
    DivisorPrefix pre(u64(2e7) + 600);
    std::vector<u64> Us{32, 64, 128, 256, 512};
    auto fit = fit_short_interval_cubic(u64(1e7), Us, pre);
    double target = 8.0 / (M_PI * M_PI);
    double c3 = fit.c3();
    double rel = std::fabs(c3 - target) / target;
    return {rel <= 0.25,
            strf("c3=%.4f target=%.4f relative deviation=%.1f%% (need <= 25%%)",
                 c3, target, 100 * rel)};
}

Outcome criterion7() {
    DivisorPrefix pre(u64(2e6) + 200);
    double lhs = diff_mean_square_integral(1e6, 1e6, 100, pre).mean_square;
    double rhs = jutila_rhs(1e6, 1e6, 100);
    double gap = std::fabs(lhs - rhs);
    double allow = 10.0 * 1e6 * std::log(1e6);
    return {gap <= allow,
            strf("lhs=%.6e rhs=%.6e gap=%.3e allowance=%.3e", lhs, rhs, gap, allow)};
}

Outcome criterion8() {
    unsigned long long bad = 0;
    for (int k = 1; k <= 10000; ++k) {
        auto dd = divisor_count_factors(ramanujan_number(k).d_factors);
        if (dd.size() != 1 || dd[0].first != 2 || dd[0].second != static_cast<u32>(k))
            ++bad;
    }
    return {bad == 0, strf("mismatches=%llu for k <= 1e4", bad)};
}

Outcome criterion9() {
    std::vector<u64> cps;
    for (int j = 7; j >= 0; --j) cps.push_back(u64(1e7) >> j);
    auto full = fit_ingham(2, 1, cps, range_mode::upto_n);
    double cmin = 1e300, cmax = -1e300;
    for (std::size_t start = 0; start + 5 <= cps.size(); ++start) {
        std::span<const ShiftedSumRecord> win(full.records.data() + start,
                                              full.records.size() - start);
        double c1 = fit_log_poly(2, 1, win).c1();
        cmin = std::min(cmin, c1);
        cmax = std::max(cmax, c1);
    }
    double spread = (cmax - cmin) / (0.5 * (cmax + cmin));
    const auto& first = full.records.front();
    const auto& last = full.records.back();
    double rel_first = std::fabs(first.residual) / static_cast<double>(first.N);
    double rel_last = std::fabs(last.residual) / static_cast<double>(last.N);
    bool ok = spread < 0.05 && rel_last < rel_first;
    return {ok,
            strf("c1 window spread=%.3f%% (need < 5%%), relative residual "
                 "%.3e -> %.3e (must shrink)",
                 100 * spread, rel_first, rel_last)};
}

Outcome criterion10() {
    DivisorPrefix pre(u64(1e6) + u64(1e5) + 2000);
    auto det = detect_large_values(1e6, 1e5, 1e3, 0.5, 0.5, pre);
    auto p = static_cast<unsigned long long>(det.positive_intervals);
    auto n = static_cast<unsigned long long>(det.negative_intervals);
    return {p >= 1 && n >= 1, strf("positive=%llu negative=%llu (need >= 1 each)", p, n)};
}

Outcome criterion11() {
    const std::vector<std::vector<const char*>> cmds = {
        {"sieve", "--lo", "1", "--hi", "5000", "--kind", "dk:3"},
        {"delta", "--x", "100000", "--k", "3"},
        {"delta-meansq", "--X", "20000", "--k", "2", "--mode", "exact"},
        {"voronoi", "--grid", "12", "--xmin", "10000", "--xmax", "12000", "--N", "400"},
        {"shifted", "--k", "2", "--f", "7", "--N", "50000"},
        {"shifted-fit", "--k", "2", "--f", "1", "--checkpoints", "1000", "10000",
         "100000", "1000000"},
        {"avg-delta3", "--N", "10000", "--H", "50"},
        {"shortint", "--T", "100000", "--H", "100000", "--U", "50", "--stat",
         "integral"},
        {"iterate", "--n", "907200", "--k", "3"},
        {"records", "--k", "2", "--xmax", "100000"},
        {"sumiter", "--k", "2", "--x", "100000"},
        {"ivic", "--x", "100000"},
        {"erdos-short", "--window", "100000000", "--samples", "100", "--regime",
         "super", "--seed", "5"},
        {"dkplus", "--k", "3", "--x", "100000"},
        {"verify", "--profile", "quick"},
    };
    const std::string path = "tmp_accept_" + std::to_string(::getpid()) + ".out";
    const char* tflags[] = {"1", "4", "8"};
    unsigned long long mismatches = 0, failures = 0;
    for (const auto& base : cmds) {
        std::string ref;
        for (int ti = 0; ti < 3; ++ti) {
            std::vector<const char*> argv{"divlab"};
            argv.insert(argv.end(), base.begin(), base.end());
            argv.push_back("--threads");
            argv.push_back(tflags[ti]);
            argv.push_back("--out");
            argv.push_back(path.c_str());
            int rc = divlab::tools::run(static_cast<int>(argv.size()), argv.data());
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            std::string body = ss.str();
            std::filesystem::remove(path);
            if (rc != 0 || body.empty()) {
                std::fprintf(stderr, "criterion 11: '%s --threads %s' rc=%d bytes=%zu\n",
                             base[0], tflags[ti], rc, body.size());
                ++failures;
            }
            if (ti == 0)
                ref = std::move(body);
            else if (body != ref)
                ++mismatches;
        }
    }
    set_max_threads(0);
    return {mismatches == 0 && failures == 0,
            strf("commands=%zu threads={1,4,8} mismatching reruns=%llu "
                 "failed runs=%llu",
                 cmds.size(), mismatches, failures)};
}

struct Entry {
    const char* what;
    Outcome (*fn)();
};

const Entry kCriteria[] = {
    {"sieved d_k equals the factorization formula", criterion1},
    {"divisor sum equals the hyperbola count", criterion2},
    {"main-term residue polynomial coefficients", criterion3},
    {"growth exponent of the squared error-term integral", criterion4},
    {"truncation error decay of the oscillating-series approximation", criterion5},
    {"short-interval cubic leading coefficient near 8/pi^2", criterion6},
    {"integral short-interval mean square vs closed-form right side", criterion7},
    {"iterated divisor count of the structured numbers is 2^k", criterion8},
    {"correlation-fit leading coefficient stability", criterion9},
    {"detection of large positive and negative windows", criterion10},
    {"reports byte-identical across --threads 1/4/8", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::string(argv[1]) == "--criterion") {
        only = std::atoi(argv[2]);
        if (only < 1 || only > 11) {
            std::fprintf(stderr, "usage: acceptance [--criterion 1..11]\n");
            return 2;
        }
    } else if (argc != 1) {
        std::fprintf(stderr, "usage: acceptance [--criterion 1..11]\n");
        return 2;
    }
    bool all = true;
    for (int i = 1; i <= 11; ++i) {
        if (only != 0 && i != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = kCriteria[i - 1].fn();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("criterion %2d: %s: %s -> %s (%.1fs)\n", i, kCriteria[i - 1].what,
                    o.detail.c_str(), o.pass ? "PASS" : "FAIL", secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
