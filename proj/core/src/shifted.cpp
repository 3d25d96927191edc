#include "divlab/shifted.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "divlab/parallel.hpp"
#include "divlab/sieve.hpp"
#include "fit_internal.hpp"

namespace divlab {

namespace {

void check_kf(int k, u64 N, u64 f) {
    if (k < 2 || k > 6) throw std::invalid_argument("shifted_sum: k in {2,...,6}");
    if (N < 1) throw std::invalid_argument("shifted_sum: N >= 1");
    if (f < 1) throw std::invalid_argument("shifted_sum: f >= 1");
}

// d_k(n) for n in [lo, hi), narrowed to 32 bits.
std::vector<u32> dk_values(u64 lo, u64 hi, int k) {
    std::vector<u32> out(hi - lo);
    for_each_block(lo, hi, FuncKind{func_tag::dk, k}, default_block_size,
                   [&](const DivisorBlock& blk) {
                       for (u64 n = blk.lo; n < blk.hi; ++n) {
                           u64 v = blk.values[n - blk.lo];
                           if (v > std::numeric_limits<u32>::max())
                               throw std::overflow_error(
                                   "shifted sum: d_k value exceeds 32 bits");
                           out[n - lo] = static_cast<u32>(v);
                       }
                   });
    return out;
}

struct SumRange {
    u64 first, last;  // sum over n in [first, last]
};

SumRange sum_range_for(u64 N, range_mode mode) {
    if (mode == range_mode::upto_n) return {1, N};
    return {N + 1, 2 * N};
}

u64 correlation_from(const std::vector<u32>& vals, u64 vals_lo, u64 first, u64 last,
                     u64 f) {
    u128 acc = 0;
    for (u64 n = first; n <= last; ++n)
        acc += static_cast<u64>(vals[n - vals_lo]) *
               static_cast<u64>(vals[n + f - vals_lo]);
    return narrow_u128(acc, "shifted sum");
}

double sigma1(u64 h) {
    u128 s = 1;
    for (auto [p, e] : factorize(h).factors) {
        u128 pe = 1, geo = 1;
        for (u32 i = 0; i < e; ++i) {
            pe *= p;
            geo += pe;
        }
        s *= geo;
    }
    return static_cast<double>(s);
}

}  // namespace

const char* range_mode_name(range_mode mode) {
    return mode == range_mode::upto_n ? "upto" : "dyadic";
}

u64 shifted_sum(int k, u64 N, u64 f, range_mode mode) {
    check_kf(k, N, f);
    SumRange r = sum_range_for(N, mode);
    auto vals = dk_values(r.first, r.last + f + 1, k);
    return correlation_from(vals, r.first, r.first, r.last, f);
}

std::vector<ShiftedSumRecord> shifted_checkpoints(int k, u64 f,
                                                  std::span<const u64> Ns,
                                                  range_mode mode) {
    if (Ns.empty()) return {};
    check_kf(k, Ns.front(), f);
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1])
            throw std::invalid_argument("shifted_checkpoints: Ns strictly increasing");

    u64 lo = sum_range_for(Ns.front(), mode).first;
    u64 last = sum_range_for(Ns.back(), mode).last;
    auto vals = dk_values(lo, last + f + 1, k);

    std::vector<ShiftedSumRecord> out;
    out.reserve(Ns.size());
    if (mode == range_mode::upto_n) {
        u128 acc = 0;
        u64 n = 1;
        for (u64 N : Ns) {
            for (; n <= N; ++n)
                acc += static_cast<u64>(vals[n - lo]) *
                       static_cast<u64>(vals[n + f - lo]);
            out.push_back({k, f, N, mode, narrow_u128(acc, "shifted sum"), 0, 0});
        }
    } else {
        for (u64 N : Ns)
            out.push_back({k, f, N, mode,
                           correlation_from(vals, lo, N + 1, 2 * N, f), 0, 0});
    }
    return out;
}

std::vector<u64> shifted_sums_multi_f(int k, u64 N, u64 fmax, range_mode mode) {
    check_kf(k, N, fmax);
    SumRange r = sum_range_for(N, mode);
    auto vals = dk_values(r.first, r.last + fmax + 1, k);
    std::vector<u64> sums(fmax);
    for_each_chunk(1, fmax + 1, 16, [&](std::size_t, u64 flo, u64 fhi) {
        for (u64 f = flo; f < fhi; ++f)
            sums[f - 1] = correlation_from(vals, r.first, r.first, r.last, f);
    });
    return sums;
}

i64 ramanujan_sum(u64 q, u64 h) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q >= 1");
    i64 c = 1;
    for (auto [p, a] : factorize(q).factors) {
        u32 v = a;  // h = 0 behaves as v_p(h) >= a
        if (h != 0) {
            v = 0;
            for (u64 m = h; m % p == 0; m /= p) ++v;
        }
        i64 pam1 = 1;  // p^(a-1)
        for (u32 i = 1; i < a; ++i) pam1 *= static_cast<i64>(p);
        if (v >= a)
            c *= pam1 * static_cast<i64>(p) - pam1;
        else if (v + 1 == a)
            c *= -pam1;
        else
            return 0;
    }
    return c;
}

double InghamFit::eval_main(double N) const {
    return N * detail::eval_polynomial(coeffs, std::log(N));
}

double InghamFit::c1() const {
    if (k != 2 || coeffs.size() != 3)
        throw std::logic_error("c1/c2/c3 are the named k = 2 coefficients");
    return coeffs[2];
}

double InghamFit::c2() const {
    c1();
    return coeffs[1];
}

double InghamFit::c3() const {
    c1();
    return coeffs[0];
}

InghamFit fit_log_poly(int k, u64 f, std::span<const ShiftedSumRecord> records) {
    if (k < 2 || k > 6) throw std::invalid_argument("fit_log_poly: k in {2,...,6}");
    std::size_t need = 2 * static_cast<std::size_t>(k) - 1;
    if (records.size() < need)
        throw conditioning_error("fit_log_poly: need at least 2k-1 checkpoints");
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].N <= records[i - 1].N)
            throw std::invalid_argument("fit_log_poly: N strictly increasing");
    if (records.back().N < 10 * records.front().N)
        throw conditioning_error("fit_log_poly: checkpoint span below 10x");

    std::vector<double> L, y;
    L.reserve(records.size());
    y.reserve(records.size());
    for (const auto& r : records) {
        L.push_back(std::log(static_cast<double>(r.N)));
        y.push_back(static_cast<double>(r.sum) / static_cast<double>(r.N));
    }

    InghamFit fit;
    fit.k = k;
    fit.f = f;
    fit.coeffs = detail::fit_polynomial(L, y, 2 * k - 2);
    for (const auto& r : records) {
        double main = fit.eval_main(static_cast<double>(r.N));
        double rel = std::abs(main - static_cast<double>(r.sum)) /
                     static_cast<double>(r.sum);
        fit.max_rel_residual = std::max(fit.max_rel_residual, rel);
    }
    return fit;
}

InghamAnalysis fit_ingham(int k, u64 f, std::span<const u64> checkpoints,
                          range_mode mode) {
    InghamAnalysis out;
    out.records = shifted_checkpoints(k, f, checkpoints, mode);
    out.fit = fit_log_poly(k, f, out.records);
    for (auto& r : out.records) {
        r.fitted_main = out.fit.eval_main(static_cast<double>(r.N));
        r.residual = static_cast<double>(r.sum) - r.fitted_main;
    }
    return out;
}

AveragedDelta3 averaged_delta3(u64 N, u64 H) {
    if (H < 1 || H > N) throw std::invalid_argument("averaged_delta3: 1 <= H <= N");
    std::vector<u64> Ms;
    for (int j = 5; j >= 0; --j) Ms.push_back(N >> j);
    for (std::size_t i = 1; i < Ms.size(); ++i)
        if (Ms[i] <= Ms[i - 1])
            throw conditioning_error("averaged_delta3: N too small for checkpoints");

    u64 lo = Ms.front() + 1;
    auto vals = dk_values(lo, 2 * N + H + 1, 3);

    std::vector<double> delta(H);
    for_each_chunk(1, H + 1, 8, [&](std::size_t, u64 hlo, u64 hhi) {
        for (u64 h = hlo; h < hhi; ++h) {
            std::vector<ShiftedSumRecord> recs;
            recs.reserve(Ms.size());
            for (u64 M : Ms)
                recs.push_back({3, h, M, range_mode::dyadic,
                                correlation_from(vals, lo, M + 1, 2 * M, h), 0, 0});
            InghamFit fit = fit_log_poly(3, h, recs);
            delta[h - 1] = static_cast<double>(recs.back().sum) -
                           fit.eval_main(static_cast<double>(N));
        }
    });

    AveragedDelta3 out;
    out.N = N;
    out.H = H;
    for (double d : delta) out.sum_residuals += d;
    double Nd = static_cast<double>(N);
    double Hd = static_cast<double>(H);
    out.band = 5.0 * (Hd * Hd + std::pow(Nd, 4.0 / 3.0)) * std::pow(Nd, 0.05);
    out.within_band = std::abs(out.sum_residuals) <= out.band;
    return out;
}

SingularSeries singular_series(double x, u64 h,
                               const std::function<double(double, u64)>& Qk,
                               u64 q_max) {
    if (!Qk) throw std::invalid_argument("singular_series: Qk callback required");
    if (q_max < 1) throw std::invalid_argument("singular_series: q_max >= 1");
    SingularSeries out;
    out.q_max = q_max;
    long double acc = 0.0L;
    for (u64 q = 1; q <= q_max; ++q) {
        double Q = Qk(x, q);
        acc += static_cast<long double>(ramanujan_sum(q, h)) /
               (static_cast<long double>(q) * static_cast<long double>(q)) *
               static_cast<long double>(Q) * static_cast<long double>(Q);
    }
    out.value = static_cast<double>(acc);
    out.tail_bound = h == 0 ? std::numeric_limits<double>::infinity()
                            : sigma1(h) / static_cast<double>(q_max);
    return out;
}

}  // namespace divlab
