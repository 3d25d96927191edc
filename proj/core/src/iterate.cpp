#include "divlab/iterate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>
#include <random>
#include <stdexcept>

#include "divlab/parallel.hpp"

namespace divlab {

namespace {

// Cached across calls: scans that walk k = 1..k_max would otherwise re-sieve
// the same prefix k_max times.
std::vector<u32> first_n_primes(u64 count) {
    static std::mutex mu;
    static std::vector<u32> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() < count) {
        u32 bound = 64;
        if (count > 6) {
            double n = static_cast<double>(count);
            double est = n * (std::log(n) + std::log(std::log(n)));
            if (est > 4e9) throw std::overflow_error("first_n_primes: count too large");
            bound = static_cast<u32>(est * 1.2) + 64;
        }
        for (;;) {
            auto ps = primes_up_to(bound);
            if (ps.size() >= count) {
                cache = std::move(ps);
                break;
            }
            if (bound > std::numeric_limits<u32>::max() / 2)
                throw std::overflow_error("first_n_primes: prime bound overflow");
            bound *= 2;
        }
    }
    return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

double log_of_factors(std::span<const std::pair<u64, u32>> factors) {
    long double s = 0.0L;
    for (auto [p, e] : factors)
        s += static_cast<long double>(e) * std::log(static_cast<long double>(p));
    return static_cast<double>(s);
}

PrimorialLikeNumber make_number(std::vector<std::pair<u64, u32>> factors) {
    PrimorialLikeNumber n;
    n.factors = std::move(factors);
    n.log_n = log_of_factors(n.factors);
    n.d_factors = divisor_count_factors(n.factors);
    return n;
}

// d(m) table large enough for every iterate: the first application of d maps
// any 64-bit n below 2^16 or so, and d(v) <= v keeps later values inside.
const std::vector<u32>& small_d_table() {
    static const std::vector<u32> table = [] {
        const u64 limit = u64(1) << 18;
        auto vals = sieve_values(1, limit + 1, FuncKind{});
        std::vector<u32> t(limit + 1, 0);
        for (u64 v = 1; v <= limit; ++v) t[v] = static_cast<u32>(vals[v - 1]);
        return t;
    }();
    return table;
}

u64 iterate_from_d(u64 d1, int k, const std::vector<u32>& tab) {
    u64 v = d1;
    for (int t = 1; t < k; ++t) {
        if (v >= tab.size()) return iterate_d(v, k - t);
        v = tab[v];
    }
    return v;
}

double iterated_log(u64 x, int k) {
    double l = static_cast<double>(x);
    for (int t = 0; t < k; ++t) {
        if (l <= 0)
            throw std::domain_error("iterated log undefined: x too small for depth k");
        l = std::log(l);
    }
    if (l <= 0)
        throw std::domain_error("iterated log nonpositive: x too small for depth k");
    return l;
}

std::vector<u32> values_u32(u64 lo, u64 hi, FuncKind kind) {
    std::vector<u32> out(hi - lo);
    for_each_block(lo, hi, kind, default_block_size, [&](const DivisorBlock& blk) {
        for (u64 n = blk.lo; n < blk.hi; ++n) {
            u64 v = blk.values[n - blk.lo];
            if (v > std::numeric_limits<u32>::max())
                throw std::overflow_error("value exceeds 32 bits");
            out[n - lo] = static_cast<u32>(v);
        }
    });
    return out;
}

}  // namespace

std::vector<std::pair<u64, u32>> divisor_count_factors(
    std::span<const std::pair<u64, u32>> factors) {
    // Scans hit the same small e + 1 values over and over; factoring them
    // afresh every call dominated scan runtime, so small values are memoized.
    static std::mutex memo_mu;
    static std::unordered_map<u64, std::vector<std::pair<u64, u32>>> memo;
    constexpr u64 memo_cap = u64(1) << 20;
    std::map<u64, u32> acc;
    for (auto [p, e] : factors) {
        (void)p;
        const u64 m = static_cast<u64>(e) + 1;
        if (m <= memo_cap) {
            std::lock_guard<std::mutex> lock(memo_mu);
            auto it = memo.find(m);
            if (it == memo.end()) it = memo.emplace(m, factorize(m).factors).first;
            for (auto [q, a] : it->second) acc[q] += a;
        } else {
            for (auto [q, a] : factorize(m).factors) acc[q] += a;
        }
    }
    return {acc.begin(), acc.end()};
}

PrimorialLikeNumber ramanujan_number(int k) {
    if (k < 1) throw std::invalid_argument("ramanujan_number: k >= 1");
    auto primes = first_n_primes(static_cast<u64>(k));
    std::vector<std::pair<u64, u32>> factors;
    factors.reserve(primes.size());
    for (u32 p : primes) factors.push_back({p, p - 1});
    return make_number(std::move(factors));
}

RamanujanBoundCheck ramanujan_lower_bound_check(int k) {
    if (k < 3) throw std::invalid_argument("ramanujan_lower_bound_check: k >= 3");
    PrimorialLikeNumber N = ramanujan_number(k);
    RamanujanBoundCheck out;
    out.lhs = static_cast<double>(k) * std::log(2.0);
    out.rhs = std::sqrt(2.0 * N.log_n) / std::log(N.log_n) * std::log(4.0);
    out.holds = out.lhs > out.rhs;
    return out;
}

ErdosKataiSequence erdos_katai_sequence(u64 r, int depth, u64 factor_budget) {
    if (r < 1 || depth < 1)
        throw std::invalid_argument("erdos_katai_sequence: r >= 1, depth >= 1");
    ErdosKataiSequence seq;
    seq.r = r;

    std::vector<u32> exps(r, 1);
    for (int level = 1; level <= depth; ++level) {
        if (exps.size() > factor_budget) {
            seq.truncated = true;
            break;
        }
        auto primes = first_n_primes(exps.size());
        std::vector<std::pair<u64, u32>> factors(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i)
            factors[i] = {primes[i], exps[i]};
        seq.levels.push_back(make_number(std::move(factors)));
        if (level == depth) break;

        u64 next_size = 0;
        for (u32 e : exps) next_size += e;
        if (next_size > factor_budget) {
            seq.truncated = true;
            break;
        }
        std::vector<u32> next;
        next.reserve(next_size);
        for (std::size_t i = 0; i < exps.size(); ++i)
            next.insert(next.end(), exps[i], primes[i] - 1);
        exps = std::move(next);
    }

    // d applied (level index + 1) times must collapse to 2^r.
    for (std::size_t j = 0; j < seq.levels.size(); ++j) {
        std::vector<std::pair<u64, u32>> cur = seq.levels[j].factors;
        for (std::size_t t = 0; t <= j; ++t) cur = divisor_count_factors(cur);
        if (cur.size() != 1 || cur[0].first != 2 || cur[0].second != r)
            throw std::logic_error("erdos_katai_sequence: iterate check failed");
    }
    return seq;
}

u64 FibonacciTable::at(int k) const {
    if (k < -1 || static_cast<std::size_t>(k + 1) >= values.size())
        throw std::out_of_range("FibonacciTable::at: k outside table");
    return values[static_cast<std::size_t>(k + 1)];
}

FibonacciTable fibonacci_table(int k_max) {
    if (k_max < 0 || k_max > 91)
        throw std::invalid_argument("fibonacci_table: 0 <= k_max <= 91");
    FibonacciTable t;
    t.values.resize(static_cast<std::size_t>(k_max) + 2);
    t.values[0] = 0;
    t.values[1] = 1;
    for (int k = 1; k <= k_max; ++k)
        t.values[static_cast<std::size_t>(k) + 1] =
            t.values[static_cast<std::size_t>(k)] +
            t.values[static_cast<std::size_t>(k) - 1];
    return t;
}

RecordScan scan_iterated_max(u64 x_max, int k) {
    if (k != 2 && k != 3) throw std::invalid_argument("scan_iterated_max: k in {2, 3}");
    if (x_max < 2) throw std::invalid_argument("scan_iterated_max: x_max >= 2");
    const auto& tab = small_d_table();

    RecordScan scan;
    scan.x_max = x_max;
    scan.k = k;
    u64 best = 0;
    for_each_block(2, x_max + 1, FuncKind{}, default_block_size,
                   [&](const DivisorBlock& blk) {
                       for (u64 n = blk.lo; n < blk.hi; ++n) {
                           u64 v = iterate_from_d(blk.values[n - blk.lo], k, tab);
                           if (v > best) {
                               best = v;
                               double ln = std::log(static_cast<double>(n));
                               double norm =
                                   k == 2 ? std::log(static_cast<double>(v)) *
                                                std::log(ln) / std::sqrt(ln)
                                          : 0.0;
                               scan.records.push_back({n, v, norm});
                           }
                       }
                   });
    return scan;
}

IteratedSum sum_iterated(u64 x, int k) {
    std::array<u64, 1> xs{x};
    return sum_iterated_checkpoints(xs, k).front();
}

std::vector<IteratedSum> sum_iterated_checkpoints(std::span<const u64> xs, int k) {
    if (k < 2 || k > 4)
        throw std::invalid_argument("sum_iterated: k in {2, 3, 4}");
    if (xs.empty()) return {};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1 || (i > 0 && xs[i] <= xs[i - 1]))
            throw std::invalid_argument("sum_iterated: checkpoints strictly increasing");
        iterated_log(xs[i], k);  // rejects depths the checkpoint cannot support
    }
    const auto& tab = small_d_table();

    std::vector<IteratedSum> out;
    out.reserve(xs.size());
    u128 acc = 0;
    std::size_t ci = 0;
    for_each_block(1, xs.back() + 1, FuncKind{}, default_block_size,
                   [&](const DivisorBlock& blk) {
                       for (u64 n = blk.lo; n < blk.hi; ++n) {
                           acc += iterate_from_d(blk.values[n - blk.lo], k, tab);
                           while (ci < xs.size() && n == xs[ci]) {
                               IteratedSum s;
                               s.x = xs[ci];
                               s.k = k;
                               s.sum = narrow_u128(acc, "sum_iterated");
                               s.normalized =
                                   static_cast<double>(s.sum) /
                                   (static_cast<double>(s.x) * iterated_log(s.x, k));
                               out.push_back(s);
                               ++ci;
                           }
                       }
                   });
    return out;
}

IvicScan ivic_conjecture_scan(u64 x, FuncKind kind) {
    if (x < 2) throw std::invalid_argument("ivic_conjecture_scan: x >= 2");
    if (x > (u64(1) << 26))
        throw resource_error("ivic_conjecture_scan: x beyond 2^26 table budget");

    auto vals = values_u32(1, x + 1, kind);
    u32 fmax = *std::max_element(vals.begin(), vals.end());
    if (fmax > (u64(1) << 26))
        throw resource_error("ivic_conjecture_scan: f values beyond 2^26 lookahead");
    auto tail = values_u32(x + 1, x + fmax + 1, kind);

    std::vector<u128> partial(chunk_count(1, x + 1, u64(1) << 16), 0);
    for_each_chunk(1, x + 1, u64(1) << 16, [&](std::size_t idx, u64 a, u64 b) {
        u128 part = 0;
        for (u64 n = a; n < b; ++n) {
            u64 t = n + vals[n - 1];
            part += t <= x ? vals[t - 1] : tail[t - x - 1];
        }
        partial[idx] = part;
    });
    u128 acc = 0;
    for (u128 p : partial) acc += p;

    IvicScan out;
    out.x = x;
    out.kind = kind;
    out.sum = narrow_u128(acc, "ivic_conjecture_scan");
    out.b_estimate = static_cast<double>(out.sum) /
                     (static_cast<double>(x) * std::log(static_cast<double>(x)));
    return out;
}

const char* erdos_regime_name(erdos_regime regime) {
    switch (regime) {
        case erdos_regime::full_interval: return "full";
        case erdos_regime::supercritical: return "super";
        default: return "sub";
    }
}

ErdosShortResult erdos_short_interval_check(u64 samples, erdos_regime regime,
                                            double c, u64 window, u64 seed,
                                            double delta) {
    if (samples < 100)
        throw std::invalid_argument("erdos_short_interval_check: samples >= 100");
    if (window < 100)
        throw std::invalid_argument("erdos_short_interval_check: window >= 100");
    if (delta <= 0 || delta >= 1)
        throw std::invalid_argument("erdos_short_interval_check: 0 < delta < 1");
    if (regime != erdos_regime::full_interval && c <= 0)
        throw std::invalid_argument("erdos_short_interval_check: c > 0");

    std::mt19937_64 rng(seed);
    std::vector<u64> xs(samples);
    for (auto& x : xs) x = window + bounded_rand(rng(), window + 1);

    const double two_log2_m1 = 2.0 * std::log(2.0) - 1.0;
    std::vector<double> ratio(samples), length(samples);
    for_each_chunk(0, samples, 16, [&](std::size_t, u64 a, u64 b) {
        for (u64 i = a; i < b; ++i) {
            u64 x = xs[i];
            double lx = std::log(static_cast<double>(x));
            double g;
            u64 terms;
            double num = 0;
            if (regime == erdos_regime::full_interval) {
                g = static_cast<double>(x);
                terms = x;
                num = static_cast<double>(divisor_sum_hyperbola(2 * x) -
                                          divisor_sum_hyperbola(x));
            } else {
                double sign = regime == erdos_regime::supercritical ? 1.0 : -1.0;
                g = std::pow(lx, two_log2_m1) *
                    std::exp(sign * c * std::sqrt(std::log(lx)));
                terms = static_cast<u64>(std::floor(g));
                for (u64 n = 1; n <= terms; ++n)
                    num += static_cast<double>(d_of(x + n));
            }
            ratio[i] = terms == 0 ? 0.0 : num / (g * lx);
            length[i] = static_cast<double>(terms);
        }
    });

    ErdosShortResult out;
    out.samples = samples;
    out.window = window;
    out.seed = seed;
    out.c = c;
    out.delta = delta;
    out.regime = regime;
    u64 hits = 0;
    long double rsum = 0.0L, lsum = 0.0L;
    for (u64 i = 0; i < samples; ++i) {
        if (std::abs(ratio[i] - 1.0) <= delta) ++hits;
        rsum += ratio[i];
        lsum += length[i];
    }
    out.fraction = static_cast<double>(hits) / static_cast<double>(samples);
    out.mean_ratio = static_cast<double>(rsum / samples);
    out.mean_length = static_cast<double>(lsum / samples);
    return out;
}

DkPlusSum dk_plus_sum(u64 x, int k) {
    if (k < 1) throw std::invalid_argument("dk_plus_sum: k >= 1");
    if (x < static_cast<u64>(k) || x < 2)
        throw std::invalid_argument("dk_plus_sum: x >= max(k, 2)");

    auto vals = sieve_values(1, x + static_cast<u64>(k), FuncKind{});
    std::vector<u128> partial(chunk_count(1, x + 1, u64(1) << 16), 0);
    for_each_chunk(1, x + 1, u64(1) << 16, [&](std::size_t idx, u64 a, u64 b) {
        u128 part = 0;
        for (u64 n = a; n < b; ++n) {
            u64 m = 0;
            for (int h = 0; h < k; ++h) m = std::max(m, vals[n - 1 + h]);
            part += m;
        }
        partial[idx] = part;
    });
    u128 acc = 0;
    for (u128 p : partial) acc += p;

    DkPlusSum out;
    out.x = x;
    out.k = k;
    out.sum = narrow_u128(acc, "dk_plus_sum");
    out.normalized = static_cast<double>(out.sum) /
                     (static_cast<double>(k) * static_cast<double>(x) *
                      std::log(static_cast<double>(x)));
    return out;
}

}  // namespace divlab
