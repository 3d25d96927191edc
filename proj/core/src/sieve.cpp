#include "divlab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "divlab/parallel.hpp"

namespace divlab {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's cycle variant of Pollard rho; n must be an odd composite.
// Deterministic: the (x0, c) schedule is fixed. Gcds are batched 64 steps at
// a time; when a batch lands on gcd = n (as it always does for n = p^2) the
// steps are replayed singly from the last snapshot.
u64 brent_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 x = 2, y = 2, ys = 2, d = 1, q = 1;
        bool closed = false;  // y landed exactly on x: orbit exhausted for this c
        for (u64 r = 1; d == 1 && !closed; r *= 2) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && d == 1 && !closed; k += 64) {
                ys = y;
                u64 lim = std::min<u64>(64, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    u64 diff = x > y ? x - y : y - x;
                    if (diff == 0) {
                        closed = true;
                        break;
                    }
                    q = mulmod(q, diff, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            // batch overshot: replay it singly from the last snapshot
            do {
                ys = f(ys);
                u64 diff = x > ys ? x - ys : ys - x;
                d = std::gcd(diff ? diff : n, n);
            } while (d == 1);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(u64 n, std::vector<std::pair<u64, u32>>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    u64 d = brent_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

// Shared sieving kernel for one block: extracts the full p-exponent of each
// position for every prime p <= sqrt(hi-1), leaving a prime cofactor.
template <class Emit>
void sieve_block_impl(u64 lo, u64 hi, const std::vector<u32>& primes, Emit&& emit) {
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    std::vector<u64> cof(len);
    for (std::size_t i = 0; i < len; ++i) cof[i] = lo + i;

    // exps[i] collects (count of distinct primes, sum of exponents) plus the
    // dk product; we emit per-position tuples through `emit`.
    std::vector<u32> n_distinct(len, 0);
    std::vector<u32> n_total(len, 0);

    struct PrimePower { std::size_t idx; u32 e; };
    std::vector<PrimePower> pp;
    pp.reserve(len / 2 + 8);

    for (u32 p : primes) {
        if (static_cast<u64>(p) * p >= hi) break;
        for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
            std::size_t i = static_cast<std::size_t>(m - lo);
            u32 e = 0;
            while (cof[i] % p == 0) { cof[i] /= p; ++e; }
            if (e) {
                n_distinct[i] += 1;
                n_total[i] += e;
                pp.push_back({i, e});
            }
        }
    }
    // Residual cofactor > 1 is a single prime beyond sqrt(hi).
    for (std::size_t i = 0; i < len; ++i) {
        if (cof[i] > 1) {
            n_distinct[i] += 1;
            n_total[i] += 1;
        }
    }
    emit(cof, n_distinct, n_total, pp);
}

void fill_block(DivisorBlock& blk, const std::vector<u32>& primes) {
    const u64 lo = blk.lo, hi = blk.hi;
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    blk.values.assign(len, 0);

    sieve_block_impl(lo, hi, primes,
        [&](const std::vector<u64>& cof, const std::vector<u32>& n_distinct,
            const std::vector<u32>& n_total, const auto& pp) {
            switch (blk.kind.tag) {
            case func_tag::omega:
                for (std::size_t i = 0; i < len; ++i) blk.values[i] = n_distinct[i];
                break;
            case func_tag::bigomega:
                for (std::size_t i = 0; i < len; ++i) blk.values[i] = n_total[i];
                break;
            case func_tag::dk: {
                const int k = blk.kind.k;
                std::vector<u64>& v = blk.values;
                std::fill(v.begin(), v.end(), 1);
                for (const auto& [i, e] : pp) {
                    u64 t = dk_prime_power(k, e);
                    u64 r;
                    if (__builtin_mul_overflow(v[i], t, &r))
                        throw std::overflow_error("sieve_range: d_k value exceeds 64 bits");
                    v[i] = r;
                }
                for (std::size_t i = 0; i < len; ++i)
                    if (cof[i] > 1) {
                        u64 r;
                        if (__builtin_mul_overflow(v[i], static_cast<u64>(k), &r))
                            throw std::overflow_error("sieve_range: d_k value exceeds 64 bits");
                        v[i] = r;
                    }
                break;
            }
            }
        });
}

void check_range(u64 lo, u64 hi, u64 block_size) {
    if (lo < 1 || lo >= hi) throw std::invalid_argument("sieve_range: need 1 <= lo < hi");
    if (block_size < 2) throw std::invalid_argument("sieve_range: block_size >= 2");
    if (hi > sieve_limit) throw std::range_error("sieve_range: hi exceeds supported 2^62 limit");
}

std::vector<u32> primes_for_range(u64 hi) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
    return primes_up_to(static_cast<u32>(std::min<u64>(r, 0xFFFFFFFFu)));
}

}  // namespace

u64 dk_prime_power(int k, u32 e) {
    if (k < 1) throw std::invalid_argument("dk_prime_power: k >= 1");
    // binom(k+e-1, e) built incrementally; each partial product is exact
    // because binomial prefixes are integers.
    u64 r = 1;
    for (u32 i = 1; i <= e; ++i) {
        u128 t = static_cast<u128>(r) * (static_cast<u64>(k) + i - 1);
        t /= i;
        if (t > UINT64_MAX) throw std::overflow_error("dk_prime_power: exceeds 64 bits");
        r = static_cast<u64>(t);
    }
    return r;
}

u64 dk_of_factorization(const Factorization& f, int k) {
    if (k < 1) throw std::invalid_argument("dk_of_factorization: k >= 1");
    u64 v = 1;
    for (const auto& [p, e] : f.factors) {
        (void)p;
        u64 r;
        if (__builtin_mul_overflow(v, dk_prime_power(k, e), &r))
            throw std::overflow_error("dk_of_factorization: exceeds 64 bits");
        v = r;
    }
    return v;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic for all 64-bit inputs with this base set.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

Factorization factorize(u64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n >= 1");
    Factorization f;
    f.n = n;
    u64 m = n;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (p * p > m) break;
        u32 e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e) f.factors.emplace_back(p, e);
    }
    if (m > 1) {
        if (m < 41 * 41 || is_prime(m)) {
            f.factors.emplace_back(m, 1);
        } else {
            std::vector<std::pair<u64, u32>> rest;
            factor_into(m, rest);
            std::sort(rest.begin(), rest.end());
            // merge equal primes produced by independent rho branches
            for (auto& [p, e] : rest) {
                if (!f.factors.empty() && f.factors.back().first == p)
                    f.factors.back().second += e;
                else
                    f.factors.emplace_back(p, e);
            }
        }
    }
    return f;
}

std::vector<u32> primes_up_to(u32 n) {
    std::vector<u32> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            out.push_back(static_cast<u32>(i));
            for (u64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return out;
}

u64 iterate_d(u64 n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("iterate_d: n >= 1, k >= 1");
    u64 v = n;
    for (int i = 0; i < k; ++i) v = d_of(v);
    return v;
}

u64 d_of(u64 n) { return dk_of_factorization(factorize(n), 2); }

u64 dk_of(u64 n, int k) { return dk_of_factorization(factorize(n), k); }

std::vector<DivisorBlock> sieve_range(u64 lo, u64 hi, FuncKind kind, u64 block_size) {
    check_range(lo, hi, block_size);
    const std::vector<u32> primes = primes_for_range(hi);
    std::vector<DivisorBlock> blocks(chunk_count(lo, hi, block_size));
    for_each_chunk(lo, hi, block_size, [&](std::size_t c, u64 blo, u64 bhi) {
        blocks[c].lo = blo;
        blocks[c].hi = bhi;
        blocks[c].kind = kind;
        fill_block(blocks[c], primes);
    });
    return blocks;
}

void for_each_block(u64 lo, u64 hi, FuncKind kind, u64 block_size,
                    const std::function<void(const DivisorBlock&)>& fn) {
    check_range(lo, hi, block_size);
    const std::vector<u32> primes = primes_for_range(hi);
    const std::size_t total = chunk_count(lo, hi, block_size);
    // Waves of W blocks: compute a wave in parallel, then emit it in order.
    // Bounds memory at W blocks while keeping emission strictly sequential.
    const std::size_t wave = static_cast<std::size_t>(std::max(1, max_threads())) * 2;
    std::vector<DivisorBlock> slot(std::min(wave, total));
    for (std::size_t base = 0; base < total; base += wave) {
        const std::size_t n = std::min(wave, total - base);
        u64 wave_lo = lo + static_cast<u64>(base) * block_size;
        u64 wave_hi = std::min(hi, wave_lo + static_cast<u64>(n) * block_size);
        for_each_chunk(wave_lo, wave_hi, block_size, [&](std::size_t c, u64 blo, u64 bhi) {
            slot[c].lo = blo;
            slot[c].hi = bhi;
            slot[c].kind = kind;
            fill_block(slot[c], primes);
        });
        for (std::size_t c = 0; c < n; ++c) fn(slot[c]);
    }
}

u128 sum_range(u64 lo, u64 hi, FuncKind kind, u64 block_size) {
    u128 total = 0;
    for_each_block(lo, hi, kind, block_size, [&](const DivisorBlock& b) {
        for (u64 v : b.values) total += v;
    });
    return total;
}

u64 divisor_sum_hyperbola(u64 x) {
    if (x == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    u64 s = 0;
    for (u64 m = 1; m <= r; ++m) s += x / m;
    return 2 * s - r * r;
}

std::vector<u64> sieve_values(u64 lo, u64 hi, FuncKind kind, u64 block_size) {
    check_range(lo, hi, block_size);
    std::vector<u64> out(static_cast<std::size_t>(hi - lo));
    const std::vector<u32> primes = primes_for_range(hi);
    for_each_chunk(lo, hi, block_size, [&](std::size_t, u64 blo, u64 bhi) {
        DivisorBlock blk;
        blk.lo = blo;
        blk.hi = bhi;
        blk.kind = kind;
        fill_block(blk, primes);
        std::copy(blk.values.begin(), blk.values.end(),
                  out.begin() + static_cast<std::ptrdiff_t>(blo - lo));
    });
    return out;
}

}  // namespace divlab
