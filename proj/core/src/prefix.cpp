#include "divlab/prefix.hpp"

#include <cmath>
#include <stdexcept>

#include "divlab/main_term.hpp"
#include "divlab/sieve.hpp"

namespace divlab {

DivisorPrefix::DivisorPrefix(u64 limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("DivisorPrefix: limit >= 1");
    if (limit > (u64(1) << 28))
        throw resource_error("DivisorPrefix: limit beyond 2^28 table budget (8 bytes/entry)");
    prefix_.assign(static_cast<std::size_t>(limit) + 1, 0);
    i64 run = 0;
    for_each_block(1, limit + 1, FuncKind{func_tag::dk, 2}, u64(1) << 18,
                   [&](const DivisorBlock& blk) {
                       for (u64 n = blk.lo; n < blk.hi; ++n) {
                           run += static_cast<i64>(blk.values[n - blk.lo]);
                           prefix_[n] = run;
                       }
                   });
}

long double DivisorPrefix::delta(long double x) const {
    if (x < 1 || x > static_cast<long double>(limit_))
        throw std::invalid_argument("DivisorPrefix::delta: x outside table");
    const long double two_gamma_m1 = 2.0L * builtin_laurent().gamma[0] - 1.0L;
    u64 n = static_cast<u64>(x);
    return static_cast<long double>(prefix_[n]) - x * (std::log(x) + two_gamma_m1);
}

}  // namespace divlab
