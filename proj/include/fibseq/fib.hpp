// Fibonacci numbers under the convention f_0 = f_1 = 1 (the difference
// matrix divides by f_k, so the index-0 value must be nonzero), with the
// identities the rest of the library leans on. Values are cached exactly
// and grown iteratively; a mutex serializes access so the shared cache is
// safe to use from several threads.
#pragma once

#include <cstddef>
#include <mutex>
#include <utility>
#include <vector>

#include "fibseq/rational.hpp"
#include "fibseq/real.hpp"

namespace fibseq {

class FibCache {
  public:
    FibCache() : values_{Int(1), Int(1)} {}

    // f_n; grows the table on demand.
    Int at(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (values_.size() <= n)
            values_.push_back(values_[values_.size() - 1] + values_[values_.size() - 2]);
        return values_[n];
    }

  private:
    std::vector<Int> values_;
    std::mutex mutex_;
};

FibCache& fib_cache();

// f_n with f_0 = f_1 = 1.
Int fib(std::size_t n);

// f_{n-1} f_{n+1} - f_n^2; equals (-1)^{n+1}. Requires n >= 1.
Int cassini_residual(std::size_t n);

// sum_{k<=n} f_k; equals f_{n+2} - 1.
Int fib_prefix_sum(std::size_t n);

// |f_{n+1}/f_n - (1+sqrt 5)/2| at the given precision. Requires n >= 1.
Real golden_ratio_error(std::size_t n, mpfr_prec_t prec);

// sum_{k<=n} 1/f_k at the given precision.
Real reciprocal_fib_partial_sum(std::size_t n, mpfr_prec_t prec);

// f_n / f_{n+1} and f_{n+1} / f_n as exact rationals.
Rat fib_ratio(std::size_t n);
Rat fib_ratio_inv(std::size_t n);

// Exact enclosure of the ratios f_{k+1}/f_k over all k >= from, using
// the alternation of the ratio sequence around the golden ratio: even
// indices approach from below, odd indices from above. first = lower
// bound (attained at the first even k >= from), second = upper bound
// (attained at the first odd k >= from). Requires from >= 1.
std::pair<Rat, Rat> fib_ratio_bounds(std::size_t from);

}  // namespace fibseq
