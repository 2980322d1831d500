#include "fibseq/fib.hpp"

namespace fibseq {

FibCache& fib_cache() {
    static FibCache cache;
    return cache;
}

Int fib(std::size_t n) { return fib_cache().at(n); }

Int cassini_residual(std::size_t n) {
    if (n < 1) throw DomainError("cassini_residual requires n >= 1");
    return fib(n - 1) * fib(n + 1) - fib(n) * fib(n);
}

Int fib_prefix_sum(std::size_t n) {
    Int sum = 0;
    for (std::size_t k = 0; k <= n; ++k) sum += fib(k);
    return sum;
}

Real golden_ratio_error(std::size_t n, mpfr_prec_t prec) {
    if (n < 1) throw DomainError("golden_ratio_error requires n >= 1");
    if (prec < 64) throw DomainError("golden_ratio_error requires at least 64 bits");
    Real ratio(make_rat(fib(n + 1), fib(n)), prec);
    return (ratio - Real::golden_ratio(prec)).abs_value();
}

Real reciprocal_fib_partial_sum(std::size_t n, mpfr_prec_t prec) {
    Rat sum(0);
    for (std::size_t k = 0; k <= n; ++k) sum += make_rat(Int(1), fib(k));
    return Real(sum, prec);
}

Rat fib_ratio(std::size_t n) { return make_rat(fib(n), fib(n + 1)); }

Rat fib_ratio_inv(std::size_t n) { return make_rat(fib(n + 1), fib(n)); }

std::pair<Rat, Rat> fib_ratio_bounds(std::size_t from) {
    if (from < 1) throw DomainError("fib_ratio_bounds requires from >= 1");
    const std::size_t even = from % 2 == 0 ? from : from + 1;
    const std::size_t odd = from % 2 == 1 ? from : from + 1;
    return {fib_ratio_inv(even), fib_ratio_inv(odd)};
}

}  // namespace fibseq
