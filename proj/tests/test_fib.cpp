#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>
#include <vector>

#include "fibseq/fib.hpp"

using namespace fibseq;

namespace {

// Independent oracle: the recurrence unrolled with plain additions,
// recomputed from scratch on every call.
Int naive_fib(std::size_t n) {
    Int a = 1, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int next = a + b;
        a = b;
        b = next;
    }
    return a;
}

}  // namespace

TEST_CASE("base values and frozen examples") {
    CHECK(fib(0) == 1);
    CHECK(fib(1) == 1);
    CHECK(fib(6) == 13);
    for (std::size_t n = 0; n <= 300; ++n) CHECK(fib(n) == naive_fib(n));
}

TEST_CASE("cassini residual alternates sign") {
    CHECK(cassini_residual(1) == 1);
    CHECK(cassini_residual(2) == -1);
    CHECK(cassini_residual(3) == 1);
    CHECK_THROWS_AS(cassini_residual(0), DomainError);
    for (std::size_t n = 1; n <= 1000; ++n)
        CHECK(cassini_residual(n) == (n % 2 == 1 ? 1 : -1));
}

TEST_CASE("substituted cassini form") {
    for (std::size_t n = 1; n <= 1000; ++n) {
        Int lhs = fib(n - 1) * fib(n - 1) + fib(n) * fib(n - 1) - fib(n) * fib(n);
        CHECK(lhs == (n % 2 == 1 ? 1 : -1));
    }
}

TEST_CASE("prefix sums against the shift identity") {
    CHECK(fib_prefix_sum(0) == 1);
    CHECK(fib_prefix_sum(5) == 20);
    // Direct summation oracle agrees with f_{n+2} - 1 everywhere,
    // including the n = 9 value 143.
    CHECK(fib_prefix_sum(9) == 143);
    CHECK(fib_prefix_sum(9) == fib(11) - 1);
    for (std::size_t n = 0; n <= 1000; ++n) CHECK(fib_prefix_sum(n) == fib(n + 2) - 1);
}

TEST_CASE("golden ratio error") {
    Real e1 = golden_ratio_error(1, 128);
    // |f_2/f_1 - phi| = 2 - phi = 0.381966...
    CHECK(e1.to_double() == doctest::Approx(0.3819660113).epsilon(1e-9));
    Real e9 = golden_ratio_error(9, 128);
    CHECK(e9.to_double() == doctest::Approx(1.478e-4).epsilon(1e-2));
    Real e40 = golden_ratio_error(40, 128);
    CHECK(e40 < Real(make_rat(Int(1), Int("10000000000000000")), 128));  // 1e-16

    Real prev = golden_ratio_error(2, 128);
    for (std::size_t n = 3; n <= 80; ++n) {
        Real cur = golden_ratio_error(n, 128);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("reciprocal partial sums monotone and Cauchy") {
    CHECK(reciprocal_fib_partial_sum(0, 128) == Real(Rat(1), 128));
    CHECK(reciprocal_fib_partial_sum(2, 128) == Real(make_rat(Int(5), Int(2)), 128));
    Real s50 = reciprocal_fib_partial_sum(50, 128);
    Real s60 = reciprocal_fib_partial_sum(60, 128);
    CHECK(s50 <= s60);
    CHECK((s60 - s50) < Real(make_rat(Int(1), Int("1000000000")), 128));
    Real prev(128);
    for (std::size_t n = 0; n <= 40; ++n) {
        Real cur = reciprocal_fib_partial_sum(n, 128);
        CHECK(prev <= cur);
        prev = cur;
    }
}

TEST_CASE("shared cache survives concurrent growth") {
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([t, &ok] {
            for (std::size_t n = 2; n < 400; ++n) {
                std::size_t idx = (t % 2 == 0) ? n : 401 - n;
                if (fib(idx) != fib(idx - 1) + fib(idx - 2)) ok = false;
            }
        });
    for (auto& w : workers) w.join();
    CHECK(ok);
    CHECK(fib(400) == fib(399) + fib(398));
}

TEST_CASE("ratio enclosure brackets every later ratio") {
    for (std::size_t from = 1; from <= 40; ++from) {
        auto [lo, hi] = fib_ratio_bounds(from);
        for (std::size_t k = from; k <= from + 60; ++k) {
            Rat r = fib_ratio_inv(k);
            CHECK(lo <= r);
            CHECK(r <= hi);
        }
    }
}
