#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibseq/fib.hpp"
#include "fibseq/transform.hpp"

using namespace fibseq;

namespace {

std::vector<Rat> random_values(std::mt19937_64& rng, std::size_t n, int bits = 64) {
    std::uniform_int_distribution<unsigned long> limb;
    std::vector<Rat> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int num(limb(rng) >> (64 - bits));
        if (limb(rng) & 1) num = -num;
        Int den(limb(rng) >> (64 - bits));
        if (den == 0) den = 1;
        out.push_back(make_rat(num, den));
    }
    return out;
}

}  // namespace

TEST_CASE("transform of unit and constant sequences") {
    auto y = fhat_apply(Seq::unit(0), 2);
    CHECK(y == std::vector<Rat>{Rat(1), Rat(-2), Rat(0)});

    auto z = fhat_apply(Seq::constant(Rat(1)), 3);
    CHECK(z[0] == 1);
    CHECK(z[1] == make_rat(Int(-3), Int(2)));
    CHECK(z[2] == make_rat(Int(-5), Int(6)));
    CHECK(z[3] == make_rat(Int(-16), Int(15)));

    auto zero = fhat_apply(Seq::zero(), 5);
    for (const auto& v : zero) CHECK(v == 0);
}

TEST_CASE("inverse of unit, zero and constant sequences") {
    auto x = inverse_apply(Seq::unit(0), 3);
    CHECK(x == std::vector<Rat>{Rat(1), Rat(4), Rat(9), Rat(25)});
    for (long k = 0; k <= 3; ++k) {
        Int fk1 = fib(static_cast<std::size_t>(k) + 1);
        CHECK(x[static_cast<std::size_t>(k)] == Rat(fk1 * fk1));
    }

    auto zeros = inverse_apply(Seq::zero(), 4);
    for (const auto& v : zeros) CHECK(v == 0);

    auto z = inverse_apply(Seq::constant(Rat(1)), 2);
    CHECK(z == std::vector<Rat>{Rat(1), Rat(6), Rat(15)});
}

TEST_CASE("identity check at several truncations") {
    CHECK(identity_check(1));
    CHECK(identity_check(8));
    CHECK(identity_check(64));
}

TEST_CASE("round trips are exact on random rational sequences") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        auto vals = random_values(rng, 65);
        auto y = fhat_apply(vals);
        auto back = inverse_apply(y);
        CHECK(back == vals);
        auto x = inverse_apply(vals);
        auto there = fhat_apply(x);
        CHECK(there == vals);
    }
}

TEST_CASE("linearity of the transform") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto xv = random_values(rng, 33);
        auto zv = random_values(rng, 33);
        Rat alpha = make_rat(Int(3), Int(7)), beta = make_rat(Int(-5), Int(2));
        std::vector<Rat> combo;
        for (std::size_t i = 0; i < xv.size(); ++i) combo.push_back(alpha * xv[i] + beta * zv[i]);
        auto lhs = fhat_apply(combo);
        auto yx = fhat_apply(xv);
        auto yz = fhat_apply(zv);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            CHECK(lhs[i] == alpha * yx[i] + beta * yz[i]);
    }
}

TEST_CASE("basis vectors match inverse columns") {
    CHECK(basis_vector(0, 3) == std::vector<Rat>{Rat(1), Rat(4), Rat(9), Rat(25)});
    CHECK(basis_vector(2, 1) == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(basis_vector(1, 2) ==
          std::vector<Rat>{Rat(0), Rat(2), make_rat(Int(9), Int(2))});
    for (long k = 0; k <= 64; ++k) {
        auto b = basis_vector(k, 64);
        for (long n = 0; n <= 64; ++n)
            CHECK(b[static_cast<std::size_t>(n)] == inverse_entry(n, k));
    }
}

TEST_CASE("off-diagonal cancellation in the forward product") {
    for (long n = 1; n <= 64; ++n)
        for (long k = 0; k < n; ++k) {
            Rat entry = fib_ratio(static_cast<std::size_t>(n)) * inverse_entry(n, k) -
                        fib_ratio_inv(static_cast<std::size_t>(n)) * inverse_entry(n - 1, k);
            CHECK(entry == 0);
        }
}

TEST_CASE("basis expansion of a transform-supported prefix") {
    // Prefix of the inverse image of e^(0); its transform window is the
    // unit coordinate, so the expansion at order 0 has no window residual.
    const long n = 32;
    auto vals = inverse_apply(Seq::unit(0), n);
    Seq x(vals, TailSpec::zero());
    ExponentSeq p = ExponentSeq::constant(Rat(1));
    auto exp0 = basis_expand(x, 0, p, n, 128);
    REQUIRE(exp0.coefficients.size() == 1);
    CHECK(exp0.coefficients[0] == 1);
    CHECK(exp0.residual.is_zero());

    auto expz = basis_expand(Seq::zero(), 3, p, 16, 128);
    CHECK(expz.coefficients == std::vector<Rat>(4, Rat(0)));
    CHECK(expz.residual.is_zero());
    CHECK(expz.residual_complete);
}

TEST_CASE("expansion residual shrinks with the order for the all-ones sequence") {
    ExponentSeq p = ExponentSeq::constant(Rat(1));
    Seq ones = Seq::constant(Rat(1));
    auto e10 = basis_expand(ones, 10, p, 64, 128);
    auto e40 = basis_expand(ones, 40, p, 64, 128);
    CHECK(e40.residual < e10.residual);
    CHECK(Real(Rat(1), 128) < e10.residual);  // tail sup stays above |limit| = 1
}
