#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibseq/fib.hpp"
#include "fibseq/spaces.hpp"
#include "fibseq/transform.hpp"

using namespace fibseq;

namespace {

constexpr mpfr_prec_t kPrec = 128;
const Rat kTol = make_rat(Int(1), Int("1000000000000"));

Seq random_prefix_seq(std::mt19937_64& rng, int len) {
    std::vector<Rat> prefix;
    for (int i = 0; i < len; ++i)
        prefix.push_back(make_rat(Int(static_cast<long>(rng() % 4001) - 2000),
                                  Int(1 + static_cast<long>(rng() % 211))));
    return Seq(std::move(prefix), TailSpec::zero());
}

}  // namespace

TEST_CASE("h1 frozen examples") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    Seq y({Rat(1), Rat(-2)}, TailSpec::zero());
    CHECK(h1(y, one, 16, kPrec).value == Real(Rat(2), kPrec));
    CHECK(h1(Seq::zero(), one, 16, kPrec).value.is_zero());
    ExponentSeq two = ExponentSeq::constant(Rat(2));
    CHECK(h1(y, two, 16, kPrec).value == Real(Rat(2), kPrec));  // |−2|^{2/2}
}

TEST_CASE("h2 frozen examples incl. geometric closed form") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    Seq y({Rat(1), Rat(-2)}, TailSpec::zero());
    CHECK(h2(y, one, 16, kPrec).value == Real(Rat(3), kPrec));
    CHECK(h2(Seq::zero(), one, 16, kPrec).value.is_zero());

    Seq geo({}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(2))));
    auto r = h2(geo, one, 20, kPrec);
    CHECK_FALSE(r.divergent);
    CHECK(r.value == Real(Rat(2), kPrec));  // powers of two sum exactly

    Seq c1({}, TailSpec::constant(Rat(1)));
    CHECK(h2(c1, one, 16, kPrec).divergent);
}

TEST_CASE("paranorm values on stock sequences") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    CHECK(g_paranorm(Seq::unit(0), one, 32, kPrec) == Real(Rat(2), kPrec));
    Seq pm({Rat(1), Rat(-1)}, TailSpec::zero());
    CHECK(g_paranorm(pm, one, 32, kPrec) == Real(make_rat(Int(5), Int(2)), kPrec));
    CHECK(g_paranorm(Seq::zero(), one, 32, kPrec).is_zero());

    CHECK(gstar_paranorm(Seq::unit(0), one, 32, kPrec) == Real(Rat(3), kPrec));
    CHECK(gstar_paranorm(Seq::zero(), one, 32, kPrec).is_zero());
    ExponentSeq two = ExponentSeq::constant(Rat(2));
    Real expected = Real::sqrt(Real(Rat(5), kPrec));
    CHECK(gstar_paranorm(Seq::unit(0), two, 32, kPrec) == expected);
}

TEST_CASE("paranorm axioms over random sequences") {
    std::mt19937_64 rng(41);
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    const long n = 48;
    CHECK(g_paranorm(Seq::zero(), one, n, kPrec).is_zero());
    for (int trial = 0; trial < 100; ++trial) {
        Seq x = random_prefix_seq(rng, 20);
        std::vector<Rat> neg;
        for (const auto& v : x.prefix()) neg.push_back(-v);
        Seq mx(neg, TailSpec::zero());
        CHECK(g_paranorm(x, one, n, kPrec) == g_paranorm(mx, one, n, kPrec));
    }
    for (int trial = 0; trial < 200; ++trial) {
        Seq x = random_prefix_seq(rng, 20);
        Seq z = random_prefix_seq(rng, 20);
        std::vector<Rat> sum;
        for (long k = 0; k < 20; ++k) sum.push_back(x.eval(k) + z.eval(k));
        Seq xz(sum, TailSpec::zero());
        Real lhs = g_paranorm(xz, one, n, kPrec);
        Real rhs = g_paranorm(x, one, n, kPrec) + g_paranorm(z, one, n, kPrec);
        CHECK(le_within_ulps(lhs, rhs, 2));

        Rat alpha = make_rat(Int(static_cast<long>(rng() % 2001) - 1000),
                             Int(1 + static_cast<long>(rng() % 50)));
        std::vector<Rat> ax;
        for (const auto& v : x.prefix()) ax.push_back(alpha * v);
        Seq axs(ax, TailSpec::zero());
        Real lhs2 = g_paranorm(axs, one, n, kPrec);
        Rat factor = std::max(Rat(1), rat_abs(alpha));
        Real rhs2 = Real(factor, kPrec) * g_paranorm(x, one, n, kPrec);
        CHECK(le_within_ulps(lhs2, rhs2, 2));
    }
}

TEST_CASE("pointwise exponent inequality |a|^p <= max(1, |a|^M)") {
    std::mt19937_64 rng(5);
    ExponentSeq p(Seq({make_rat(Int(1), Int(2)), Rat(2)}, TailSpec::constant(Rat(3))));
    const Rat m = p.bound();
    for (int trial = 0; trial < 100; ++trial) {
        Rat alpha = make_rat(Int(static_cast<long>(rng() % 4001) - 2000),
                             Int(1 + static_cast<long>(rng() % 100)));
        for (long k = 0; k < 6; ++k) {
            Real lhs = Real::pow_abs(alpha, p.at(k), kPrec);
            Real rhs = Real::max(Real(Rat(1), kPrec), Real::pow_abs(alpha, m, kPrec));
            CHECK(le_within_ulps(lhs, rhs, 2));
        }
    }
}

TEST_CASE("paranorm preservation through the inverse") {
    std::mt19937_64 rng(23);
    const long n = 48;
    for (int trial = 0; trial < 100; ++trial) {
        // Exponent constant in (0, 3].
        Rat pv = make_rat(Int(1 + static_cast<long>(rng() % 12)), Int(4));
        ExponentSeq p = ExponentSeq::constant(pv);
        Seq y = random_prefix_seq(rng, 16);
        Seq x(inverse_apply(y, n), TailSpec::zero());
        Real via_g = g_paranorm(x, p, n, kPrec);
        Real direct = h1(y, p, n, kPrec).value;
        CHECK(via_g == direct);
        CHECK(via_g.str() == direct.str());
    }
}

TEST_CASE("h1 and h2 are nondecreasing in the truncation") {
    std::mt19937_64 rng(67);
    ExponentSeq p = ExponentSeq::constant(make_rat(Int(3), Int(2)));
    for (int trial = 0; trial < 20; ++trial) {
        Seq y = random_prefix_seq(rng, 24);
        Real prev1(kPrec), prev2(kPrec);
        for (long n = 1; n <= 30; n += 4) {
            Real c1 = h1(y, p, n, kPrec).value;
            Real c2 = h2(y, p, n, kPrec).value;
            CHECK(prev1 <= c1);
            CHECK(prev2 <= c2);
            prev1 = c1;
            prev2 = c2;
        }
    }
}

TEST_CASE("classification of difference-space membership") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    SpaceId c0_fib{SpaceFamily::Null, SpaceLayer::FibonacciDomain};

    auto r1 = classify(Seq::unit(0), c0_fib, one, 32, kTol, kPrec);
    CHECK(r1.verdict.holds());

    // Prefix of the inverse image of e^(0): transform is the unit
    // coordinate followed by one boundary spike, then certified zeros.
    Seq x2(inverse_apply(Seq::unit(0), 32), TailSpec::zero());
    auto r2 = classify(x2, c0_fib, one, 32, kTol, kPrec);
    CHECK(r2.verdict.holds());

    SpaceId c_fib{SpaceFamily::Convergent, SpaceLayer::FibonacciDomain};
    auto r3 = classify(Seq::constant(Rat(1)), c_fib, one, 64, kTol, kPrec);
    CHECK(r3.verdict.holds());
    REQUIRE(r3.limit_exact.has_value());
    CHECK(*r3.limit_exact == Rat(-1));

    // The transform of the all-ones sequence stays away from zero.
    auto r4 = classify(Seq::constant(Rat(1)), c0_fib, one, 64, kTol, kPrec);
    CHECK(r4.verdict.fails());

    SpaceId linf_fib{SpaceFamily::Bounded, SpaceLayer::FibonacciDomain};
    auto r5 = classify(Seq::constant(Rat(1)), linf_fib, one, 64, kTol, kPrec);
    CHECK(r5.verdict.holds());

    SpaceId lp_fib{SpaceFamily::Summable, SpaceLayer::FibonacciDomain};
    auto r6 = classify(Seq::constant(Rat(1)), lp_fib, one, 64, kTol, kPrec);
    CHECK(r6.verdict.fails());
    auto r7 = classify(Seq::unit(0), lp_fib, one, 64, kTol, kPrec);
    CHECK(r7.verdict.holds());
}

TEST_CASE("maddox-layer classification and decaying exponents") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    SpaceId c0_m{SpaceFamily::Null, SpaceLayer::Maddox};
    Seq geo({}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(2))));
    CHECK(classify(geo, c0_m, one, 32, kTol, kPrec).verdict.holds());
    CHECK(classify(Seq::constant(Rat(2)), c0_m, one, 32, kTol, kPrec).verdict.fails());

    SpaceId c_m{SpaceFamily::Convergent, SpaceLayer::Maddox};
    auto r = classify(Seq::constant(Rat(2)), c_m, one, 32, kTol, kPrec);
    CHECK(r.verdict.holds());
    CHECK(*r.limit_exact == Rat(2));

    // Decaying exponents push powered geometric terms toward 1.
    ExponentSeq decay(Seq({Rat(1)}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(2)))));
    SpaceId lp_m{SpaceFamily::Summable, SpaceLayer::Maddox};
    auto rd = classify(geo, lp_m, decay, 32, kTol, kPrec);
    CHECK(rd.verdict.fails());
    auto rb = classify(geo, c0_m, decay, 32, kTol, kPrec);
    CHECK(rb.verdict.fails());
    CHECK_FALSE(classify(geo, c_m, decay, 32, kTol, kPrec).paranorm_guarantee);
}

TEST_CASE("transform closed forms behind the tail analysis") {
    // Constant tail v from index L: for k > L the transform equals
    // -v (1 + (-1)^{k+1}/(f_k f_{k+1})), by the substituted alternating
    // identity. Geometric tail (c, r): c r^{k-1-L} (r f_k/f_{k+1} - f_{k+1}/f_k).
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Rat v = make_rat(Int(static_cast<long>(rng() % 39) - 19), Int(1 + static_cast<long>(rng() % 11)));
        std::vector<Rat> prefix;
        for (int i = 0; i < 3; ++i)
            prefix.push_back(make_rat(Int(static_cast<long>(rng() % 21) - 10), Int(3)));
        const long L = static_cast<long>(prefix.size());
        Seq x(prefix, TailSpec::constant(v));
        auto y = fhat_apply(x, 40);
        for (long k = L + 1; k <= 40; ++k) {
            Int fk = fib(static_cast<std::size_t>(k));
            Int fk1 = fib(static_cast<std::size_t>(k) + 1);
            Rat unit = make_rat(Int(k % 2 == 0 ? -1 : 1), fk * fk1);
            CHECK(y[static_cast<std::size_t>(k)] == -v * (Rat(1) + unit));
        }

        Rat c = make_rat(Int(1 + static_cast<long>(rng() % 9)), Int(2));
        Rat r = make_rat(Int(static_cast<long>(rng() % 5) - 2), Int(7));
        Seq gx(prefix, TailSpec::geometric(c, r));
        auto gy = fhat_apply(gx, 40);
        for (long k = L + 1; k <= 40; ++k) {
            Rat w = r * fib_ratio(static_cast<std::size_t>(k)) -
                    fib_ratio_inv(static_cast<std::size_t>(k));
            CHECK(gy[static_cast<std::size_t>(k)] == c * rat_pow_int(r, k - 1 - L) * w);
        }
    }
}

TEST_CASE("membership paranorm estimates are nondecreasing in the truncation") {
    ExponentSeq p = ExponentSeq::constant(make_rat(Int(3), Int(2)));
    Seq x({Rat(2), Rat(-1)}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(4))));
    for (SpaceFamily fam : {SpaceFamily::Null, SpaceFamily::Convergent, SpaceFamily::Bounded,
                            SpaceFamily::Summable}) {
        Real prev(kPrec);
        for (long n = 2; n <= 40; n += 6) {
            auto r = classify(x, {fam, SpaceLayer::FibonacciDomain}, p, n, kTol, kPrec);
            CHECK(prev <= r.paranorm_estimate);
            prev = r.paranorm_estimate;
        }
    }
}

TEST_CASE("h1 with a geometric tail is truncation-independent") {
    ExponentSeq p = ExponentSeq::constant(Rat(2));
    Seq y({Rat(3)}, TailSpec::geometric(Rat(2), make_rat(Int(1), Int(3))));
    Real first = h1(y, p, 2, kPrec).value;
    for (long n : {5L, 17L, 40L}) CHECK(h1(y, p, n, kPrec).value == first);
}

TEST_CASE("h1 with a constant tail is truncation-independent") {
    ExponentSeq p = ExponentSeq::constant(make_rat(Int(3), Int(2)));
    Seq y({Rat(0)}, TailSpec::constant(Rat(5)));
    Real first = h1(y, p, 2, kPrec).value;
    for (long n : {4L, 16L, 64L}) CHECK(h1(y, p, n, kPrec).value == first);
    // The tail supremum is |5|^{p/M} = 5 exactly here (p = M = 3/2).
    CHECK(first == Real(Rat(5), kPrec));
}

TEST_CASE("the paranorm is not absolute") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto w = absolute_property_witness(one, 32, kPrec);
    CHECK(w.g_x == Real(make_rat(Int(5), Int(2)), kPrec));
    CHECK(w.g_abs_x == Real(make_rat(Int(3), Int(2)), kPrec));
    CHECK(w.g_x != w.g_abs_x);

    ExponentSeq two = ExponentSeq::constant(Rat(2));
    auto w2 = absolute_property_witness(two, 32, kPrec);
    CHECK(w2.g_x != w2.g_abs_x);

    // Symmetry: the witness value is unchanged under negation.
    Seq neg({Rat(-1), Rat(1)}, TailSpec::zero());
    CHECK(g_paranorm(neg, one, 32, kPrec) == w.g_x);
}
