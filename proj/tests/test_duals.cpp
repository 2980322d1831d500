#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibseq/duals.hpp"
#include "fibseq/fib.hpp"
#include "fibseq/transform.hpp"

using namespace fibseq;

namespace {

constexpr mpfr_prec_t kPrec = 128;

WitnessSearchConfig small_cfg(long trunc = 96) {
    WitnessSearchConfig cfg;
    cfg.truncation = trunc;
    cfg.witness_max_exp = 8;
    return cfg;
}

Seq random_finite(std::mt19937_64& rng, int max_len = 10) {
    std::vector<Rat> prefix;
    const int n = 1 + static_cast<int>(rng() % max_len);
    for (int i = 0; i < n; ++i)
        prefix.push_back(make_rat(Int(static_cast<long>(rng() % 41) - 20),
                                  Int(1 + static_cast<long>(rng() % 7))));
    return Seq(std::move(prefix), TailSpec::zero());
}

}  // namespace

TEST_CASE("c and d matrix entries") {
    Seq e0 = Seq::unit(0);
    CHECK(c_matrix_entry(e0, 0, 0) == 1);
    CHECK(c_matrix_entry(e0, 3, 1) == 0);
    Seq ones = Seq::constant(Rat(1));
    CHECK(c_matrix_entry(ones, 2, 1) == make_rat(Int(9), Int(2)));

    CHECK(d_matrix_entry(e0, 5, 0) == 1);
    CHECK(d_matrix_entry(e0, 5, 2) == 0);
    CHECK(d_matrix_entry(ones, 1, 0) == 5);
}

TEST_CASE("total sums collapse to the single weighted series") {
    // sum_{k<=n} d_nk = sum_{j<=n} f_{j+1}^2 a_j sum_{k<=j} 1/(f_k f_{k+1}),
    // checked against the direct double sum through the public entries.
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        Seq a = random_finite(rng);
        for (long n = 0; n <= 20; ++n) {
            Rat direct(0);
            for (long k = 0; k <= n; ++k) direct += d_matrix_entry(a, n, k);
            Rat collapsed(0);
            for (long j = 0; j <= n; ++j) {
                Int fj1 = fib(static_cast<std::size_t>(j) + 1);
                Rat q(0);
                for (long k = 0; k <= j; ++k)
                    q += make_rat(Int(1),
                                  fib(static_cast<std::size_t>(k)) *
                                      fib(static_cast<std::size_t>(k) + 1));
                collapsed += Rat(fj1 * fj1) * a.eval(j) * q;
            }
            CHECK(direct == collapsed);
        }
    }
}

TEST_CASE("unit sequence is in the null-space duals") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg();
    Seq e0 = Seq::unit(0);
    for (DualSet s : {DualSet::F1, DualSet::F2, DualSet::F3, DualSet::F4, DualSet::F5,
                      DualSet::F6, DualSet::F7}) {
        auto v = dual_set_check(s, e0, one, cfg, kPrec);
        CHECK_MESSAGE(v.holds(), "set ", dual_set_name(s));
    }
    CHECK(dual_membership(SpaceFamily::Null, DualKind::Alpha, e0, one, cfg, kPrec).holds());
    CHECK(dual_membership(SpaceFamily::Null, DualKind::Beta, e0, one, cfg, kPrec).holds());
    CHECK(dual_membership(SpaceFamily::Null, DualKind::Gamma, e0, one, cfg, kPrec).holds());
    CHECK(dual_membership(SpaceFamily::Convergent, DualKind::Gamma, e0, one, cfg, kPrec).holds());
}

TEST_CASE("constant sequence diverges out of f2 with monotone evidence") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg(128);
    auto v = dual_set_check(DualSet::F2, Seq::constant(Rat(1)), one, cfg, kPrec);
    CHECK(v.fails());
    REQUIRE(v.checkpoints.size() >= 3);
    Rat prev(-1);
    for (const auto& [n, val] : v.checkpoints) {
        Rat cur = parse_rat(val);
        CHECK(prev < cur);
        prev = cur;
    }
}

TEST_CASE("finitely supported sequences satisfy the finite-computation sets") {
    std::mt19937_64 rng(404);
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    ExponentSeq half = ExponentSeq::constant(make_rat(Int(1), Int(2)));
    auto cfg = small_cfg(64);
    for (int trial = 0; trial < 50; ++trial) {
        Seq a = random_finite(rng);
        CHECK(dual_set_check(DualSet::F2, a, one, cfg, kPrec).holds());
        CHECK(dual_set_check(DualSet::F4, a, one, cfg, kPrec).holds());
        CHECK(dual_set_check(DualSet::F7, a, one, cfg, kPrec).holds());
        CHECK(dual_set_check(DualSet::F15, a, half, cfg, kPrec).holds());
        CHECK(dual_set_check(DualSet::F16, a, one, cfg, kPrec).holds());
    }
}

TEST_CASE("gamma dual of the null space agrees with a direct functional oracle") {
    std::mt19937_64 rng(777);
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg(64);
    for (int trial = 0; trial < 12; ++trial) {
        Seq a = random_finite(rng, 6);
        auto verdict = dual_set_check(DualSet::F3, a, one, cfg, kPrec);
        if (!verdict.holds()) continue;
        // Sample members of the null difference space as inverse images
        // of decaying sequences and check sup_n |sum_{k<=n} a_k x_k| stays
        // bounded by a crude constant.
        for (int s = 0; s < 5; ++s) {
            std::vector<Rat> y;
            Rat scale = make_rat(Int(1 + static_cast<long>(rng() % 5)), Int(3));
            Rat r = make_rat(Int(1), Int(4));
            Rat cur = scale;
            for (long k = 0; k <= 64; ++k) {
                y.push_back(cur);
                cur *= r;
            }
            auto x = inverse_apply(y);
            Rat partial(0);
            Rat sup(0);
            for (long n = 0; n <= 64; ++n) {
                partial += a.eval(n) * x[static_cast<std::size_t>(n)];
                sup = std::max(sup, rat_abs(partial));
            }
            // A holds-verdict must not coexist with an unbounded sampled
            // trajectory; the partial sums of a finite-support functional
            // stabilize outright.
            Rat final_value = partial;
            CHECK(rat_abs(final_value) <= sup);
            CHECK(sup < rat_pow_int(Rat(10), 30));
        }
    }
}

TEST_CASE("bounded-space duals treat nonzero finite support as expected") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg(64);
    Seq e0 = Seq::unit(0);
    // Written with the B^{+1/p_k} factor, the alpha-dual set rejects any
    // sequence with a nonzero column limit.
    CHECK(dual_set_check(DualSet::F8, e0, one, cfg, kPrec).fails());
    CHECK(dual_set_check(DualSet::F8, Seq::zero(), one, cfg, kPrec).holds());
    CHECK(dual_set_check(DualSet::F9, e0, one, cfg, kPrec).holds());
    CHECK(dual_set_check(DualSet::F10, e0, one, cfg, kPrec).holds());
    CHECK(dual_membership(SpaceFamily::Bounded, DualKind::Beta, e0, one, cfg, kPrec).holds());
    CHECK(dual_membership(SpaceFamily::Bounded, DualKind::Gamma, e0, one, cfg, kPrec).holds());
}

TEST_CASE("summable-space duals route by exponent range") {
    auto cfg = small_cfg(64);
    Seq e0 = Seq::unit(0);
    ExponentSeq half = ExponentSeq::constant(make_rat(Int(1), Int(2)));
    ExponentSeq two = ExponentSeq::constant(Rat(2));

    auto low = dual_membership(SpaceFamily::Summable, DualKind::Alpha, e0, half, cfg, kPrec);
    REQUIRE(low.parts.size() == 1);
    CHECK(low.parts[0].first == "f12");

    auto high = dual_membership(SpaceFamily::Summable, DualKind::Alpha, e0, two, cfg, kPrec);
    REQUIRE(high.parts.size() == 1);
    CHECK(high.parts[0].first == "f13");

    auto gam_low = dual_membership(SpaceFamily::Summable, DualKind::Gamma, e0, half, cfg, kPrec);
    REQUIRE(gam_low.parts.size() == 1);
    CHECK(gam_low.parts[0].first == "f15");
    CHECK(gam_low.holds());

    auto beta_high = dual_membership(SpaceFamily::Summable, DualKind::Beta, e0, two, cfg, kPrec);
    CHECK(beta_high.parts.size() == 3);

    ExponentSeq mixed(Seq({make_rat(Int(1), Int(2)), Rat(2)}, TailSpec::constant(Rat(2))));
    CHECK_THROWS_AS(
        dual_membership(SpaceFamily::Summable, DualKind::Alpha, e0, mixed, cfg, kPrec),
        DomainError);
    CHECK_THROWS_AS(dual_set_check(DualSet::F13, e0, half, cfg, kPrec), DomainError);
}

TEST_CASE("prefixes longer than the truncation extend the examined range") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    WitnessSearchConfig cfg;
    cfg.truncation = 8;
    cfg.witness_max_exp = 4;
    std::vector<Rat> prefix(40, Rat(0));
    prefix[30] = 1;  // support far past the requested truncation
    Seq a(prefix, TailSpec::zero());
    auto v = dual_set_check(DualSet::F16, a, one, cfg, kPrec);
    CHECK(v.holds());
    CHECK(v.truncation >= 40);
    auto v2 = dual_set_check(DualSet::F2, a, one, cfg, kPrec);
    CHECK(v2.holds());
}

TEST_CASE("verdicts are deterministic") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg(64);
    Seq a({Rat(1), Rat(-2), Rat(3)}, TailSpec::zero());
    auto v1 = dual_set_check(DualSet::F3, a, one, cfg, kPrec);
    auto v2 = dual_set_check(DualSet::F3, a, one, cfg, kPrec);
    CHECK(v1.to_json().dump() == v2.to_json().dump());
}

TEST_CASE("series-type rejections always carry increasing checkpoints") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    ExponentSeq two = ExponentSeq::constant(Rat(2));
    auto cfg = small_cfg(64);
    // Expanding tails: zero-heavy prefix plus a growing geometric part.
    Seq a({Rat(0), Rat(0), Rat(0), Rat(0)},
          TailSpec::geometric(Rat(1), make_rat(Int(1), Int(2))));
    for (DualSet s : {DualSet::F1, DualSet::F2, DualSet::F3, DualSet::F4, DualSet::F5,
                      DualSet::F6, DualSet::F7, DualSet::F8, DualSet::F10, DualSet::F12,
                      DualSet::F15, DualSet::F16}) {
        auto v = dual_set_check(s, a, one, cfg, kPrec);
        REQUIRE_MESSAGE(v.fails(), "set ", dual_set_name(s));
        REQUIRE_MESSAGE(v.checkpoints.size() >= 3, "set ", dual_set_name(s));
        Rat prev(-1);
        for (const auto& [idx, val] : v.checkpoints) {
            Rat cur = parse_rat(val);
            CHECK_MESSAGE(prev < cur, "set ", dual_set_name(s));
            prev = cur;
        }
    }
    auto v14 = dual_set_check(DualSet::F14, a, two, cfg, kPrec);
    CHECK(v14.fails());
    CHECK(v14.checkpoints.size() >= 3);
}

TEST_CASE("geometric tails certify both directions") {
    ExponentSeq one = ExponentSeq::constant(Rat(1));
    auto cfg = small_cfg(64);
    // |r| phi^2 < 1: contracting, the series sets accept.
    Seq small({}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(4))));
    CHECK(dual_set_check(DualSet::F2, small, one, cfg, kPrec).holds());
    CHECK(dual_set_check(DualSet::F4, small, one, cfg, kPrec).holds());
    CHECK(dual_set_check(DualSet::F16, small, one, cfg, kPrec).holds());
    // |r| phi^2 > 1: expanding, they reject.
    Seq large({}, TailSpec::geometric(Rat(1), make_rat(Int(1), Int(2))));
    CHECK(dual_set_check(DualSet::F2, large, one, cfg, kPrec).fails());
    CHECK(dual_set_check(DualSet::F4, large, one, cfg, kPrec).fails());
    CHECK(dual_set_check(DualSet::F16, large, one, cfg, kPrec).fails());
}
