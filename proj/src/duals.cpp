#include "fibseq/duals.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "fibseq/fib.hpp"
#include "fibseq/transform.hpp"

namespace fibseq {

namespace {

// Shared exact precomputation for one (a, truncation) pair. Writing
// t_j = f_{j+1}^2 a_j, the cumulative matrix satisfies
//   d_nk = (T(n) - T(k-1)) / (f_k f_{k+1}),   T(n) = sum_{j<=n} t_j,
// so everything reduces to prefix sums of t plus the weight table
// Q(n) = sum_{k<=n} 1/(f_k f_{k+1}).
struct Context {
    const Seq& a;
    long N;
    std::vector<Rat> t;      // t_j, j = 0..N
    std::vector<Rat> T;      // T[j+1] = T(j), T[0] = 0
    std::vector<Rat> Q;      // Q(n)
    std::vector<Rat> wfib;   // 1/(f_k f_{k+1})

    // Behaviour of |t_j| beyond the truncation, certified from the tail
    // spec and the Fibonacci ratio enclosure.
    enum class Growth { ZeroTail, Contracting, Expanding, Unknown };
    Growth growth = Growth::Unknown;
    long zero_from = 0;   // ZeroTail: t_j = 0 for j >= this
    Rat rho_hi;           // Contracting: |t_{j+1}| <= rho_hi |t_j|, j > N
    Rat rho_lo;           // Expanding:   |t_{j+1}| >= rho_lo |t_j|, j > N

    // The effective truncation always covers the prefix, so zero-tail
    // stabilization claims are exact.
    Context(const Seq& a_, long n) : a(a_), N(std::max(n, a_.prefix_length())) {
        t.reserve(N + 1);
        T.assign(1, Rat(0));
        Q.reserve(N + 1);
        wfib.reserve(N + 1);
        Rat q(0);
        for (long j = 0; j <= N; ++j) {
            Int fj1 = fib(static_cast<std::size_t>(j) + 1);
            Rat w = make_rat(Int(1), fib(static_cast<std::size_t>(j)) * fj1);
            wfib.push_back(w);
            q += w;
            Q.push_back(q);
            Rat term = Rat(fj1 * fj1) * a.eval(j);
            t.push_back(term);
            T.push_back(T.back() + term);
        }
        if (auto z = a.zero_from()) {
            growth = Growth::ZeroTail;
            zero_from = *z;
        } else {
            auto [rlo, rhi] = fib_ratio_bounds(static_cast<std::size_t>(N) + 2);
            if (a.tail().kind == TailKind::Constant) {
                growth = Growth::Expanding;
                rho_lo = rlo * rlo;
            } else {
                const Rat ar = rat_abs(a.tail().r);
                Rat hi = ar * rhi * rhi;
                Rat lo = ar * rlo * rlo;
                if (hi < 1) {
                    growth = Growth::Contracting;
                    rho_hi = hi;
                } else if (lo > 1) {
                    growth = Growth::Expanding;
                    rho_lo = lo;
                } else {
                    growth = Growth::Unknown;
                }
            }
        }
    }

    Rat prefix_T(long n) const {
        long idx = std::clamp(n + 1, 0L, static_cast<long>(T.size()) - 1);
        return T[static_cast<std::size_t>(idx)];
    }

    Rat d(long n, long k) const {
        if (k > n || k < 0) return Rat(0);
        return (prefix_T(n) - prefix_T(k - 1)) * wfib[static_cast<std::size_t>(k)];
    }

    // Certified bound on sum_{j>n} |t_j| for n >= N (Contracting only).
    Rat tail_abs_from(long n) const {
        Rat first = rat_abs(t_at(n + 1));
        return first / (Rat(1) - rho_hi);
    }

    // Exact term beyond the stored range (tail formula).
    Rat t_at(long j) const {
        if (j <= N) return t[static_cast<std::size_t>(j)];
        Int fj1 = fib(static_cast<std::size_t>(j) + 1);
        return Rat(fj1 * fj1) * a.eval(j);
    }

    // Q(n) is increasing with a certified limit bound.
    Rat q_upper() const {
        Int a1 = fib(static_cast<std::size_t>(N) + 1);
        Int a2 = fib(static_cast<std::size_t>(N) + 2);
        return Q.back() + make_rat(Int(2), a1 * a2);
    }

    // Enclosure of the column limit delta_k = lim_n d_nk, when it exists.
    struct Enclosure {
        Rat lo, hi;
        bool valid = false;
        bool excludes_zero() const { return valid && (lo > 0 || hi < 0); }
        Rat center() const { return (lo + hi) / 2; }
    };
    Enclosure delta(long k) const {
        Enclosure e;
        if (growth == Growth::ZeroTail) {
            Rat v = d(std::max(N, zero_from), k);
            e = {v, v, true};
        } else if (growth == Growth::Contracting) {
            Rat center = (prefix_T(N) - prefix_T(k - 1)) * wfib[static_cast<std::size_t>(k)];
            Rat err = tail_abs_from(N) * wfib[static_cast<std::size_t>(k)];
            e = {center - err, center + err, true};
        }
        return e;
    }
};

std::vector<unsigned long> grid_of(const WitnessSearchConfig& cfg) { return cfg.witness_grid(); }

// B^{-1/p_k} (sign = -1) or B^{+1/p_k} (sign = +1) for k = 0..N.
std::vector<Real> power_weights(unsigned long b, const ExponentSeq& p, long N, int sign,
                                mpfr_prec_t prec) {
    std::vector<Real> w;
    w.reserve(static_cast<std::size_t>(N) + 1);
    Real base(Rat(static_cast<long>(b)), prec);
    for (long k = 0; k <= N; ++k) {
        Rat e = Rat(sign) / p.at(k);
        w.push_back(Real::pow(base, Real(e, prec)));
    }
    return w;
}

// Strictly increasing checkpoints of the absolute partial sums
// sum_{j<=n} |t_j|: the divergence evidence attached wherever the
// expanding-tail certificate fires. Zero terms are skipped so the
// recorded values strictly increase.
std::vector<std::pair<long, std::string>> expanding_checkpoints(const Context& ctx) {
    std::vector<std::pair<long, Rat>> increases;
    Rat run(0);
    for (long j = 0; j <= ctx.N; ++j) {
        Rat a = rat_abs(ctx.t[static_cast<std::size_t>(j)]);
        if (a > 0) {
            run += a;
            increases.emplace_back(j, run);
        }
    }
    std::vector<std::pair<long, std::string>> out;
    const std::size_t m = increases.size();
    if (m == 0) return out;
    std::size_t prev = m;  // sentinel
    for (std::size_t q = 1; q <= 4; ++q) {
        std::size_t idx = (q * m) / 4;
        if (idx > 0) --idx;
        if (idx == prev) continue;
        prev = idx;
        out.emplace_back(increases[idx].first, rat_str(increases[idx].second));
    }
    return out;
}

// Series sum_n |t_n| W(n) with a nonnegative nondecreasing bounded
// weight W. Drives F1 (W = weighted subset sums) and F2 (W = Q).
Verdict series_with_weight(const Context& ctx, const std::vector<Real>& weight_vals,
                           const Real& weight_upper, const WitnessSearchConfig& cfg,
                           mpfr_prec_t prec, const std::string& weight_note) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    std::vector<Rat> abs_t;
    abs_t.reserve(ctx.t.size());
    for (const auto& term : ctx.t) abs_t.push_back(rat_abs(term));

    Real head(prec);
    std::vector<Rat> partial_like;  // rational shadow for checkpoint reporting
    Rat shadow(0);
    for (std::size_t j = 0; j < abs_t.size(); ++j) {
        head += Real(abs_t[j], prec) * weight_vals[j];
        shadow += abs_t[j];
        partial_like.push_back(shadow);
    }

    switch (ctx.growth) {
        case Context::Growth::ZeroTail:
            v.status = Status::HoldsAtTruncation;
            v.margin = head.str();
            v.notes.push_back("finitely supported: series is a finite sum");
            break;
        case Context::Growth::Contracting: {
            Real bound = head + Real(ctx.tail_abs_from(ctx.N), prec) * weight_upper;
            v.status = Status::HoldsAtTruncation;
            v.margin = bound.str();
            v.notes.push_back("geometric tail domination, ratio " + rat_approx_str(ctx.rho_hi));
            break;
        }
        case Context::Growth::Expanding:
            v.status = Status::FailsAtTruncation;
            v.margin = head.str();
            v.notes.push_back("terms grow by factor >= " + rat_approx_str(ctx.rho_lo) +
                              " beyond the truncation; divergence is witness-independent");
            v.checkpoints = expanding_checkpoints(ctx);
            break;
        case Context::Growth::Unknown: {
            auto probe = detect_blowup(partial_like, cfg.blowup_threshold);
            if (probe.exceeded && probe.monotone_checkpoints) {
                v.status = Status::FailsAtTruncation;
                v.checkpoints = probe.checkpoints;
                v.notes.push_back("monotone partial sums exceeded the blow-up threshold");
            } else {
                v.margin = head.str();
                v.notes.push_back("tail growth enclosure straddles 1");
            }
            break;
        }
    }
    if (!weight_note.empty()) v.notes.push_back(weight_note);
    return v;
}

// Supremum over n of s_n = sum_{k<=n} |d_nk| w_k for per-k weights w
// subject to w_k <= w_cap (used with w_k = B^{-1/p_k} <= 1 for B >= 2,
// and with w_k = B^{+1/p_k} <= B^{1/glb} when inf p > 0).
struct RowSupOutcome {
    Status status = Status::Inconclusive;
    Real value;  // certified bound (holds) or attained head sup
    std::string note;
    std::vector<std::pair<long, std::string>> checkpoints;
};
RowSupOutcome weighted_row_sup(const Context& ctx, const std::vector<Real>& w,
                               const std::optional<Real>& w_cap,
                               const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    RowSupOutcome out{Status::Inconclusive, Real(prec), {}, {}};
    std::vector<Rat> sup_shadow;
    Real sup(prec);
    for (long n = 0; n <= ctx.N; ++n) {
        Real s(prec);
        Rat shadow(0);
        for (long k = 0; k <= n; ++k) {
            Rat dv = rat_abs(ctx.d(n, k));
            s += Real(dv, prec) * w[static_cast<std::size_t>(k)];
            shadow += dv;
        }
        sup = Real::max(sup, s);
        sup_shadow.push_back(shadow);
    }
    switch (ctx.growth) {
        case Context::Growth::ZeroTail:
            out.status = Status::HoldsAtTruncation;
            out.value = sup;
            out.note = "rows stabilize at the support end (index " +
                       std::to_string(ctx.zero_from) + ")";
            break;
        case Context::Growth::Contracting: {
            if (!w_cap) {
                out.value = sup;
                out.note = "weights unbounded over k (inf p = 0); no tail certificate";
                break;
            }
            // |d_nk| <= Dbar_k uniformly in n; rows beyond the truncation
            // are bounded by the full weighted Dbar sum.
            Rat tail_n = ctx.tail_abs_from(ctx.N);
            Real bound(prec);
            for (long k = 0; k <= ctx.N; ++k) {
                Rat tmax(0);
                for (long n = k; n <= ctx.N; ++n)
                    tmax = std::max(tmax, rat_abs(ctx.prefix_T(n) - ctx.prefix_T(k - 1)));
                tmax += tail_n;
                bound += Real(tmax * ctx.wfib[static_cast<std::size_t>(k)], prec) *
                         w[static_cast<std::size_t>(k)];
            }
            // Columns beyond the truncation contribute at most the
            // oscillation bound times the summable Fibonacci weights.
            Int f1 = fib(static_cast<std::size_t>(ctx.N) + 1);
            Int f2 = fib(static_cast<std::size_t>(ctx.N) + 2);
            bound += Real(tail_n * make_rat(Int(2), f1 * f2), prec) * *w_cap;
            out.status = Status::HoldsAtTruncation;
            out.value = Real::max(sup, bound);
            out.note = "uniform column bounds from the geometric tail";
            break;
        }
        case Context::Growth::Expanding: {
            out.status = Status::FailsAtTruncation;
            out.value = sup;
            out.note = "row increments |t_{n+1}|/(f_k f_{k+1}) grow without bound";
            out.checkpoints = expanding_checkpoints(ctx);
            break;
        }
        case Context::Growth::Unknown: {
            auto probe = detect_blowup(sup_shadow, cfg.blowup_threshold);
            if (probe.exceeded && probe.monotone_checkpoints) {
                out.status = Status::FailsAtTruncation;
                out.checkpoints = probe.checkpoints;
                out.note = "monotone blow-up of absolute row sums";
            } else {
                out.value = sup;
                out.note = "tail growth enclosure straddles 1";
            }
            break;
        }
    }
    return out;
}

Real weight_cap_for(const ExponentSeq& p, unsigned long b, int sign, mpfr_prec_t prec,
                    bool* ok) {
    // sign -1: B^{-1/p_k} <= 1. sign +1: B^{1/p_k} <= B^{1/glb} iff glb > 0.
    if (sign < 0) {
        *ok = true;
        return Real(1l, prec);
    }
    if (p.glb() > 0) {
        *ok = true;
        return Real::pow(Real(Rat(static_cast<long>(b)), prec), Real(Rat(1) / p.glb(), prec));
    }
    *ok = false;
    return Real(prec);
}

// F1: series over n of |a_n| f_{n+1}^2 * (weighted subset sums). The
// summands are nonnegative, so the full index set attains the supremum
// over finite subsets; small subsets are also enumerated for evidence.
Verdict check_f1(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                 mpfr_prec_t prec) {
    // One grid point decides: a finite bound at B = 2 is an existential
    // witness, and divergence comes from the k = 0 summand whose weight
    // is a fixed positive factor for every B.
    const unsigned long b = grid_of(cfg).front();
    auto w = power_weights(b, p, ctx.N, -1, prec);
    std::vector<Real> wsum;
    Real acc(prec);
    for (long k = 0; k <= ctx.N; ++k) {
        acc += Real(ctx.wfib[static_cast<std::size_t>(k)], prec) * w[static_cast<std::size_t>(k)];
        wsum.push_back(acc);
    }
    Int f1 = fib(static_cast<std::size_t>(ctx.N) + 1);
    Int f2 = fib(static_cast<std::size_t>(ctx.N) + 2);
    Real upper = acc + Real(make_rat(Int(2), f1 * f2), prec);
    Verdict v = series_with_weight(ctx, wsum, upper, cfg, prec,
                                   "greedy subset = full index set (nonnegative summands)");
    v.witnesses["B"] = std::to_string(b);
    if (v.fails()) v.notes.push_back("k = 0 summand alone diverges for every B");
    return v;
}

Verdict check_f2(const Context& ctx, const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    std::vector<Real> q_weights;
    q_weights.reserve(ctx.Q.size());
    for (const auto& q : ctx.Q) q_weights.push_back(Real(q, prec));
    return series_with_weight(ctx, q_weights, Real(ctx.q_upper(), prec), cfg, prec, {});
}

Verdict row_sup_union(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                      mpfr_prec_t prec, int sign) {
    // Existential union: a single witness certifies, and divergence under
    // the fixed positive k = 0 weight refutes every B.
    const unsigned long b = grid_of(cfg).front();
    auto w = power_weights(b, p, ctx.N, sign, prec);
    bool cap_ok = false;
    Real cap = weight_cap_for(p, b, sign, prec, &cap_ok);
    auto out =
        weighted_row_sup(ctx, w, cap_ok ? std::optional<Real>(cap) : std::nullopt, cfg, prec);
    Verdict v = Verdict::inconclusive_at(ctx.N);
    v.status = out.status;
    v.margin = out.value.str();
    v.checkpoints = out.checkpoints;
    if (!out.note.empty()) v.notes.push_back(out.note);
    v.witnesses["B"] = std::to_string(b);
    return v;
}

Verdict row_sup_intersection(const Context& ctx, const ExponentSeq& p,
                             const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    // All grid B must admit the bound (factor B^{+1/p_k}).
    Verdict result = Verdict::inconclusive_at(ctx.N);
    std::vector<std::pair<std::string, Verdict>> parts;
    for (unsigned long b : grid_of(cfg)) {
        auto w = power_weights(b, p, ctx.N, +1, prec);
        bool cap_ok = false;
        Real cap = weight_cap_for(p, b, +1, prec, &cap_ok);
        auto out = weighted_row_sup(ctx, w, cap_ok ? std::optional<Real>(cap) : std::nullopt,
                                    cfg, prec);
        Verdict v = Verdict::inconclusive_at(ctx.N);
        v.status = out.status;
        v.margin = out.value.str();
        v.checkpoints = out.checkpoints;
        if (!out.note.empty()) v.notes.push_back(out.note);
        parts.emplace_back("B=" + std::to_string(b), v);
        if (v.fails()) break;  // a refuted grid point refutes the intersection
    }
    result = Verdict::combine(std::move(parts), ctx.N);
    result.notes.push_back("intersection over the recorded witness grid");
    return result;
}

// F4 / F16 column-limit machinery: lim_n d_nk for each k.
Verdict column_limits(const Context& ctx, const WitnessSearchConfig& cfg, bool series_form,
                      mpfr_prec_t prec) {
    (void)prec;
    Verdict v = Verdict::inconclusive_at(ctx.N);
    switch (ctx.growth) {
        case Context::Growth::ZeroTail: {
            v.status = Status::HoldsAtTruncation;
            long kmax = std::min(ctx.N, 8L);
            for (long k = 0; k <= kmax; ++k)
                v.witnesses["alpha_" + std::to_string(k)] = rat_str(ctx.delta(k).center());
            v.notes.push_back("columns stabilize exactly at the support end");
            break;
        }
        case Context::Growth::Contracting: {
            v.status = Status::HoldsAtTruncation;
            v.margin = rat_str(ctx.tail_abs_from(ctx.N));
            v.notes.push_back(
                "Cauchy tail bound decays geometrically; limits enclosed within margin");
            long kmax = std::min(ctx.N, 8L);
            for (long k = 0; k <= kmax; ++k)
                v.witnesses["alpha_" + std::to_string(k)] = rat_str(ctx.delta(k).center());
            break;
        }
        case Context::Growth::Expanding:
            v.status = Status::FailsAtTruncation;
            v.notes.push_back(series_form ? "series terms do not vanish"
                                          : "column increments grow without bound");
            v.checkpoints = expanding_checkpoints(ctx);
            break;
        case Context::Growth::Unknown: {
            // Data-driven Cauchy probe on the first few columns.
            bool all_stable = true;
            Rat worst(0);
            for (long k = 0; k <= std::min(ctx.N, 8L); ++k) {
                std::vector<Rat> col;
                for (long n = k; n <= ctx.N; ++n) col.push_back(ctx.d(n, k));
                auto probe = detect_limit(col, cfg.tol);
                all_stable = all_stable && probe.stabilized;
                worst = std::max(worst, probe.max_deviation);
            }
            if (all_stable) {
                v.status = Status::HoldsAtTruncation;
                v.notes.push_back("data-driven: last-quarter Cauchy stabilization");
            }
            v.margin = rat_str(worst);
            break;
        }
    }
    return v;
}

Verdict check_f5(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                 mpfr_prec_t prec) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    if (ctx.growth == Context::Growth::Expanding) {
        v.status = Status::FailsAtTruncation;
        v.notes.push_back("no column limits exist: residual rows cannot stay bounded");
        v.checkpoints = expanding_checkpoints(ctx);
        return v;
    }
    if (ctx.growth == Context::Growth::Unknown) {
        v.notes.push_back("tail growth enclosure straddles 1");
        return v;
    }
    for (unsigned long b : grid_of(cfg)) {
        auto w = power_weights(b, p, ctx.N, -1, prec);
        Real sup(prec);
        for (long n = 0; n <= ctx.N; ++n) {
            Real s(prec);
            for (long k = 0; k <= n; ++k) {
                auto enc = ctx.delta(k);
                Rat dev = rat_abs(ctx.d(n, k) - enc.center());
                if (ctx.growth == Context::Growth::Contracting)
                    dev += (enc.hi - enc.lo) / 2;
                s += Real(dev, prec) * w[static_cast<std::size_t>(k)];
            }
            sup = Real::max(sup, s);
        }
        if (ctx.growth == Context::Growth::Contracting) {
            // Rows beyond the truncation deviate by at most the tail
            // oscillation against summable weights.
            Int f1 = fib(static_cast<std::size_t>(ctx.N) + 1);
            Rat wq = ctx.Q.back() + make_rat(Int(2), f1 * fib(static_cast<std::size_t>(ctx.N) + 2));
            sup = Real::max(sup, Real(Rat(2) * ctx.tail_abs_from(ctx.N) * wq, prec));
        }
        v.status = Status::HoldsAtTruncation;
        v.witnesses["B"] = std::to_string(b);
        v.margin = sup.str();
        v.notes.push_back(ctx.growth == Context::Growth::ZeroTail
                              ? "alpha_k realized exactly at the support end"
                              : "alpha_k enclosed from the geometric tail");
        break;
    }
    return v;
}

// F6 (limit of total sums exists) and F7 (total sums bounded); the
// double sum collapses to the single series sum_j t_j Q(j).
Verdict check_f6_f7(const Context& ctx, const WitnessSearchConfig& cfg, mpfr_prec_t prec,
                    bool want_limit) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    std::vector<Rat> totals;
    Rat run(0);
    for (long j = 0; j <= ctx.N; ++j) {
        run += ctx.t[static_cast<std::size_t>(j)] * ctx.Q[static_cast<std::size_t>(j)];
        totals.push_back(run);
    }
    Rat head_sup(0);
    for (const auto& s : totals) head_sup = std::max(head_sup, rat_abs(s));
    switch (ctx.growth) {
        case Context::Growth::ZeroTail:
            v.status = Status::HoldsAtTruncation;
            if (want_limit) v.witnesses["alpha"] = rat_str(totals.back());
            v.margin = rat_str(want_limit ? totals.back() : head_sup);
            v.notes.push_back("totals stabilize at the support end");
            break;
        case Context::Growth::Contracting: {
            Rat bound = ctx.tail_abs_from(ctx.N) * ctx.q_upper();
            v.status = Status::HoldsAtTruncation;
            if (want_limit) {
                v.witnesses["alpha"] = rat_str(totals.back());
                v.margin = rat_str(bound);
                v.notes.push_back("limit enclosed within the geometric tail bound");
            } else {
                v.margin = rat_str(head_sup + bound);
            }
            break;
        }
        case Context::Growth::Expanding: {
            v.status = Status::FailsAtTruncation;
            v.notes.push_back("series terms t_j Q(j) do not vanish");
            v.checkpoints = expanding_checkpoints(ctx);
            break;
        }
        case Context::Growth::Unknown: {
            std::vector<Rat> abs_tot;
            for (const auto& s : totals) abs_tot.push_back(rat_abs(s));
            auto probe = detect_blowup(abs_tot, cfg.blowup_threshold);
            if (probe.exceeded && probe.monotone_checkpoints) {
                v.status = Status::FailsAtTruncation;
                v.checkpoints = probe.checkpoints;
            } else if (want_limit) {
                auto lim = detect_limit(totals, cfg.tol);
                if (lim.stabilized) {
                    v.status = Status::HoldsAtTruncation;
                    v.witnesses["alpha"] = rat_str(lim.candidate);
                    v.margin = rat_str(lim.max_deviation);
                    v.notes.push_back("data-driven Cauchy stabilization");
                }
            } else {
                v.margin = rat_str(head_sup);
            }
            break;
        }
    }
    (void)prec;
    return v;
}

// Subset-sum conditions over rows (F8, F12, F13): once columns
// stabilize, m distinct rows past the support sum to m * delta_k, so any
// nonzero column limit refutes membership. A capped exhaustive sweep
// over small subsets supplies attained values for evidence.
struct SubsetEvidence {
    Rat best_value;
    std::string best_set;
};
SubsetEvidence subset_sweep(const Context& ctx, int subset_max) {
    SubsetEvidence ev{Rat(0), "{}"};
    const long kmax = std::min<long>(subset_max, std::min(ctx.N, 12L));
    const long rows = std::min(ctx.N, 32L);
    const unsigned long count = 1ul << (kmax + 1);
    for (unsigned long mask = 1; mask < count; ++mask) {
        Rat total(0);
        for (long n = 0; n <= rows; ++n) {
            Rat inner(0);
            for (long k = 0; k <= kmax && k <= n; ++k)
                if (mask & (1ul << k)) inner += ctx.d(n, k);
            total += rat_abs(inner);
        }
        if (total > ev.best_value) {
            ev.best_value = total;
            std::string s = "{";
            for (long k = 0; k <= kmax; ++k)
                if (mask & (1ul << k)) s += std::to_string(k) + ",";
            s.back() = '}';
            ev.best_set = s;
        }
    }
    return ev;
}

Verdict check_f8(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                 mpfr_prec_t prec) {
    (void)p;
    (void)prec;
    Verdict v = Verdict::inconclusive_at(ctx.N);
    if (ctx.growth == Context::Growth::Expanding) {
        v.status = Status::FailsAtTruncation;
        v.notes.push_back("singleton subsets already diverge: column terms are unbounded");
        v.checkpoints = expanding_checkpoints(ctx);
        return v;
    }
    // Find a column whose limit is certifiably nonzero.
    for (long k = 0; k <= ctx.N; ++k) {
        auto enc = ctx.delta(k);
        if (enc.excludes_zero()) {
            v.status = Status::FailsAtTruncation;
            v.extremal_index = k;
            v.margin = rat_str(enc.lo > 0 ? enc.lo : -enc.hi);
            v.notes.push_back(
                "rows past the support contribute the fixed column limit; the series over n "
                "of the singleton subset diverges for every B");
            std::vector<std::pair<long, Rat>> increases;
            Rat run(0);
            for (long n = k; n <= ctx.N; ++n) {
                Rat inc = rat_abs(ctx.d(n, k));
                if (inc > 0) {
                    run += inc;
                    increases.emplace_back(n, run);
                }
            }
            const std::size_t m = increases.size();
            std::size_t prev_idx = m;
            for (std::size_t q = 1; q <= 4 && m > 0; ++q) {
                std::size_t idx = (q * m) / 4;
                if (idx > 0) --idx;
                if (idx == prev_idx) continue;
                prev_idx = idx;
                v.checkpoints.emplace_back(increases[idx].first, rat_str(increases[idx].second));
            }
            return v;
        }
    }
    if (ctx.growth == Context::Growth::ZeroTail) {
        // All column limits are exactly zero, which forces a = 0.
        v.status = Status::HoldsAtTruncation;
        v.margin = "0";
        v.notes.push_back("all column limits vanish (zero sequence)");
        v.witnesses["B_grid_max"] = std::to_string(grid_of(cfg).back());
        return v;
    }
    auto ev = subset_sweep(ctx, cfg.subset_max);
    v.margin = rat_str(ev.best_value);
    v.notes.push_back("exhaustive subset sweep peak at K = " + ev.best_set);
    return v;
}

Verdict check_f12_f13(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                      mpfr_prec_t prec, bool conjugate_form) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    if (conjugate_form && !p.all_greater_than_one())
        throw DomainError("conjugate exponents need p_k > 1 everywhere");
    if (ctx.growth == Context::Growth::Expanding) {
        v.status = Status::FailsAtTruncation;
        v.notes.push_back("column terms unbounded: singleton subsets refute membership");
        v.checkpoints = expanding_checkpoints(ctx);
        return v;
    }
    for (long k = 0; k <= ctx.N; ++k) {
        auto enc = ctx.delta(k);
        if (enc.excludes_zero()) {
            v.status = Status::FailsAtTruncation;
            v.extremal_index = k;
            Rat base = enc.lo > 0 ? enc.lo : -enc.hi;
            v.margin = rat_str(base);
            v.notes.push_back(
                "m rows past the support sum to m times the column limit; powers of the "
                "growing subset sums are unbounded");
            for (long m = 1; m <= 4; ++m)
                v.checkpoints.emplace_back(m, rat_str(Rat(m) * base));
            return v;
        }
    }
    if (ctx.growth == Context::Growth::ZeroTail) {
        v.status = Status::HoldsAtTruncation;
        v.margin = "0";
        v.notes.push_back("all column limits vanish (zero sequence)");
        if (conjugate_form) v.witnesses["B"] = "2";
        return v;
    }
    auto ev = subset_sweep(ctx, cfg.subset_max);
    v.margin = rat_str(ev.best_value);
    v.notes.push_back("exhaustive subset sweep peak at K = " + ev.best_set);
    (void)prec;
    return v;
}

Verdict check_f10(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                  mpfr_prec_t prec) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    switch (ctx.growth) {
        case Context::Growth::ZeroTail: {
            v.status = Status::HoldsAtTruncation;
            v.margin = "0";
            v.notes.push_back("residuals vanish exactly past the support end");
            v.witnesses["B_grid_max"] = std::to_string(grid_of(cfg).back());
            break;
        }
        case Context::Growth::Contracting: {
            if (p.glb() <= 0) {
                v.notes.push_back("inf p = 0: weights B^{1/p_k} are unbounded; no certificate");
                break;
            }
            // quantity(n) <= tail_abs_from(n) * sum_k B^{1/p_k}/(f_k f_{k+1})
            // which decays geometrically; certify at the largest grid B.
            unsigned long bmax = grid_of(cfg).back();
            auto w = power_weights(bmax, p, ctx.N, +1, prec);
            Real wsum(prec);
            for (long k = 0; k <= ctx.N; ++k)
                wsum += Real(ctx.wfib[static_cast<std::size_t>(k)], prec) *
                        w[static_cast<std::size_t>(k)];
            bool cap_ok = false;
            Real cap = weight_cap_for(p, bmax, +1, prec, &cap_ok);
            Int f1 = fib(static_cast<std::size_t>(ctx.N) + 1);
            Int f2 = fib(static_cast<std::size_t>(ctx.N) + 2);
            wsum += cap * Real(make_rat(Int(2), f1 * f2), prec);
            Real bound = Real(ctx.tail_abs_from(ctx.N), prec) * wsum;
            v.status = Status::HoldsAtTruncation;
            v.margin = bound.str();
            v.notes.push_back("residual bound decays geometrically in n (largest grid B shown)");
            break;
        }
        case Context::Growth::Expanding:
            v.status = Status::FailsAtTruncation;
            v.notes.push_back(
                "consecutive-row increments diverge, so the residual sums cannot vanish for "
                "any alpha");
            v.checkpoints = expanding_checkpoints(ctx);
            break;
        case Context::Growth::Unknown:
            v.notes.push_back("tail growth enclosure straddles 1");
            break;
    }
    return v;
}

// F15: sup over n, k of |d_nk|^{p_k}.
Verdict check_f15(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                  mpfr_prec_t prec) {
    Verdict v = Verdict::inconclusive_at(ctx.N);
    Real sup(prec);
    long arg_n = -1;
    for (long n = 0; n <= ctx.N; ++n)
        for (long k = 0; k <= n; ++k) {
            Real term = Real::pow_abs(ctx.d(n, k), p.at(k), prec);
            if (sup < term) {
                sup = term;
                arg_n = n;
            }
        }
    switch (ctx.growth) {
        case Context::Growth::ZeroTail:
            v.status = Status::HoldsAtTruncation;
            v.margin = sup.str();
            v.extremal_index = arg_n;
            v.notes.push_back("entries stabilize at the support end");
            break;
        case Context::Growth::Contracting: {
            // |d_nk| bounded by head oscillation plus tail bound; powers of
            // a bounded base with bounded exponents stay bounded.
            Rat dbar(0);
            for (long k = 0; k <= ctx.N; ++k) {
                Rat m(0);
                for (long n = k; n <= ctx.N; ++n) m = std::max(m, rat_abs(ctx.d(n, k)));
                dbar = std::max(dbar, Rat(m + ctx.tail_abs_from(ctx.N) *
                                              ctx.wfib[static_cast<std::size_t>(k)]));
            }
            Real base_bound(std::max(dbar, Rat(1)), prec);
            Real bound = Real::pow(base_bound, Real(p.sup(), prec));
            v.status = Status::HoldsAtTruncation;
            v.margin = Real::max(sup, bound).str();
            v.notes.push_back("uniform entry bound from the geometric tail");
            break;
        }
        case Context::Growth::Expanding:
            v.status = Status::FailsAtTruncation;
            v.margin = sup.str();
            v.notes.push_back("entry magnitudes grow without bound down column 0");
            v.checkpoints = expanding_checkpoints(ctx);
            break;
        case Context::Growth::Unknown: {
            std::vector<Rat> col0;
            for (long n = 0; n <= ctx.N; ++n) col0.push_back(rat_abs(ctx.d(n, 0)));
            auto probe = detect_blowup(col0, cfg.blowup_threshold);
            if (probe.exceeded && probe.monotone_checkpoints) {
                v.status = Status::FailsAtTruncation;
                v.checkpoints = probe.checkpoints;
            } else {
                v.margin = sup.str();
            }
            break;
        }
    }
    return v;
}

// F14 under conjugate exponents: exists B with sup_n sum_k (|d_nk|/B)^{p'_k}.
Verdict check_f14(const Context& ctx, const ExponentSeq& p, const WitnessSearchConfig& cfg,
                  mpfr_prec_t prec) {
    if (!p.all_greater_than_one())
        throw DomainError("conjugate exponents need p_k > 1 everywhere");
    Verdict v = Verdict::inconclusive_at(ctx.N);
    if (ctx.growth == Context::Growth::Expanding) {
        v.status = Status::FailsAtTruncation;
        v.notes.push_back("row increments diverge for every B");
        v.checkpoints = expanding_checkpoints(ctx);
        return v;
    }
    if (ctx.growth == Context::Growth::Unknown) {
        v.notes.push_back("tail growth enclosure straddles 1");
        return v;
    }
    const unsigned long b = grid_of(cfg).front();
    Real binv(make_rat(Int(1), Int(static_cast<long>(b))), prec);
    Real sup(prec);
    for (long n = 0; n <= ctx.N; ++n) {
        Real s(prec);
        for (long k = 0; k <= n; ++k) {
            Real base = Real(rat_abs(ctx.d(n, k)), prec) * binv;
            s += Real::pow(base, Real(p.conjugate(k), prec));
        }
        sup = Real::max(sup, s);
    }
    if (ctx.growth == Context::Growth::Contracting) {
        // Tail rows: (Dbar_k/B)^{p'_k} <= Dbar_k/B once Dbar_k <= B, and the
        // Dbar_k are summable.
        Rat tail_n = ctx.tail_abs_from(ctx.N);
        Real extra(prec);
        Rat pprime_max = p.glb() / (p.glb() - 1);
        for (long k = 0; k <= ctx.N; ++k) {
            Rat m(0);
            for (long n = k; n <= ctx.N; ++n) m = std::max(m, rat_abs(ctx.d(n, k)));
            Rat dbar = m + tail_n * ctx.wfib[static_cast<std::size_t>(k)];
            Rat ratio = dbar / Rat(static_cast<long>(b));
            Real term = ratio <= 1 ? Real(ratio, prec)
                                   : Real::pow_abs(ratio, pprime_max, prec);
            extra += term;
        }
        Int f1 = fib(static_cast<std::size_t>(ctx.N) + 1);
        Int f2 = fib(static_cast<std::size_t>(ctx.N) + 2);
        extra += Real(tail_n * make_rat(Int(2), f1 * f2), prec);
        sup = Real::max(sup, extra);
    }
    v.status = Status::HoldsAtTruncation;
    v.witnesses["B"] = std::to_string(b);
    v.margin = sup.str();
    return v;
}

}  // namespace

std::string dual_set_name(DualSet id) {
    return "f" + std::to_string(static_cast<int>(id) + 1);
}

DualSet dual_set_from_name(const std::string& name) {
    if (name.size() >= 2 && (name[0] == 'f' || name[0] == 'F')) {
        int idx = std::atoi(name.c_str() + 1);
        if (idx >= 1 && idx <= 16) return static_cast<DualSet>(idx - 1);
    }
    throw ParseError("unknown dual set '" + name + "' (expected f1..f16)");
}

std::string dual_kind_name(DualKind k) {
    switch (k) {
        case DualKind::Alpha: return "alpha";
        case DualKind::Beta: return "beta";
        case DualKind::Gamma: return "gamma";
    }
    return "alpha";
}

Rat c_matrix_entry(const Seq& a, long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    return inverse_entry(n, k) * a.eval(n);
}

Rat d_matrix_entry(const Seq& a, long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    Rat sum(0);
    for (long j = k; j <= n; ++j) sum += inverse_entry(j, k) * a.eval(j);
    return sum;
}

Verdict dual_set_check(DualSet id, const Seq& a, const ExponentSeq& p,
                       const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    Context ctx(a, cfg.truncation);
    Verdict v;
    switch (id) {
        case DualSet::F1: v = check_f1(ctx, p, cfg, prec); break;
        case DualSet::F2: v = check_f2(ctx, cfg, prec); break;
        case DualSet::F3: v = row_sup_union(ctx, p, cfg, prec, -1); break;
        case DualSet::F4: v = column_limits(ctx, cfg, true, prec); break;
        case DualSet::F5: v = check_f5(ctx, p, cfg, prec); break;
        case DualSet::F6: v = check_f6_f7(ctx, cfg, prec, true); break;
        case DualSet::F7: v = check_f6_f7(ctx, cfg, prec, false); break;
        case DualSet::F8: v = check_f8(ctx, p, cfg, prec); break;
        case DualSet::F9: v = row_sup_intersection(ctx, p, cfg, prec); break;
        case DualSet::F10: v = check_f10(ctx, p, cfg, prec); break;
        case DualSet::F11: v = row_sup_intersection(ctx, p, cfg, prec); break;
        case DualSet::F12: v = check_f12_f13(ctx, p, cfg, prec, false); break;
        case DualSet::F13: v = check_f12_f13(ctx, p, cfg, prec, true); break;
        case DualSet::F14: v = check_f14(ctx, p, cfg, prec); break;
        case DualSet::F15: v = check_f15(ctx, p, cfg, prec); break;
        case DualSet::F16: v = column_limits(ctx, cfg, false, prec); break;
    }
    v.truncation = ctx.N;
    v.witnesses["grid"] = "2^1..2^" + std::to_string(cfg.witness_max_exp) + ", subsets of {0.." +
                          std::to_string(cfg.subset_max) + "}";
    return v;
}

Verdict dual_membership(SpaceFamily family, DualKind kind, const Seq& a, const ExponentSeq& p,
                        const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    std::vector<DualSet> sets;
    std::vector<std::string> notes;
    switch (family) {
        case SpaceFamily::Null:
            sets = kind == DualKind::Alpha  ? std::vector<DualSet>{DualSet::F1}
                   : kind == DualKind::Beta ? std::vector<DualSet>{DualSet::F3, DualSet::F4,
                                                                   DualSet::F5}
                                            : std::vector<DualSet>{DualSet::F3};
            break;
        case SpaceFamily::Convergent:
            sets = kind == DualKind::Alpha  ? std::vector<DualSet>{DualSet::F1, DualSet::F2}
                   : kind == DualKind::Beta ? std::vector<DualSet>{DualSet::F3, DualSet::F4,
                                                                   DualSet::F5, DualSet::F6}
                                            : std::vector<DualSet>{DualSet::F3, DualSet::F7};
            break;
        case SpaceFamily::Bounded:
            sets = kind == DualKind::Alpha  ? std::vector<DualSet>{DualSet::F8}
                   : kind == DualKind::Beta ? std::vector<DualSet>{DualSet::F9, DualSet::F10}
                                            : std::vector<DualSet>{DualSet::F11};
            break;
        case SpaceFamily::Summable: {
            const bool low = p.all_at_most_one();
            const bool high = p.all_greater_than_one();
            if (!low && !high)
                throw DomainError(
                    "summable-family duals need the exponents entirely in (0,1] or (1,inf)");
            if (kind == DualKind::Alpha) {
                sets = {low ? DualSet::F12 : DualSet::F13};
                notes.push_back(low ? "exponent range (0,1]" : "exponent range (1,inf)");
            } else if (kind == DualKind::Gamma) {
                sets = {low ? DualSet::F15 : DualSet::F14};
                notes.push_back(low ? "exponent range (0,1]" : "exponent range (1,inf)");
            } else {
                if (high) {
                    sets = {DualSet::F14, DualSet::F15, DualSet::F16};
                } else {
                    sets = {DualSet::F15, DualSet::F16};
                    notes.push_back(
                        "conjugate-exponent clause skipped: undefined for p_k <= 1");
                }
            }
            break;
        }
    }
    std::vector<std::pair<std::string, Verdict>> parts;
    for (DualSet s : sets)
        parts.emplace_back(dual_set_name(s), dual_set_check(s, a, p, cfg, prec));
    Verdict v = Verdict::combine(std::move(parts), cfg.truncation);
    for (auto& n : notes) v.notes.push_back(std::move(n));
    return v;
}

}  // namespace fibseq
