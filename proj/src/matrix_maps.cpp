#include "fibseq/matrix_maps.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>

#include "fibseq/fib.hpp"
#include "fibseq/transform.hpp"

namespace fibseq {

namespace {

Rat rat_from_json_value(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw ParseError("matrix entry must be a rational string or integer");
}

void require_row_finite(const InfMatrix& a) {
    if (a.structure == InfMatrix::Structure::General)
        throw UnsupportedError("general matrices are outside the exact path; "
                               "provide banded or row-finite input");
}

// (q_n) must be nondecreasing, bounded, positive for weighted targets.
void validate_q(const ExponentSeq& q) {
    const auto& prefix = q.seq().prefix();
    for (std::size_t i = 1; i < prefix.size(); ++i)
        if (prefix[i] < prefix[i - 1])
            throw DomainError("target exponents must be nondecreasing");
    const TailSpec& t = q.seq().tail();
    if (t.kind == TailKind::Geometric)
        throw DomainError("target exponents must be nondecreasing (geometric tails decay)");
    if (!prefix.empty() && t.c < prefix.back())
        throw DomainError("target exponents must be nondecreasing");
}

std::vector<Real> grid_weights(unsigned long value, const ExponentSeq& p, long n, int sign,
                               mpfr_prec_t prec) {
    std::vector<Real> w;
    w.reserve(static_cast<std::size_t>(n) + 1);
    Real base(Rat(static_cast<long>(value)), prec);
    for (long k = 0; k <= n; ++k)
        w.push_back(Real::pow(base, Real(Rat(sign) / p.at(k), prec)));
    return w;
}

struct RealRun {
    std::vector<Real> values;
    Real max_all;
    long argmax = -1;
    Real window_max;
    long window_start = 0;
    bool blowup = false;
    bool monotone_checkpoints = false;
    std::vector<std::pair<long, std::string>> checkpoints;
};

RealRun analyze_run(std::vector<Real> values, const Real& threshold, mpfr_prec_t prec) {
    RealRun run{std::move(values), Real(prec), -1, Real(prec), 0, false, false, {}};
    const long n = static_cast<long>(run.values.size()) - 1;
    if (n < 0) return run;
    run.window_start = std::max(0L, n - (n + 4) / 4 + 1);
    for (long k = 0; k <= n; ++k) {
        const Real& v = run.values[static_cast<std::size_t>(k)];
        if (run.argmax < 0 || run.max_all < v) {
            run.max_all = v;
            run.argmax = k;
        }
        if (k >= run.window_start && run.window_max < v) run.window_max = v;
        if (threshold < v) run.blowup = true;
    }
    std::vector<std::size_t> marks = {static_cast<std::size_t>(n) / 4,
                                      static_cast<std::size_t>(n) / 2,
                                      (3 * static_cast<std::size_t>(n)) / 4,
                                      static_cast<std::size_t>(n)};
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    bool increasing = marks.size() >= 3;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        run.checkpoints.emplace_back(static_cast<long>(marks[i]),
                                     run.values[marks[i]].str());
        if (i > 0 && !(run.values[marks[i - 1]] < run.values[marks[i]])) increasing = false;
    }
    run.monotone_checkpoints = increasing;
    return run;
}

struct Context {
    InfMatrix a;
    long N;
    std::vector<long> support;              // S_n clamped at >= -1
    std::vector<std::vector<Rat>> rsum;     // rsum[n][j] = sum_{i>=j} a_ni f_{i+1}^2
    std::vector<Rat> wfib;                  // 1/(f_k f_{k+1})
    WitnessSearchConfig cfg;
    mpfr_prec_t prec;

    Context(const InfMatrix& a_, const WitnessSearchConfig& cfg_, mpfr_prec_t prec_)
        : a(a_), N(cfg_.truncation), cfg(cfg_), prec(prec_) {
        require_row_finite(a);
        support.reserve(static_cast<std::size_t>(N) + 1);
        rsum.reserve(static_cast<std::size_t>(N) + 1);
        for (long n = 0; n <= N; ++n) {
            long s = a.row_support(n);
            support.push_back(s);
            std::vector<Rat> r(static_cast<std::size_t>(std::max(s, -1L)) + 2, Rat(0));
            for (long j = s; j >= 0; --j) {
                Int fj1 = fib(static_cast<std::size_t>(j) + 1);
                r[static_cast<std::size_t>(j)] =
                    r[static_cast<std::size_t>(j) + 1] + a.entry(n, j) * Rat(fj1 * fj1);
            }
            rsum.push_back(std::move(r));
        }
        wfib.reserve(static_cast<std::size_t>(N) + 1);
        for (long k = 0; k <= N; ++k)
            wfib.push_back(make_rat(Int(1), fib(static_cast<std::size_t>(k)) *
                                                fib(static_cast<std::size_t>(k) + 1)));
    }

    long e_col_support(long n) const { return support[static_cast<std::size_t>(n)]; }

    Rat numerator_from(long n, long j) const {
        const auto& r = rsum[static_cast<std::size_t>(n)];
        if (j < 0) j = 0;
        if (static_cast<std::size_t>(j) >= r.size()) return Rat(0);
        return r[static_cast<std::size_t>(j)];
    }

    Rat wfib_at(long k) const {
        if (k <= N) return wfib[static_cast<std::size_t>(k)];
        return make_rat(Int(1),
                        fib(static_cast<std::size_t>(k)) * fib(static_cast<std::size_t>(k) + 1));
    }

    // e_nk = sum_{j>=k} a_nj f_{j+1}^2 / (f_k f_{k+1}), a finite sum.
    Rat e(long n, long k) const { return numerator_from(n, k) * wfib_at(k); }

    // e^(n)_{mk} = sum_{j=k..m} a_nj f_{j+1}^2 / (f_k f_{k+1}).
    Rat e_trunc(long n, long m, long k) const {
        if (k > m) return Rat(0);
        return (numerator_from(n, k) - numerator_from(n, m + 1)) * wfib_at(k);
    }

    Rat full_row_sum(long n) const {
        Rat sum(0);
        for (long k = 0; k <= e_col_support(n); ++k) sum += e(n, k);
        return sum;
    }

    std::vector<Rat> column(long k) const {
        std::vector<Rat> col;
        col.reserve(static_cast<std::size_t>(N) + 1);
        for (long n = 0; n <= N; ++n) col.push_back(e(n, k));
        return col;
    }
};

Verdict structural_holds(const Context& ctx, const std::string& note) {
    Verdict v = Verdict::holds_at(ctx.N);
    v.notes.push_back(note);
    long smax = -1;
    for (long n = 0; n <= ctx.N; ++n) smax = std::max(smax, ctx.e_col_support(n));
    v.witnesses["stabilization_index"] = std::to_string(smax);
    return v;
}

// Weighted row sums sum_k |e_nk| w_k over the full row support.
std::vector<Real> weighted_rows(const Context& ctx, const ExponentSeq& p, unsigned long scale,
                                int sign, const std::vector<Rat>* alphas = nullptr) {
    std::vector<Real> rows;
    rows.reserve(static_cast<std::size_t>(ctx.N) + 1);
    Real base(Rat(static_cast<long>(scale)), ctx.prec);
    std::vector<Real> wcache;
    long wide = 0;
    for (long n = 0; n <= ctx.N; ++n) wide = std::max(wide, ctx.e_col_support(n));
    wide = std::max(wide, ctx.N);
    wcache.reserve(static_cast<std::size_t>(wide) + 1);
    for (long k = 0; k <= wide; ++k)
        wcache.push_back(Real::pow(base, Real(Rat(sign) / p.at(k), ctx.prec)));
    for (long n = 0; n <= ctx.N; ++n) {
        Real s(ctx.prec);
        for (long k = 0; k <= ctx.e_col_support(n); ++k) {
            Rat val = ctx.e(n, k);
            if (alphas && k <= ctx.N) val -= (*alphas)[static_cast<std::size_t>(k)];
            s += Real(rat_abs(val), ctx.prec) * wcache[static_cast<std::size_t>(k)];
        }
        // Residual rows also see -alpha_k at columns beyond the support.
        if (alphas)
            for (long k = ctx.e_col_support(n) + 1; k <= ctx.N; ++k)
                s += Real(rat_abs((*alphas)[static_cast<std::size_t>(k)]), ctx.prec) *
                     wcache[static_cast<std::size_t>(k)];
        rows.push_back(s);
    }
    return rows;
}

// Column stabilization for e_nk over n <= N. Limits are probed only for
// k <= N/2, where the remaining row range can actually witness them;
// candidates are still recorded for every column.
long column_probe_limit(long n) { return n / 2; }

struct ColStab {
    bool all_stabilized = true;
    std::vector<Rat> alphas;
    Rat worst_dev;
    bool blowup = false;
    std::vector<std::pair<long, std::string>> checkpoints;
};
ColStab column_stabilization(const Context& ctx) {
    ColStab st;
    st.worst_dev = Rat(0);
    const long probe_limit = column_probe_limit(ctx.N);
    st.alphas.reserve(static_cast<std::size_t>(ctx.N) + 1);
    for (long k = 0; k <= ctx.N; ++k) {
        auto col = ctx.column(k);
        auto probe = detect_limit(col, ctx.cfg.tol);
        st.alphas.push_back(probe.candidate);
        if (k <= probe_limit) {
            st.worst_dev = std::max(st.worst_dev, probe.max_deviation);
            st.all_stabilized = st.all_stabilized && probe.stabilized;
        }
        std::vector<Rat> abs_col;
        abs_col.reserve(col.size());
        for (const auto& v : col) abs_col.push_back(rat_abs(v));
        auto blow = detect_blowup(abs_col, ctx.cfg.blowup_threshold);
        if (blow.exceeded && blow.monotone_checkpoints) {
            st.blowup = true;
            if (st.checkpoints.empty()) st.checkpoints = blow.checkpoints;
        }
    }
    return st;
}

Verdict sup_with_witness(const Context& ctx, const ExponentSeq& p, int sign,
                         const std::string& witness_key,
                         const std::vector<Rat>* alphas = nullptr) {
    // Blow-up is probed at the grid value giving the smallest weights
    // (largest M); if even that diverges, every grid witness does.
    auto grid = ctx.cfg.witness_grid();
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    auto probe_rows = weighted_rows(ctx, p, grid.back(), sign, alphas);
    auto probe = analyze_run(std::move(probe_rows), threshold, ctx.prec);
    if (probe.blowup && probe.monotone_checkpoints) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.checkpoints = probe.checkpoints;
        v.notes.push_back("weighted row sums blow up for every grid witness");
        return v;
    }
    auto rows = weighted_rows(ctx, p, grid.front(), sign, alphas);
    auto run = analyze_run(std::move(rows), threshold, ctx.prec);
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses[witness_key] = std::to_string(grid.front());
    v.margin = run.max_all.str();
    v.extremal_index = run.argmax;
    return v;
}

Verdict forall_scale_sup(const Context& ctx, const ExponentSeq& p,
                         const std::string& scale_key) {
    // Universal over L: a monotone blow-up at any grid L refutes; all
    // grid L bounded is truncation-qualified support.
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    Real worst(ctx.prec);
    long worst_idx = -1;
    for (unsigned long l : ctx.cfg.witness_grid()) {
        auto run = analyze_run(weighted_rows(ctx, p, l, +1), threshold, ctx.prec);
        if (run.blowup && run.monotone_checkpoints) {
            Verdict v = Verdict::fails_at(ctx.N);
            v.witnesses[scale_key] = std::to_string(l);
            v.checkpoints = run.checkpoints;
            v.notes.push_back("refuting scale found on the witness grid");
            return v;
        }
        if (worst < run.max_all) {
            worst = run.max_all;
            worst_idx = run.argmax;
        }
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.margin = worst.str();
    v.extremal_index = worst_idx;
    v.notes.push_back("bounded at every grid scale " + scale_key);
    return v;
}

Verdict check_row_weighted_finite(const Context& ctx, const ExponentSeq& p) {
    // Each row sum has finitely many nonzero terms, so it is finite for
    // every real scale; the grid values are recorded as evidence.
    Real worst(ctx.prec);
    for (unsigned long l : {ctx.cfg.witness_grid().front(), ctx.cfg.witness_grid().back()}) {
        auto rows = weighted_rows(ctx, p, l, +1);
        for (const auto& r : rows) worst = Real::max(worst, r);
    }
    Verdict v = structural_holds(ctx, "row-finite input: weighted row sums are finite sums");
    v.margin = worst.str();
    return v;
}

Verdict check_trunc_row_sup(const Context& ctx, const ExponentSeq& p, bool with_q_factor,
                            const ExponentSeq& q) {
    // sup over m stabilizes once m passes the row support; the exact
    // supremum is attained within the computed range.
    auto grid = ctx.cfg.witness_grid();
    Real sup(ctx.prec);
    long arg = -1;
    Real base(Rat(static_cast<long>(grid.front())), ctx.prec);
    long wide = ctx.N;
    for (long n = 0; n <= ctx.N; ++n) wide = std::max(wide, ctx.e_col_support(n));
    auto w = grid_weights(grid.front(), p, wide, -1, ctx.prec);
    for (long n = 0; n <= ctx.N; ++n) {
        const long mtop = std::max(ctx.e_col_support(n), 0L);
        Real factor(1l, ctx.prec);
        if (with_q_factor)
            factor = Real::pow(base, Real(Rat(1) / q.at(n), ctx.prec));
        for (long m = 0; m <= mtop; ++m) {
            Real s(ctx.prec);
            for (long k = 0; k <= m; ++k)
                s += Real(rat_abs(ctx.e_trunc(n, m, k)), ctx.prec) *
                     w[static_cast<std::size_t>(k)];
            s = s * factor;
            if (arg < 0 || sup < s) {
                sup = s;
                arg = n;
            }
        }
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses["M"] = std::to_string(grid.front());
    if (with_q_factor) v.notes.push_back("holds for every grid L (fixed row factor)");
    v.margin = sup.str();
    v.extremal_index = arg;
    v.notes.push_back("truncated rows stabilize at the row support");
    return v;
}

Verdict check_trunc_total_limit(const Context& ctx) {
    Verdict v = structural_holds(
        ctx, "truncated totals stabilize at the row support; limits are exact row sums");
    long kmax = std::min(ctx.N, 8L);
    for (long n = 0; n <= kmax; ++n)
        v.witnesses["alpha_" + std::to_string(n)] = rat_str(ctx.full_row_sum(n));
    return v;
}

Verdict check_col_limits(const Context& ctx) {
    auto st = column_stabilization(ctx);
    if (st.blowup) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.checkpoints = st.checkpoints;
        v.notes.push_back("a column grows monotonically past the blow-up threshold");
        return v;
    }
    if (st.all_stabilized) {
        Verdict v = Verdict::holds_at(ctx.N);
        v.margin = rat_str(st.worst_dev);
        for (long k = 0; k <= std::min(ctx.N, 8L); ++k)
            v.witnesses["alpha_" + std::to_string(k)] =
                rat_str(st.alphas[static_cast<std::size_t>(k)]);
        v.notes.push_back("last-quarter stabilization within tol");
        return v;
    }
    Verdict v = Verdict::inconclusive_at(ctx.N);
    v.margin = rat_str(st.worst_dev);
    return v;
}

Verdict check_row_weighted_limit(const Context& ctx, const ExponentSeq& p, bool want_zero) {
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    Real tol(ctx.cfg.tol, ctx.prec);
    Real worst_dev(ctx.prec);
    bool all_ok = true;
    for (unsigned long l : ctx.cfg.witness_grid()) {
        auto run = analyze_run(weighted_rows(ctx, p, l, +1), threshold, ctx.prec);
        if (run.blowup && run.monotone_checkpoints) {
            Verdict v = Verdict::fails_at(ctx.N);
            v.witnesses["L"] = std::to_string(l);
            v.checkpoints = run.checkpoints;
            return v;
        }
        if (want_zero) {
            if (!(run.window_max < tol)) all_ok = false;
            worst_dev = Real::max(worst_dev, run.window_max);
        } else {
            // Existence of a finite limit: last-quarter deviation from the
            // final value within tol.
            const auto& vals = run.values;
            Real dev(ctx.prec);
            for (long k = run.window_start; k < static_cast<long>(vals.size()); ++k)
                dev = Real::max(dev,
                                (vals[static_cast<std::size_t>(k)] - vals.back()).abs_value());
            if (!(dev < tol)) all_ok = false;
            worst_dev = Real::max(worst_dev, dev);
        }
    }
    Verdict v = all_ok ? Verdict::holds_at(ctx.N) : Verdict::inconclusive_at(ctx.N);
    v.margin = worst_dev.str();
    if (!want_zero)
        v.notes.push_back(
            "finite-limit existence tested (boundedness reading noted as ambiguous)");
    return v;
}

Verdict check_row_power_sup(const Context& ctx, const ExponentSeq& p, const ExponentSeq& q) {
    auto grid = ctx.cfg.witness_grid();
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    // Probe the largest M first: its weights are smallest, so divergence
    // there refutes the whole grid.
    for (std::size_t pass = 0; pass < 2; ++pass) {
        unsigned long m = pass == 0 ? grid.back() : grid.front();
        auto rows = weighted_rows(ctx, p, m, -1);
        std::vector<Real> powered;
        powered.reserve(rows.size());
        for (long n = 0; n < static_cast<long>(rows.size()); ++n)
            powered.push_back(Real::pow(rows[static_cast<std::size_t>(n)],
                                        Real(q.at(n), ctx.prec)));
        auto run = analyze_run(std::move(powered), threshold, ctx.prec);
        if (pass == 0) {
            if (run.blowup && run.monotone_checkpoints) {
                Verdict v = Verdict::fails_at(ctx.N);
                v.checkpoints = run.checkpoints;
                v.notes.push_back("powered row sums blow up for every grid witness");
                return v;
            }
        } else {
            Verdict v = Verdict::holds_at(ctx.N);
            v.witnesses["M"] = std::to_string(m);
            v.margin = run.max_all.str();
            v.extremal_index = run.argmax;
            return v;
        }
    }
    return Verdict::inconclusive_at(ctx.N);
}

Verdict check_col_power_null(const Context& ctx, const ExponentSeq& q,
                             const std::vector<Rat>* alphas) {
    Real tol(ctx.cfg.tol, ctx.prec);
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    Real worst(ctx.prec);
    bool all_ok = true;
    const long probe_limit = column_probe_limit(ctx.N);
    for (long k = 0; k <= probe_limit; ++k) {
        std::vector<Real> powered;
        powered.reserve(static_cast<std::size_t>(ctx.N) + 1);
        for (long n = 0; n <= ctx.N; ++n) {
            Rat base = ctx.e(n, k);
            if (alphas) base -= (*alphas)[static_cast<std::size_t>(k)];
            powered.push_back(Real::pow_abs(base, q.at(n), ctx.prec));
        }
        auto run = analyze_run(std::move(powered), threshold, ctx.prec);
        if (run.blowup && run.monotone_checkpoints) {
            Verdict v = Verdict::fails_at(ctx.N);
            v.extremal_index = k;
            v.checkpoints = run.checkpoints;
            return v;
        }
        if (!(run.window_max < tol)) all_ok = false;
        worst = Real::max(worst, run.window_max);
    }
    Verdict v = all_ok ? Verdict::holds_at(ctx.N) : Verdict::inconclusive_at(ctx.N);
    v.margin = worst.str();
    v.notes.push_back("columns probed up to index " + std::to_string(probe_limit));
    if (alphas && all_ok) v.notes.push_back("residuals taken against stabilized column limits");
    return v;
}

Verdict check_pair_sup(const Context& ctx, const ExponentSeq& p, const ExponentSeq& q,
                       const std::vector<Rat>* alphas) {
    auto grid = ctx.cfg.witness_grid();
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    Real worst(ctx.prec);
    for (unsigned long l : grid) {
        // For each L, search the M grid for a bounded combination; the
        // largest M minimizes the weights, so test it for divergence.
        auto rows = weighted_rows(ctx, p, grid.back(), -1, alphas);
        Real lbase(Rat(static_cast<long>(l)), ctx.prec);
        std::vector<Real> scaled;
        scaled.reserve(rows.size());
        for (long n = 0; n < static_cast<long>(rows.size()); ++n)
            scaled.push_back(rows[static_cast<std::size_t>(n)] *
                             Real::pow(lbase, Real(Rat(1) / q.at(n), ctx.prec)));
        auto run = analyze_run(std::move(scaled), threshold, ctx.prec);
        if (run.blowup && run.monotone_checkpoints) {
            Verdict v = Verdict::fails_at(ctx.N);
            v.witnesses["L"] = std::to_string(l);
            v.checkpoints = run.checkpoints;
            v.notes.push_back("no grid M bounds this scale");
            return v;
        }
        worst = Real::max(worst, run.max_all);
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses["M"] = std::to_string(grid.back());
    v.margin = worst.str();
    v.notes.push_back("bounded for every grid L with the recorded M");
    if (alphas) v.notes.push_back("residuals taken against stabilized column limits");
    return v;
}

std::vector<Real> rowsum_powers(const Context& ctx, const ExponentSeq& q,
                                const std::optional<Rat>& alpha) {
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(ctx.N) + 1);
    for (long n = 0; n <= ctx.N; ++n) {
        Rat s = ctx.full_row_sum(n);
        if (alpha) s -= *alpha;
        out.push_back(Real::pow_abs(s, q.at(n), ctx.prec));
    }
    return out;
}

Verdict check_rowsum_power(const Context& ctx, const ExponentSeq& q, int mode /*0 sup, 1 null, 2 limit*/) {
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    Real tol(ctx.cfg.tol, ctx.prec);
    std::optional<Rat> alpha;
    Verdict v = Verdict::inconclusive_at(ctx.N);
    if (mode == 2) {
        std::vector<Rat> sums;
        for (long n = 0; n <= ctx.N; ++n) sums.push_back(ctx.full_row_sum(n));
        auto probe = detect_limit(sums, ctx.cfg.tol);
        if (!probe.stabilized) {
            std::vector<Rat> abs_sums;
            for (const auto& s : sums) abs_sums.push_back(rat_abs(s));
            auto blow = detect_blowup(abs_sums, ctx.cfg.blowup_threshold);
            if (blow.exceeded && blow.monotone_checkpoints) {
                v = Verdict::fails_at(ctx.N);
                v.checkpoints = blow.checkpoints;
                return v;
            }
            v.notes.push_back("row sums did not stabilize; no limit candidate");
            return v;
        }
        alpha = probe.candidate;
        v.witnesses["alpha"] = rat_str(*alpha);
    }
    auto run = analyze_run(rowsum_powers(ctx, q, alpha), threshold, ctx.prec);
    if (run.blowup && run.monotone_checkpoints) {
        Verdict f = Verdict::fails_at(ctx.N);
        f.checkpoints = run.checkpoints;
        return f;
    }
    if (mode == 0) {
        v.status = Status::HoldsAtTruncation;
        v.margin = run.max_all.str();
        v.extremal_index = run.argmax;
        return v;
    }
    if (run.window_max < tol) {
        v.status = Status::HoldsAtTruncation;
        v.margin = run.window_max.str();
    } else {
        v.margin = run.window_max.str();
    }
    return v;
}

// ---- base conditions on the raw matrix entries ----

std::vector<Real> raw_weighted_rows(const Context& ctx, const ExponentSeq& p, unsigned long b,
                                    const std::vector<Rat>* alphas) {
    std::vector<Real> rows;
    rows.reserve(static_cast<std::size_t>(ctx.N) + 1);
    long wide = ctx.N;
    for (long n = 0; n <= ctx.N; ++n) wide = std::max(wide, ctx.e_col_support(n));
    auto w = grid_weights(b, p, wide, -1, ctx.prec);
    for (long n = 0; n <= ctx.N; ++n) {
        Real s(ctx.prec);
        for (long k = 0; k <= ctx.e_col_support(n); ++k) {
            Rat val = ctx.a.entry(n, k);
            if (alphas && k <= ctx.N) val -= (*alphas)[static_cast<std::size_t>(k)];
            s += Real(rat_abs(val), ctx.prec) * w[static_cast<std::size_t>(k)];
        }
        if (alphas)
            for (long k = ctx.e_col_support(n) + 1; k <= ctx.N; ++k)
                s += Real(rat_abs((*alphas)[static_cast<std::size_t>(k)]), ctx.prec) *
                     w[static_cast<std::size_t>(k)];
        rows.push_back(s);
    }
    return rows;
}

ColStab raw_column_stabilization(const Context& ctx) {
    ColStab st;
    st.worst_dev = Rat(0);
    const long probe_limit = column_probe_limit(ctx.N);
    for (long k = 0; k <= ctx.N; ++k) {
        std::vector<Rat> col;
        for (long n = 0; n <= ctx.N; ++n)
            col.push_back(k <= ctx.e_col_support(n) ? ctx.a.entry(n, k) : Rat(0));
        auto probe = detect_limit(col, ctx.cfg.tol);
        st.alphas.push_back(probe.candidate);
        if (k <= probe_limit) {
            st.worst_dev = std::max(st.worst_dev, probe.max_deviation);
            st.all_stabilized = st.all_stabilized && probe.stabilized;
        }
        std::vector<Rat> abs_col;
        for (const auto& v : col) abs_col.push_back(rat_abs(v));
        auto blow = detect_blowup(abs_col, ctx.cfg.blowup_threshold);
        if (blow.exceeded && blow.monotone_checkpoints) {
            st.blowup = true;
            if (st.checkpoints.empty()) st.checkpoints = blow.checkpoints;
        }
    }
    return st;
}

Verdict raw_sup_exists_scale(const Context& ctx, const ExponentSeq& p,
                             const std::vector<Rat>* alphas) {
    auto grid = ctx.cfg.witness_grid();
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    auto probe = analyze_run(raw_weighted_rows(ctx, p, grid.back(), alphas), threshold, ctx.prec);
    if (probe.blowup && probe.monotone_checkpoints) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.checkpoints = probe.checkpoints;
        v.notes.push_back("scaled row sums blow up for every grid witness");
        return v;
    }
    auto run = analyze_run(raw_weighted_rows(ctx, p, grid.front(), alphas), threshold, ctx.prec);
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses["B"] = std::to_string(grid.front());
    v.margin = run.max_all.str();
    v.extremal_index = run.argmax;
    return v;
}

Verdict check_null_to_conv(const Context& ctx, const ExponentSeq& p) {
    std::vector<std::pair<std::string, Verdict>> parts;
    parts.emplace_back("scaled_rows_bounded", raw_sup_exists_scale(ctx, p, nullptr));
    auto st = raw_column_stabilization(ctx);
    Verdict cols = Verdict::inconclusive_at(ctx.N);
    if (st.blowup) {
        cols = Verdict::fails_at(ctx.N);
        cols.checkpoints = st.checkpoints;
    } else if (st.all_stabilized) {
        cols = Verdict::holds_at(ctx.N);
        cols.margin = rat_str(st.worst_dev);
    }
    parts.emplace_back("column_limits", cols);
    if (st.all_stabilized)
        parts.emplace_back("residual_rows_bounded", raw_sup_exists_scale(ctx, p, &st.alphas));
    else
        parts.emplace_back("residual_rows_bounded", Verdict::inconclusive_at(ctx.N));
    return Verdict::combine(std::move(parts), ctx.N);
}

Verdict raw_subset_abs(const Context& ctx, const ExponentSeq& p) {
    // Upper bound over all finite subsets via absolute sums; the column
    // partial sums supply the refuting direction.
    auto grid = ctx.cfg.witness_grid();
    long wide = ctx.N;
    for (long n = 0; n <= ctx.N; ++n) wide = std::max(wide, ctx.e_col_support(n));
    auto w = grid_weights(grid.front(), p, wide, -1, ctx.prec);
    Real total(ctx.prec);
    for (long n = 0; n <= ctx.N; ++n)
        for (long k = 0; k <= ctx.e_col_support(n); ++k)
            total += Real(rat_abs(ctx.a.entry(n, k)), ctx.prec) * w[static_cast<std::size_t>(k)];
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    std::vector<Real> col_partials;  // worst single column, cumulative over n
    long worst_k = 0;
    Rat worst_sum(0);
    for (long k = 0; k <= ctx.N; ++k) {
        Rat s(0);
        for (long n = 0; n <= ctx.N; ++n)
            if (k <= ctx.e_col_support(n)) s += rat_abs(ctx.a.entry(n, k));
        if (s > worst_sum) {
            worst_sum = s;
            worst_k = k;
        }
    }
    Rat run(0);
    for (long n = 0; n <= ctx.N; ++n) {
        if (worst_k <= ctx.e_col_support(n)) run += rat_abs(ctx.a.entry(n, worst_k));
        col_partials.push_back(Real(run, ctx.prec));
    }
    auto blow = analyze_run(std::move(col_partials), threshold, ctx.prec);
    if (blow.blowup && blow.monotone_checkpoints) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.extremal_index = worst_k;
        v.checkpoints = blow.checkpoints;
        v.notes.push_back("singleton subset at the worst column already diverges");
        return v;
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses["B"] = std::to_string(grid.front());
    v.margin = total.str();
    v.notes.push_back("subset suprema bounded via absolute sums");
    return v;
}

Verdict raw_conjugate_rows(const Context& ctx, const ExponentSeq& p, bool subset_form) {
    if (!p.all_greater_than_one())
        throw DomainError("conjugate exponents need p_k > 1 everywhere");
    auto grid = ctx.cfg.witness_grid();
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    const unsigned long b = grid.front();
    Real binv(make_rat(Int(1), Int(static_cast<long>(b))), ctx.prec);
    std::vector<Real> rows;
    if (subset_form) {
        // sum_k (column-sum / B)^{p'_k} over growing row ranges; the
        // column sums build incrementally.
        std::vector<Rat> colsum(static_cast<std::size_t>(ctx.N) + 1, Rat(0));
        for (long top = 0; top <= ctx.N; ++top) {
            for (long k = 0; k <= std::min(ctx.e_col_support(top), ctx.N); ++k)
                colsum[static_cast<std::size_t>(k)] += rat_abs(ctx.a.entry(top, k));
            Real s(ctx.prec);
            for (long k = 0; k <= ctx.N; ++k) {
                Real base = Real(colsum[static_cast<std::size_t>(k)], ctx.prec) * binv;
                s += Real::pow(base, Real(p.conjugate(k), ctx.prec));
            }
            rows.push_back(s);
        }
    } else {
        for (long n = 0; n <= ctx.N; ++n) {
            Real s(ctx.prec);
            for (long k = 0; k <= ctx.e_col_support(n); ++k) {
                Real base = Real(rat_abs(ctx.a.entry(n, k)), ctx.prec) * binv;
                s += Real::pow(base, Real(p.conjugate(k), ctx.prec));
            }
            rows.push_back(s);
        }
    }
    auto run = analyze_run(std::move(rows), threshold, ctx.prec);
    if (run.blowup && run.monotone_checkpoints) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.checkpoints = run.checkpoints;
        return v;
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.witnesses["B"] = std::to_string(b);
    v.margin = run.max_all.str();
    return v;
}

Verdict raw_powered_sup(const Context& ctx, const ExponentSeq& p, bool subset_form) {
    if (!p.all_at_most_one())
        throw DomainError("powered form needs p_k <= 1 everywhere");
    Real threshold(ctx.cfg.blowup_threshold, ctx.prec);
    std::vector<Real> rows;
    if (subset_form) {
        std::vector<Rat> colsum(static_cast<std::size_t>(ctx.N) + 1, Rat(0));
        for (long top = 0; top <= ctx.N; ++top) {
            for (long k = 0; k <= std::min(ctx.e_col_support(top), ctx.N); ++k)
                colsum[static_cast<std::size_t>(k)] += rat_abs(ctx.a.entry(top, k));
            Real s(ctx.prec);
            for (long k = 0; k <= ctx.N; ++k)
                s = Real::max(s, Real::pow_abs(colsum[static_cast<std::size_t>(k)], p.at(k),
                                               ctx.prec));
            rows.push_back(s);
        }
    } else {
        for (long n = 0; n <= ctx.N; ++n) {
            Real s(ctx.prec);
            for (long k = 0; k <= ctx.e_col_support(n); ++k)
                s = Real::max(s, Real::pow_abs(ctx.a.entry(n, k), p.at(k), ctx.prec));
            rows.push_back(s);
        }
    }
    auto run = analyze_run(std::move(rows), threshold, ctx.prec);
    if (run.blowup && run.monotone_checkpoints) {
        Verdict v = Verdict::fails_at(ctx.N);
        v.checkpoints = run.checkpoints;
        return v;
    }
    Verdict v = Verdict::holds_at(ctx.N);
    v.margin = run.max_all.str();
    v.extremal_index = run.argmax;
    return v;
}

Verdict check_psum_to_conv(const Context& ctx, const ExponentSeq& p) {
    std::vector<std::pair<std::string, Verdict>> parts;
    if (p.all_greater_than_one())
        parts.emplace_back("bounded_conjugate", raw_conjugate_rows(ctx, p, false));
    else if (p.all_at_most_one())
        parts.emplace_back("bounded_powered", raw_powered_sup(ctx, p, false));
    else
        throw DomainError("exponents must lie entirely in (0,1] or (1,inf)");
    auto st = raw_column_stabilization(ctx);
    Verdict cols = Verdict::inconclusive_at(ctx.N);
    if (st.blowup) {
        cols = Verdict::fails_at(ctx.N);
        cols.checkpoints = st.checkpoints;
    } else if (st.all_stabilized) {
        cols = Verdict::holds_at(ctx.N);
        cols.margin = rat_str(st.worst_dev);
        for (long k = 0; k <= std::min(ctx.N, 8L); ++k)
            cols.witnesses["beta_" + std::to_string(k)] =
                rat_str(st.alphas[static_cast<std::size_t>(k)]);
    }
    parts.emplace_back("column_limits", cols);
    Verdict v = Verdict::combine(std::move(parts), ctx.N);
    v.notes.push_back("range-matched bounded condition applied with the column-limit clause");
    return v;
}

}  // namespace

InfMatrix InfMatrix::fhat() {
    InfMatrix m;
    m.structure = Structure::Banded;
    m.name = "fhat";
    m.entry = [](long n, long k) { return fhat_entry(n, k); };
    m.row_support = [](long n) { return n; };
    return m;
}

InfMatrix InfMatrix::identity() {
    InfMatrix m;
    m.structure = Structure::Banded;
    m.name = "identity";
    m.entry = [](long n, long k) { return n == k ? Rat(1) : Rat(0); };
    m.row_support = [](long n) { return n; };
    return m;
}

InfMatrix InfMatrix::zero() {
    InfMatrix m;
    m.structure = Structure::RowFinite;
    m.name = "zero";
    m.entry = [](long, long) { return Rat(0); };
    m.row_support = [](long) { return -1L; };
    return m;
}

InfMatrix InfMatrix::fib_inverse() {
    InfMatrix m;
    m.structure = Structure::RowFinite;
    m.name = "fib_inverse";
    m.entry = [](long n, long k) { return inverse_entry(n, k); };
    m.row_support = [](long n) { return n; };
    return m;
}

InfMatrix InfMatrix::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("matrix needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") {
        const std::string name = j.value("name", std::string());
        if (name == "fhat") return fhat();
        if (name == "identity") return identity();
        if (name == "zero") return zero();
        throw ParseError("unknown builtin matrix '" + name + "'");
    }
    if (kind != "banded" && kind != "rowfinite")
        throw ParseError("matrix kind must be banded, rowfinite or builtin");
    if (!j.contains("rows") || !j.at("rows").is_array())
        throw ParseError("explicit matrices need a \"rows\" array");
    auto rows = std::make_shared<std::vector<std::map<long, Rat>>>();
    auto supports = std::make_shared<std::vector<long>>();
    for (const auto& row : j.at("rows")) {
        std::map<long, Rat> entries;
        long support = -1;
        for (const auto& cell : row) {
            if (!cell.is_object() || !cell.contains("k") || !cell.contains("v"))
                throw ParseError("matrix cells are {\"k\": index, \"v\": rational}");
            long k = cell.at("k").get<long>();
            if (k < 0) throw ParseError("negative column index");
            Rat v = rat_from_json_value(cell.at("v"));
            if (v != 0) support = std::max(support, k);
            entries[k] = std::move(v);
        }
        rows->push_back(std::move(entries));
        supports->push_back(support);
    }
    InfMatrix m;
    m.structure = kind == "banded" ? Structure::Banded : Structure::RowFinite;
    m.name = "user";
    m.entry = [rows](long n, long k) {
        if (n < 0 || static_cast<std::size_t>(n) >= rows->size()) return Rat(0);
        const auto& row = (*rows)[static_cast<std::size_t>(n)];
        auto it = row.find(k);
        return it == row.end() ? Rat(0) : it->second;
    };
    m.row_support = [supports](long n) {
        if (n < 0 || static_cast<std::size_t>(n) >= supports->size()) return -1L;
        return (*supports)[static_cast<std::size_t>(n)];
    };
    return m;
}

bool EMatrices::is_identity() const {
    for (long n = 0; n <= truncation; ++n)
        for (long k = 0; k <= truncation; ++k)
            if (e[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] !=
                (n == k ? Rat(1) : Rat(0)))
                return false;
    return true;
}

Rat EMatrices::full_row_sum(long n) const {
    Rat s(0);
    const long rs = row_support[static_cast<std::size_t>(n)];
    for (long k = 0; k <= rs; ++k) s += e_trunc(n, rs, k);
    return s;
}

EMatrices build_e_matrices(const InfMatrix& a, long truncation, const InfMatrix* v_override) {
    require_row_finite(a);
    EMatrices out;
    out.truncation = truncation;
    if (v_override == nullptr) {
        WitnessSearchConfig cfg;
        cfg.truncation = truncation;
        auto ctx = std::make_shared<Context>(a, cfg, 64);
        out.row_support = ctx->support;
        out.e.reserve(static_cast<std::size_t>(truncation) + 1);
        for (long n = 0; n <= truncation; ++n) {
            std::vector<Rat> row;
            row.reserve(static_cast<std::size_t>(truncation) + 1);
            for (long k = 0; k <= truncation; ++k) row.push_back(ctx->e(n, k));
            out.e.push_back(std::move(row));
        }
        out.e_trunc = [ctx](long n, long m, long k) { return ctx->e_trunc(n, m, k); };
        return out;
    }
    // Custom triangle inverse: finite sums e^(n)_mk directly.
    const InfMatrix v = *v_override;
    auto tr = [a, v](long n, long m, long k) {
        Rat s(0);
        long top = std::min(m, a.row_support(n));
        for (long j = k; j <= top; ++j) s += a.entry(n, j) * v.entry(j, k);
        return s;
    };
    out.e_trunc = tr;
    for (long n = 0; n <= truncation; ++n) {
        out.row_support.push_back(a.row_support(n));
        std::vector<Rat> row;
        for (long k = 0; k <= truncation; ++k)
            row.push_back(tr(n, std::max(a.row_support(n), k), k));
        out.e.push_back(std::move(row));
    }
    return out;
}

std::string map_condition_name(MapCondition c) {
    switch (c) {
        case MapCondition::EntryLimits: return "entry_limits";
        case MapCondition::RowWeightedFinite: return "row_weighted_finite";
        case MapCondition::TruncColLimits: return "trunc_col_limits";
        case MapCondition::TruncRowSup: return "trunc_row_sup";
        case MapCondition::TruncRowPair: return "trunc_row_pair";
        case MapCondition::TruncTotalLimit: return "trunc_total_limit";
        case MapCondition::RowWeightedSup: return "row_weighted_sup";
        case MapCondition::ColLimits: return "col_limits";
        case MapCondition::RowWeightedLimit: return "row_weighted_limit";
        case MapCondition::RowWeightedNull: return "row_weighted_null";
        case MapCondition::RowPowerSup: return "row_power_sup";
        case MapCondition::ColPowerNull: return "col_power_null";
        case MapCondition::RowPairSup: return "row_pair_sup";
        case MapCondition::ColPowerLimit: return "col_power_limit";
        case MapCondition::RowScaledSup: return "row_scaled_sup";
        case MapCondition::ResidPairSup: return "resid_pair_sup";
        case MapCondition::RowSumPowerSup: return "rowsum_power_sup";
        case MapCondition::RowSumPowerNull: return "rowsum_power_null";
        case MapCondition::RowSumPowerLimit: return "rowsum_power_limit";
        case MapCondition::NullToAbsSum: return "null_to_abssum";
        case MapCondition::NullToConv: return "null_to_conv";
        case MapCondition::NullToBounded: return "null_to_bounded";
        case MapCondition::PsumToAbsSumHi: return "psum_to_abssum_hi";
        case MapCondition::PsumToAbsSumLo: return "psum_to_abssum_lo";
        case MapCondition::PsumToBoundedHi: return "psum_to_bounded_hi";
        case MapCondition::PsumToBoundedLo: return "psum_to_bounded_lo";
        case MapCondition::PsumToConv: return "psum_to_conv";
    }
    return "unknown";
}

MapCondition map_condition_from_name(const std::string& name) {
    static const std::map<std::string, MapCondition> table = {
        {"entry_limits", MapCondition::EntryLimits},
        {"row_weighted_finite", MapCondition::RowWeightedFinite},
        {"trunc_col_limits", MapCondition::TruncColLimits},
        {"trunc_row_sup", MapCondition::TruncRowSup},
        {"trunc_row_pair", MapCondition::TruncRowPair},
        {"trunc_total_limit", MapCondition::TruncTotalLimit},
        {"row_weighted_sup", MapCondition::RowWeightedSup},
        {"col_limits", MapCondition::ColLimits},
        {"row_weighted_limit", MapCondition::RowWeightedLimit},
        {"row_weighted_null", MapCondition::RowWeightedNull},
        {"row_power_sup", MapCondition::RowPowerSup},
        {"col_power_null", MapCondition::ColPowerNull},
        {"row_pair_sup", MapCondition::RowPairSup},
        {"col_power_limit", MapCondition::ColPowerLimit},
        {"row_scaled_sup", MapCondition::RowScaledSup},
        {"resid_pair_sup", MapCondition::ResidPairSup},
        {"rowsum_power_sup", MapCondition::RowSumPowerSup},
        {"rowsum_power_null", MapCondition::RowSumPowerNull},
        {"rowsum_power_limit", MapCondition::RowSumPowerLimit},
        {"null_to_abssum", MapCondition::NullToAbsSum},
        {"null_to_conv", MapCondition::NullToConv},
        {"null_to_bounded", MapCondition::NullToBounded},
        {"psum_to_abssum_hi", MapCondition::PsumToAbsSumHi},
        {"psum_to_abssum_lo", MapCondition::PsumToAbsSumLo},
        {"psum_to_bounded_hi", MapCondition::PsumToBoundedHi},
        {"psum_to_bounded_lo", MapCondition::PsumToBoundedLo},
        {"psum_to_conv", MapCondition::PsumToConv},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ParseError("unknown condition '" + name + "'");
    return it->second;
}

Verdict condition_check(MapCondition id, const InfMatrix& a, const ExponentSeq& p,
                        const ExponentSeq& q, const WitnessSearchConfig& cfg,
                        mpfr_prec_t prec) {
    Context ctx(a, cfg, prec);
    Verdict v = [&] {
        switch (id) {
        case MapCondition::EntryLimits:
            return structural_holds(
                ctx, "row-finite input: truncated sums stabilize to the entries exactly");
        case MapCondition::RowWeightedFinite: return check_row_weighted_finite(ctx, p);
        case MapCondition::TruncColLimits:
            return structural_holds(
                ctx, "truncated columns stabilize at the row support; limits exact");
        case MapCondition::TruncRowSup: return check_trunc_row_sup(ctx, p, false, q);
        case MapCondition::TruncRowPair: {
            validate_q(q);
            return check_trunc_row_sup(ctx, p, true, q);
        }
        case MapCondition::TruncTotalLimit: return check_trunc_total_limit(ctx);
        case MapCondition::RowWeightedSup: return forall_scale_sup(ctx, p, "L");
        case MapCondition::ColLimits: return check_col_limits(ctx);
        case MapCondition::RowWeightedLimit: return check_row_weighted_limit(ctx, p, false);
        case MapCondition::RowWeightedNull: return check_row_weighted_limit(ctx, p, true);
        case MapCondition::RowPowerSup: {
            validate_q(q);
            return check_row_power_sup(ctx, p, q);
        }
        case MapCondition::ColPowerNull: {
            validate_q(q);
            return check_col_power_null(ctx, q, nullptr);
        }
        case MapCondition::RowPairSup: {
            validate_q(q);
            return check_pair_sup(ctx, p, q, nullptr);
        }
        case MapCondition::ColPowerLimit: {
            validate_q(q);
            auto st = column_stabilization(ctx);
            if (st.blowup) {
                Verdict v = Verdict::fails_at(ctx.N);
                v.checkpoints = st.checkpoints;
                return v;
            }
            if (!st.all_stabilized) {
                Verdict v = Verdict::inconclusive_at(ctx.N);
                v.notes.push_back("column limits did not stabilize");
                return v;
            }
            return check_col_power_null(ctx, q, &st.alphas);
        }
        case MapCondition::RowScaledSup: return sup_with_witness(ctx, p, -1, "M");
        case MapCondition::ResidPairSup: {
            validate_q(q);
            auto st = column_stabilization(ctx);
            if (st.blowup) {
                Verdict v = Verdict::fails_at(ctx.N);
                v.checkpoints = st.checkpoints;
                return v;
            }
            if (!st.all_stabilized) {
                Verdict v = Verdict::inconclusive_at(ctx.N);
                v.notes.push_back("column limits did not stabilize");
                return v;
            }
            return check_pair_sup(ctx, p, q, &st.alphas);
        }
        case MapCondition::RowSumPowerSup: {
            validate_q(q);
            return check_rowsum_power(ctx, q, 0);
        }
        case MapCondition::RowSumPowerNull: {
            validate_q(q);
            return check_rowsum_power(ctx, q, 1);
        }
        case MapCondition::RowSumPowerLimit: {
            validate_q(q);
            return check_rowsum_power(ctx, q, 2);
        }
        case MapCondition::NullToAbsSum: return raw_subset_abs(ctx, p);
        case MapCondition::NullToConv: return check_null_to_conv(ctx, p);
        case MapCondition::NullToBounded: return raw_sup_exists_scale(ctx, p, nullptr);
        case MapCondition::PsumToAbsSumHi: return raw_conjugate_rows(ctx, p, true);
        case MapCondition::PsumToAbsSumLo: return raw_powered_sup(ctx, p, true);
        case MapCondition::PsumToBoundedHi: return raw_conjugate_rows(ctx, p, false);
        case MapCondition::PsumToBoundedLo: return raw_powered_sup(ctx, p, false);
        case MapCondition::PsumToConv: return check_psum_to_conv(ctx, p);
        }
        return Verdict::inconclusive_at(cfg.truncation);
    }();
    v.witnesses["grid"] = "2^1..2^" + std::to_string(cfg.witness_max_exp);
    return v;
}

std::string map_source_name(MapSource s) {
    switch (s) {
        case MapSource::NullFib: return "c0_fib";
        case MapSource::ConvFib: return "c_fib";
        case MapSource::BoundedFib: return "linf_fib";
        case MapSource::SummableFib: return "lp_fib";
    }
    return "c0_fib";
}

std::string map_target_name(MapTarget t) {
    switch (t) {
        case MapTarget::Bounded: return "linf";
        case MapTarget::Conv: return "c";
        case MapTarget::Null: return "c0";
        case MapTarget::BoundedQ: return "linf_q";
        case MapTarget::ConvQ: return "c_q";
        case MapTarget::NullQ: return "c0_q";
    }
    return "linf";
}

MapSource map_source_from_name(const std::string& name) {
    if (name == "c0" || name == "c0_fib") return MapSource::NullFib;
    if (name == "c" || name == "c_fib") return MapSource::ConvFib;
    if (name == "linf" || name == "linf_fib") return MapSource::BoundedFib;
    if (name == "lp" || name == "lp_fib") return MapSource::SummableFib;
    throw ParseError("unknown mapping source '" + name + "'");
}

MapTarget map_target_from_name(const std::string& name) {
    if (name == "linf") return MapTarget::Bounded;
    if (name == "c") return MapTarget::Conv;
    if (name == "c0") return MapTarget::Null;
    if (name == "linf_q") return MapTarget::BoundedQ;
    if (name == "c_q") return MapTarget::ConvQ;
    if (name == "c0_q") return MapTarget::NullQ;
    throw ParseError("unknown mapping target '" + name + "'");
}

Verdict classify_mapping(const InfMatrix& a, MapSource source, MapTarget target,
                         const ExponentSeq& p, const ExponentSeq& q,
                         const WitnessSearchConfig& cfg, mpfr_prec_t prec) {
    if (source == MapSource::SummableFib)
        throw UnsupportedError("mappings out of the summable difference space are not "
                               "characterized; only the null, convergent and bounded "
                               "sources are supported");

    // Unweighted targets for the null/convergent sources are the q = 1
    // specializations of the weighted ones.
    ExponentSeq q_eff = q;
    std::vector<std::string> notes;
    MapTarget t_eff = target;
    if (source != MapSource::BoundedFib &&
        (target == MapTarget::Bounded || target == MapTarget::Conv ||
         target == MapTarget::Null)) {
        q_eff = ExponentSeq::constant(Rat(1));
        t_eff = target == MapTarget::Bounded ? MapTarget::BoundedQ
                : target == MapTarget::Conv  ? MapTarget::ConvQ
                                             : MapTarget::NullQ;
        notes.push_back("unweighted target handled as the q = 1 specialization");
    }
    if (source == MapSource::BoundedFib &&
        (target == MapTarget::BoundedQ || target == MapTarget::ConvQ ||
         target == MapTarget::NullQ))
        throw UnsupportedError("the bounded source is characterized only into the "
                               "unweighted targets");

    std::vector<MapCondition> conds;
    if (source == MapSource::BoundedFib) {
        switch (t_eff) {
            case MapTarget::Bounded:
                conds = {MapCondition::EntryLimits, MapCondition::RowWeightedFinite,
                         MapCondition::RowWeightedSup};
                break;
            case MapTarget::Conv:
                conds = {MapCondition::EntryLimits, MapCondition::RowWeightedFinite,
                         MapCondition::ColLimits, MapCondition::RowWeightedLimit};
                break;
            case MapTarget::Null:
                conds = {MapCondition::EntryLimits, MapCondition::RowWeightedFinite,
                         MapCondition::RowWeightedNull};
                break;
            default: throw UnsupportedError("unsupported pair");
        }
    } else {
        const bool conv_source = source == MapSource::ConvFib;
        switch (t_eff) {
            case MapTarget::BoundedQ:
                conds = {MapCondition::TruncColLimits, MapCondition::TruncRowSup,
                         MapCondition::TruncRowPair, MapCondition::RowPowerSup};
                if (conv_source) {
                    conds.insert(conds.begin() + 3, MapCondition::TruncTotalLimit);
                    conds.push_back(MapCondition::RowSumPowerSup);
                }
                break;
            case MapTarget::NullQ:
                conds = {MapCondition::TruncColLimits, MapCondition::TruncRowSup,
                         MapCondition::TruncRowPair, MapCondition::ColPowerNull,
                         MapCondition::RowPairSup};
                if (conv_source) {
                    conds.insert(conds.begin() + 3, MapCondition::TruncTotalLimit);
                    conds.push_back(MapCondition::RowSumPowerNull);
                }
                break;
            case MapTarget::ConvQ:
                conds = {MapCondition::TruncColLimits, MapCondition::TruncRowSup,
                         MapCondition::TruncRowPair, MapCondition::ColPowerLimit,
                         MapCondition::RowScaledSup, MapCondition::ResidPairSup};
                if (conv_source) {
                    conds.insert(conds.begin() + 3, MapCondition::TruncTotalLimit);
                    conds.push_back(MapCondition::RowSumPowerLimit);
                }
                break;
            default: throw UnsupportedError("unsupported pair");
        }
    }

    std::vector<std::pair<std::string, Verdict>> parts;
    for (MapCondition c : conds)
        parts.emplace_back(map_condition_name(c), condition_check(c, a, p, q_eff, cfg, prec));
    Verdict v = Verdict::combine(std::move(parts), cfg.truncation);
    for (auto& n : notes) v.notes.push_back(std::move(n));
    EMatrices em = build_e_matrices(a, std::min(cfg.truncation, 32L));
    if (em.is_identity()) v.notes.push_back("e_matrix=identity");
    return v;
}

}  // namespace fibseq
