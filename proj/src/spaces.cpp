#include "fibseq/spaces.hpp"

#include <algorithm>
#include <vector>

#include "fibseq/fib.hpp"
#include "fibseq/transform.hpp"

namespace fibseq {

namespace {

// Closed-form model of the working sequence's values for k >= start.
// The difference transform maps the three sequence tails onto the
// Fib* / CassiniDecay models below; all five stay exactly evaluable.
//
//   Zero          y_k = 0
//   Const         y_k = v
//   Geo           y_k = c r^(k-base)
//   FibConst      y_k = -v (1 + (-1)^{k+1} / (f_k f_{k+1}))
//   FibGeo        y_k = c r^(k-1-base) (r f_k/f_{k+1} - f_{k+1}/f_k)
//   CassiniDecay  y_k = v (-1)^k / (f_k f_{k+1})
//
// The FibConst closed form uses f_{k+1}^2 - f_k^2 - f_k f_{k+1} = (-1)^{k+1},
// the substituted Cassini identity.
struct TailView {
    enum class Model { Zero, Const, Geo, FibConst, FibGeo, CassiniDecay };
    Model model = Model::Zero;
    long start = 0;
    Rat a;
    Rat r;
    long base = 0;

    static TailView from_tailspec(const TailSpec& t, long start) {
        TailView v;
        v.start = start;
        if (t.is_zero_like()) {
            v.model = Model::Zero;
        } else if (t.kind == TailKind::Constant) {
            v.model = Model::Const;
            v.a = t.c;
        } else {
            v.model = Model::Geo;
            v.a = t.c;
            v.r = t.r;
            v.base = start;
        }
        return v;
    }

    // Model of the transform of a sequence whose own tail starts at L.
    static TailView transformed(const TailSpec& t, long L) {
        TailView v;
        v.start = L + 1;
        if (t.is_zero_like()) {
            v.model = Model::Zero;
        } else if (t.kind == TailKind::Constant) {
            v.model = Model::FibConst;
            v.a = t.c;
        } else {
            v.model = Model::FibGeo;
            v.a = t.c;
            v.r = t.r;
            v.base = L;
        }
        return v;
    }

    bool zero_like() const { return model == Model::Zero || a == 0; }

    Rat value_at(long k) const {
        const auto fk = [&](long i) { return fib(static_cast<std::size_t>(i)); };
        switch (model) {
            case Model::Zero: return Rat(0);
            case Model::Const: return a;
            case Model::Geo: return a * rat_pow_int(r, k - base);
            case Model::FibConst: {
                Rat unit = make_rat(Int(k % 2 == 0 ? -1 : 1), fk(k) * fk(k + 1));
                return -a * (Rat(1) + unit);
            }
            case Model::FibGeo: {
                Rat w = r * fib_ratio(static_cast<std::size_t>(k)) -
                        fib_ratio_inv(static_cast<std::size_t>(k));
                return a * rat_pow_int(r, k - 1 - base) * w;
            }
            case Model::CassiniDecay:
                return a * make_rat(Int(k % 2 == 0 ? 1 : -1), fk(k) * fk(k + 1));
        }
        return Rat(0);
    }

    // Exact limit of y_k as k -> infinity.
    Rat limit() const {
        switch (model) {
            case Model::Const: return a;
            case Model::FibConst: return -a;
            default: return Rat(0);
        }
    }

    // Model of y_k - limit, valid from the same start.
    TailView residual() const {
        TailView v = *this;
        switch (model) {
            case Model::Zero:
            case Model::Const: v.model = Model::Zero; break;
            case Model::FibConst:
                // -v(1 + (-1)^{k+1}/(f_k f_{k+1})) + v = v (-1)^k / (f_k f_{k+1})
                v.model = Model::CassiniDecay;
                break;
            case Model::Geo:
            case Model::FibGeo:
            case Model::CassiniDecay: break;  // limit is 0
        }
        return v;
    }

    // Geometric envelope lo * rho^(k-from) <= |y_k| <= hi * rho^(k-from)
    // for the decaying models, with exact rational constants.
    struct GeoBounds {
        bool valid = false;
        Rat lo, hi, rho;
    };
    GeoBounds geo_envelope(long from) const {
        GeoBounds g;
        if (zero_like()) return g;
        if (model == Model::Geo) {
            g.valid = true;
            g.rho = rat_abs(r);
            g.lo = g.hi = rat_abs(value_at(from));
            return g;
        }
        if (model == Model::FibGeo) {
            auto [rlo, rhi] = fib_ratio_bounds(static_cast<std::size_t>(std::max(from, 1L)));
            // |r f_k/f_{k+1} - f_{k+1}/f_k| between rlo - |r| and rhi + |r|
            // (the inverse-ratio factor lies in (0, 1]).
            Rat wlo = rlo - rat_abs(r);
            Rat whi = rhi + rat_abs(r);
            g.valid = true;
            g.rho = rat_abs(r);
            Rat scale = rat_abs(a) * rat_abs(rat_pow_int(r, from - 1 - base));
            g.lo = scale * wlo;
            g.hi = scale * whi;
            return g;
        }
        if (model == Model::CassiniDecay) {
            // 1/(f_{k+1} f_{k+2}) is between a third and a half of
            // 1/(f_k f_{k+1}).
            g.valid = true;
            g.rho = make_rat(Int(1), Int(2));
            g.hi = rat_abs(value_at(from));
            g.lo = g.hi;  // exact values used where the lower bound matters
            return g;
        }
        return g;
    }

    // Certified sup of |y_k| over k >= from, with attainment information.
    struct AbsSup {
        Rat value;
        bool attained = false;
    };
    AbsSup abs_sup(long from) const {
        switch (model) {
            case Model::Zero: return {Rat(0), true};
            case Model::Const: return {rat_abs(a), true};
            case Model::Geo: return {rat_abs(value_at(from)), true};
            case Model::FibConst: {
                if (a == 0) return {Rat(0), true};
                long odd = from % 2 == 1 ? from : from + 1;
                return {rat_abs(value_at(odd)), true};
            }
            case Model::FibGeo: {
                auto g = geo_envelope(from);
                return {g.valid ? g.hi : Rat(0), false};
            }
            case Model::CassiniDecay: return {rat_abs(value_at(from)), true};
        }
        return {Rat(0), true};
    }

    // Uniform positive lower bound on |y_k| over k >= from, when one
    // exists (Const and FibConst models only).
    Rat abs_lower_uniform(long from) const {
        if (model == Model::Const) return rat_abs(a);
        if (model == Model::FibConst) {
            if (a == 0) return Rat(0);
            long even = from % 2 == 0 ? from : from + 1;
            return rat_abs(value_at(even));
        }
        return Rat(0);
    }
};

// Behaviour of the powered terms |y_k|^{q_k} over k >= from.
struct PoweredTail {
    bool all_zero = false;
    std::optional<Real> sup_bound;
    std::optional<Real> inf_bound;  // valid for all k >= inf_from
    long inf_from = 0;
    enum class LimitClass { Zero, Positive, Unknown };
    LimitClass limit = LimitClass::Unknown;
    std::optional<Real> sum_bound;
    bool sum_divergent = false;
    std::string note;
};

bool exponents_decay(const ExponentSeq& q) { return q.seq().tail().kind == TailKind::Geometric; }

// For decaying exponents and a geometrically decaying base envelope
// lo * rho^t: find an index from which the powered lower bound stays
// above 1/2 (the powered terms tend to 1 from below). Returns the index,
// or nullopt if the scan cap is hit.
std::optional<long> probe_powered_floor(const Rat& lo, const Rat& rho, long from,
                                        const ExponentSeq& q, mpfr_prec_t prec) {
    if (lo <= 0 || rho <= 0 || rho >= 1) return std::nullopt;
    const Rat qr = q.seq().tail().r;
    Real ln_rho_abs = -Real::log(Real(rho, prec));
    Real ln_lo = Real::log(Real(lo, prec));
    Real threshold(make_rat(Int(3), Int(5)), prec);  // 0.6 < ln 2
    // g(t) = t |ln rho| - ln lo grows linearly; beta_k = q_k g(t) decreases
    // once g(t) > qr |ln rho| / (1 - qr).
    Real decay_gate = Real(qr, prec) * ln_rho_abs / (Real(1l, prec) - Real(qr, prec));
    const long cap = 20000;
    Real qv(q.at(from), prec);
    Real qratio(qr, prec);
    for (long k = from, t = 0; t < cap; ++k, ++t, qv = qv * qratio) {
        Real g = Real(Rat(t), prec) * ln_rho_abs - ln_lo;
        if (g.sign() <= 0) continue;
        Real beta = qv * g;
        if (beta <= threshold && g > decay_gate) return k;
    }
    return std::nullopt;
}

PoweredTail powered_tail(const TailView& view, const ExponentSeq& q, long from, mpfr_prec_t prec) {
    PoweredTail out;
    const Rat half = make_rat(Int(1), Int(2));
    if (view.zero_like()) {
        out.all_zero = true;
        out.limit = PoweredTail::LimitClass::Zero;
        out.sup_bound = Real(prec);
        out.sum_bound = Real(prec);
        return out;
    }
    const bool q_decays = exponents_decay(q);
    const bool flat_base =
        view.model == TailView::Model::Const || view.model == TailView::Model::FibConst;

    if (flat_base) {
        const Rat hi = view.abs_sup(from).value;
        const Rat lo = view.abs_lower_uniform(from);
        out.sum_divergent = true;  // terms bounded below by a positive constant
        if (!q_decays) {
            const Rat pi = q.at(from);  // constant over the tail
            out.sup_bound = Real::pow_abs(hi, pi, prec);
            out.inf_bound = Real::pow_abs(lo, pi, prec);
            out.inf_from = from;
            out.limit = PoweredTail::LimitClass::Positive;
            out.note = "constant-magnitude tail";
        } else {
            const Rat q_from = q.at(from);
            Real one(1l, prec);
            Real sup_at_from = Real::pow_abs(hi, q_from, prec);
            out.sup_bound = Real::max(one, sup_at_from);
            Real inf_at_from = Real::pow_abs(lo, q_from, prec);
            out.inf_bound = lo >= 1 ? one : inf_at_from;
            out.inf_from = from;
            out.limit = PoweredTail::LimitClass::Positive;
            out.note = "powered terms tend to 1 under decaying exponents";
        }
        return out;
    }

    // Decaying base: Geo, FibGeo or CassiniDecay.
    auto env = view.geo_envelope(from);
    if (!env.valid) return out;  // unreachable for the supported models
    if (!q_decays) {
        const Rat pi = q.at(from);
        Real first = Real::pow_abs(env.hi, pi, prec);
        out.sup_bound = first;
        out.limit = PoweredTail::LimitClass::Zero;
        Real ratio_pow = Real::pow_abs(env.rho, pi, prec);
        out.sum_bound = first / (Real(1l, prec) - ratio_pow);
        out.note = "geometric tail bound";
        return out;
    }
    // Decaying base against decaying exponents: the powered terms tend
    // to 1, so sums diverge and the terms are eventually above 1/2.
    // Coarse but sound supremum: bases stay in (0, hi] and exponents in
    // (0, q_from], so every term is at most max(1, hi^{q_from}).
    Real one(1l, prec);
    Real sup = env.hi >= 1 ? Real::max(one, Real::pow_abs(env.hi, q.at(from), prec)) : one;
    out.sup_bound = sup;
    // Lower-bound envelope. CassiniDecay carries an exact value at every
    // index, which dominates the crude 1/3-ratio envelope.
    Rat lo = env.lo;
    Rat rho = env.rho;
    if (view.model == TailView::Model::CassiniDecay) rho = make_rat(Int(1), Int(3));
    if (auto idx = probe_powered_floor(lo, rho, from, q, prec)) {
        out.inf_bound = Real(half, prec);
        out.inf_from = *idx;
        out.limit = PoweredTail::LimitClass::Positive;
        out.sum_divergent = true;
        out.note = "powered terms tend to 1 under decaying exponents";
    } else {
        out.limit = PoweredTail::LimitClass::Unknown;
        out.note = "floor probe hit its scan cap";
    }
    return out;
}

struct HeadStats {
    Real sup;
    Real sum;
    long argmax = -1;
    Real window_max;  // over the trailing quarter
    long window_start = 0;
};

HeadStats head_powered_stats(const std::vector<Rat>& values, const ExponentSeq& q,
                             mpfr_prec_t prec) {
    HeadStats st{Real(prec), Real(prec), -1, Real(prec), 0};
    const long n = static_cast<long>(values.size()) - 1;
    st.window_start = std::max(0L, n - (n + 4) / 4 + 1);
    for (long k = 0; k <= n; ++k) {
        Real term = Real::pow_abs(values[static_cast<std::size_t>(k)], q.at(k), prec);
        st.sum += term;
        if (st.argmax < 0 || st.sup < term) {
            st.sup = term;
            st.argmax = k;
        }
        if (k >= st.window_start && st.window_max < term) st.window_max = term;
    }
    return st;
}

long effective_truncation(long n, long view_start, const ExponentSeq& p) {
    return std::max({n, view_start, p.seq().prefix_length()});
}

// Paranorm estimate reported with a membership verdict: the sup-type
// functional over the computed window only, on the p/M scale. Keeping
// the certified tail bounds out of this number makes it monotone
// nondecreasing in the truncation; the bounds live in the verdict
// witnesses instead.
Real sup_paranorm_estimate(const std::vector<Rat>& head, const ExponentSeq& p,
                           mpfr_prec_t prec) {
    ExponentSeq scaled = p.scaled(Rat(1) / p.bound());
    return head_powered_stats(head, scaled, prec).sup;
}

MembershipReport classify_view(const std::vector<Rat>& head, const TailView& view,
                               SpaceFamily family, const ExponentSeq& p, long n_eff,
                               const Rat& tol, mpfr_prec_t prec) {
    MembershipReport report{Verdict::inconclusive_at(n_eff), Real(prec), std::nullopt,
                            std::nullopt, true};
    report.paranorm_guarantee = p.glb() > 0;
    const long from = n_eff + 1;
    HeadStats st = head_powered_stats(head, p, prec);
    PoweredTail pt = powered_tail(view, p, from, prec);
    Verdict& v = report.verdict;
    v.witnesses["tol"] = rat_str(tol);
    v.extremal_index = st.argmax;
    if (!pt.note.empty()) v.notes.push_back(pt.note);

    switch (family) {
        case SpaceFamily::Null: {
            if (pt.all_zero || pt.limit == PoweredTail::LimitClass::Zero) {
                v.status = Status::HoldsAtTruncation;
                v.margin = st.window_max.str();
                if (Real(tol, prec) <= st.window_max)
                    v.notes.push_back("head window exceeds tol; certified tail decay dominates");
            } else if (pt.limit == PoweredTail::LimitClass::Positive) {
                v.status = Status::FailsAtTruncation;
                v.margin = pt.inf_bound->str();
                v.notes.push_back("powered terms bounded below from index " +
                                  std::to_string(pt.inf_from));
            } else {
                v.margin = st.window_max.str();
            }
            report.paranorm_estimate = sup_paranorm_estimate(head, p, prec);
            break;
        }
        case SpaceFamily::Bounded: {
            if (pt.sup_bound) {
                v.status = Status::HoldsAtTruncation;
                Real sup = Real::max(st.sup, *pt.sup_bound);
                v.margin = sup.str();
                v.witnesses["sup_bound"] = sup.str();
            } else {
                v.margin = st.sup.str();
            }
            report.paranorm_estimate = sup_paranorm_estimate(head, p, prec);
            break;
        }
        case SpaceFamily::Summable: {
            if (pt.sum_divergent) {
                v.status = Status::FailsAtTruncation;
                v.margin = st.sum.str();
                v.notes.push_back("tail terms do not vanish; sum diverges");
            } else if (pt.sum_bound) {
                v.status = Status::HoldsAtTruncation;
                Real total = st.sum + *pt.sum_bound;
                v.margin = total.str();
                v.witnesses["sum_bound"] = total.str();
            } else {
                v.margin = st.sum.str();
            }
            report.paranorm_estimate =
                Real::pow(st.sum, Real(Rat(1) / p.bound(), prec));
            break;
        }
        case SpaceFamily::Convergent: {
            const Rat limit = view.limit();
            report.limit_exact = limit;
            report.limit_candidate = Real(limit, prec);
            std::vector<Rat> residual_head;
            residual_head.reserve(head.size());
            for (const auto& val : head) residual_head.push_back(val - limit);
            HeadStats rst = head_powered_stats(residual_head, p, prec);
            PoweredTail rpt = powered_tail(view.residual(), p, from, prec);
            v.extremal_index = rst.argmax;
            if (rpt.all_zero || rpt.limit == PoweredTail::LimitClass::Zero) {
                v.status = Status::HoldsAtTruncation;
                v.margin = rst.window_max.str();
                v.witnesses["limit"] = rat_str(limit);
            } else if (rpt.limit == PoweredTail::LimitClass::Positive) {
                v.status = Status::FailsAtTruncation;
                v.margin = rpt.inf_bound->str();
                v.notes.push_back("no admissible limit: residual powers stay bounded below");
            } else {
                v.margin = rst.window_max.str();
            }
            if (!rpt.note.empty()) v.notes.push_back(rpt.note);
            report.paranorm_estimate = sup_paranorm_estimate(head, p, prec);
            break;
        }
    }
    return report;
}

}  // namespace

std::string space_name(SpaceId id) {
    std::string base;
    switch (id.family) {
        case SpaceFamily::Null: base = "c0"; break;
        case SpaceFamily::Convergent: base = "c"; break;
        case SpaceFamily::Bounded: base = "linf"; break;
        case SpaceFamily::Summable: base = "lp"; break;
    }
    return id.layer == SpaceLayer::FibonacciDomain ? base + "_fib" : base + "_maddox";
}

H1Result h1(const Seq& y, const ExponentSeq& p, long n, mpfr_prec_t prec) {
    TailView view = TailView::from_tailspec(y.tail(), y.prefix_length());
    const long n_eff = effective_truncation(n, view.start, p);
    std::vector<Rat> head;
    head.reserve(static_cast<std::size_t>(n_eff) + 1);
    for (long k = 0; k <= n_eff; ++k) head.push_back(y.eval(k));
    ExponentSeq scaled = p.scaled(Rat(1) / p.bound());
    HeadStats st = head_powered_stats(head, scaled, prec);
    PoweredTail pt = powered_tail(view, scaled, n_eff + 1, prec);
    Real value = st.sup;
    std::string note;
    if (pt.sup_bound) {
        if (value < *pt.sup_bound) value = *pt.sup_bound;
    } else {
        note = "tail supremum not certified";
    }
    if (!pt.note.empty()) note = pt.note;
    return {value, note};
}

H2Result h2(const Seq& y, const ExponentSeq& p, long n, mpfr_prec_t prec) {
    TailView view = TailView::from_tailspec(y.tail(), y.prefix_length());
    const long n_eff = effective_truncation(n, view.start, p);
    std::vector<Rat> head;
    head.reserve(static_cast<std::size_t>(n_eff) + 1);
    for (long k = 0; k <= n_eff; ++k) head.push_back(y.eval(k));
    HeadStats st = head_powered_stats(head, p, prec);
    PoweredTail pt = powered_tail(view, p, n_eff + 1, prec);
    H2Result out{Real(prec), false, {}};
    Real total = st.sum;
    if (pt.sum_divergent) {
        out.divergent = true;
        out.tail_note = "tail certifies divergence";
    } else if (pt.sum_bound) {
        total += *pt.sum_bound;
        out.tail_note = "tail summed in closed form";
    } else {
        out.tail_note = "tail sum not certified";
    }
    out.value = Real::pow(total, Real(Rat(1) / p.bound(), prec));
    return out;
}

Real g_paranorm(const Seq& x, const ExponentSeq& p, long n, mpfr_prec_t prec) {
    std::vector<Rat> y = fhat_apply(x, n);
    const Rat m = p.bound();
    Real sup(prec);
    for (long k = 0; k <= n; ++k) {
        Real term = Real::pow_abs(y[static_cast<std::size_t>(k)], p.at(k) / m, prec);
        if (sup < term) sup = term;
    }
    return sup;
}

Real gstar_paranorm(const Seq& x, const ExponentSeq& p, long n, mpfr_prec_t prec) {
    std::vector<Rat> y = fhat_apply(x, n);
    Real sum(prec);
    for (long k = 0; k <= n; ++k)
        sum += Real::pow_abs(y[static_cast<std::size_t>(k)], p.at(k), prec);
    return Real::pow(sum, Real(Rat(1) / p.bound(), prec));
}

MembershipReport classify(const Seq& x, SpaceId space, const ExponentSeq& p, long n,
                          const Rat& tol, mpfr_prec_t prec) {
    if (n < 1) throw DomainError("classify requires truncation >= 1");
    TailView view = space.layer == SpaceLayer::FibonacciDomain
                        ? TailView::transformed(x.tail(), x.prefix_length())
                        : TailView::from_tailspec(x.tail(), x.prefix_length());
    const long n_eff = effective_truncation(n, view.start, p);
    std::vector<Rat> head = space.layer == SpaceLayer::FibonacciDomain
                                ? fhat_apply(x, n_eff)
                                : [&] {
                                      std::vector<Rat> h;
                                      h.reserve(static_cast<std::size_t>(n_eff) + 1);
                                      for (long k = 0; k <= n_eff; ++k) h.push_back(x.eval(k));
                                      return h;
                                  }();
    MembershipReport report = classify_view(head, view, space.family, p, n_eff, tol, prec);
    if (!report.paranorm_guarantee &&
        (space.family == SpaceFamily::Convergent || space.family == SpaceFamily::Bounded))
        report.verdict.notes.push_back("inf p_k = 0: outside the sup-paranorm guarantee");
    return report;
}

Json MembershipReport::to_json() const {
    Json j;
    j["verdict"] = verdict.to_json();
    j["paranorm_estimate"] = paranorm_estimate.str();
    if (limit_candidate) j["limit_candidate"] = limit_candidate->str();
    if (limit_exact) j["limit_exact"] = rat_str(*limit_exact);
    j["paranorm_guarantee"] = paranorm_guarantee;
    return j;
}

AbsoluteWitness absolute_property_witness(const ExponentSeq& p, long truncation,
                                          mpfr_prec_t prec) {
    Seq x({Rat(1), Rat(-1)}, TailSpec::zero());
    Seq abs_x({Rat(1), Rat(1)}, TailSpec::zero());
    return {x, g_paranorm(x, p, truncation, prec), g_paranorm(abs_x, p, truncation, prec)};
}

}  // namespace fibseq
