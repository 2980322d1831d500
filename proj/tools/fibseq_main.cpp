// Command-line front end. Every subcommand prints a single JSON envelope
// {"config": ..., "result": ...} on stdout; rationals are emitted as
// exact "p/q" strings and floating values carry a precision_bits sibling.
// Exit codes: 0 success, 1 inconclusive under --strict, 2 input error.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "fibseq/duals.hpp"
#include "fibseq/fib.hpp"
#include "fibseq/matrix_maps.hpp"
#include "fibseq/rational.hpp"
#include "fibseq/seq.hpp"
#include "fibseq/spaces.hpp"
#include "fibseq/transform.hpp"
#include "fibseq/verdict.hpp"

using namespace fibseq;

namespace {

struct GlobalOpts {
    long trunc = 128;
    long precision = 128;
    std::string tol = "1/1000000000000";
    unsigned witness_max = 20;
    int subset_max = 12;
    bool strict = false;
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--trunc", g.trunc, "truncation index");
    cmd->add_option("--precision", g.precision, "working precision in bits");
    cmd->add_option("--tol", g.tol, "stabilization tolerance as a rational p/q");
    cmd->add_option("--witness-max", g.witness_max, "witness grid max exponent (2^1..2^E)");
    cmd->add_option("--kmax", g.subset_max, "finite-subset enumeration cap");
    cmd->add_flag("--strict", g.strict, "exit 1 on inconclusive verdicts");
}

WitnessSearchConfig config_of(const GlobalOpts& g) {
    WitnessSearchConfig cfg;
    cfg.truncation = g.trunc;
    cfg.witness_max_exp = g.witness_max;
    cfg.subset_max = g.subset_max;
    cfg.tol = parse_rat(g.tol);
    return cfg;
}

Json real_field(const Real& r, long bits) {
    return Json{{"value", r.str()}, {"precision_bits", bits}};
}

Json config_json(const GlobalOpts& g, const std::string& subcommand, const Json& inputs) {
    Json j;
    j["subcommand"] = subcommand;
    if (!inputs.empty()) j["inputs"] = inputs;
    j["trunc"] = g.trunc;
    j["precision_bits"] = g.precision;
    j["tol"] = g.tol;
    j["witness_max_exp"] = g.witness_max;
    j["subset_max"] = g.subset_max;
    j["strict"] = g.strict;
    return j;
}

int emit(const GlobalOpts& g, const std::string& subcommand, Json result,
         std::optional<Status> status = std::nullopt, Json inputs = Json::object()) {
    Json envelope;
    envelope["config"] = config_json(g, subcommand, inputs);
    envelope["result"] = std::move(result);
    std::cout << envelope.dump(2) << "\n";
    if (g.strict && status && *status == Status::Inconclusive) return 1;
    return 0;
}

Seq seq_arg(const std::string& text) { return Seq::from_json(Json::parse(text)); }

ExponentSeq exp_arg(const std::string& text) {
    if (text.empty()) return ExponentSeq::constant(Rat(1));
    // Shorthand: a bare rational means a constant exponent sequence.
    if (text.find('{') == std::string::npos)
        return ExponentSeq::constant(parse_rat(text));
    return ExponentSeq::from_json(Json::parse(text));
}

SpaceFamily family_arg(const std::string& name) {
    if (name == "c0") return SpaceFamily::Null;
    if (name == "c") return SpaceFamily::Convergent;
    if (name == "linf") return SpaceFamily::Bounded;
    if (name == "lp") return SpaceFamily::Summable;
    throw ParseError("unknown space '" + name + "' (expected c0, c, linf, lp)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tooling for Fibonacci difference sequence spaces"};
    app.require_subcommand(1);

    GlobalOpts g;

    // fib
    auto* cmd_fib = app.add_subcommand("fib", "Fibonacci numbers f_0 = f_1 = 1");
    long fib_n = 0;
    cmd_fib->add_option("--n", fib_n, "index")->required();
    add_global_flags(cmd_fib, g);

    // identities
    auto* cmd_id = app.add_subcommand("identities", "exact identity checks");
    long cassini_max = 100, prefix_max = 100, golden_max = 0, inverse_n = 0;
    cmd_id->add_option("--cassini-max", cassini_max, "check the alternating residual up to n");
    cmd_id->add_option("--prefix-sum-max", prefix_max, "check the shifted prefix sums up to n");
    cmd_id->add_option("--golden-max", golden_max, "check strict decay of the ratio error");
    cmd_id->add_option("--inverse-check", inverse_n, "verify both truncated products equal I");
    add_global_flags(cmd_id, g);

    // transform / inverse
    auto* cmd_tr = app.add_subcommand("transform", "apply the difference matrix");
    std::string tr_x;
    long tr_n = -1;
    cmd_tr->add_option("--x", tr_x, "sequence JSON")->required();
    cmd_tr->add_option("--n", tr_n, "last index (defaults to --trunc)");
    add_global_flags(cmd_tr, g);

    auto* cmd_inv = app.add_subcommand("inverse", "apply the explicit inverse");
    std::string inv_y;
    long inv_n = -1;
    cmd_inv->add_option("--y", inv_y, "sequence JSON")->required();
    cmd_inv->add_option("--n", inv_n, "last index (defaults to --trunc)");
    add_global_flags(cmd_inv, g);

    // paranorm
    auto* cmd_pn = app.add_subcommand("paranorm", "paranorms and the base functionals");
    std::string pn_x, pn_p, pn_kind = "g";
    cmd_pn->add_option("--x", pn_x, "sequence JSON")->required();
    cmd_pn->add_option("--p", pn_p, "exponent sequence JSON or constant rational");
    cmd_pn->add_option("--kind", pn_kind, "g | gstar | h1 | h2");
    add_global_flags(cmd_pn, g);

    // classify
    auto* cmd_cl = app.add_subcommand("classify", "membership classification");
    std::string cl_x, cl_p, cl_space = "c0", cl_layer = "fib";
    cmd_cl->add_option("--x", cl_x, "sequence JSON")->required();
    cmd_cl->add_option("--p", cl_p, "exponent sequence JSON or constant rational");
    cmd_cl->add_option("--space", cl_space, "c0 | c | linf | lp");
    cmd_cl->add_option("--layer", cl_layer, "maddox | fib");
    add_global_flags(cmd_cl, g);

    // basis
    auto* cmd_bs = app.add_subcommand("basis", "basis vectors and expansions");
    std::string bs_x, bs_p;
    long bs_k = -1, bs_order = -1;
    cmd_bs->add_option("--k", bs_k, "basis vector index");
    cmd_bs->add_option("--x", bs_x, "sequence JSON for an expansion");
    cmd_bs->add_option("--p", bs_p, "exponent sequence JSON or constant rational");
    cmd_bs->add_option("--order", bs_order, "expansion order");
    add_global_flags(cmd_bs, g);

    // dual
    auto* cmd_du = app.add_subcommand("dual", "dual condition sets and memberships");
    std::string du_a, du_p, du_set, du_space, du_kind;
    cmd_du->add_option("--a", du_a, "sequence JSON")->required();
    cmd_du->add_option("--p", du_p, "exponent sequence JSON or constant rational");
    cmd_du->add_option("--set", du_set, "single condition set f1..f16");
    cmd_du->add_option("--space", du_space, "c0 | c | linf | lp");
    cmd_du->add_option("--kind", du_kind, "alpha | beta | gamma");
    add_global_flags(cmd_du, g);

    // matmap
    auto* cmd_mm = app.add_subcommand("matmap", "matrix mapping characterizations");
    std::string mm_matrix, mm_builtin, mm_source = "c0", mm_target = "c0_q", mm_p, mm_q,
                mm_condition;
    cmd_mm->add_option("--matrix", mm_matrix, "matrix JSON");
    cmd_mm->add_option("--builtin", mm_builtin, "fhat | identity | zero");
    cmd_mm->add_option("--source", mm_source, "c0 | c | linf");
    cmd_mm->add_option("--target", mm_target, "linf | c | c0 | linf_q | c_q | c0_q");
    cmd_mm->add_option("--p", mm_p, "source exponents");
    cmd_mm->add_option("--q", mm_q, "target exponents");
    cmd_mm->add_option("--condition", mm_condition, "check a single named condition");
    add_global_flags(cmd_mm, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        Json err{{"error", {{"type", "cli"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }

    try {
        const mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision);
        if (prec < 64) throw DomainError("precision must be at least 64 bits");
        WitnessSearchConfig cfg = config_of(g);

        if (cmd_fib->parsed()) {
            if (fib_n < 0) throw DomainError("index must be nonnegative");
            return emit(g, "fib", Json(fib(static_cast<std::size_t>(fib_n)).get_str()),
                        std::nullopt, Json{{"n", fib_n}});
        }

        if (cmd_id->parsed()) {
            Json res;
            bool cassini_ok = true;
            for (long n = 1; n <= cassini_max; ++n)
                cassini_ok = cassini_ok && cassini_residual(static_cast<std::size_t>(n)) ==
                                               (n % 2 == 1 ? 1 : -1);
            res["cassini"] = cassini_ok ? "ok" : "violated";
            bool prefix_ok = true;
            for (long n = 0; n <= prefix_max; ++n)
                prefix_ok = prefix_ok && fib_prefix_sum(static_cast<std::size_t>(n)) ==
                                             fib(static_cast<std::size_t>(n) + 2) - 1;
            res["prefix_sum"] = prefix_ok ? "ok" : "violated";
            if (golden_max >= 2) {
                bool dec = true;
                Real prev = golden_ratio_error(2, prec);
                for (long n = 3; n <= golden_max; ++n) {
                    Real cur = golden_ratio_error(static_cast<std::size_t>(n), prec);
                    dec = dec && cur < prev;
                    prev = cur;
                }
                res["golden_ratio_decay"] = dec ? "ok" : "violated";
            }
            if (inverse_n >= 1)
                res["inverse_identity"] = identity_check(inverse_n) ? "ok" : "violated";
            return emit(g, "identities", std::move(res));
        }

        if (cmd_tr->parsed() || cmd_inv->parsed()) {
            const bool fwd = cmd_tr->parsed();
            Seq s = seq_arg(fwd ? tr_x : inv_y);
            long n = fwd ? tr_n : inv_n;
            if (n < 0) n = g.trunc;
            auto vals = fwd ? fhat_apply(s, n) : inverse_apply(s, n);
            Json arr = Json::array();
            for (const auto& v : vals) arr.push_back(rat_str(v));
            return emit(g, fwd ? "transform" : "inverse", std::move(arr), std::nullopt,
                        Json{{"seq", Json::parse(fwd ? tr_x : inv_y)}, {"n", n}});
        }

        if (cmd_pn->parsed()) {
            Seq x = seq_arg(pn_x);
            ExponentSeq p = exp_arg(pn_p);
            Json res;
            if (pn_kind == "g") {
                res["paranorm"] = real_field(g_paranorm(x, p, g.trunc, prec), g.precision);
            } else if (pn_kind == "gstar") {
                res["paranorm"] = real_field(gstar_paranorm(x, p, g.trunc, prec), g.precision);
            } else if (pn_kind == "h1") {
                auto r = h1(x, p, g.trunc, prec);
                res["paranorm"] = real_field(r.value, g.precision);
                if (!r.tail_note.empty()) res["tail_note"] = r.tail_note;
            } else if (pn_kind == "h2") {
                auto r = h2(x, p, g.trunc, prec);
                res["paranorm"] = real_field(r.value, g.precision);
                res["divergent"] = r.divergent;
                if (!r.tail_note.empty()) res["tail_note"] = r.tail_note;
            } else {
                throw ParseError("unknown paranorm kind '" + pn_kind + "'");
            }
            return emit(g, "paranorm", std::move(res), std::nullopt,
                        Json{{"x", Json::parse(pn_x)}, {"p", pn_p}, {"kind", pn_kind}});
        }

        if (cmd_cl->parsed()) {
            Seq x = seq_arg(cl_x);
            ExponentSeq p = exp_arg(cl_p);
            SpaceId id{family_arg(cl_space),
                       cl_layer == "maddox" ? SpaceLayer::Maddox : SpaceLayer::FibonacciDomain};
            auto report = classify(x, id, p, g.trunc, cfg.tol, prec);
            Json res = report.to_json();
            res["space"] = space_name(id);
            return emit(g, "classify", std::move(res), report.verdict.status,
                        Json{{"x", Json::parse(cl_x)}, {"p", cl_p}, {"space", cl_space}, {"layer", cl_layer}});
        }

        if (cmd_bs->parsed()) {
            Json res;
            if (bs_k >= 0) {
                auto b = basis_vector(bs_k, g.trunc);
                Json arr = Json::array();
                for (const auto& v : b) arr.push_back(rat_str(v));
                res["basis_vector"] = arr;
            }
            if (!bs_x.empty()) {
                if (bs_order < 0) throw DomainError("--order is required for an expansion");
                auto exp = basis_expand(seq_arg(bs_x), bs_order, exp_arg(bs_p), g.trunc, prec);
                Json mu = Json::array();
                for (const auto& v : exp.coefficients) mu.push_back(rat_str(v));
                res["coefficients"] = mu;
                res["residual"] = real_field(exp.residual, g.precision);
                res["residual_complete"] = exp.residual_complete;
                if (!exp.note.empty()) res["note"] = exp.note;
            }
            if (res.empty()) throw DomainError("basis needs --k or --x with --order");
            return emit(g, "basis", std::move(res));
        }

        if (cmd_du->parsed()) {
            Seq a = seq_arg(du_a);
            ExponentSeq p = exp_arg(du_p);
            if (!du_set.empty()) {
                auto v = dual_set_check(dual_set_from_name(du_set), a, p, cfg, prec);
                Json res{{"set", du_set}, {"verdict", v.to_json()}};
                return emit(g, "dual", std::move(res), v.status,
                            Json{{"a", Json::parse(du_a)}, {"p", du_p}, {"set", du_set}});
            }
            if (du_space.empty() || du_kind.empty())
                throw DomainError("dual needs --set or both --space and --kind");
            DualKind kind = du_kind == "alpha"  ? DualKind::Alpha
                            : du_kind == "beta" ? DualKind::Beta
                                                : DualKind::Gamma;
            if (du_kind != "alpha" && du_kind != "beta" && du_kind != "gamma")
                throw ParseError("unknown dual kind '" + du_kind + "'");
            auto v = dual_membership(family_arg(du_space), kind, a, p, cfg, prec);
            Json res{{"space", du_space}, {"kind", du_kind}, {"verdict", v.to_json()}};
            return emit(g, "dual", std::move(res), v.status,
                        Json{{"a", Json::parse(du_a)}, {"p", du_p}, {"space", du_space},
                             {"kind", du_kind}});
        }

        if (cmd_mm->parsed()) {
            InfMatrix a = !mm_builtin.empty()
                              ? InfMatrix::from_json(
                                    Json{{"kind", "builtin"}, {"name", mm_builtin}})
                              : InfMatrix::from_json(Json::parse(mm_matrix));
            ExponentSeq p = exp_arg(mm_p);
            ExponentSeq q = exp_arg(mm_q);
            if (!mm_condition.empty()) {
                auto v = condition_check(map_condition_from_name(mm_condition), a, p, q, cfg,
                                         prec);
                Json res{{"condition", mm_condition}, {"verdict", v.to_json()}};
                return emit(g, "matmap", std::move(res), v.status,
                            Json{{"matrix", mm_builtin.empty() ? Json::parse(mm_matrix)
                                                               : Json(mm_builtin)},
                                 {"p", mm_p}, {"q", mm_q}, {"condition", mm_condition}});
            }
            auto v = classify_mapping(a, map_source_from_name(mm_source),
                                      map_target_from_name(mm_target), p, q, cfg, prec);
            Json res{{"source", mm_source}, {"target", mm_target}, {"verdict", v.to_json()}};
            return emit(g, "matmap", std::move(res), v.status,
                        Json{{"matrix", mm_builtin.empty() ? Json::parse(mm_matrix)
                                                           : Json(mm_builtin)},
                             {"p", mm_p}, {"q", mm_q}, {"source", mm_source},
                             {"target", mm_target}});
        }

        throw DomainError("no subcommand executed");
    } catch (const ParseError& e) {
        Json err{{"error", {{"type", "parse"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        Json err{{"error", {{"type", "parse"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        Json err{{"error", {{"type", "unsupported"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const DomainError& e) {
        Json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err{{"error", {{"type", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
