#include "fibseq/seq.hpp"

#include <algorithm>

namespace fibseq {

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw ParseError("rational must be a \"p/q\" string or an integer");
}

}  // namespace

Seq Seq::from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("sequence must be a JSON object");
    std::vector<Rat> prefix;
    if (j.contains("prefix")) {
        if (!j.at("prefix").is_array()) throw ParseError("\"prefix\" must be an array");
        for (const auto& item : j.at("prefix")) prefix.push_back(rat_from_json(item));
    }
    TailSpec tail = TailSpec::zero();
    if (j.contains("tail")) {
        const Json& t = j.at("tail");
        if (!t.is_object() || !t.contains("kind")) throw ParseError("\"tail\" needs a \"kind\"");
        const std::string kind = t.at("kind").get<std::string>();
        if (kind == "zero") {
            tail = TailSpec::zero();
        } else if (kind == "constant") {
            if (!t.contains("c")) throw ParseError("constant tail needs \"c\"");
            tail = TailSpec::constant(rat_from_json(t.at("c")));
        } else if (kind == "geometric") {
            if (!t.contains("c") || !t.contains("r"))
                throw ParseError("geometric tail needs \"c\" and \"r\"");
            Rat c = rat_from_json(t.at("c"));
            Rat r = rat_from_json(t.at("r"));
            if (rat_abs(r) >= 1) throw ParseError("geometric tail needs |r| < 1");
            tail = TailSpec::geometric(c, r);
        } else {
            throw ParseError("unknown tail kind '" + kind + "'");
        }
    }
    return Seq(std::move(prefix), tail);
}

Json Seq::to_json() const {
    Json j;
    Json prefix = Json::array();
    for (const auto& v : prefix_) prefix.push_back(rat_str(v));
    j["prefix"] = std::move(prefix);
    Json tail;
    switch (tail_.kind) {
        case TailKind::Zero: tail["kind"] = "zero"; break;
        case TailKind::Constant:
            tail["kind"] = "constant";
            tail["c"] = rat_str(tail_.c);
            break;
        case TailKind::Geometric:
            tail["kind"] = "geometric";
            tail["c"] = rat_str(tail_.c);
            tail["r"] = rat_str(tail_.r);
            break;
    }
    j["tail"] = std::move(tail);
    return j;
}

ExponentSeq::ExponentSeq(Seq seq) : seq_(std::move(seq)) {
    for (const auto& v : seq_.prefix())
        if (v <= 0) throw DomainError("exponent sequence must be strictly positive");
    const TailSpec& t = seq_.tail();
    switch (t.kind) {
        case TailKind::Zero: throw DomainError("exponent sequence cannot have a zero tail");
        case TailKind::Constant:
            if (t.c <= 0) throw DomainError("exponent tail must be strictly positive");
            break;
        case TailKind::Geometric:
            if (t.c <= 0 || t.r <= 0)
                throw DomainError("geometric exponent tail needs c > 0 and 0 < r < 1");
            break;
    }
    // Tail supremum: the constant value, or the leading geometric term
    // (the tail decreases since 0 < r < 1). Tail glb: c, or 0 in the limit.
    Rat tail_sup = t.c;
    Rat tail_glb = t.kind == TailKind::Geometric ? Rat(0) : t.c;
    sup_ = tail_sup;
    glb_ = tail_glb;
    for (const auto& v : seq_.prefix()) {
        sup_ = std::max(sup_, v);
        glb_ = std::min(glb_, v);
    }
    bound_ = std::max(Rat(1), sup_);
}

bool ExponentSeq::all_greater_than_one() const {
    for (const auto& v : seq_.prefix())
        if (v <= 1) return false;
    const TailSpec& t = seq_.tail();
    if (t.kind == TailKind::Geometric) return false;  // decays to 0
    return t.c > 1;
}

ExponentSeq::Stats ExponentSeq::stats(long n) const {
    Rat inf = at(0);
    for (long k = 1; k <= n; ++k) inf = std::min(inf, at(k));
    return {inf, sup_, bound_};
}

ExponentSeq ExponentSeq::scaled(const Rat& factor) const {
    if (factor <= 0) throw DomainError("exponent scale must be positive");
    std::vector<Rat> prefix;
    prefix.reserve(seq_.prefix().size());
    for (const auto& v : seq_.prefix()) prefix.push_back(v * factor);
    const TailSpec& t = seq_.tail();
    TailSpec tail = t.kind == TailKind::Constant ? TailSpec::constant(t.c * factor)
                                                 : TailSpec::geometric(t.c * factor, t.r);
    return ExponentSeq(Seq(std::move(prefix), tail));
}

}  // namespace fibseq
