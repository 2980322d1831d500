// Sequence data model: an explicit exact prefix plus a symbolic tail
// (zero, constant, or geometric with |r| < 1). Restricting tails to
// these analyzable shapes is what lets membership and dual verdicts
// certify behaviour beyond any truncation; arbitrary generator tails are
// deliberately unsupported.
#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fibseq/rational.hpp"

namespace fibseq {

using Json = nlohmann::ordered_json;

enum class TailKind { Zero, Constant, Geometric };

struct TailSpec {
    TailKind kind = TailKind::Zero;
    Rat c;  // constant value, or geometric leading coefficient
    Rat r;  // geometric ratio, |r| < 1

    static TailSpec zero() { return {}; }
    static TailSpec constant(const Rat& c) { return {TailKind::Constant, c, Rat(0)}; }
    static TailSpec geometric(const Rat& c, const Rat& r) {
        if (rat_abs(r) >= 1) throw DomainError("geometric tail needs |r| < 1");
        return {TailKind::Geometric, c, r};
    }

    // Value t steps into the tail (t = k - prefix_length).
    Rat value_at(long t) const {
        switch (kind) {
            case TailKind::Zero: return Rat(0);
            case TailKind::Constant: return c;
            case TailKind::Geometric: return c * rat_pow_int(r, t);
        }
        return Rat(0);
    }

    bool is_zero_like() const {
        return kind == TailKind::Zero || ((kind == TailKind::Constant || kind == TailKind::Geometric) && c == 0);
    }
};

class Seq {
  public:
    Seq() = default;
    Seq(std::vector<Rat> prefix, TailSpec tail) : prefix_(std::move(prefix)), tail_(tail) {}

    static Seq zero() { return Seq({}, TailSpec::zero()); }
    static Seq constant(const Rat& c) { return Seq({}, TailSpec::constant(c)); }
    // Unit coordinate vector e^(k).
    static Seq unit(std::size_t k) {
        std::vector<Rat> p(k + 1, Rat(0));
        p[k] = 1;
        return Seq(std::move(p), TailSpec::zero());
    }

    Rat eval(long k) const {
        if (k < 0) return Rat(0);
        if (static_cast<std::size_t>(k) < prefix_.size()) return prefix_[static_cast<std::size_t>(k)];
        return tail_.value_at(k - static_cast<long>(prefix_.size()));
    }

    long prefix_length() const { return static_cast<long>(prefix_.size()); }
    const std::vector<Rat>& prefix() const { return prefix_; }
    const TailSpec& tail() const { return tail_; }

    bool equal_upto(const Seq& other, long n) const {
        for (long k = 0; k <= n; ++k)
            if (eval(k) != other.eval(k)) return false;
        return true;
    }

    // Smallest index s such that x_k = 0 for all k >= s, when the tail
    // certifies one (zero-like tails only).
    std::optional<long> zero_from() const {
        if (!tail_.is_zero_like()) return std::nullopt;
        long s = prefix_length();
        while (s > 0 && prefix_[static_cast<std::size_t>(s - 1)] == 0) --s;
        return s;
    }

    static Seq from_json(const Json& j);
    Json to_json() const;

  private:
    std::vector<Rat> prefix_;
    TailSpec tail_;
};

// Bounded strictly positive exponent sequence (p_k) with its cached
// supremum H, M = max{1, H}, and greatest lower bound over all k.
class ExponentSeq {
  public:
    explicit ExponentSeq(Seq seq);

    static ExponentSeq constant(const Rat& p) { return ExponentSeq(Seq::constant(p)); }

    Rat at(long k) const { return seq_.eval(k); }
    const Seq& seq() const { return seq_; }

    Rat sup() const { return sup_; }      // H
    Rat bound() const { return bound_; }  // M = max{1, H}
    Rat glb() const { return glb_; }      // inf over all k (0 for decaying tails)

    // Conjugate exponent p'_k with 1/p_k + 1/p'_k = 1; needs p_k > 1.
    Rat conjugate(long k) const {
        Rat p = at(k);
        if (p <= 1) throw DomainError("conjugate exponent needs p_k > 1");
        return p / (p - 1);
    }

    bool all_at_most_one() const { return sup_ <= 1; }
    bool all_greater_than_one() const;

    // (inf over k <= n, H, M) exactly; the inf scans the represented range.
    struct Stats {
        Rat inf_upto;
        Rat sup;
        Rat bound;
    };
    Stats stats(long n) const;

    // Exponents scaled by a positive rational factor (used for p_k/M).
    ExponentSeq scaled(const Rat& factor) const;

    static ExponentSeq from_json(const Json& j) { return ExponentSeq(Seq::from_json(j)); }
    Json to_json() const { return seq_.to_json(); }

  private:
    Seq seq_;
    Rat sup_;
    Rat bound_;
    Rat glb_;
};

}  // namespace fibseq
