// Exact rational scalars. All matrix entries and sequence values in this
// library are mpq_class values kept in canonical form (lowest terms,
// positive denominator); the helpers here centralize construction,
// parsing and formatting so canonicalization cannot be skipped.
#pragma once

#include <gmpxx.h>

#include <cstdio>

#include <stdexcept>
#include <string>

namespace fibseq {

using Int = mpz_class;
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Integer power; negative exponents require a nonzero base.
inline Rat rat_pow_int(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw DomainError("zero base with negative exponent");
    const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), ue);
    return e > 0 ? make_rat(num, den) : make_rat(den, num);
}

// Accepts "p" and "p/q" with optional leading '-' on p; no decimals.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    const auto slash = text.find('/');
    const std::string num_s = slash == std::string::npos ? text : text.substr(0, slash);
    const std::string den_s = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto check_digits = [&](const std::string& s, bool sign_ok) {
        if (s.empty()) throw ParseError("malformed rational '" + text + "'");
        std::size_t i = (sign_ok && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) throw ParseError("malformed rational '" + text + "'");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw ParseError("malformed rational '" + text + "'");
    };
    check_digits(num_s, true);
    check_digits(den_s, false);
    Int num(num_s), den(den_s);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return make_rat(num, den);
}

// Canonical decimal-free form: "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Short decimal rendering for human-facing notes; never used for results.
inline std::string rat_approx_str(const Rat& q) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", q.get_d());
    return buf;
}

}  // namespace fibseq
