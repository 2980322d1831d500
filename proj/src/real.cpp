#include "fibseq/real.hpp"

#include <cstdio>
#include <cstdlib>
#include <memory>

namespace fibseq {

Real Real::pow_abs(const Rat& base, const Rat& e, mpfr_prec_t prec) {
    if (base == 0) {
        if (e <= 0) throw DomainError("0^e requires e > 0");
        return Real(prec);
    }
    Real b(rat_abs(base), prec);
    Real ex(e, prec);
    return pow(b, ex);
}

Real Real::golden_ratio(mpfr_prec_t prec) {
    Real five(Rat(5), prec);
    return (sqrt(five) + Real(Rat(1), prec)) / Real(Rat(2), prec);
}

Real Real::ulp() const {
    Real r(prec());
    if (is_zero()) return r;
    mpfr_exp_t e = mpfr_get_exp(v_);
    mpfr_set_ui_2exp(r.v_, 1, e - prec(), MPFR_RNDN);
    return r;
}

std::string Real::str() const {
    char* s = nullptr;
    // %Re prints enough digits to recover the value exactly at this precision.
    if (mpfr_asprintf(&s, "%Re", v_) < 0) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

bool le_within_ulps(const Real& a, const Real& b, unsigned ulps) {
    if (a <= b) return true;
    Real slack = b.ulp();
    Real bound = b;
    for (unsigned i = 0; i < ulps; ++i) bound = bound + slack;
    return a <= bound;
}

}  // namespace fibseq
