// Paranorms for the variable-exponent sequence spaces and membership
// classification for their Fibonacci-difference domains. Verdicts are
// truncation-qualified: certainty beyond the truncation comes only from
// the closed-form tail models (which the difference transform maps to
// closed forms again), never from extrapolating data.
#pragma once

#include <optional>
#include <string>

#include "fibseq/rational.hpp"
#include "fibseq/real.hpp"
#include "fibseq/seq.hpp"
#include "fibseq/verdict.hpp"

namespace fibseq {

enum class SpaceFamily { Null, Convergent, Bounded, Summable };
enum class SpaceLayer { Maddox, FibonacciDomain };

struct SpaceId {
    SpaceFamily family;
    SpaceLayer layer;
};

std::string space_name(SpaceId id);

struct H1Result {
    Real value;
    std::string tail_note;
};

struct H2Result {
    Real value;
    bool divergent = false;
    std::string tail_note;
};

// sup_k |y_k|^{p_k / M} over k <= n plus the certified tail supremum.
H1Result h1(const Seq& y, const ExponentSeq& p, long n, mpfr_prec_t prec);

// (sum_k |y_k|^{p_k})^{1/M} with a closed-form tail bound where one
// exists; `divergent` is set when the tail certifies an infinite sum.
H2Result h2(const Seq& y, const ExponentSeq& p, long n, mpfr_prec_t prec);

// Paranorms of the difference spaces: h1 / h2 applied to the transform
// values over k <= n (window only; exact rational bases throughout).
Real g_paranorm(const Seq& x, const ExponentSeq& p, long n, mpfr_prec_t prec);
Real gstar_paranorm(const Seq& x, const ExponentSeq& p, long n, mpfr_prec_t prec);

struct MembershipReport {
    Verdict verdict;
    Real paranorm_estimate;
    std::optional<Real> limit_candidate;
    std::optional<Rat> limit_exact;
    // False when inf p_k = 0, where the sup-paranorm guarantee lapses
    // for the convergent and bounded families.
    bool paranorm_guarantee = true;

    Json to_json() const;
};

MembershipReport classify(const Seq& x, SpaceId space, const ExponentSeq& p, long n,
                          const Rat& tol, mpfr_prec_t prec);

// The stock witness that the paranorm is not absolute: x = (1, -1, 0, ...)
// with g(x) != g(|x|).
struct AbsoluteWitness {
    Seq x;
    Real g_x;
    Real g_abs_x;
};
AbsoluteWitness absolute_property_witness(const ExponentSeq& p, long truncation, mpfr_prec_t prec);

}  // namespace fibseq
