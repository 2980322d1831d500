// Evaluators for the sixteen dual-condition sets attached to the
// Fibonacci difference spaces, and the alpha/beta/gamma dual membership
// tests composed from them. Quantifiers over infinite ranges are handled
// soundly one direction at a time: an exhibited witness certifies an
// existential, a certified counterexample refutes a universal, and the
// remaining directions stay truncation-qualified.
#pragma once

#include <string>

#include "fibseq/rational.hpp"
#include "fibseq/seq.hpp"
#include "fibseq/spaces.hpp"
#include "fibseq/verdict.hpp"

namespace fibseq {

enum class DualSet {
    F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, F15, F16
};

std::string dual_set_name(DualSet id);
DualSet dual_set_from_name(const std::string& name);

enum class DualKind { Alpha, Beta, Gamma };
std::string dual_kind_name(DualKind k);

// Matrix built from a: row n is f_{n+1}^2/(f_k f_{k+1}) a_n for k <= n.
Rat c_matrix_entry(const Seq& a, long n, long k);

// Cumulative variant: sum_{j=k}^{n} f_{j+1}^2/(f_k f_{k+1}) a_j for k <= n.
Rat d_matrix_entry(const Seq& a, long n, long k);

Verdict dual_set_check(DualSet id, const Seq& a, const ExponentSeq& p,
                       const WitnessSearchConfig& cfg, mpfr_prec_t prec);

// Composed dual membership for the four difference spaces. The summable
// family routes by exponent range (all p_k <= 1 versus all p_k > 1);
// mixed ranges are rejected.
Verdict dual_membership(SpaceFamily family, DualKind kind, const Seq& a, const ExponentSeq& p,
                        const WitnessSearchConfig& cfg, mpfr_prec_t prec);

}  // namespace fibseq
