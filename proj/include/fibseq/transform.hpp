// The Fibonacci difference matrix, its explicit inverse, and the
// Schauder-basis machinery built on the inverse's columns. Everything in
// this module is exact rational arithmetic; entries grow like phi^(2n),
// which is why no floating shortcut is taken.
#pragma once

#include <string>
#include <vector>

#include "fibseq/rational.hpp"
#include "fibseq/real.hpp"
#include "fibseq/seq.hpp"

namespace fibseq {

// Row n of the difference matrix: -f_{n+1}/f_n at k = n-1, f_n/f_{n+1}
// at k = n, zero elsewhere.
Rat fhat_entry(long n, long k);

// Inverse matrix entry f_{n+1}^2 / (f_k f_{k+1}) for 0 <= k <= n, else 0.
Rat inverse_entry(long n, long k);

// y_k = (f_k/f_{k+1}) x_k - (f_{k+1}/f_k) x_{k-1} for k = 0..n, with the
// x_{-1} = 0 convention at the top row.
std::vector<Rat> fhat_apply(const Seq& x, long n);
std::vector<Rat> fhat_apply(const std::vector<Rat>& x);

// x_k = sum_{j<=k} f_{k+1}^2/(f_j f_{j+1}) y_j for k = 0..n.
std::vector<Rat> inverse_apply(const Seq& y, long n);
std::vector<Rat> inverse_apply(const std::vector<Rat>& y);

// True iff both truncated products (difference * inverse) and
// (inverse * difference) equal the n x n identity exactly.
bool identity_check(long n);

// Basis vector b^(k) up to index n: f_{n+1}^2/(f_k f_{k+1}) for rows >= k.
std::vector<Rat> basis_vector(long k, long n);

struct BasisExpansion {
    std::vector<Rat> coefficients;  // mu_0 .. mu_order
    Real residual;                  // sup over order < k <= truncation of |y_k|^{p_k/M}
    bool residual_complete;         // true when the zero tail certifies no mass beyond
    std::string note;
};

// Expansion x = sum mu_k b^(k) with mu = transform of x. The residual is
// the paranorm of the remainder evaluated over the window
// (order, truncation]; tails beyond the window are certified only when
// the transform provably vanishes there.
BasisExpansion basis_expand(const Seq& x, long order, const ExponentSeq& p, long truncation,
                            mpfr_prec_t prec);

}  // namespace fibseq
