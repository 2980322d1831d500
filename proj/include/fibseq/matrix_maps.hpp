// Matrix-mapping characterizations from the difference spaces into the
// variable-exponent target spaces, built on the truncated-and-limit
// matrices E^(n), E obtained by composing a row-finite matrix with the
// explicit inverse of a triangle. The exact path requires row-finite (or
// banded) input so every entry of E is a finite sum.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fibseq/rational.hpp"
#include "fibseq/seq.hpp"
#include "fibseq/verdict.hpp"

namespace fibseq {

struct UnsupportedError : DomainError {
    explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

struct InfMatrix {
    enum class Structure { Banded, RowFinite, General };

    Structure structure = Structure::RowFinite;
    std::string name;  // "fhat", "identity", "zero" for builtins
    std::function<Rat(long, long)> entry;
    // Largest column index with a possibly nonzero entry in the given
    // row; -1 for an empty row.
    std::function<long(long)> row_support;

    static InfMatrix fhat();
    static InfMatrix identity();
    static InfMatrix zero();
    // Explicit inverse of the Fibonacci difference matrix (the default V).
    static InfMatrix fib_inverse();

    // {"kind": "banded"|"rowfinite"|"builtin", "name": ...,
    //  "rows": [[{"k": idx, "v": rational}, ...], ...]}
    // Rows beyond the given list are zero.
    static InfMatrix from_json(const Json& j);
};

struct EMatrices {
    long truncation = 0;
    std::vector<std::vector<Rat>> e;  // e[n][k] for n, k <= truncation
    // Truncated entry e^(n)_{mk} = sum_{j=k..m} a_nj v_jk.
    std::function<Rat(long, long, long)> e_trunc;
    // Row supports of E (columns beyond are exactly zero).
    std::vector<long> row_support;

    bool is_identity() const;
    Rat full_row_sum(long n) const;  // sum over all k (finite by row-finiteness)
};

// Exact E and E^(n) up to the truncation; V defaults to the Fibonacci
// inverse and may be overridden by any triangle inverse.
EMatrices build_e_matrices(const InfMatrix& a, long truncation,
                           const InfMatrix* v_override = nullptr);

enum class MapCondition {
    // Conditions on E / E^(n) with exponents p (source) and q (target).
    EntryLimits,        // truncated sums stabilize to e_nk
    RowWeightedFinite,  // per n, for every L: sum_k |e_nk| L^{1/p_k} finite
    TruncColLimits,     // per n: lim_m e^(n)_mk exists for every k
    TruncRowSup,        // per n: exists M, sup_m sum_k |e^(n)_mk| M^{-1/p_k} finite
    TruncRowPair,       // per n: for all L exists M with the L^{1/q_n} factor
    TruncTotalLimit,    // per n: lim_m sum_k e^(n)_mk exists
    RowWeightedSup,     // for every L: sup_n sum_k |e_nk| L^{1/p_k} finite
    ColLimits,          // lim_n e_nk = alpha_k
    RowWeightedLimit,   // for every L: lim_n sum_k |e_nk| L^{1/p_k} exists finite
    RowWeightedNull,    // for every L: lim_n sum_k |e_nk| L^{1/p_k} = 0
    RowPowerSup,        // exists M: sup_n (sum_k |e_nk| M^{-1/p_k})^{q_n} finite
    ColPowerNull,       // lim_n |e_nk|^{q_n} = 0 per k
    RowPairSup,         // for all L exists M: sup_n sum_k |e_nk| L^{1/q_n} M^{-1/p_k}
    ColPowerLimit,      // exists alpha_k: lim_n |e_nk - alpha_k|^{q_n} = 0
    RowScaledSup,       // exists M: sup_n sum_k |e_nk| M^{-1/p_k} finite
    ResidPairSup,       // for all L exists M: sup_n sum_k |e_nk - alpha_k| L^{1/q_n} M^{-1/p_k}
    RowSumPowerSup,     // sup_n |sum_k e_nk|^{q_n} finite
    RowSumPowerNull,    // lim_n |sum_k e_nk|^{q_n} = 0
    RowSumPowerLimit,   // exists alpha: lim_n |sum_k e_nk - alpha|^{q_n} = 0
    // Base conditions applied to the raw matrix entries.
    NullToAbsSum,     // subset column sums absolutely bounded under B^{-1/p_k}
    NullToConv,       // bounded scaled rows + column limits + bounded residual rows
    NullToBounded,    // bounded scaled rows
    PsumToAbsSumHi,   // conjugate-power subset sums, exponents > 1
    PsumToAbsSumLo,   // powered subset sups, exponents <= 1
    PsumToBoundedHi,  // conjugate-power row sums, exponents > 1
    PsumToBoundedLo,  // powered entry sup, exponents <= 1
    PsumToConv        // range-matched bounded condition + column limits
};

std::string map_condition_name(MapCondition c);
MapCondition map_condition_from_name(const std::string& name);

Verdict condition_check(MapCondition id, const InfMatrix& a, const ExponentSeq& p,
                        const ExponentSeq& q, const WitnessSearchConfig& cfg, mpfr_prec_t prec);

enum class MapSource { NullFib, ConvFib, BoundedFib, SummableFib };
enum class MapTarget { Bounded, Conv, Null, BoundedQ, ConvQ, NullQ };

std::string map_source_name(MapSource s);
std::string map_target_name(MapTarget t);
MapSource map_source_from_name(const std::string& name);
MapTarget map_target_from_name(const std::string& name);

// Conjunction of the characterizing conditions for the (source, target)
// pair; pairs outside the characterized table raise UnsupportedError.
Verdict classify_mapping(const InfMatrix& a, MapSource source, MapTarget target,
                         const ExponentSeq& p, const ExponentSeq& q,
                         const WitnessSearchConfig& cfg, mpfr_prec_t prec);

}  // namespace fibseq
