// Three-valued verdicts for conditions quantified over infinite index
// sets. A verdict is always qualified by the truncation and witness grid
// it was computed under; "fails" is only emitted when finite data or a
// closed-form tail genuinely falsifies the condition.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibseq/rational.hpp"
#include "fibseq/real.hpp"
#include "fibseq/seq.hpp"

namespace fibseq {

enum class Status { HoldsAtTruncation, FailsAtTruncation, Inconclusive };

std::string status_name(Status s);

struct Verdict {
    Status status = Status::Inconclusive;
    long truncation = 0;
    // Existential parameters that realized the verdict (B, L, M, ...).
    std::map<std::string, std::string> witnesses;
    long extremal_index = -1;
    std::string margin;  // extremal value or bound, as a string
    std::vector<std::pair<long, std::string>> checkpoints;
    std::vector<std::string> notes;
    // Sub-verdicts for composed conditions (dual intersections,
    // characterization clause conjunctions).
    std::vector<std::pair<std::string, Verdict>> parts;

    bool holds() const { return status == Status::HoldsAtTruncation; }
    bool fails() const { return status == Status::FailsAtTruncation; }

    Json to_json() const;

    static Verdict holds_at(long truncation) {
        Verdict v;
        v.status = Status::HoldsAtTruncation;
        v.truncation = truncation;
        return v;
    }
    static Verdict fails_at(long truncation) {
        Verdict v;
        v.status = Status::FailsAtTruncation;
        v.truncation = truncation;
        return v;
    }
    static Verdict inconclusive_at(long truncation) {
        Verdict v;
        v.truncation = truncation;
        return v;
    }

    // All hold -> holds, any fails -> fails, otherwise inconclusive.
    static Verdict combine(std::vector<std::pair<std::string, Verdict>> parts, long truncation);
};

struct WitnessSearchConfig {
    long truncation = 128;
    // Witness grid for B, L, M: powers of two 2^1 .. 2^witness_max_exp.
    unsigned witness_max_exp = 20;
    // Finite subsets K are enumerated exhaustively over {0..subset_max}.
    int subset_max = 12;
    Rat blowup_threshold = rat_pow_int(Rat(10), 30);
    Rat tol = make_rat(Int(1), Int("1000000000000"));  // 1e-12

    std::vector<unsigned long> witness_grid() const {
        std::vector<unsigned long> g;
        unsigned long b = 2;
        for (unsigned e = 1; e <= witness_max_exp; ++e, b *= 2) g.push_back(b);
        return g;
    }

    Json to_json() const;
};

// Last-quarter stabilization probe for a finite run of exact values:
// candidate is the final value, and the deviation is the max distance
// from it over the trailing ceil((n+1)/4) entries.
struct LimitProbe {
    bool stabilized = false;
    Rat candidate;
    Rat max_deviation;
    long window_start = 0;
};
LimitProbe detect_limit(const std::vector<Rat>& values, const Rat& tol);

// Monotone blow-up probe: reports whether values exceeded the threshold
// and collects at least three strictly increasing checkpoints when they
// exist (quarter points plus the peak).
struct BlowupProbe {
    bool exceeded = false;
    bool monotone_checkpoints = false;
    std::vector<std::pair<long, std::string>> checkpoints;
};
BlowupProbe detect_blowup(const std::vector<Rat>& values, const Rat& threshold);

}  // namespace fibseq
