#include "fibseq/verdict.hpp"

#include <algorithm>

namespace fibseq {

std::string status_name(Status s) {
    switch (s) {
        case Status::HoldsAtTruncation: return "holds_at_truncation";
        case Status::FailsAtTruncation: return "fails_at_truncation";
        case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Json Verdict::to_json() const {
    Json j;
    j["status"] = status_name(status);
    j["truncation"] = truncation;
    if (!witnesses.empty()) {
        Json w;
        for (const auto& [k, v] : witnesses) w[k] = v;
        j["witnesses"] = std::move(w);
    }
    if (extremal_index >= 0) j["extremal_index"] = extremal_index;
    if (!margin.empty()) j["margin"] = margin;
    if (!checkpoints.empty()) {
        Json c = Json::array();
        for (const auto& [n, v] : checkpoints) c.push_back(Json{{"n", n}, {"value", v}});
        j["checkpoints"] = std::move(c);
    }
    if (!notes.empty()) j["notes"] = notes;
    if (!parts.empty()) {
        Json p;
        for (const auto& [name, sub] : parts) p[name] = sub.to_json();
        j["parts"] = std::move(p);
    }
    return j;
}

Verdict Verdict::combine(std::vector<std::pair<std::string, Verdict>> parts, long truncation) {
    Verdict v;
    v.truncation = truncation;
    bool any_fails = false;
    bool all_hold = !parts.empty();
    for (const auto& [name, sub] : parts) {
        any_fails = any_fails || sub.fails();
        all_hold = all_hold && sub.holds();
    }
    v.status = any_fails  ? Status::FailsAtTruncation
               : all_hold ? Status::HoldsAtTruncation
                          : Status::Inconclusive;
    for (auto& [name, sub] : parts)
        for (const auto& [wk, wv] : sub.witnesses) v.witnesses.emplace(name + "." + wk, wv);
    v.parts = std::move(parts);
    return v;
}

Json WitnessSearchConfig::to_json() const {
    Json j;
    j["truncation"] = truncation;
    j["witness_grid_max_exp"] = witness_max_exp;
    j["subset_max"] = subset_max;
    j["blowup_threshold"] = rat_str(blowup_threshold);
    j["tol"] = rat_str(tol);
    return j;
}

LimitProbe detect_limit(const std::vector<Rat>& values, const Rat& tol) {
    LimitProbe probe;
    if (values.empty()) return probe;
    const long n = static_cast<long>(values.size()) - 1;
    probe.candidate = values.back();
    probe.window_start = n - (n + 1 + 3) / 4 + 1;
    if (probe.window_start < 0) probe.window_start = 0;
    probe.max_deviation = Rat(0);
    for (long k = probe.window_start; k <= n; ++k)
        probe.max_deviation = std::max(probe.max_deviation, rat_abs(values[k] - probe.candidate));
    probe.stabilized = probe.max_deviation < tol;
    return probe;
}

BlowupProbe detect_blowup(const std::vector<Rat>& values, const Rat& threshold) {
    BlowupProbe probe;
    if (values.empty()) return probe;
    const std::size_t n = values.size();
    std::vector<std::size_t> marks = {n / 4, n / 2, (3 * n) / 4, n - 1};
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    Rat prev;
    bool first = true;
    bool increasing = true;
    for (std::size_t m : marks) {
        probe.checkpoints.emplace_back(static_cast<long>(m), rat_str(values[m]));
        if (!first && values[m] <= prev) increasing = false;
        prev = values[m];
        first = false;
    }
    probe.monotone_checkpoints = increasing && probe.checkpoints.size() >= 3;
    for (const auto& v : values)
        if (v > threshold) probe.exceeded = true;
    return probe;
}

}  // namespace fibseq
