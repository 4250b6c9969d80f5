#pragma once

#include <optional>

namespace treeline {

/// Edge-retention probability p, plus the tree degree d when one is needed.
///
/// Construction only checks 0 < p < 1 and d >= 3. Operations narrow the
/// range further where their mathematics requires it (the crossing-bound
/// sequences need p <= 1/2, the root finder p < 1/2).
struct ProbabilityParams {
    double p = 0.0;
    std::optional<int> d;

    ProbabilityParams() = default;
    explicit ProbabilityParams(double p_, std::optional<int> d_ = std::nullopt);

    /// (1-p)/p, the threshold h_p(x) has to reach.
    double odds_against() const { return (1.0 - p) / p; }
    /// p/(1-p)
    double odds() const { return p / (1.0 - p); }
};

void require_p_open_unit(double p);        // 0 < p < 1
void require_p_half_closed(double p);      // 0 < p <= 1/2
void require_p_below_half(double p);       // 0 < p < 1/2

}  // namespace treeline
