#pragma once

#include <cstddef>
#include <vector>

#include "treeline/params.hpp"

namespace treeline {

struct SeriesConfig {
    double tail_tol = 1e-12;             ///< absolute truncation error target
    std::size_t max_terms = 100'000;
    double singularity_margin = 1e-6;    ///< keep-out distance from z = 1 and x = 1/p

    void validate() const;
};

/// Memoized prefix products Phi_p(l) = prod_{i=1}^{l} (1-p)/(1-p+p^{i+1}).
///
/// Append-only; a cache is owned by one evaluator and not shared across
/// threads.
class PhiCache {
public:
    explicit PhiCache(double p);

    double p() const { return p_; }
    /// Phi_p(l); Phi_p(0) = 1. Extends the memo as needed.
    double operator()(std::size_t l);
    std::size_t size() const { return values_.size(); }

private:
    double p_;
    std::vector<double> values_;  // values_[l] = Phi_p(l)
};

/// Value of a truncated series together with its a-posteriori tail bound.
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::size_t terms = 0;
};

/// H_p and its relatives at one fixed p, sharing a single Phi memo.
class GeneratingFunctions {
public:
    GeneratingFunctions(const ProbabilityParams& params, SeriesConfig cfg = {});

    double p() const { return p_; }
    const SeriesConfig& config() const { return cfg_; }
    double phi(std::size_t l) { return cache_(l); }

    /// sum_{l>=1} Phi_p(l)^2 z^l on [0, 1 - margin], truncated once
    /// Phi_p(L+1)^2 z^{L+1} / (1 - z) <= tol.
    SeriesValue h_series(double z, double tol);
    /// As above at the configured tolerance; also enforces the margin from z = 1.
    double h_series(double z);

    /// Right-hand side of the functional equation for H_p, valid on
    /// [0, 1/p - margin] away from x = 1. Agrees with h_series on [0, 1).
    double h_continued(double x);

    /// h_p(x) = 2 H_p(px) + p/(1-p) H_p(p^2 x) on [0, 1/p - margin].
    double little_h(double x);

private:
    double p_;
    SeriesConfig cfg_;
    PhiCache cache_;
};

double phi(const ProbabilityParams& params, std::size_t l);
double h_series(const ProbabilityParams& params, double z, const SeriesConfig& cfg = {});
double h_continued(const ProbabilityParams& params, double x, const SeriesConfig& cfg = {});
double little_h(const ProbabilityParams& params, double x, const SeriesConfig& cfg = {});

}  // namespace treeline
