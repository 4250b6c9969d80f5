#include "treeline/special_series.hpp"

#include <cmath>
#include <string>

#include "treeline/errors.hpp"

namespace treeline {

void SeriesConfig::validate() const {
    if (!(tail_tol > 0.0)) throw DomainError("tail_tol must be positive");
    if (max_terms < 1) throw DomainError("max_terms must be at least 1");
    if (!(singularity_margin > 0.0)) throw DomainError("singularity_margin must be positive");
}

PhiCache::PhiCache(double p) : p_(p), values_{1.0} {
    require_p_open_unit(p);
    values_.reserve(64);
}

double PhiCache::operator()(std::size_t l) {
    const double q = 1.0 - p_;
    while (values_.size() <= l) {
        const std::size_t i = values_.size();
        // p^{i+1} underflows to 0 long before i reaches the int range
        const double factor = q / (q + std::pow(p_, static_cast<double>(i + 1)));
        values_.push_back(values_.back() * factor);
    }
    return values_[l];
}

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

GeneratingFunctions::GeneratingFunctions(const ProbabilityParams& params, SeriesConfig cfg)
    : p_(params.p), cfg_(cfg), cache_(params.p) {
    cfg_.validate();
}

SeriesValue GeneratingFunctions::h_series(double z, double tol) {
    if (!(z >= 0.0 && z < 1.0))
        throw DomainError("H_p(z) series needs 0 <= z < 1, got z = " + std::to_string(z));
    if (z == 0.0) return {};

    const double inv_gap = 1.0 / (1.0 - z);
    CompensatedSum acc;
    double zl = z;
    for (std::size_t l = 1;; ++l) {
        const double ph = cache_(l);
        const double term = ph * ph * zl;
        // Phi_p is decreasing, so the tail from l on is at most term / (1 - z)
        const double tail = term * inv_gap;
        if (tail <= tol) return {acc.value(), tail, l - 1};
        if (l > cfg_.max_terms)
            throw ConvergenceError("H_p series at z = " + std::to_string(z) + " needs more than " +
                                   std::to_string(cfg_.max_terms) + " terms");
        acc.add(term);
        zl *= z;
    }
}

double GeneratingFunctions::h_series(double z) {
    if (z >= 0.0 && 1.0 - z < cfg_.singularity_margin)
        throw DomainError("H_p(z) series: z = " + std::to_string(z) +
                          " is within the singularity margin of 1");
    return h_series(z, cfg_.tail_tol).value;
}

double GeneratingFunctions::h_continued(double x) {
    const double margin = cfg_.singularity_margin;
    const double x_max = 1.0 / p_ - margin;
    if (!(x >= 0.0 && x <= x_max))
        throw DomainError("continuation of H_p needs 0 <= x <= 1/p - margin, got x = " +
                          std::to_string(x));
    if (std::abs(x - 1.0) < margin)
        throw DomainError("continuation of H_p is singular at x = 1, got x = " + std::to_string(x));

    const double a = 2.0 * p_ / (1.0 - p_);
    const double b = (p_ / (1.0 - p_)) * (p_ / (1.0 - p_));
    // errors in the inner series are scaled by (a or b) / |x - 1|
    const double inner_tol = cfg_.tail_tol * std::abs(x - 1.0) / (a + b);
    const double hp = h_series(p_ * x, inner_tol).value;
    const double hp2 = h_series(p_ * p_ * x, inner_tol).value;
    return (a * hp + b * hp2 - x) / (x - 1.0);
}

double GeneratingFunctions::little_h(double x) {
    const double x_max = 1.0 / p_ - cfg_.singularity_margin;
    if (!(x >= 0.0 && x <= x_max))
        throw DomainError("h_p(x) needs 0 <= x <= 1/p - margin, got x = " + std::to_string(x));
    const double tol = cfg_.tail_tol;
    return 2.0 * h_series(p_ * x, tol / 4.0).value +
           p_ / (1.0 - p_) * h_series(p_ * p_ * x, tol / 2.0).value;
}

double phi(const ProbabilityParams& params, std::size_t l) {
    PhiCache cache(params.p);
    return cache(l);
}

double h_series(const ProbabilityParams& params, double z, const SeriesConfig& cfg) {
    GeneratingFunctions gf(params, cfg);
    return gf.h_series(z);
}

double h_continued(const ProbabilityParams& params, double x, const SeriesConfig& cfg) {
    GeneratingFunctions gf(params, cfg);
    return gf.h_continued(x);
}

double little_h(const ProbabilityParams& params, double x, const SeriesConfig& cfg) {
    GeneratingFunctions gf(params, cfg);
    return gf.little_h(x);
}

}  // namespace treeline
