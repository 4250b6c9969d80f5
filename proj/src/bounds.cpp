#include "treeline/bounds.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "treeline/errors.hpp"

namespace treeline {

namespace {

constexpr int kMaxBisection = 200;

// Decides h_p(x) > threshold from bracketing partial sums. Every term is
// positive, so a partial sum is a lower bound and partial sum plus the
// geometric tail bound is an upper bound; summation stops once either decides.
bool little_h_exceeds(double p, double x, double threshold, const SeriesConfig& cfg) {
    const double z1 = p * x;
    const double z2 = p * z1;
    const double b = p / (1.0 - p);
    PhiCache phi(p);
    double sum = 0.0;
    double w1 = 1.0;
    double w2 = 1.0;
    for (std::size_t l = 1; l <= cfg.max_terms; ++l) {
        w1 *= z1;
        w2 *= z2;
        const double f = phi(l);
        sum += f * f * (2.0 * w1 + b * w2);
        if (sum > threshold) return true;
        const double g = phi(l + 1);
        const double tail = g * g * (2.0 * w1 * z1 / (1.0 - z1) + b * w2 * z2 / (1.0 - z2));
        if (sum + tail <= threshold) return false;
    }
    throw ConvergenceError("h_p comparison undecided after " + std::to_string(cfg.max_terms) +
                           " terms at x = " + std::to_string(x));
}

}  // namespace

RootResult find_x0(const ProbabilityParams& params, const RootOptions& opts) {
    require_p_below_half(params.p);
    if (!(opts.tol > 0.0)) throw DomainError("root tolerance must be positive");
    const double p = params.p;
    GeneratingFunctions gf(params, opts.series);
    const double target = params.odds_against();
    auto excess = [&](double x) { return gf.little_h(x) - target; };

    // h_p(0) = 0 < target; h_p grows without bound as x -> 1/p. Walk the
    // upper end towards 1/p geometrically so the series stays short.
    double lo = 0.0;
    double hi = 0.0;
    const double x_max = 1.0 / p - opts.series.singularity_margin;
    for (int k = 1;; ++k) {
        const double x = (1.0 / p) * (1.0 - std::ldexp(1.0, -k));
        if (x > x_max || k > 60)
            throw BracketError("no sign change of h_p(x) - (1-p)/p below 1/p - margin at p = " +
                               std::to_string(p));
        if (excess(x) >= 0.0) {
            hi = x;
            break;
        }
        lo = x;
    }

    RootResult out;
    out.p = p;
    int it = 0;
    double x0 = 0.0;
    double fx = 0.0;
    while (true) {
        x0 = 0.5 * (lo + hi);
        fx = excess(x0);
        ++it;
        if (hi - lo <= opts.tol && std::abs(fx) <= opts.tol) break;
        if (x0 <= lo || x0 >= hi || it >= kMaxBisection) break;  // bracket exhausted
        if (fx < 0.0)
            lo = x0;
        else
            hi = x0;
    }
    out.x0 = x0;
    out.lo = lo;
    out.hi = hi;
    out.residual = std::abs(fx);
    out.iterations = it;
    return out;
}

double alpha_lower_bound(const ProbabilityParams& params, const RootOptions& opts) {
    return 1.0 / find_x0(params, opts).x0;
}

P0Result p0_for_d(int d, const P0Options& opts) {
    if (d < 3) throw DomainError("d must be >= 3");
    if (!(opts.p_lo > 0.0 && opts.p_lo < opts.p_hi && opts.p_hi < 0.5))
        throw DomainError("p search range must satisfy 0 < p_lo < p_hi < 1/2");
    if (!(opts.tol > 0.0) || opts.grid_points < 2)
        throw DomainError("p0 search needs tol > 0 and at least two grid points");

    const double x_test = static_cast<double>(d - 1) - opts.strictness;
    // x0(p) < x_test  <=>  h_p(x_test) > (1-p)/p, as h_p is increasing
    auto predicate = [&](double p) {
        if (x_test >= 1.0 / p - opts.series.singularity_margin) return true;
        return little_h_exceeds(p, x_test, (1.0 - p) / p, opts.series);
    };

    P0Result out;
    out.d = d;
    const int g = opts.grid_points;
    std::vector<double> grid(static_cast<std::size_t>(g));
    std::vector<char> holds(grid.size());
    for (int i = 0; i < g; ++i) {
        grid[i] = opts.p_lo + (opts.p_hi - opts.p_lo) * i / (g - 1);
        holds[i] = predicate(grid[i]) ? 1 : 0;
    }
    if (!holds.back())
        throw BracketError("x0(p) >= d - 1 on the whole search range for d = " +
                           std::to_string(d));

    int first_true = -1;
    for (int i = 0; i < g; ++i) {
        if (holds[i]) {
            if (first_true < 0) first_true = i;
        } else if (first_true >= 0) {
            out.grid_monotone = false;
        }
    }

    if (first_true == 0) {
        out.p0 = grid[0];
        out.warning = "predicate already holds at the lower end of the search range";
        return out;
    }
    if (!out.grid_monotone) {
        out.p0 = grid[first_true];
        out.from_grid_scan = true;
        out.warning = "x0(p) < d - 1 is not monotone in p on the grid; p0 is a grid-scan value";
        return out;
    }

    double lo = grid[first_true - 1];
    double hi = grid[first_true];
    for (int it = 0; hi - lo > opts.tol && it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (predicate(mid))
            hi = mid;
        else
            lo = mid;
    }
    out.p0 = hi;
    return out;
}

TheoremAReport verify_theorem_a(int d, double eps, const SeriesConfig& cfg) {
    if (d < 3) throw DomainError("d must be >= 3");
    TheoremAReport r;
    r.d = d;
    r.p = 1.0 / d + eps;
    const ProbabilityParams params(r.p);
    require_p_below_half(r.p);
    r.x = params.odds_against();
    r.threshold = r.x;
    r.x_below = r.x < static_cast<double>(d - 1);
    r.h_value = little_h(params, r.x, cfg);
    r.h_reaches = r.h_value >= r.threshold;
    const double a = params.odds() * params.odds();
    r.sufficient = 2.0 * std::exp(-2.0 * a) >= 1.0;
    r.x0 = find_x0(params, RootOptions{1e-9, cfg}).x0;
    r.root_below = r.x0 < static_cast<double>(d - 1);
    return r;
}

std::vector<TheoremAReport> verify_theorem_a(int d_lo, int d_hi, double eps,
                                             const SeriesConfig& cfg) {
    if (d_lo < 3 || d_hi < d_lo) throw DomainError("need 3 <= d_lo <= d_hi");
    const int count = d_hi - d_lo + 1;
    std::vector<TheoremAReport> out(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            out[i] = verify_theorem_a(d_lo + i, eps, cfg);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

double theorem_b_surrogate(double p, double x) {
    const double odds = p / (1.0 - p);
    const double shrink = 1.0 - 2.0 * odds * odds;
    const double px = p * x;
    const double p2x = p * p * x;
    return 2.0 * shrink * px / (1.0 - px) + odds * shrink * p2x / (1.0 - p2x);
}

TheoremBReport verify_theorem_b(const SeriesConfig& cfg) {
    TheoremBReport r;
    const ProbabilityParams params(r.p);
    r.threshold = params.odds_against();
    r.h_full = little_h(params, r.x, cfg);
    r.surrogate = theorem_b_surrogate(r.p, r.x);
    r.full_ok = r.h_full >= r.threshold;
    r.surrogate_ok = r.surrogate >= r.threshold;
    r.x_ok = r.x < static_cast<double>(r.d - 1);
    return r;
}

BoundReport reference_bounds(int d) {
    if (d < 3) throw DomainError("d must be >= 3");
    const double dd = d;
    BoundReport r;
    r.d = d;
    r.inv_d = 1.0 / dd;
    r.lp_pc = (dd - std::sqrt(dd * dd - 4.0)) / 2.0;
    const double s = std::sqrt(dd - 1.0);
    r.lp_pu = 1.0 / (s + 1.0 + std::sqrt(2.0 * s - 1.0));
    return r;
}

BoundReport bound_report(int d, const P0Options& opts) {
    BoundReport r = reference_bounds(d);
    const P0Result p0 = p0_for_d(d, opts);
    r.p0 = p0.p0;
    r.gap_nonempty = r.p0 < r.lp_pu;
    r.warning = p0.warning;
    return r;
}

}  // namespace treeline
