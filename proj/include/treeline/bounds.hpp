#pragma once

#include <string>
#include <vector>

#include "treeline/params.hpp"
#include "treeline/special_series.hpp"

namespace treeline {

/// Root x0 of h_p(x) = (1-p)/p.
struct RootResult {
    double p = 0.0;
    double x0 = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double residual = 0.0;  ///< |h_p(x0) - (1-p)/p|
    int iterations = 0;
};

struct BoundReport {
    int d = 0;
    double p0 = 0.0;      ///< upper bound on p_c from the pole criterion
    double inv_d = 0.0;   ///< 1/d
    double lp_pc = 0.0;   ///< (d - sqrt(d^2-4))/2
    double lp_pu = 0.0;   ///< lower bound on p_u
    bool gap_nonempty = false;
    std::string warning;
};

struct P0Result {
    int d = 0;
    double p0 = 0.0;
    bool grid_monotone = true;
    bool from_grid_scan = false;
    std::string warning;
};

struct TheoremAReport {
    int d = 0;
    double p = 0.0;
    double x = 0.0;          ///< test point (1-p)/p
    double h_value = 0.0;    ///< h_p(x)
    double threshold = 0.0;  ///< (1-p)/p
    double x0 = 0.0;         ///< root from find_x0
    bool x_below = false;        ///< x < d - 1
    bool h_reaches = false;      ///< h_p(x) >= (1-p)/p
    bool sufficient = false;     ///< 2 exp(-2 (p/(1-p))^2) >= 1
    bool root_below = false;     ///< x0 < d - 1

    bool pass() const { return x_below && h_reaches && sufficient && root_below; }
};

struct TheoremBReport {
    double p = 0.225;
    double x = 2.999;
    int d = 4;
    double threshold = 0.0;
    double h_full = 0.0;
    double surrogate = 0.0;
    bool full_ok = false;
    bool surrogate_ok = false;
    bool x_ok = false;

    bool pass() const { return full_ok && surrogate_ok && x_ok; }
};

struct RootOptions {
    double tol = 1e-9;
    SeriesConfig series{};
};

RootResult find_x0(const ProbabilityParams& params, const RootOptions& opts = {});

/// 1/x0, a lower bound on the exponential growth rate alpha(p).
double alpha_lower_bound(const ProbabilityParams& params, const RootOptions& opts = {});

struct P0Options {
    double p_lo = 0.01;
    double p_hi = 0.49;
    double tol = 1e-6;        ///< bisection width in p
    double strictness = 1e-9; ///< predicate is x0(p) < d - 1 - strictness
    int grid_points = 50;
    SeriesConfig series{};
};

/// Smallest p (to tol) for which x0(p) < d - 1.
P0Result p0_for_d(int d, const P0Options& opts = {});

TheoremAReport verify_theorem_a(int d, double eps = 1e-3, const SeriesConfig& cfg = {});
/// Runs verify_theorem_a over [d_lo, d_hi] in parallel; output in d order.
std::vector<TheoremAReport> verify_theorem_a(int d_lo, int d_hi, double eps = 1e-3,
                                             const SeriesConfig& cfg = {});

TheoremBReport verify_theorem_b(const SeriesConfig& cfg = {});

/// The explicit lower bound on h_p(x) from Phi_p(l)^2 >= 1 - 2 (p/(1-p))^2.
double theorem_b_surrogate(double p, double x);

/// Closed-form comparators only; p0 is left at 0.
BoundReport reference_bounds(int d);
/// reference_bounds plus p0_for_d.
BoundReport bound_report(int d, const P0Options& opts = {});

}  // namespace treeline
