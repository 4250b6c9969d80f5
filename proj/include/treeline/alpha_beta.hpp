#pragma once

#include <cstddef>
#include <vector>

#include "treeline/params.hpp"
#include "treeline/special_series.hpp"

namespace treeline {

/// beta_p(1..n_max) and alpha_p(1..n_max). Index 0 holds n = 1.
struct BetaAlphaTable {
    double p = 0.0;
    std::size_t n_max = 0;
    std::vector<double> beta;
    std::vector<double> alpha;

    double beta_at(std::size_t n) const { return beta.at(n - 1); }
    double alpha_at(std::size_t n) const { return alpha.at(n - 1); }
};

/// Caps for the direct multi-sum over (m_j, l_j).
struct MultisumTruncation {
    int m_cap = 80;
    int l_cap = 80;

    void validate() const;
};

struct MultisumResult {
    double value = 0.0;
    double tail_estimate = 0.0;  ///< rigorous upper bound on the omitted mass
};

/// ((1-p)/(1-p+p^2))^2, the factor linking consecutive alpha_p(n).
double step_factor(double p);

/// Probability that the origin of a single ladder H reaches the far column:
/// sum_{m>=0} (m+1) p^m (1-p)^2 (1 - (1-p)^{m+1}).
double alpha1(const ProbabilityParams& params, const SeriesConfig& cfg = {});

/// beta_p(1..n_max) through the O(n^2) Phi recursion.
std::vector<double> beta_recursive(const ProbabilityParams& params, std::size_t n_max,
                                   const SeriesConfig& cfg = {});

/// Direct truncated evaluation of the defining multi-sums. Test oracle, n <= 5.
MultisumResult beta_multisum(const ProbabilityParams& params, int n,
                             const MultisumTruncation& trunc = {});
MultisumResult alpha_multisum(const ProbabilityParams& params, int n,
                              const MultisumTruncation& trunc = {});

/// Full table; alpha[n] = alpha1 - step_factor * sum_{k<n} beta[k].
///
/// Throws ConsistencyError if an alpha entry is not positive or the table
/// disagrees with alpha1.
BetaAlphaTable alpha_table(const ProbabilityParams& params, std::size_t n_max,
                           const SeriesConfig& cfg = {});

/// sum_{l=1}^{N} beta_p(l) z^l
double f_partial(const ProbabilityParams& params, double z, std::size_t N,
                 const SeriesConfig& cfg = {});

/// |(1 + H_p(z)) F_p(z) - RHS| with F_p truncated at N terms.
double f_functional_residual(const ProbabilityParams& params, double z, std::size_t N,
                             const SeriesConfig& cfg = {});

}  // namespace treeline
