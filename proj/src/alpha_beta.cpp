#include "treeline/alpha_beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "treeline/errors.hpp"

namespace treeline {

namespace {

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

// beta_p(n) by the Phi recursion, extendable one term at a time.
class BetaRecursion {
public:
    explicit BetaRecursion(double p) : p_(p), phi_(p) {}

    std::size_t size() const { return beta_.size(); }
    double operator[](std::size_t n) const { return beta_[n - 1]; }  // 1-based
    const std::vector<double>& values() const { return beta_; }

    // Differenced form: beta_n = B_n + sum_{k<n} e_{n-k} beta_k, where
    // e_l = Phi(l-1)^2 - Phi(l)^2 > 0 and B_n = A_n - A_{n-1} for the leading
    // term A_n. Both are evaluated without subtracting O(1) quantities, so
    // beta_n keeps its relative accuracy as it decays.
    double extend() {
        const std::size_t n = beta_.size() + 1;
        kernel_.push_back(kernel(n));
        CompensatedSum acc;
        acc.add(driving_term(n));
        for (std::size_t k = 1; k < n; ++k) acc.add(kernel_[n - k - 1] * beta_[k - 1]);
        const double value = acc.value();
        beta_.push_back(value);
        return value;
    }

    void extend_to(std::size_t n_max) {
        beta_.reserve(n_max);
        while (beta_.size() < n_max) extend();
    }

private:
    // 1 - (q / (q + p^{l+1}))^2
    double one_minus_ratio_sq(std::size_t l) const {
        const double q = 1.0 - p_;
        const double t = std::pow(p_, static_cast<double>(l + 1));
        const double r = q / (q + t);
        return t / (q + t) * (1.0 + r);
    }

    double kernel(std::size_t l) {
        const double f = phi_(l - 1);
        return f * f * one_minus_ratio_sq(l);
    }

    // A_n = p/q^2 Phi(n+1)^2 u_n v_n, u_n = 1 - p^n, v_n = 1 - p^2 q (1 - p^{n+1}).
    double driving_term(std::size_t n) {
        const double p = p_;
        const double q = 1.0 - p;
        const double dn = static_cast<double>(n);
        const double u_prev = 1.0 - std::pow(p, dn - 1.0);
        const double u = 1.0 - std::pow(p, dn);
        const double v = 1.0 - p * p * q * (1.0 - std::pow(p, dn + 1.0));
        const double f = phi_(n);
        const double bracket = std::pow(p, dn - 1.0) * q * v -
                               u_prev * std::pow(p, dn + 2.0) * q * q -
                               one_minus_ratio_sq(n + 1) * u * v;
        return p / (q * q) * f * f * bracket;
    }

    double p_;
    PhiCache phi_;
    std::vector<double> beta_;
    std::vector<double> kernel_;  ///< kernel_[l-1] = e_l
};

void require_n(std::size_t n, const char* what) {
    if (n < 1) throw DomainError(std::string(what) + " must be at least 1");
}

// sum_{m > M} (m+1) r^m for 0 <= r < 1.
double weighted_geometric_tail(double r, int M) {
    const double rm = std::pow(r, M + 1);
    return rm * ((M + 2) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
}

// Transfer-matrix evaluation of the truncated multi-sum.
//
// State after step j is the distribution of l_j in 1..l_cap. Step weight for
// (m, l) given l_{j-1} = a is (m+1) p^{m+l} (1-p)^{m+2} C(m+a, l); the
// final state l_n is weighted by (1-p) u^{l_n}, u = 1 for beta and 1/(1-p)
// for alpha.
double truncated_multisum(double p, int n, int m_cap, int l_cap, double u) {
    const double q = 1.0 - p;
    std::vector<double> state(static_cast<std::size_t>(l_cap) + 1, 0.0);
    std::vector<double> next(state.size(), 0.0);
    state[1] = 1.0;  // l_0 = 1

    for (int step = 0; step < n; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int a = 1; a <= l_cap; ++a) {
            if (state[a] == 0.0) continue;
            double mweight = state[a] * q * q;  // m = 0: (m+1) p^m (1-p)^{m+2}
            double pq_m = 1.0;
            for (int m = 0; m <= m_cap; ++m) {
                if (m > 0) {
                    pq_m *= p * q;
                    mweight = state[a] * (m + 1) * pq_m * q * q;
                }
                if (mweight == 0.0) break;
                const int N = m + a;
                const int top = std::min(N, l_cap);
                // binomial row interleaved with the weight: C(N,l) p^l * mweight
                double c = mweight;
                for (int l = 1; l <= top; ++l) {
                    c *= p * static_cast<double>(N - l + 1) / static_cast<double>(l);
                    next[l] += c;
                }
            }
        }
        state.swap(next);
    }

    CompensatedSum total;
    double ul = 1.0;
    for (int l = 1; l <= l_cap; ++l) {
        ul *= u;
        total.add(state[l] * ul);
    }
    return q * total.value();
}

// Upper bound on the mass the truncation drops.
//
// Dropping the caps and the l >= 1 restriction, the sum over (m_j, l_j)
// against u^{l_j} equals A(u) (1 + p u)^{l_{j-1}} with
// A(u) = (1-p)^2 / (1 - p(1-p)(1 + p u))^2, so whole chains are bounded by
// products of A along the potentials u_{j-1} = 1 + p u_j. Each omitted term
// has some m_j > m_cap or l_j > l_cap; the bound is the union over j of the
// chain with step j restricted to that event. The binomial tail uses
// sum_{l > L} C(N,l) x^l <= t^{-(L+1)} (1 + x t)^N for t >= 1.
double multisum_tail(double p, int n, int m_cap, int l_cap, double u_final) {
    const double q = 1.0 - p;
    const double pq = p * q;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    auto ratio = [&](double u) { return pq * (1.0 + p * u); };
    auto full_factor = [&](double u) {
        const double r = ratio(u);
        if (r >= 1.0) return kInf;
        return q * q / ((1.0 - r) * (1.0 - r));
    };

    // potentials from the innermost step outwards: pot[j] is used at step j
    std::vector<double> pot(static_cast<std::size_t>(n) + 1);
    pot[n] = u_final;
    for (int j = n; j >= 1; --j) pot[j - 1] = 1.0 + p * pot[j];

    double bound = 0.0;
    for (int j = 1; j <= n; ++j) {
        double inner = 1.0;
        for (int i = j + 1; i <= n; ++i) inner *= full_factor(pot[i]);

        // m_j > m_cap; potentials above j are unchanged
        {
            const double r = ratio(pot[j]);
            double chain = inner * q * q * weighted_geometric_tail(r, m_cap);
            for (int i = j - 1; i >= 1; --i) chain *= full_factor(pot[i]);
            bound += chain * pot[0];
        }

        // l_j > l_cap, optimized over a few Chernoff parameters
        double best = kInf;
        for (double t : {1.02, 1.05, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            const double uj = pot[j] * t;
            double chain = inner * std::pow(t, -(l_cap + 1)) * full_factor(uj);
            double up = 1.0 + p * uj;
            for (int i = j - 1; i >= 1; --i) {
                chain *= full_factor(up);
                up = 1.0 + p * up;
            }
            chain *= up;  // u_0^{l_0} with l_0 = 1
            if (chain < best) best = chain;
        }
        bound += best;
    }
    return q * bound;
}

MultisumResult multisum(const ProbabilityParams& params, int n, const MultisumTruncation& trunc,
                        bool alpha) {
    require_p_half_closed(params.p);
    trunc.validate();
    if (n < 1 || n > 5) throw DomainError("multisum oracle supports 1 <= n <= 5");
    const double u = alpha ? 1.0 / (1.0 - params.p) : 1.0;
    MultisumResult out;
    out.value = truncated_multisum(params.p, n, trunc.m_cap, trunc.l_cap, u);
    out.tail_estimate = multisum_tail(params.p, n, trunc.m_cap, trunc.l_cap, u);
    return out;
}

}  // namespace

void MultisumTruncation::validate() const {
    if (m_cap < 1 || l_cap < 1) throw DomainError("multisum caps must be at least 1");
}

double step_factor(double p) {
    const double r = (1.0 - p) / (1.0 - p + p * p);
    return r * r;
}

double alpha1(const ProbabilityParams& params, const SeriesConfig& cfg) {
    require_p_half_closed(params.p);
    cfg.validate();
    const double p = params.p;
    const double q = 1.0 - p;
    CompensatedSum acc;
    double pm = 1.0;        // p^m
    double qm1 = q;         // (1-p)^{m+1}
    for (std::size_t m = 0;; ++m) {
        const double dm = static_cast<double>(m);
        // sum_{j >= m} (j+1) p^j (1-p)^2 bounds the remaining terms
        const double tail = q * q * pm * ((dm + 1.0) / q + p / (q * q));
        if (tail <= cfg.tail_tol) break;
        if (m >= cfg.max_terms)
            throw ConvergenceError("alpha_p(1) series did not converge within max_terms");
        acc.add((dm + 1.0) * pm * q * q * (1.0 - qm1));
        pm *= p;
        qm1 *= q;
    }
    return acc.value();
}

std::vector<double> beta_recursive(const ProbabilityParams& params, std::size_t n_max,
                                   const SeriesConfig& cfg) {
    require_p_half_closed(params.p);
    require_n(n_max, "n_max");
    cfg.validate();
    BetaRecursion rec(params.p);
    rec.extend_to(n_max);
    return rec.values();
}

MultisumResult beta_multisum(const ProbabilityParams& params, int n,
                             const MultisumTruncation& trunc) {
    return multisum(params, n, trunc, false);
}

MultisumResult alpha_multisum(const ProbabilityParams& params, int n,
                              const MultisumTruncation& trunc) {
    return multisum(params, n, trunc, true);
}

BetaAlphaTable alpha_table(const ProbabilityParams& params, std::size_t n_max,
                           const SeriesConfig& cfg) {
    require_p_half_closed(params.p);
    require_n(n_max, "n_max");
    cfg.validate();
    const double p = params.p;

    BetaRecursion rec(p);
    rec.extend_to(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        // zero only through underflow of an already tiny value
        const bool underflow = rec[n] == 0.0 && n > 1 && rec[n - 1] < 1e-290;
        if (!((rec[n] > 0.0 || underflow) && rec[n] < 1.0))
            throw ConsistencyError("beta_p(" + std::to_string(n) + ") = " +
                                   std::to_string(rec[n]) + " left (0, 1)");
    }

    // alpha_n = c * sum_{k >= n} beta_k because alpha_n -> 0 for p <= 1/2.
    // Extend beta until its geometric tail is negligible against the sum.
    constexpr std::size_t kMaxExtension = 20'000;
    const double rel = std::ldexp(1.0, -60);
    double far_tail = 0.0;
    {
        double running = 0.0;
        for (std::size_t k = 1; k <= n_max; ++k) running += rec[k];
        while (true) {
            if (rec.size() >= n_max + kMaxExtension)
                throw ConvergenceError("beta_p tail did not decay within the extension cap");
            const double prev = rec[rec.size()];
            const double b = rec.extend();
            if (!(b > 0.0) || b < std::numeric_limits<double>::min()) {
                far_tail = 0.0;
                break;
            }
            running += b;
            const double rho = b / prev;
            if (rho < 1.0 && b * rho / (1.0 - rho) <= rel * running) {
                far_tail = b * rho / (1.0 - rho);
                break;
            }
        }
    }

    const std::size_t M = rec.size();
    BetaAlphaTable table;
    table.p = p;
    table.n_max = n_max;
    table.beta.assign(rec.values().begin(), rec.values().begin() + static_cast<long>(n_max));
    table.alpha.assign(n_max, 0.0);

    const double c = step_factor(p);
    CompensatedSum acc;
    acc.add(far_tail);
    for (std::size_t k = M; k >= 1; --k) {
        if (rec[k] > 0.0) acc.add(rec[k]);
        if (k <= n_max) table.alpha[k - 1] = c * acc.value();
    }

    const double a1 = alpha1(params, cfg);
    if (std::abs(table.alpha[0] - a1) > 1e-9)
        throw ConsistencyError("alpha table disagrees with alpha_p(1): " +
                               std::to_string(table.alpha[0]) + " vs " + std::to_string(a1));
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double a = table.alpha[n - 1];
        if (!((a > 0.0 || table.beta[n - 1] == 0.0) && a < 1.0))
            throw ConsistencyError("alpha_p(" + std::to_string(n) + ") = " + std::to_string(a) +
                                   " left (0, 1)");
    }
    return table;
}

double f_partial(const ProbabilityParams& params, double z, std::size_t N,
                 const SeriesConfig& cfg) {
    if (!std::isfinite(z)) throw DomainError("z must be finite");
    const auto beta = beta_recursive(params, N, cfg);
    CompensatedSum acc;
    double zl = z;
    for (double b : beta) {
        acc.add(b * zl);
        zl *= z;
    }
    return acc.value();
}

double f_functional_residual(const ProbabilityParams& params, double z, std::size_t N,
                             const SeriesConfig& cfg) {
    require_p_half_closed(params.p);
    if (!(z > 0.0 && z <= 1.0 - cfg.singularity_margin))
        throw DomainError("functional equation check needs 0 < z < 1 - margin");
    const double p = params.p;
    const double q = 1.0 - p;
    GeneratingFunctions gf(params, cfg);
    const double hz = gf.h_series(z);
    const double hpz = gf.h_series(p * z);
    const double hp2z = gf.h_series(p * p * z);

    const double lhs = (1.0 + hz) * f_partial(params, z, N, cfg);
    const double rhs = p / (q * q) *
                       ((1.0 - p * p * q) / z * hz - (1.0 - p * p * (1.0 - p * p)) / (p * z) * hpz -
                        p * p * p * q / (p * p * z) * hp2z);
    return std::abs(lhs - rhs);
}

}  // namespace treeline
