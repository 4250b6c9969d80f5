#include <doctest.h>

#include <cmath>
#include <vector>

#include "treeline/alpha_beta.hpp"
#include "treeline/errors.hpp"

using namespace treeline;

namespace {

// Plain summation of the single-ladder crossing probability, long double.
long double alpha1_direct(long double p, int terms) {
    long double sum = 0.0L;
    for (int m = 0; m < terms; ++m)
        sum += (m + 1) * std::pow(p, m) * (1 - p) * (1 - p) * (1 - std::pow(1 - p, m + 1));
    return sum;
}

long double binom(int n, int k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// Literal nested multi-sum for n <= 2, caps applied to every m_j and l_j.
long double multisum_brute(long double p, int n, int cap, bool alpha) {
    long double total = 0.0L;
    auto step = [&](int m, int l, int lprev) {
        return std::pow(p, m + l) * std::pow(1 - p, m + 2) * (m + 1) * binom(m + lprev, l);
    };
    for (int m1 = 0; m1 <= cap; ++m1)
        for (int l1 = 1; l1 <= std::min(m1 + 1, cap); ++l1) {
            const long double w1 = step(m1, l1, 1);
            if (n == 1) {
                total += (1 - p) * w1 * (alpha ? std::pow(1 - p, -l1) : 1.0L);
                continue;
            }
            for (int m2 = 0; m2 <= cap; ++m2)
                for (int l2 = 1; l2 <= std::min(m2 + l1, cap); ++l2)
                    total += (1 - p) * w1 * step(m2, l2, l1) * (alpha ? std::pow(1 - p, -l2) : 1.0L);
        }
    return total;
}

}  // namespace

TEST_CASE("alpha1: closed form, direct summation, small p") {
    // 1 - (1-p)^3/(1-p+p^2)^2 = 7/9 at p = 1/2
    const double a = alpha1(ProbabilityParams(0.5));
    CHECK(a == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
    CHECK(std::abs(a - static_cast<double>(alpha1_direct(0.5L, 400))) <= 1e-12);
    CHECK(alpha1(ProbabilityParams(0.3)) == doctest::Approx(0.45040858836724883833).epsilon(1e-12));
    CHECK(alpha1(ProbabilityParams(1e-6)) < 1e-5);
    CHECK_THROWS_AS(alpha1(ProbabilityParams(0.6)), DomainError);
}

TEST_CASE("beta_recursive keeps relative accuracy as beta decays") {
    // frozen from a 900-digit evaluation of the undifferenced recursion
    struct Frozen {
        double p;
        std::size_t n;
        double beta;
    };
    for (const Frozen f : {Frozen{0.05, 15, 1.284438348616328765e-19},
                           Frozen{0.01, 60, 3.2855942427658194992e-120},
                           Frozen{0.1, 200, 1.035897501948795695e-183},
                           Frozen{0.3, 200, 1.2029348084886473527e-61}}) {
        CAPTURE(f.p);
        CAPTURE(f.n);
        const auto beta = beta_recursive(ProbabilityParams(f.p), f.n);
        CHECK(std::abs(beta.back() / f.beta - 1.0) <= 1e-13);
    }
}

TEST_CASE("beta_recursive: hand value and positivity") {
    const auto b = beta_recursive(ProbabilityParams(0.5), 1);
    // (64/225)(1 - 0.25*0.5*0.75) = 58/225
    CHECK(b.at(0) == doctest::Approx(58.0 / 225.0).epsilon(1e-14));
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
        const auto beta = beta_recursive(ProbabilityParams(p), 30);
        for (double v : beta) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
    CHECK_THROWS_AS(beta_recursive(ProbabilityParams(0.3), 0), DomainError);
    CHECK_THROWS_AS(beta_recursive(ProbabilityParams(0.7), 3), DomainError);
}

TEST_CASE("multisum transfer matrix matches the literal nested sum") {
    for (double p : {0.1, 0.3}) {
        for (int n : {1, 2}) {
            const MultisumTruncation caps{25, 25};
            CAPTURE(p);
            CAPTURE(n);
            const long double bb = multisum_brute(p, n, 25, false);
            const long double ab = multisum_brute(p, n, 25, true);
            CHECK(beta_multisum(ProbabilityParams(p), n, caps).value ==
                  doctest::Approx(static_cast<double>(bb)).epsilon(1e-13));
            CHECK(alpha_multisum(ProbabilityParams(p), n, caps).value ==
                  doctest::Approx(static_cast<double>(ab)).epsilon(1e-13));
        }
    }
}

TEST_CASE("multisum tail estimate is a genuine upper bound on the omitted mass") {
    for (double p : {0.1, 0.3, 0.45}) {
        const auto beta = beta_recursive(ProbabilityParams(p), 4);
        for (int n = 1; n <= 4; ++n) {
            for (int cap : {4, 8, 16}) {
                CAPTURE(p);
                CAPTURE(n);
                CAPTURE(cap);
                const auto r = beta_multisum(ProbabilityParams(p), n, {cap, cap});
                CHECK(r.value <= beta[n - 1] * (1 + 1e-12));
                CHECK(r.value + r.tail_estimate >= beta[n - 1] * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("recursion and multisum agree") {
    for (double p : {0.1, 0.2, 0.3}) {
        const auto beta = beta_recursive(ProbabilityParams(p), 4);
        for (int n = 1; n <= 4; ++n) {
            const auto r = beta_multisum(ProbabilityParams(p), n);
            CAPTURE(p);
            CAPTURE(n);
            CHECK(std::abs(beta[n - 1] - r.value) <= r.tail_estimate + 1e-10);
        }
    }
    CHECK(beta_multisum(ProbabilityParams(1e-6), 1).value < 1e-5);
    CHECK_THROWS_AS(beta_multisum(ProbabilityParams(0.3), 6), DomainError);
    CHECK_THROWS_AS(beta_multisum(ProbabilityParams(0.3), 1, {0, 10}), DomainError);
}

TEST_CASE("alpha multisum: alpha1, alpha >= beta, alpha recursion") {
    const ProbabilityParams p03(0.3);
    const auto a1 = alpha_multisum(p03, 1);
    CHECK(std::abs(a1.value - alpha1(p03)) <= a1.tail_estimate + 1e-12);
    for (int n = 1; n <= 3; ++n)
        CHECK(alpha_multisum(p03, n).value >= beta_multisum(p03, n).value);
    const auto a2 = alpha_multisum(p03, 2);
    const double via_recursion = alpha1(p03) - step_factor(0.3) * beta_recursive(p03, 1)[0];
    CHECK(std::abs(a2.value - via_recursion) <= a2.tail_estimate + 1e-12);
}

TEST_CASE("alpha_table invariants") {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        CAPTURE(p);
        const auto t = alpha_table(ProbabilityParams(p), 30);
        CHECK(t.alpha_at(1) == doctest::Approx(alpha1(ProbabilityParams(p))).epsilon(1e-12));
        const double c = step_factor(p);
        for (std::size_t n = 1; n <= 30; ++n) {
            CHECK(t.alpha_at(n) > 0.0);
            CHECK(t.alpha_at(n) < 1.0);
            CHECK(t.alpha_at(n) >= t.beta_at(n));
            if (n < 30) {
                CHECK(t.alpha_at(n + 1) < t.alpha_at(n));
                const double diff = t.alpha_at(n) - t.alpha_at(n + 1);
                CHECK(std::abs(diff - c * t.beta_at(n)) <= 4e-16 * t.alpha_at(n));
            }
        }
    }
    const auto deep = alpha_table(ProbabilityParams(0.3), 200);
    CHECK(deep.alpha_at(200) < 1e-50);
    CHECK(deep.alpha_at(200) > 0.0);
    CHECK_THROWS_AS(alpha_table(ProbabilityParams(0.6), 5), DomainError);
}

TEST_CASE("limit identity and F_p(1)") {
    const double p = 0.3;
    const ProbabilityParams params(p);
    const std::size_t N = 200;
    const auto t = alpha_table(params, N + 1);
    double sum = 0.0;
    for (std::size_t k = 1; k <= N; ++k) sum += t.beta_at(k);
    const double inv = 1.0 / step_factor(p);
    CHECK(std::abs(sum - inv * alpha1(params) + inv * t.alpha_at(N + 1)) <= 1e-10);
    CHECK(std::abs(f_partial(params, 1.0, 400) - inv * alpha1(params)) <= 1e-12);
}

TEST_CASE("f_partial basics") {
    const ProbabilityParams p03(0.3);
    CHECK(f_partial(p03, 0.0, 10) == 0.0);
    double prev = 0.0;
    for (std::size_t N : {1, 2, 5, 10, 20}) {
        const double v = f_partial(p03, 0.7, N);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("functional equation residual") {
    CHECK(f_functional_residual(ProbabilityParams(0.25), 0.4, 200) <= 1e-8);
    CHECK(f_functional_residual(ProbabilityParams(0.1), 0.2, 100) <= 1e-10);
    double prev = 1.0;
    for (std::size_t N : {4, 8, 16, 32}) {
        const double r = f_functional_residual(ProbabilityParams(0.3), 0.6, N);
        CHECK(r < prev);
        prev = r;
    }
    CHECK_THROWS_AS(f_functional_residual(ProbabilityParams(0.3), 1.0, 10), DomainError);
}

TEST_CASE("growth rate of beta approaches 1/x0 (soft check)") {
    const auto beta = beta_recursive(ProbabilityParams(0.3), 200);
    const double rate = std::pow(beta[199], 1.0 / 200.0);
    const double target = 1.0 / 2.0107579640599186828;
    MESSAGE("beta_200^(1/200) = " << rate << ", 1/x0 = " << target << " (soft check)");
    CHECK(std::abs(rate - target) <= 0.05 * target);
}
