#include <doctest.h>

#include <cmath>
#include <cstring>

#include "treeline/bounds.hpp"
#include "treeline/errors.hpp"

using namespace treeline;

TEST_CASE("find_x0: frozen roots and bisection contract") {
    struct Root {
        double p;
        double x0;
    };
    for (const Root r : {Root{0.3, 2.0107579640599186828}, Root{0.225, 2.9497084914862391742},
                         Root{0.2, 3.4472075327335854692}, Root{0.1, 8.2157918763215067924}}) {
        CAPTURE(r.p);
        const RootResult res = find_x0(ProbabilityParams(r.p));
        CHECK(std::abs(res.x0 - r.x0) <= 1e-9);
        CHECK(res.residual <= 1e-9);
        CHECK(res.hi - res.lo <= 1e-9);
        CHECK(res.lo <= res.x0);
        CHECK(res.x0 <= res.hi);
        CHECK(res.x0 < 1.0 / r.p);
    }
    CHECK(find_x0(ProbabilityParams(0.225)).x0 < 2.999);
    CHECK(find_x0(ProbabilityParams(1.0 / 3.0 + 0.001)).x0 < 2.0);
}

TEST_CASE("find_x0: continuation equals -1 at the root") {
    for (double p : {0.15, 0.25, 0.3, 0.4}) {
        const RootResult res = find_x0(ProbabilityParams(p));
        REQUIRE(res.x0 > 1.0 + 1e-6);
        CHECK(std::abs(h_continued(ProbabilityParams(p), res.x0) + 1.0) <= 1e-6);
    }
}

TEST_CASE("find_x0 is bit-for-bit deterministic") {
    const RootResult a = find_x0(ProbabilityParams(0.27));
    const RootResult b = find_x0(ProbabilityParams(0.27));
    CHECK(std::memcmp(&a.x0, &b.x0, sizeof(double)) == 0);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("find_x0 rejects p outside (0, 1/2)") {
    CHECK_THROWS_AS(find_x0(ProbabilityParams(0.5)), DomainError);
    CHECK_THROWS_AS(find_x0(ProbabilityParams(0.6)), DomainError);
    CHECK_THROWS_AS(find_x0(ProbabilityParams(0.3), RootOptions{0.0, {}}), DomainError);
}

TEST_CASE("alpha_lower_bound") {
    CHECK(alpha_lower_bound(ProbabilityParams(0.225)) > 1.0 / 3.0);
    const double a20 = alpha_lower_bound(ProbabilityParams(0.2));
    const double a25 = alpha_lower_bound(ProbabilityParams(0.25));
    const double a30 = alpha_lower_bound(ProbabilityParams(0.3));
    CHECK(a20 < a25);
    CHECK(a25 < a30);
    const double tiny = alpha_lower_bound(ProbabilityParams(0.01));
    MESSAGE("1/x0 at p = 0.01: " << tiny);
}

TEST_CASE("reference_bounds closed forms") {
    const BoundReport b4 = reference_bounds(4);
    CHECK(b4.lp_pu == doctest::Approx(0.23246).epsilon(1e-4));
    CHECK(b4.lp_pc == doctest::Approx((4 - std::sqrt(12.0)) / 2).epsilon(1e-15));
    CHECK(b4.lp_pc > 0.25);
    const BoundReport b3 = reference_bounds(3);
    CHECK(b3.inv_d == doctest::Approx(1.0 / 3.0));
    CHECK(b3.lp_pc == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-15));
    CHECK(b3.inv_d < b3.lp_pc);
    CHECK_THROWS_AS(reference_bounds(2), DomainError);
}

TEST_CASE("p0_for_d: value at d = 4 and ordering") {
    const P0Result r4 = p0_for_d(4);
    CHECK(r4.grid_monotone);
    CHECK_FALSE(r4.from_grid_scan);
    CHECK(r4.p0 < 0.225);
    CHECK(r4.p0 < reference_bounds(4).lp_pu);
    MESSAGE("p0(4) = " << r4.p0);
    for (int d : {3, 5, 10, 20}) {
        const P0Result r = p0_for_d(d);
        CAPTURE(d);
        CHECK(r.p0 <= 1.0 / d + 1e-6);
    }
    const BoundReport rep = bound_report(4);
    CHECK(rep.gap_nonempty);
    CHECK_THROWS_AS(p0_for_d(2), DomainError);
}

TEST_CASE("p0_for_d: predicate true at the lower end is reported") {
    P0Options opts;
    opts.p_lo = 0.23;
    const P0Result r = p0_for_d(4, opts);
    CHECK(r.p0 == doctest::Approx(0.23));
    CHECK_FALSE(r.warning.empty());
}

TEST_CASE("verify_theorem_a") {
    const TheoremAReport r3 = verify_theorem_a(3);
    CHECK(r3.p == doctest::Approx(1.0 / 3.0 + 1e-3));
    CHECK(r3.x_below);
    CHECK(r3.h_reaches);
    CHECK(r3.sufficient);
    CHECK(r3.root_below);
    CHECK(verify_theorem_a(10).pass());

    const TheoremAReport edge = verify_theorem_a(3, 0.0);
    CHECK_FALSE(edge.x_below);

    const auto all = verify_theorem_a(3, 50);
    REQUIRE(all.size() == 48);
    for (const auto& r : all) {
        CAPTURE(r.d);
        CHECK(r.pass());
    }
}

TEST_CASE("verify_theorem_b") {
    const TheoremBReport r = verify_theorem_b();
    CHECK(r.threshold == doctest::Approx(0.775 / 0.225));
    CHECK(r.h_full >= r.threshold);
    CHECK(r.surrogate >= r.threshold);
    CHECK(r.surrogate <= r.h_full);
    CHECK(r.x_ok);
    CHECK(r.pass());
}
