#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "treeline/alpha_beta.hpp"
#include "treeline/errors.hpp"
#include "treeline/percolation.hpp"
#include "treeline/rng.hpp"

using namespace treeline;

namespace {

const SlabSpec kStrip13{GraphKind::strip, 3, 1, 3};
const SlabSpec kSlabSmall{GraphKind::slab, 4, 2, 4};

}  // namespace

TEST_CASE("rng: edge_open frequency and threshold endpoints") {
    CHECK(rng::open_threshold(0.0) == 0);
    std::uint64_t open = 0;
    const std::uint64_t t = rng::open_threshold(0.3);
    const std::uint64_t key = rng::sample_key(rng::chunk_seed(7, 0), 0);
    for (std::uint32_t e = 0; e < 200000; ++e) open += rng::edge_open(key, e, t) ? 1 : 0;
    CHECK(std::abs(open / 200000.0 - 0.3) < 4.0 * std::sqrt(0.21 / 200000.0));
    const std::uint64_t all = rng::open_threshold(1.0);
    for (std::uint32_t e = 0; e < 1000; ++e) CHECK(rng::edge_open(key, e, all));
}

TEST_CASE("crossing at p = 0 and p = 1") {
    const ProductGraph g(kSlabSmall);
    CHECK(estimate_crossing(g, 0.0, 5000, 1).successes == 0);
    const CrossingEstimate one = estimate_crossing(g, 1.0, 5000, 1);
    CHECK(one.successes == 5000);
    CHECK(one.p_hat == 1.0);
    CHECK(one.std_error == 0.0);
    CHECK_THROWS_AS(estimate_crossing(g, 1.5, 10, 1), DomainError);
    CHECK_THROWS_AS(estimate_crossing(g, 0.5, 0, 1), DomainError);
}

TEST_CASE("exact enumeration: hand values") {
    CHECK(exact_crossing({GraphKind::strip, 3, 1, 0}, 0.5) == doctest::Approx(0.5));
    // strip n = 1, K = 1: rung at level 0, or line edge then rung
    const double p = 0.4;
    const double q = 1 - p;
    const double side = p * p;  // line edge then rung
    const double expected = p + q * (1 - (1 - side) * (1 - side));
    CHECK(exact_crossing({GraphKind::strip, 3, 1, 1}, p) == doctest::Approx(expected).epsilon(1e-14));
    const CrossingPolynomial c = crossing_polynomial(ProductGraph({GraphKind::strip, 3, 1, 0}));
    REQUIRE(c.size() == 2);
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
    CHECK_THROWS_AS(exact_crossing({GraphKind::strip, 3, 1, 7}, 0.3), CapacityError);
}

TEST_CASE("exact crossing increases in K toward alpha1") {
    for (double p : {0.2, 0.3, 0.45}) {
        CAPTURE(p);
        const double a1 = alpha1(ProbabilityParams(p));
        double prev = 0.0;
        for (int K = 0; K <= 6; ++K) {
            const double v = exact_crossing({GraphKind::strip, 3, 1, K}, p);
            CHECK(v > prev);
            CHECK(v < a1);
            prev = v;
        }
        CHECK(a1 - prev < 0.05);
    }
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
    const double exact = exact_crossing(kStrip13, 0.3);
    const CrossingEstimate est = estimate_crossing(kStrip13, 0.3, 1'000'000, 2024);
    CHECK(est.samples == 1'000'000);
    CHECK(std::abs(est.p_hat - exact) <= 3.5 * est.std_error);
}

TEST_CASE("parallel kernel equals the union-find reference") {
    for (const SlabSpec& spec : {kStrip13, kSlabSmall, SlabSpec{GraphKind::slab, 3, 3, 6}}) {
        const ProductGraph g(spec);
        for (double p : {0.15, 0.3, 0.6}) {
            const CrossingEstimate a = estimate_crossing(g, p, 10000, 99);
            const CrossingEstimate b = reference::estimate_crossing(g, p, 10000, 99);
            const CrossingEstimate c = serial::estimate_crossing(g, p, 10000, 99);
            CHECK(a.successes == b.successes);
            CHECK(a.successes == c.successes);
            if (spec.kind == GraphKind::slab) {
                const OffspringEstimate x = estimate_offspring(g, p, 5000, 5);
                const OffspringEstimate y = reference::estimate_offspring(g, p, 5000, 5);
                CHECK(x.mean == y.mean);
                CHECK(x.std_error == y.std_error);
                CHECK(x.leaf_crossing.successes == y.leaf_crossing.successes);
            }
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    const ProductGraph g(kSlabSmall);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const CrossingEstimate one = estimate_crossing(g, 0.3, 3 * kChunkSize + 17, 11);
    omp_set_num_threads(4);
    const CrossingEstimate four = estimate_crossing(g, 0.3, 3 * kChunkSize + 17, 11);
    omp_set_num_threads(saved);
    CHECK(one.successes == four.successes);
    CHECK(estimate_crossing(g, 0.3, 20000, 12).successes !=
          estimate_crossing(g, 0.3, 20000, 13).successes);
}

TEST_CASE("crossing is monotone in K and in p under coupling") {
    // different graphs, compared statistically
    const CrossingEstimate k2 = estimate_crossing(SlabSpec{GraphKind::strip, 3, 2, 2}, 0.3, 20000, 3);
    const CrossingEstimate k5 = estimate_crossing(SlabSpec{GraphKind::strip, 3, 2, 5}, 0.3, 20000, 3);
    CHECK(k2.p_hat <= k5.p_hat + 3.5 * std::hypot(k2.std_error, k5.std_error));
    const ProductGraph g(kSlabSmall);
    const CrossingEstimate lo = estimate_crossing(g, 0.2, 20000, 4);
    const CrossingEstimate hi = estimate_crossing(g, 0.3, 20000, 4);
    CHECK(lo.successes <= hi.successes);
}

TEST_CASE("offspring mean equals leaf count times single-leaf crossing") {
    const ProductGraph g(kSlabSmall);
    const OffspringEstimate o = estimate_offspring(g, 0.3, 40000, 8);
    CHECK(o.n == 2);
    CHECK(o.d == 4);
    const double predicted = static_cast<double>(g.leaf_count()) * o.leaf_crossing.p_hat;
    const double sigma = std::hypot(o.std_error, g.leaf_count() * o.leaf_crossing.std_error);
    CHECK(std::abs(o.mean - predicted) <= 3.5 * sigma);
    CHECK_THROWS_AS(estimate_offspring(kStrip13, 0.3, 10, 1), DomainError);
}
