#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "clefour/errors.hpp"
#include "clefour/perc_mc.hpp"

using namespace clefour;

namespace {
ConnectivityParams small_box(int workers) {
    ConnectivityParams p;
    p.L = 32;
    p.width = 64;
    p.a = 12;
    p.b = 3;
    p.w = 1;
    p.samples = 400;
    p.seed = 77;
    p.workers = workers;
    return p;
}
}  // namespace

TEST_CASE("counts are reproducible and independent of the worker split") {
    const ConnectivityResult r1 = run_connectivity(small_box(1));
    const ConnectivityResult r3 = run_connectivity(small_box(3));
    CHECK(r1.n_1234 == r3.n_1234);
    CHECK(r1.n_12_34 == r3.n_12_34);
    CHECK(r1.n_14_23 == r3.n_14_23);
    CHECK(r1.n_other == r3.n_other);
    CHECK(r1.n_1234 + r1.n_12_34 + r1.n_14_23 + r1.n_13_24 + r1.n_other == r1.samples);

    const ConnectivityResult r1b = run_connectivity(small_box(1));
    CHECK(r1.n_14_23 == r1b.n_14_23);
}

TEST_CASE("the crossed pairing never occurs") {
    ConnectivityParams p = small_box(2);
    p.samples = 3000;
    const ConnectivityResult r = run_connectivity(p);
    CHECK(r.n_13_24 == 0);
    CHECK(r.denominator() > 0);
    CHECK(r.ratio() >= 0.0);
    CHECK(r.ratio() <= 1.0);
}

TEST_CASE("cross-ratio of the marked offsets") {
    const ConnectivityResult r = run_connectivity(small_box(1));
    CHECK(r.lambda() == ((12.0 - 3.0) / (12.0 + 3.0)) * ((12.0 - 3.0) / (12.0 + 3.0)));
}

TEST_CASE("geometry guards") {
    ConnectivityParams p = small_box(1);
    p.a = 20;  // leaves the central half of a width-64 box
    CHECK_THROWS_AS(run_connectivity(p), DomainError);
    p = small_box(1);
    p.b = 1;  // inner segments touch at w=1
    CHECK_THROWS_AS(run_connectivity(p), DomainError);
    p = small_box(1);
    p.b = 10;  // inner and outer segments overlap
    CHECK_THROWS_AS(run_connectivity(p), DomainError);
}

TEST_CASE("offset search lands near the requested cross-ratio") {
    for (double target : {0.3, 0.5, 0.7}) {
        const auto [a, b] = choose_offsets(target, 3, 16, 250);
        CHECK(b >= 4);
        CHECK(a - b >= 7);
        const double d = static_cast<double>(a - b) / (a + b);
        CHECK(d * d == doctest::Approx(target).epsilon(5e-3));
    }
    CHECK_THROWS_AS(choose_offsets(1.5, 3, 16, 250), DomainError);
    CHECK_THROWS_AS(choose_offsets(0.5, 3, 10, 10), DomainError);
}

TEST_CASE("self-dual crossing probability at one half") {
    const long n = 4000;
    const double p = crossing_probability(64, n, 2024);
    const double se = std::sqrt(0.25 / n);
    CHECK(std::fabs(p - 0.5) <= 3.5 * se);
}

TEST_CASE("arm probability decays with a stable exponent") {
    const OneArmFit fit = one_arm_exponent({16, 32, 64, 128}, 4000, 11);
    REQUIRE(fit.points.size() == 4);
    for (std::size_t i = 1; i < fit.points.size(); ++i)
        CHECK(fit.points[i].second < fit.points[i - 1].second);
    CHECK(fit.exponent > 0.2);
    CHECK(fit.exponent < 0.5);
}

TEST_CASE("far-boundary condition barely moves the ratio") {
    ConnectivityParams closed;
    closed.L = 96;
    closed.width = 192;
    closed.a = 12;
    closed.b = 3;
    closed.w = 1;
    closed.samples = 3000;
    closed.seed = 5;
    ConnectivityParams wired = closed;
    wired.wired_far_boundary = true;
    const ConnectivityResult rc = run_connectivity(closed);
    const ConnectivityResult rw = run_connectivity(wired);
    const double joint =
        std::sqrt(rc.ratio_stderr() * rc.ratio_stderr() + rw.ratio_stderr() * rw.ratio_stderr());
    CHECK(std::fabs(rc.ratio() - rw.ratio()) <= 4.0 * joint + 0.02);
}
