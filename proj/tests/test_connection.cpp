#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "clefour/connection.hpp"
#include "clefour/errors.hpp"
#include "clefour/ode_core.hpp"

using namespace clefour;

TEST_CASE("linear solver recovers a hand-built system") {
    Mat3 A{{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}};
    const auto x = solve3(A, {3, 5, 5});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(x[2] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("connection matrix is an involution") {
    for (double kappa : {4.2, 5.0, 6.0, 7.0, 7.5}) {
        const ConnectionData cd = connect(kappa);
        CHECK(cd.involution_err <= 1e-11);
        CHECK(cd.identity_err <= 1e-10);
    }
}

TEST_CASE("frozen identification constants away from resonance") {
    const ConnectionData c5 = connect(5.0);
    CHECK(c5.beta == doctest::Approx(0.220083956809799021).epsilon(1e-10));
    CHECK(c5.a_hat == doctest::Approx(0.576187279306617713).epsilon(1e-10));

    const ConnectionData c7 = connect(7.0);
    CHECK(c7.beta == doctest::Approx(0.317127967494166443).epsilon(1e-10));
    CHECK(c7.a_hat == doctest::Approx(0.141135223020939265).epsilon(1e-10));
}

TEST_CASE("resonant points are symmetrized to beta = 0") {
    for (double kappa : {6.0, 16.0 / 3.0, 24.0 / 5.0}) {
        const ConnectionData cd = connect(kappa);
        CHECK(std::fabs(cd.beta) <= 1e-10);
    }
    // the amplitude at 24/5 is the rational 52/81
    CHECK(connect(24.0 / 5.0).a_hat == doctest::Approx(52.0 / 81.0).epsilon(1e-10));
}

TEST_CASE("amplitude at kappa=6 equals its trigonometric closed form") {
    const double pi = std::numbers::pi;
    const double closed =
        8.0 * std::sqrt(3.0) * pi * std::sin(2.0 * pi / 9.0) / (135.0 * std::cos(5.0 * pi / 18.0));
    CHECK(connect(6.0).a_hat == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("frozen ratio values at kappa=6") {
    const ConnectionData cd = connect(6.0);
    CHECK(universal_ratio(cd, 0.3) == doctest::Approx(0.0373419176056).epsilon(1e-9));
    CHECK(universal_ratio(cd, 0.5) == doctest::Approx(0.117728937436).epsilon(1e-9));
    CHECK(universal_ratio(cd, 0.7) == doctest::Approx(0.257487045274).epsilon(1e-9));
}

TEST_CASE("basis solutions are smooth through the matching point") {
    for (double kappa : {5.0, 6.0}) {
        const ConnectionData cd = connect(kappa);
        for (int i = 0; i < 3; ++i) {
            const Jet lo = eval_solution_jet(cd, i, 0.5 - 1e-6);
            const Jet hi = eval_solution_jet(cd, i, 0.5 + 1e-6);
            CHECK(std::fabs(hi.v - lo.v) <= 1e-4 * (1.0 + std::fabs(lo.v)));
            CHECK(std::fabs(hi.d1 - lo.d1) <= 1e-3 * (1.0 + std::fabs(lo.d1)));
        }
    }
}

TEST_CASE("small-lambda growth of the ratio reproduces the amplitude") {
    const ConnectionData cd = connect(6.0);
    const double lam = 1e-3;
    const double est = universal_ratio(cd, lam) / (lam * lam) / (1.0 + lam);
    CHECK(est == doctest::Approx(cd.a_hat).epsilon(2e-4));
}

TEST_CASE("two matching points tell one story") {
    CHECK(dual_match_deviation(5.0) <= 1e-7);
    CHECK(dual_match_deviation(7.0) <= 1e-7);
}

TEST_CASE("kappa domain is the open interval (4,8)") {
    CHECK_THROWS_AS(connect(4.0), DomainError);
    CHECK_THROWS_AS(connect(8.0), DomainError);
    CHECK_THROWS_AS(connect(3.0), DomainError);
}
