#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "clefour/connection.hpp"
#include "clefour/errors.hpp"
#include "clefour/fusion.hpp"

using namespace clefour;

namespace {
const FusionConfig kConfigs[3] = {{-1.0, 0.0, 1.0, 3.0},
                                  {-1.5, 0.0, 1.0, 2.5},
                                  {-2.0, -0.5, 1.0, 2.2}};
}

TEST_CASE("series solutions satisfy the collapsed-point equation") {
    const ConnectionData cd = connect(6.0);
    for (const FusionConfig& cfg : kConfigs) {
        CHECK(fusion_pde_residual(6.0, cd.sols[0], cfg) <= 1e-4);
        CHECK(fusion_pde_residual(6.0, cd.sols[2], cfg) <= 1e-4);
    }
    // the middle-exponent solution solves the same equation
    CHECK(fusion_pde_residual(6.0, cd.sols[1], kConfigs[0]) <= 1e-4);
}

TEST_CASE("a detuned series is rejected by the residual") {
    const ConnectionData cd = connect(6.0);
    Series broken = cd.sols[0];
    broken.a[1] += 1e-2;
    double worst = 0.0;
    for (const FusionConfig& cfg : kConfigs)
        worst = std::max(worst, fusion_pde_residual(6.0, broken, cfg));
    CHECK(worst > 1e-4);
}

TEST_CASE("coordinates must be ordered") {
    const ConnectionData cd = connect(6.0);
    CHECK_THROWS_AS(fusion_pde_residual(6.0, cd.sols[0], FusionConfig{0.0, -1.0, 1.0, 3.0}),
                    DomainError);
    CHECK_THROWS_AS(fusion_pde_residual(6.0, cd.sols[0], FusionConfig{-1.0, 1.0, 1.0, 3.0}),
                    DomainError);
}

TEST_CASE("residual scales with kappa detuning") {
    const ConnectionData cd = connect(6.0);
    // evaluating the kappa=6 series inside the kappa=6.05 equation must fail
    CHECK(fusion_pde_residual(6.05, cd.sols[0], kConfigs[0]) > 1e-4);
}
