#include "doctest.h"

#include "dwork/cohomology.hpp"
#include "dwork/numeric.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace dwork;
using namespace dwork::testing;

TEST_CASE("series oracle") {
    CHECK(numeric::legendre_period(0.0, 30) == doctest::Approx(2 * std::numbers::pi));
    // derivative at 0 is 2*pi * (1/2)^2
    CHECK(numeric::legendre_period(0.0, 30, 1) == doctest::Approx(std::numbers::pi / 2));
    double h = 1e-5;
    double fd = (numeric::legendre_period(0.1 + h, 30) - numeric::legendre_period(0.1 - h, 30)) / (2 * h);
    CHECK(numeric::legendre_period(0.1, 30, 1) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("circle oracle") {
    CHECK(numeric::circle_period(0.7) == doctest::Approx(-std::numbers::pi));
    CHECK_THROWS(numeric::circle_period(-1.0));
}

TEST_CASE("Legendre operator annihilates the series") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    CyclicAnnihilator ann = cyclic_annihilator(s, normal_form(s, L.p("1")), 0, 3);
    REQUIRE(ann.found);
    std::vector<std::function<double(double)>> lower;
    for (const auto &c : ann.coefficients) {
        lower.push_back([c](double t) { return c.evaluate({t}); });
    }
    auto y = [](double t, int k) { return numeric::legendre_period(t, 30, k); };
    for (double t : {0.05, 0.1, 0.2}) {
        CHECK(numeric::ode_residual(lower, y, t) < 1e-10);
    }
    // a perturbed operator does not
    lower[0] = [](double t) { return 1.0 + t; };
    CHECK(numeric::ode_residual(lower, y, 0.1) > 1e-3);
}
