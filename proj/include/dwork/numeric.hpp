#pragma once

#include <functional>
#include <vector>

namespace dwork::numeric {

// k-th derivative of 2*pi * sum_n ((1/2)_n)^2 / (n!)^2 * t^n truncated to `terms` terms.
double legendre_period(double t, int terms, int derivative = 0);

// Integral of dx1 / (2 x2) over x1^2 + x2^2 = t, by the trapezoid rule on the angle.
double circle_period(double t, int nodes = 256);

// Derivatives 0..order of a period function: value(t, k).
using PeriodFunction = std::function<double(double, int)>;

// Central differences of a smooth scalar function.
PeriodFunction finite_differences(std::function<double(double)> f, double h);

// |sum_k c_k(t) y^(k)(t)| for the monic operator with lower coefficients c_0..c_{m-1}.
double ode_residual(const std::vector<std::function<double(double)>> &lower, const PeriodFunction &y, double t);

} // namespace dwork::numeric
