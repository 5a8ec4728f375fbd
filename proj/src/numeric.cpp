#include "dwork/numeric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dwork::numeric {

double legendre_period(double t, int terms, int derivative) {
    double coeff = 1.0;
    double sum = 0.0;
    for (int n = 0; n < terms; ++n) {
        if (n > 0) {
            double a = (n - 0.5) / n;
            coeff *= a * a;
        }
        if (n >= derivative) {
            double falling = 1.0;
            for (int k = 0; k < derivative; ++k) {
                falling *= n - k;
            }
            sum += coeff * falling * std::pow(t, n - derivative);
        }
    }
    return 2.0 * std::numbers::pi * sum;
}

double circle_period(double t, int nodes) {
    if (t <= 0.0) {
        throw std::domain_error("circle period needs a positive radius squared");
    }
    const double r = std::sqrt(t);
    const double h = 2.0 * std::numbers::pi / nodes;
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        double a = k * h;
        double x2 = r * std::sin(a);
        double dx1 = -r * std::sin(a);
        // dx1 / (2 x2) with the removable zero of sin cancelled
        sum += std::abs(x2) > 1e-300 ? dx1 / (2.0 * x2) : -0.5;
    }
    return sum * h;
}

PeriodFunction finite_differences(std::function<double(double)> f, double h) {
    return [f = std::move(f), h](double t, int k) {
        switch (k) {
        case 0:
            return f(t);
        case 1:
            return (f(t + h) - f(t - h)) / (2.0 * h);
        case 2:
            return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        default:
            throw std::invalid_argument("finite differences support order <= 2");
        }
    };
}

double ode_residual(const std::vector<std::function<double(double)>> &lower, const PeriodFunction &y, double t) {
    const int m = static_cast<int>(lower.size());
    double r = y(t, m);
    for (int k = 0; k < m; ++k) {
        r += lower[k](t) * y(t, k);
    }
    return std::abs(r);
}

} // namespace dwork::numeric
