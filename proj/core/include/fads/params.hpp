#pragma once

#include <cmath>

#include "fads/curve.hpp"

namespace fads {

// Full model parameterization. All quantities are immutable values once
// validated; q is never stored, always derived from p, so p^2 + q^2 = 1
// holds by construction.
struct ModelParams {
    Curve r = Curve::constant(0.0);      // risk-free rate, 1/time
    Curve mu = Curve::constant(0.0);     // stock drift, 1/time
    Curve sigma = Curve::constant(0.2);  // stock volatility, 1/sqrt(time)
    double lambda = 1.0;                 // mispricing mean-reversion speed, > 0
    double p = 1.0;                      // permanent-shock weight, in [0, 1]
    double gamma = 0.0;                  // utility exponent, < 1 (0 = log)
    double horizon = 1.0;                // investment horizon T, > 0
    double s0 = 1.0;                     // initial stock price, > 0
    double x0 = 1.0;                     // initial wealth, > 0

    double q() const { return std::sqrt(1.0 - p * p); }
};

// Returns the parameters unchanged if every model invariant holds; throws
// std::invalid_argument naming the first offending field otherwise.
ModelParams validate_params(const ModelParams& raw);

// Uniform grid 0 = t_0 < t_1 < ... < t_n = T.
class TimeGrid {
public:
    TimeGrid(double horizon, int n_steps);

    int steps() const { return n_steps_; }
    std::size_t points() const { return static_cast<std::size_t>(n_steps_) + 1; }
    double horizon() const { return horizon_; }
    double dt() const { return dt_; }
    double t(int k) const { return horizon_ * static_cast<double>(k) / static_cast<double>(n_steps_); }

private:
    double horizon_;
    int n_steps_;
    double dt_;
};

}  // namespace fads
