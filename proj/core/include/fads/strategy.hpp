#pragma once

#include <span>
#include <vector>

#include "fads/params.hpp"

// Sharpe ratios, optimal portfolio rules and self-financing wealth. Wealth
// evolves in log space, discretizing the exponential solution of the wealth
// equation, so discounted wealth stays strictly positive for every finite
// input and admissibility never needs patching after the fact.

namespace fads {

struct SharpeSeries {
    std::vector<double> theta;        // (mu_i - r) / sigma per grid point
    std::vector<double> theta_gamma;  // theta / (1 - gamma)
};

// Pointwise Sharpe ratio of the stock as the investor perceives it.
// mu_i holds grid.points() values of the perceived drift.
SharpeSeries sharpe(std::span<const double> mu_i, const ModelParams& params,
                    const TimeGrid& grid);

// CRRA-optimal weight pi*(t) = mu_i(t) / ((1 - gamma) sigma(t)^2). The rule
// assumes a zero risk-free rate; gamma = 0 gives the log-utility rule.
std::vector<double> optimal_portfolio(std::span<const double> mu_i, const ModelParams& params,
                                      const TimeGrid& grid);

struct WealthPath {
    TimeGrid grid;
    std::vector<double> pi;       // portfolio weight used on [t_k, t_{k+1})
    std::vector<double> v;        // wealth
    std::vector<double> v_tilde;  // discounted wealth
};

// Advances discounted wealth by the log-Euler scheme
//   d log(v~) = (pi sigma theta - pi^2 sigma^2 / 2) dt + pi sigma dB_i,
// where theta is the investor's Sharpe ratio built from mu_i. pi[k] applies
// on [t_k, t_{k+1}) and may only depend on information up to t_k; callers
// produce it from a causal rule over the investor's own view. db_i holds
// grid.steps() increments of the investor's Brownian driver.
// Throws std::overflow_error once |log wealth| exceeds 700.
WealthPath evolve_wealth(std::span<const double> pi, std::span<const double> mu_i,
                         std::span<const double> db_i, const ModelParams& params,
                         const TimeGrid& grid);

struct UtilityOutcome {
    double h;      // log(v~_T) - log(x0)
    double u_log;  // log(v~_T)
    double u_pow;  // v~_T^gamma = exp(gamma * u_log)
};

UtilityOutcome utility_outcome(const WealthPath& wealth, double gamma);

// General power utility U_gamma(w) = (w^gamma - 1) / gamma, with the log
// limit at gamma = 0.
double power_utility(double wealth, double gamma);

}  // namespace fads
