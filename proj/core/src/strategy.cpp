#include "fads/strategy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fads {

namespace {

constexpr double kLogWealthCap = 700.0;

void check_series(std::span<const double> series, const TimeGrid& grid, const char* what) {
    if (series.size() != grid.points()) {
        throw std::invalid_argument(std::string(what) + " does not match the grid");
    }
}

}  // namespace

SharpeSeries sharpe(std::span<const double> mu_i, const ModelParams& params,
                    const TimeGrid& grid) {
    check_series(mu_i, grid, "drift series");
    SharpeSeries out;
    out.theta.resize(mu_i.size());
    out.theta_gamma.resize(mu_i.size());
    const double risk_scale = 1.0 - params.gamma;
    for (std::size_t k = 0; k < mu_i.size(); ++k) {
        const double t = grid.t(static_cast<int>(k));
        out.theta[k] = (mu_i[k] - params.r(t)) / params.sigma(t);
        out.theta_gamma[k] = out.theta[k] / risk_scale;
    }
    return out;
}

std::vector<double> optimal_portfolio(std::span<const double> mu_i, const ModelParams& params,
                                      const TimeGrid& grid) {
    check_series(mu_i, grid, "drift series");
    std::vector<double> pi(mu_i.size());
    const double risk_scale = 1.0 - params.gamma;
    for (std::size_t k = 0; k < mu_i.size(); ++k) {
        const double sig = params.sigma(grid.t(static_cast<int>(k)));
        pi[k] = mu_i[k] / (risk_scale * sig * sig);
    }
    return pi;
}

WealthPath evolve_wealth(std::span<const double> pi, std::span<const double> mu_i,
                         std::span<const double> db_i, const ModelParams& params,
                         const TimeGrid& grid) {
    check_series(pi, grid, "portfolio series");
    check_series(mu_i, grid, "drift series");
    if (db_i.size() != static_cast<std::size_t>(grid.steps())) {
        throw std::invalid_argument("driver increments do not match the grid");
    }

    WealthPath out{grid, std::vector<double>(pi.begin(), pi.end()), {}, {}};
    out.v.resize(grid.points());
    out.v_tilde.resize(grid.points());

    const double dt = grid.dt();
    double log_vt = std::log(params.x0);
    double rate_integral = 0.0;
    out.v_tilde[0] = params.x0;
    out.v[0] = params.x0;

    for (int k = 0; k < grid.steps(); ++k) {
        const double t = grid.t(k);
        const double sig = params.sigma(t);
        const double theta = (mu_i[k] - params.r(t)) / sig;
        const double exposure = pi[k] * sig;
        log_vt += (exposure * theta - 0.5 * exposure * exposure) * dt + exposure * db_i[k];
        if (!(std::fabs(log_vt) <= kLogWealthCap)) {
            throw std::overflow_error("log wealth magnitude exceeded 700");
        }
        rate_integral = integrate(params.r, 0.0, grid.t(k + 1));
        out.v_tilde[k + 1] = std::exp(log_vt);
        out.v[k + 1] = std::exp(log_vt + rate_integral);
    }
    return out;
}

UtilityOutcome utility_outcome(const WealthPath& wealth, double gamma) {
    const double vt = wealth.v_tilde.back();
    if (!(vt > 0.0)) throw std::domain_error("terminal discounted wealth must be positive");
    const double u_log = std::log(vt);
    const double x0 = wealth.v_tilde.front();
    return {u_log - std::log(x0), u_log, std::exp(gamma * u_log)};
}

double power_utility(double wealth, double gamma) {
    if (!(wealth > 0.0)) throw std::domain_error("power utility requires positive wealth");
    if (gamma == 0.0) return std::log(wealth);
    return std::expm1(gamma * std::log(wealth)) / gamma;
}

}  // namespace fads
