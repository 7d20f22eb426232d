#include "fads/valuation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fads/filter.hpp"
#include "fads/quadrature.hpp"

namespace fads {

namespace {

constexpr double kQuadTol = 1e-9;

void require_zero_rate(const ModelParams& params, const char* where) {
    if (params.r.min_on(params.horizon) != 0.0 || params.r.max_on(params.horizon) != 0.0) {
        throw std::invalid_argument(std::string(where) +
                                    " requires a zero risk-free rate; the closed forms are "
                                    "stated for r = 0 and are not extrapolated");
    }
}

double informed_variance(double t, double p, double lambda) {
    return 0.5 * lambda * (1.0 - p * p) * (1.0 - std::exp(-2.0 * lambda * t));
}

double uninformed_variance(double t, double p, double lambda) {
    if (t <= 0.0) return 0.0;
    const auto integrand = [&](double s) {
        const double w = 1.0 + gamma_kernel(s, p, lambda);
        return lambda * lambda * std::exp(-2.0 * lambda * (t - s)) * w * w;
    };
    return adaptive_simpson(integrand, 0.0, t, kQuadTol);
}

// Same double-integral reduced by Fubini to one pass over the kernel:
// int_0^T E[v0_t^2] dt = (lambda/2) int_0^T (1+gamma(s))^2 (1 - e^{-2 lambda (T-s)}) ds.
double uninformed_cumulative(double horizon, double p, double lambda) {
    if (horizon <= 0.0) return 0.0;
    const auto integrand = [&](double s) {
        const double w = 1.0 + gamma_kernel(s, p, lambda);
        return 0.5 * lambda * w * w * (1.0 - std::exp(-2.0 * lambda * (horizon - s)));
    };
    return adaptive_simpson(integrand, 0.0, horizon, kQuadTol);
}

double informed_cumulative(double horizon, double p, double lambda) {
    return 0.5 * lambda * (1.0 - p * p) *
           (horizon - (1.0 - std::exp(-2.0 * lambda * horizon)) / (2.0 * lambda));
}

double sharpe_squared_integral(const ModelParams& params) {
    const Curve ratio = params.mu / params.sigma;
    return integrate(square(ratio), 0.0, params.horizon);
}

double psi_coefficient(double gamma) { return gamma / (2.0 * (1.0 - gamma)); }

ValueReport build_report(Investor investor, const ModelParams& params, double theta2_int) {
    const double gamma = params.gamma;
    const double log_x = std::log(params.x0);
    const double lambda = params.lambda;
    const double p = params.p;
    const double horizon = params.horizon;

    ValueReport rep;
    rep.investor = investor;
    rep.gamma = gamma;
    rep.x0 = params.x0;
    rep.e_int_theta2 = theta2_int;
    rep.u_log = log_x + 0.5 * theta2_int;

    if (gamma == 0.0) {
        rep.psi = 0.0;
        rep.u_pow = rep.u_log;  // gamma -> 0 limit of (w^gamma - 1)/gamma
    } else {
        rep.psi = gamma * log_x + psi_coefficient(gamma) * theta2_int;
        rep.u_pow = std::expm1(rep.psi) / gamma;
    }

    const double mu_term = sharpe_squared_integral(params);
    const double var_slope = upsilon_variance_limit(investor, params);
    const double asym_theta2 = mu_term + var_slope * horizon;
    rep.u_log_asym = log_x + 0.5 * asym_theta2;
    rep.psi_asym = gamma == 0.0 ? 0.0 : gamma * log_x + psi_coefficient(gamma) * asym_theta2;

    rep.excess_log_asym = 0.5 * lambda * p * (1.0 - p) * horizon;
    rep.excess_psi_asym =
        gamma == 0.0 ? 0.0 : psi_coefficient(gamma) * lambda * p * (1.0 - p) * horizon;
    rep.wealth_relative = std::exp(rep.excess_psi_asym);
    return rep;
}

}  // namespace

const char* investor_name(Investor investor) {
    return investor == Investor::informed ? "informed" : "uninformed";
}

double upsilon_variance(double t, Investor investor, const ModelParams& params) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    return investor == Investor::informed
               ? informed_variance(t, params.p, params.lambda)
               : uninformed_variance(t, params.p, params.lambda);
}

double upsilon_variance_limit(Investor investor, const ModelParams& params) {
    const double sign = investor == Investor::informed ? 1.0 : -1.0;
    return 0.5 * params.lambda * (1.0 - params.p) * (1.0 + sign * params.p);
}

double cumulative_upsilon_variance(double horizon, Investor investor,
                                   const ModelParams& params) {
    if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    return investor == Investor::informed
               ? informed_cumulative(horizon, params.p, params.lambda)
               : uninformed_cumulative(horizon, params.p, params.lambda);
}

ValueReport value_function(Investor investor, const ModelParams& params) {
    require_zero_rate(params, "value_function");
    const double theta2_int = sharpe_squared_integral(params) +
                              cumulative_upsilon_variance(params.horizon, investor, params);
    return build_report(investor, params, theta2_int);
}

ValueSummary value_summary(const ModelParams& params) {
    ValueSummary out;
    out.informed = value_function(Investor::informed, params);
    out.uninformed = value_function(Investor::uninformed, params);
    out.excess_e_int_theta2 = out.informed.e_int_theta2 - out.uninformed.e_int_theta2;
    out.excess_u_log = out.informed.u_log - out.uninformed.u_log;
    out.excess_psi = out.informed.psi - out.uninformed.psi;
    out.excess_log_asym = out.informed.excess_log_asym;
    out.excess_psi_asym = out.informed.excess_psi_asym;
    out.wealth_relative = out.informed.wealth_relative;
    return out;
}

ValueSummary asymptotic_report(const ModelParams& params) { return value_summary(params); }

GammaLimitTable gamma_to_zero_limit(const ModelParams& params,
                                    std::span<const double> gammas) {
    ModelParams log_params = params;
    log_params.gamma = 0.0;
    GammaLimitTable table;
    table.u_log_informed = value_function(Investor::informed, log_params).u_log;
    table.u_log_uninformed = value_function(Investor::uninformed, log_params).u_log;

    for (double g : gammas) {
        if (g == 0.0 || std::fabs(g) > 0.5) {
            throw std::invalid_argument("gamma sequence must be nonzero with |gamma| <= 1/2");
        }
        ModelParams pg = params;
        pg.gamma = g;
        const double psi_inf = value_function(Investor::informed, pg).psi;
        const double psi_unf = value_function(Investor::uninformed, pg).psi;
        GammaLimitRow row;
        row.gamma = g;
        row.psi_over_gamma_informed = psi_inf / g;
        row.psi_over_gamma_uninformed = psi_unf / g;
        row.gap_informed = std::fabs(row.psi_over_gamma_informed - table.u_log_informed);
        row.gap_uninformed = std::fabs(row.psi_over_gamma_uninformed - table.u_log_uninformed);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace fads
