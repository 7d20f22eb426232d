#pragma once

#include <span>
#include <vector>

#include "fads/params.hpp"

// Closed-form and asymptotic value functions for both investors, and the
// second-moment identities of the drift adjustments. Everything here is a
// pure function of the parameters; no Monte Carlo is involved. Value
// functions assume a zero risk-free rate, which is the regime where the
// optimal-rule formulas hold; a nonzero rate curve is rejected.

namespace fads {

enum class Investor { informed, uninformed };

const char* investor_name(Investor investor);

// E[upsilon_t^2]. Informed: (lambda/2)(1-p^2)(1-e^{-2 lambda t}) in closed
// form. Uninformed: lambda^2 int_0^t e^{-2 lambda (t-s)} (1+gamma(s))^2 ds by
// adaptive quadrature at 1e-9 absolute tolerance.
double upsilon_variance(double t, Investor investor, const ModelParams& params);

// Long-run level of E[upsilon_t^2]: (lambda/2)(1-p)(1+p) for the informed,
// (lambda/2)(1-p)^2 for the uninformed.
double upsilon_variance_limit(Investor investor, const ModelParams& params);

// int_0^T E[upsilon_t^2] dt. Informed in closed form; uninformed collapses
// the double integral to a single quadrature over the kernel.
double cumulative_upsilon_variance(double horizon, Investor investor,
                                   const ModelParams& params);

// Closed-form and asymptotic value-function outputs for one investor.
struct ValueReport {
    Investor investor = Investor::informed;
    double gamma = 0.0;
    double x0 = 1.0;
    double e_int_theta2 = 0.0;    // E int_0^T theta_t^2 dt
    double u_log = 0.0;           // log-utility value
    double u_pow = 0.0;           // general power-utility value; equals u_log at gamma = 0
    double psi = 0.0;             // log-linear value, gamma log x + gamma/(2(1-gamma)) * e_int_theta2
    double u_log_asym = 0.0;      // large-horizon log value
    double psi_asym = 0.0;        // large-horizon log-linear value
    double excess_log_asym = 0.0;       // (lambda/2) p (1-p) T
    double excess_psi_asym = 0.0;       // gamma/(2(1-gamma)) lambda p (1-p) T
    double wealth_relative = 1.0;       // exp(excess_psi_asym)
};

// Requires r identically zero; the perceived-drift decomposition makes
// e_int_theta2 = int (mu/sigma)^2 dt + cumulative_upsilon_variance(T), the
// cross term vanishing because E[upsilon] = 0.
ValueReport value_function(Investor investor, const ModelParams& params);

// Both investors plus finite-horizon excess quantities. The shared
// int (mu/sigma)^2 term cancels exactly in every excess field.
struct ValueSummary {
    ValueReport informed;
    ValueReport uninformed;
    double excess_e_int_theta2 = 0.0;  // finite-T, quadrature based
    double excess_u_log = 0.0;         // u_log(informed) - u_log(uninformed)
    double excess_psi = 0.0;           // psi(informed) - psi(uninformed)
    double excess_log_asym = 0.0;
    double excess_psi_asym = 0.0;
    double wealth_relative = 1.0;
};

ValueSummary value_summary(const ModelParams& params);

// Per-investor asymptotics and excess only; still requires r = 0.
ValueSummary asymptotic_report(const ModelParams& params);

struct GammaLimitRow {
    double gamma;
    double psi_over_gamma_informed;
    double psi_over_gamma_uninformed;
    double gap_informed;    // |psi/gamma - u_log|, informed
    double gap_uninformed;
};

struct GammaLimitTable {
    double u_log_informed;
    double u_log_uninformed;
    std::vector<GammaLimitRow> rows;
};

// psi(x; gamma)/gamma against the log-utility value along a sequence of
// nonzero gammas with |gamma| <= 1/2.
GammaLimitTable gamma_to_zero_limit(const ModelParams& params,
                                    std::span<const double> gammas);

}  // namespace fads
