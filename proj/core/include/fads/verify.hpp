#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Verification gate suite. Twelve numbered checks pin every closed form and
// simulation moment of the model to its independent reference: closed forms
// against quadrature, Monte Carlo against closed forms at 3-standard-error
// gates, and the whole pipeline against bitwise reproducibility. The same
// engine backs the `fads verify` command and the acceptance test binary.

namespace fads {

struct VerifyOptions {
    std::uint64_t seed = 20250801;
    int threads = 0;
    // Multiplies the nominal Monte Carlo path counts. Below 1, a failing MC
    // gate is reported as inconclusive instead of fail: at reduced scale the
    // statistics are too wide to convict.
    double scale = 1.0;
    // Test hook: additive fault injected into the kernel inside check 1.
    double gamma_fault = 0.0;
};

struct CheckResult {
    int id = 0;
    std::string name;
    std::string status;  // "pass" | "fail" | "inconclusive"
    double observed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    double z = 0.0;  // z-score or normalized residual where that is the gate
    std::string detail;
};

CheckResult check_gamma_ode_residual(double gamma_fault = 0.0);
CheckResult check_ou_variance(const VerifyOptions& opts);
CheckResult check_informed_moment(const VerifyOptions& opts);
CheckResult check_uninformed_moment(const VerifyOptions& opts);
CheckResult check_variance_bound_lattice();
CheckResult check_excess_cumvar_asymptote();
CheckResult check_log_value_crosscheck(const VerifyOptions& opts);
CheckResult check_perturbation_optimality(const VerifyOptions& opts);
CheckResult check_value_report_headline();
CheckResult check_power_log_limit();
CheckResult check_sweep_shape();
CheckResult check_determinism(const VerifyOptions& opts);

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& checks);

// Canonical JSON report; byte-identical across runs with the same options.
std::string render_verify_report(const VerifyOptions& opts,
                                 const std::vector<CheckResult>& checks);

// "[PASS] #1 ..." one-line form used by the CLI and the acceptance binary.
std::string format_check_line(const CheckResult& check);

}  // namespace fads
