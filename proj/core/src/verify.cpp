#include "fads/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fads/dynamics.hpp"
#include "fads/filter.hpp"
#include "fads/montecarlo.hpp"
#include "fads/textio.hpp"
#include "fads/valuation.hpp"

namespace fads {

namespace {

constexpr std::int64_t kNominalPaths = 100000;

std::int64_t scaled_paths(const VerifyOptions& opts, std::int64_t nominal = kNominalPaths) {
    const auto n = static_cast<std::int64_t>(std::llround(opts.scale * static_cast<double>(nominal)));
    return std::max<std::int64_t>(n, 100);
}

// At reduced scale a failed MC gate is only evidence of wide noise.
std::string mc_status(bool ok, const VerifyOptions& opts) {
    if (ok) return "pass";
    return opts.scale < 1.0 ? "inconclusive" : "fail";
}

ModelParams desk_market() {
    ModelParams prm;
    prm.r = Curve::constant(0.0);
    prm.mu = Curve::constant(0.08);
    prm.sigma = Curve::constant(0.2);
    prm.lambda = 1.0;
    prm.p = 0.6;
    prm.gamma = 0.0;
    prm.horizon = 1.0;
    prm.s0 = 1.0;
    prm.x0 = 1.0;
    return prm;
}

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ", ";
        out += std::string(k) + "=" + format_double(v);
    }
    return out;
}

}  // namespace

// #1: the closed-form kernel solves its Riccati equation. Central differences
// with h = 1e-5 over s in [0, 20] at lambda = 1, p in {0.25, 0.5, 0.75}.
CheckResult check_gamma_ode_residual(double gamma_fault) {
    const double lambda = 1.0;
    const double h = 1e-5;
    double worst = 0.0;
    for (double p : {0.25, 0.5, 0.75}) {
        const auto g = [&](double s) { return gamma_kernel(s, p, lambda) + gamma_fault; };
        for (int i = 0; i <= 2000; ++i) {
            const double s = 20.0 * i / 2000.0;
            const double deriv = (g(s + h) - g(s - h)) / (2.0 * h);
            const double rhs = lambda * (g(s) * g(s) - p * p);
            worst = std::max(worst, std::fabs(deriv - rhs));
        }
    }
    CheckResult res;
    res.id = 1;
    res.name = "gamma kernel ODE residual";
    res.observed = worst;
    res.reference = 0.0;
    res.tolerance = 1e-6;
    res.z = worst / res.tolerance;
    res.status = worst < 1e-6 ? "pass" : "fail";
    res.detail = "max |gamma' - lambda(gamma^2 - p^2)| = " + format_double(worst) +
                 " over s in [0,20], p in {0.25,0.5,0.75}";
    return res;
}

// #2: exact transition sampling reproduces Var[U_1] = (1-e^{-2 lambda})/(2 lambda).
CheckResult check_ou_variance(const VerifyOptions& opts) {
    const double lambda = 0.5;
    const std::int64_t n_paths = scaled_paths(opts);
    const TimeGrid grid(1.0, 100);
    const OuStepper stepper(lambda, grid.dt());

    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) {
        NormalSampler normals(opts.seed + 2, static_cast<std::uint64_t>(i));
        double u = 0.0;
        for (int k = 0; k < grid.steps(); ++k) u = stepper.advance(u, normals());
        const double m = u * u;
        sum += m;
        sum_sq += m * m;
    }
    const double n = static_cast<double>(n_paths);
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1.0);
    const double se = std::sqrt(var / n);
    const double target = (1.0 - std::exp(-2.0 * lambda)) / (2.0 * lambda);

    CheckResult res;
    res.id = 2;
    res.name = "mean-reversion variance vs Monte Carlo";
    res.observed = mean;
    res.reference = target;
    res.tolerance = 3.0 * se;
    res.z = se > 0.0 ? (mean - target) / se : 0.0;
    res.status = mc_status(std::fabs(mean - target) < 3.0 * se, opts);
    res.detail = describe({{"var_hat", mean}, {"target", target}, {"se", se}, {"z", res.z}});
    return res;
}

// #3: informed drift-adjustment second moment at t = 1, lambda = 1, p = 0.6.
CheckResult check_informed_moment(const VerifyOptions& opts) {
    ExperimentSpec spec;
    spec.params = desk_market();
    spec.n_paths = scaled_paths(opts);
    spec.n_steps = 100;
    spec.seed = opts.seed + 3;
    spec.threads = opts.threads;
    spec.investor = Investor::informed;
    spec.estimand = Estimand::upsilon_moment(1.0);
    const EstimateResult est = run_experiment(spec);

    CheckResult res;
    res.id = 3;
    res.name = "informed drift-adjustment moment";
    res.observed = est.value;
    res.reference = *est.closed_form;
    res.tolerance = 3.0 * est.std_error;
    res.z = est.z_score.value_or(0.0);
    res.status = mc_status(std::fabs(est.value - res.reference) < res.tolerance, opts);
    res.detail = describe({{"estimate", est.value},
                           {"closed_form", res.reference},
                           {"se", est.std_error},
                           {"z", res.z}});
    return res;
}

// #4: uninformed filter second moment at t = 1 against the kernel quadrature,
// with a 2*dt discretization allowance on top of the 3-sigma gate.
CheckResult check_uninformed_moment(const VerifyOptions& opts) {
    ExperimentSpec spec;
    spec.params = desk_market();
    spec.n_paths = scaled_paths(opts);
    spec.n_steps = 10000;
    spec.seed = opts.seed + 4;
    spec.threads = opts.threads;
    spec.investor = Investor::uninformed;
    spec.estimand = Estimand::upsilon_moment(1.0);
    const EstimateResult est = run_experiment(spec);

    const double dt = spec.params.horizon / spec.n_steps;
    const double gate = 3.0 * est.std_error + 2.0 * dt;
    CheckResult res;
    res.id = 4;
    res.name = "uninformed filter moment";
    res.observed = est.value;
    res.reference = *est.closed_form;
    res.tolerance = gate;
    res.z = est.z_score.value_or(0.0);
    res.status = mc_status(std::fabs(est.value - res.reference) < gate, opts);
    res.detail = describe({{"estimate", est.value},
                           {"quadrature", res.reference},
                           {"se", est.std_error},
                           {"dt_allowance", 2.0 * dt}});
    return res;
}

// #5: both investors' variances stay under lambda q^2 / 2 across a lattice.
CheckResult check_variance_bound_lattice() {
    double worst_margin = -1e300;
    ModelParams prm = desk_market();
    for (double lambda : {0.1, 1.0, 10.0}) {
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            prm.lambda = lambda;
            prm.p = p;
            const double bound = 0.5 * lambda * (1.0 - p * p);
            for (double t : {0.1, 1.0, 10.0}) {
                for (Investor inv : {Investor::informed, Investor::uninformed}) {
                    const double v = upsilon_variance(t, inv, prm);
                    worst_margin = std::max(worst_margin, v - bound);
                }
            }
        }
    }
    CheckResult res;
    res.id = 5;
    res.name = "variance bound lattice";
    res.observed = worst_margin;
    res.reference = 0.0;
    res.tolerance = 1e-12;
    res.z = worst_margin / res.tolerance;
    res.status = worst_margin <= 1e-12 ? "pass" : "fail";
    res.detail = "max (variance - lambda q^2/2) = " + format_double(worst_margin) +
                 " over lambda x p x t lattice, both investors";
    return res;
}

// #6: excess cumulative variance against its long-horizon slope at T = 40.
// The exact excess is lambda p (1-p) T + log((1+p)/2) + o(1); the constant
// log(0.75) = -0.2877 keeps the relative gap at 2.88% here, so the stated 2%
// gate cannot pass with a correct quadrature. Reported as measured.
CheckResult check_excess_cumvar_asymptote() {
    ModelParams prm = desk_market();
    prm.p = 0.5;
    const double horizon = 40.0;
    const double excess = cumulative_upsilon_variance(horizon, Investor::informed, prm) -
                          cumulative_upsilon_variance(horizon, Investor::uninformed, prm);
    const double slope = prm.lambda * prm.p * (1.0 - prm.p) * horizon;
    const double rel = std::fabs(excess - slope) / slope;

    CheckResult res;
    res.id = 6;
    res.name = "excess cumulative variance asymptote";
    res.observed = excess;
    res.reference = slope;
    res.tolerance = 0.02;
    res.z = rel / 0.02;
    res.status = rel < 0.02 ? "pass" : "fail";
    res.detail = describe({{"excess", excess}, {"asymptote", slope}, {"rel_err", rel}}) +
                 "; exact offset log((1+p)/2) = " + format_double(std::log(0.75));
    return res;
}

// #7: Monte Carlo expected log utility under the optimal rule against the
// quadrature value, informed investor, desk market.
CheckResult check_log_value_crosscheck(const VerifyOptions& opts) {
    ExperimentSpec spec;
    spec.params = desk_market();
    spec.n_paths = scaled_paths(opts);
    spec.n_steps = 1000;
    spec.seed = opts.seed + 7;
    spec.threads = opts.threads;
    spec.investor = Investor::informed;
    spec.rule = PortfolioRule::optimal();
    spec.estimand = Estimand::log_utility();
    const EstimateResult est = run_experiment(spec);

    const double dt = spec.params.horizon / spec.n_steps;
    const double gate = 3.0 * est.std_error + 2.0 * dt;
    CheckResult res;
    res.id = 7;
    res.name = "log-utility value cross-check";
    res.observed = est.value;
    res.reference = *est.closed_form;
    res.tolerance = gate;
    res.z = est.z_score.value_or(0.0);
    res.status = mc_status(std::fabs(est.value - res.reference) < gate, opts);
    res.detail = describe({{"estimate", est.value},
                           {"closed_form", res.reference},
                           {"se", est.std_error},
                           {"dt_allowance", 2.0 * dt}});
    return res;
}

// #8: the unit factor beats 0.8x and 1.2x of the optimal rule by more than
// three paired standard errors, both investors, gamma in {0, 0.5, -1}.
CheckResult check_perturbation_optimality(const VerifyOptions& opts) {
    const double factors[3] = {0.8, 1.0, 1.2};
    double min_separation = 1e300;
    std::string worst;
    bool ok = true;

    int combo = 0;
    for (Investor inv : {Investor::informed, Investor::uninformed}) {
        for (double gamma : {0.0, 0.5, -1.0}) {
            ExperimentSpec spec;
            spec.params = desk_market();
            spec.params.gamma = gamma;
            spec.n_paths = scaled_paths(opts);
            spec.n_steps = 1000;
            spec.seed = opts.seed + 80 + combo;
            spec.threads = opts.threads;
            spec.investor = inv;
            spec.rule = PortfolioRule::optimal();
            spec.estimand = gamma == 0.0 ? Estimand::log_utility() : Estimand::power_utility();
            const auto rows = perturbation_test(spec, factors);
            for (const auto& row : rows) {
                if (row.factor == 1.0) continue;
                const double sep =
                    row.diff_std_error > 0.0 ? row.diff_vs_unit / row.diff_std_error : 0.0;
                if (sep < min_separation) {
                    min_separation = sep;
                    worst = std::string(investor_name(inv)) + ", gamma=" + format_double(gamma) +
                            ", factor=" + format_double(row.factor);
                }
                ok = ok && sep > 3.0;
            }
            ++combo;
        }
    }

    CheckResult res;
    res.id = 8;
    res.name = "optimality under perturbation";
    res.observed = min_separation;
    res.reference = 3.0;
    res.tolerance = 0.0;
    res.z = min_separation;
    res.status = mc_status(ok, opts);
    res.detail = "min paired separation " + format_double(min_separation) +
                 " standard errors (weakest: " + worst + ")";
    return res;
}

// #9: headline excess utility at lambda = 1, p = 0.5, T = 20: the asymptotic
// formula gives exactly 2.5; the finite-horizon quadrature excess sits 5.75%
// below it (offset log(0.75)/2 per unit), which the 2% gate registers.
CheckResult check_value_report_headline() {
    ModelParams prm = desk_market();
    prm.p = 0.5;
    prm.horizon = 20.0;
    prm.gamma = 0.0;
    const ValueSummary summary = value_summary(prm);

    const bool formula_exact = summary.excess_log_asym == 2.5;
    const double rel = std::fabs(summary.excess_u_log - summary.excess_log_asym) /
                       summary.excess_log_asym;
    const bool finite_close = rel < 0.02;

    CheckResult res;
    res.id = 9;
    res.name = "headline excess asymptotic utility";
    res.observed = summary.excess_u_log;
    res.reference = summary.excess_log_asym;
    res.tolerance = 0.02;
    res.z = rel / 0.02;
    res.status = (formula_exact && finite_close) ? "pass" : "fail";
    res.detail = describe({{"excess_log_asym", summary.excess_log_asym},
                           {"excess_u_log_finite_T", summary.excess_u_log},
                           {"rel_gap", rel}}) +
                 (formula_exact ? "; formula exact" : "; formula mismatch");
    return res;
}

// #10: psi(x; gamma)/gamma converges to the log value as gamma -> 0.
CheckResult check_power_log_limit() {
    struct Case {
        double lambda, p, mu, sigma, horizon, x0;
    };
    const Case cases[3] = {
        {1.0, 0.6, 0.08, 0.2, 1.0, 1.0},
        {0.5, 0.25, 0.05, 0.25, 5.0, 2.0},
        {2.0, 0.9, 0.0, 0.3, 10.0, 0.7},
    };
    const double gamma = 1e-6;
    double worst_ratio = 0.0;
    bool ok = true;
    for (const auto& c : cases) {
        ModelParams prm;
        prm.mu = Curve::constant(c.mu);
        prm.sigma = Curve::constant(c.sigma);
        prm.lambda = c.lambda;
        prm.p = c.p;
        prm.horizon = c.horizon;
        prm.x0 = c.x0;
        const double gammas[1] = {gamma};
        const GammaLimitTable table = gamma_to_zero_limit(prm, gammas);
        for (Investor inv : {Investor::informed, Investor::uninformed}) {
            const bool informed = inv == Investor::informed;
            const double u_log = informed ? table.u_log_informed : table.u_log_uninformed;
            const double gap = informed ? table.rows[0].gap_informed : table.rows[0].gap_uninformed;
            const double gate = 1e-5 * (1.0 + std::fabs(u_log));
            worst_ratio = std::max(worst_ratio, gap / gate);
            ok = ok && gap < gate;
        }
    }
    CheckResult res;
    res.id = 10;
    res.name = "power-to-log utility limit";
    res.observed = worst_ratio;
    res.reference = 1.0;
    res.tolerance = 1.0;
    res.z = worst_ratio;
    res.status = ok ? "pass" : "fail";
    res.detail = "max |psi/gamma - u_log| at gamma=1e-6 reached " + format_double(worst_ratio) +
                 " of its gate over 3 parameter sets x 2 investors";
    return res;
}

// #11: the excess-utility curve over p is the exact parabola lambda T/2 p(1-p),
// symmetric about and maximized at p = 0.5.
CheckResult check_sweep_shape() {
    ModelParams prm = desk_market();
    prm.horizon = 20.0;
    const double ps[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double values[5];
    bool exact = true;
    for (int i = 0; i < 5; ++i) {
        prm.p = ps[i];
        const ValueSummary summary = value_summary(prm);
        values[i] = summary.excess_log_asym;
        const double expected = 0.5 * prm.lambda * prm.horizon * ps[i] * (1.0 - ps[i]);
        exact = exact && values[i] == expected;
    }
    const bool symmetric = values[0] == values[4] && values[1] == values[3];
    const bool peaked = values[2] > values[1] && values[2] > values[3] &&
                        values[0] == 0.0 && values[4] == 0.0;

    CheckResult res;
    res.id = 11;
    res.name = "sweep shape over p";
    res.observed = values[2];
    res.reference = 2.5;
    res.tolerance = 0.0;
    res.z = 0.0;
    res.status = (exact && symmetric && peaked) ? "pass" : "fail";
    res.detail = "excess_log_asym over p = {0,0.25,0.5,0.75,1}: {" + format_double(values[0]) +
                 ", " + format_double(values[1]) + ", " + format_double(values[2]) + ", " +
                 format_double(values[3]) + ", " + format_double(values[4]) + "}";
    return res;
}

namespace {

std::vector<CheckResult> run_fast_subset(const VerifyOptions& opts) {
    std::vector<CheckResult> checks;
    checks.push_back(check_gamma_ode_residual(opts.gamma_fault));
    checks.push_back(check_ou_variance(opts));
    checks.push_back(check_informed_moment(opts));
    checks.push_back(check_variance_bound_lattice());
    checks.push_back(check_excess_cumvar_asymptote());
    checks.push_back(check_value_report_headline());
    checks.push_back(check_power_log_limit());
    checks.push_back(check_sweep_shape());
    return checks;
}

}  // namespace

// #12: bitwise reproducibility. A serial and a 4-worker run of check 3 must
// agree exactly, and two fresh executions of the fast checks must render the
// same report bytes. The slow Monte Carlo checks share the same substream
// engine, so re-running only the fast subset keeps this check inside its
// runtime budget without losing coverage of the report path.
CheckResult check_determinism(const VerifyOptions& opts) {
    ExperimentSpec spec;
    spec.params = desk_market();
    spec.n_paths = scaled_paths(opts);
    spec.n_steps = 100;
    spec.seed = opts.seed + 3;
    spec.investor = Investor::informed;
    spec.estimand = Estimand::upsilon_moment(1.0);

    spec.threads = 1;
    const EstimateResult serial = run_experiment(spec);
    spec.threads = 4;
    const EstimateResult parallel = run_experiment(spec);
    const bool workers_agree =
        serial.value == parallel.value && serial.std_error == parallel.std_error;

    const std::vector<CheckResult> first = run_fast_subset(opts);
    const std::vector<CheckResult> second = run_fast_subset(opts);
    const bool bytes_agree =
        render_verify_report(opts, first) == render_verify_report(opts, second);

    CheckResult res;
    res.id = 12;
    res.name = "determinism";
    res.observed = (workers_agree && bytes_agree) ? 1.0 : 0.0;
    res.reference = 1.0;
    res.tolerance = 0.0;
    res.z = 0.0;
    res.status = (workers_agree && bytes_agree) ? "pass" : "fail";
    res.detail = std::string("serial vs 4-worker estimate ") +
                 (workers_agree ? "identical" : "DIFFER") + "; repeated report bytes " +
                 (bytes_agree ? "identical" : "DIFFER");
    return res;
}

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opts) {
    std::vector<CheckResult> checks;
    checks.reserve(12);
    checks.push_back(check_gamma_ode_residual(opts.gamma_fault));
    checks.push_back(check_ou_variance(opts));
    checks.push_back(check_informed_moment(opts));
    checks.push_back(check_uninformed_moment(opts));
    checks.push_back(check_variance_bound_lattice());
    checks.push_back(check_excess_cumvar_asymptote());
    checks.push_back(check_log_value_crosscheck(opts));
    checks.push_back(check_perturbation_optimality(opts));
    checks.push_back(check_value_report_headline());
    checks.push_back(check_power_log_limit());
    checks.push_back(check_sweep_shape());
    checks.push_back(check_determinism(opts));
    return checks;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == "pass"; });
}

std::string render_verify_report(const VerifyOptions& opts,
                                 const std::vector<CheckResult>& checks) {
    int pass = 0, fail = 0, inconclusive = 0;
    for (const auto& c : checks) {
        if (c.status == "pass") ++pass;
        else if (c.status == "fail") ++fail;
        else ++inconclusive;
    }

    JsonWriter w;
    w.begin_object();
    w.field("seed", static_cast<std::uint64_t>(opts.seed));
    w.field("scale", opts.scale);
    w.begin_array("checks");
    for (const auto& c : checks) {
        w.begin_object();
        w.field("id", static_cast<std::int64_t>(c.id));
        w.field("name", c.name);
        w.field("status", c.status);
        w.field("observed", c.observed);
        w.field("reference", c.reference);
        w.field("tolerance", c.tolerance);
        w.field("z", c.z);
        w.field("detail", c.detail);
        w.end_object();
    }
    w.end_array();
    w.begin_object("summary");
    w.field("pass", static_cast<std::int64_t>(pass));
    w.field("fail", static_cast<std::int64_t>(fail));
    w.field("inconclusive", static_cast<std::int64_t>(inconclusive));
    w.end_object();
    w.end_object();
    std::string out = w.str();
    out += "\n";
    return out;
}

std::string format_check_line(const CheckResult& check) {
    std::string tag = check.status == "pass" ? "PASS"
                      : check.status == "fail" ? "FAIL"
                                               : "INCONCLUSIVE";
    return "[" + tag + "] #" + std::to_string(check.id) + " " + check.name + ": " + check.detail;
}

}  // namespace fads
