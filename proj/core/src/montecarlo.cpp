#include "fads/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "fads/dynamics.hpp"
#include "fads/filter.hpp"
#include "fads/rng.hpp"

namespace fads {

namespace {

constexpr double kLogWealthCap = 700.0;

struct StepCoeffs {
    double mu, sigma, rate;
    double kernel_weight;  // 1 + gamma(t_k), uninformed filter only
};

struct Engine {
    ModelParams params;
    TimeGrid grid;
    Investor investor;
    PortfolioRule rule;
    std::vector<StepCoeffs> coeffs;
    OuStepper ou;
    FilterStepper filt;
    double p, q, sqrt_dt;

    Engine(const ModelParams& prm, int n_steps, Investor inv, PortfolioRule rl)
        : params(validate_params(prm)),
          grid(prm.horizon, n_steps),
          investor(inv),
          rule(rl),
          ou(prm.lambda, grid.dt()),
          filt(prm.p, prm.lambda, grid.dt()),
          p(prm.p),
          q(prm.q()),
          sqrt_dt(std::sqrt(grid.dt())) {
        coeffs.resize(static_cast<std::size_t>(n_steps));
        for (int k = 0; k < n_steps; ++k) {
            const double t = grid.t(k);
            coeffs[static_cast<std::size_t>(k)] = {params.mu(t), params.sigma(t), params.r(t),
                                                   filt.weight_at(t)};
        }
    }

    double base_weight(double mu_i, double sigma) const {
        switch (rule.kind) {
            case RuleKind::optimal:
                return mu_i / ((1.0 - params.gamma) * sigma * sigma);
            case RuleKind::scaled:
                return rule.value * mu_i / ((1.0 - params.gamma) * sigma * sigma);
            case RuleKind::constant_weight:
                return rule.value;
        }
        return 0.0;
    }

    // Squared drift adjustment at the estimand time; consumes one normal per
    // step for the informed investor, two for the uninformed.
    double upsilon_moment_outcome(NormalSampler& normals, int stop_step) const {
        if (investor == Investor::informed) {
            double u = 0.0;
            for (int k = 0; k < stop_step; ++k) u = ou.advance(u, normals());
            const double ups = -params.lambda * q * u;
            return ups * ups;
        }
        double u = 0.0;
        FilterState state;
        for (int k = 0; k < stop_step; ++k) {
            const double dw = sqrt_dt * normals();
            const double u_new = ou.advance(u, normals());
            const double dy = p * dw + q * (u_new - u);
            state = filt.advance_with_weight(state, dy, coeffs[static_cast<std::size_t>(k)].kernel_weight);
            u = u_new;
        }
        return state.upsilon0 * state.upsilon0;
    }

    // Evolves discounted log wealth under factor-scaled portfolios with one
    // shared noise stream, one slot per factor in log_vt.
    void wealth_outcomes(NormalSampler& normals, std::span<const double> factors,
                         std::span<double> log_vt) const {
        const double dt = grid.dt();
        double u = 0.0;
        FilterState state;
        std::fill(log_vt.begin(), log_vt.end(), 0.0);
        for (int k = 0; k < grid.steps(); ++k) {
            const StepCoeffs& c = coeffs[static_cast<std::size_t>(k)];
            const double dw = sqrt_dt * normals();
            const double u_new = ou.advance(u, normals());
            const double du = u_new - u;
            const double dy = p * dw + q * du;

            double ups;
            if (investor == Investor::informed) {
                ups = -params.lambda * q * u;
            } else {
                ups = state.upsilon0;
                state = filt.advance_with_weight(state, dy, c.kernel_weight);
            }
            // Exact for both investors: the investor's own Brownian increment.
            const double db = dy - ups * dt;
            const double mu_i = c.mu + ups * c.sigma;
            const double theta = (mu_i - c.rate) / c.sigma;
            const double base = base_weight(mu_i, c.sigma);
            for (std::size_t j = 0; j < factors.size(); ++j) {
                const double exposure = factors[j] * base * c.sigma;
                log_vt[j] += (exposure * theta - 0.5 * exposure * exposure) * dt + exposure * db;
                if (!(std::fabs(log_vt[j]) <= kLogWealthCap)) {
                    throw std::overflow_error("log wealth magnitude exceeded 700");
                }
            }
            u = u_new;
        }
    }
};

int resolve_threads(int requested, std::int64_t n_paths) {
    int t = requested;
    if (t <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        t = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
    }
    return static_cast<int>(std::min<std::int64_t>(t, std::max<std::int64_t>(n_paths, 1)));
}

// Runs fn(path_index, normals) for every path, filling outcome slots in path
// order. The block partition only affects scheduling, never the results.
template <class PathFn>
void for_each_path(std::uint64_t seed, std::int64_t n_paths, int threads, PathFn fn) {
    struct Overflow {
        bool hit = false;
        std::int64_t path = 0;
    };
    const int n_threads = resolve_threads(threads, n_paths);
    std::vector<Overflow> overflow(static_cast<std::size_t>(n_threads));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));

    const auto run_block = [&](int worker, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            NormalSampler normals(seed, static_cast<std::uint64_t>(i));
            try {
                fn(i, normals);
            } catch (const std::overflow_error&) {
                overflow[static_cast<std::size_t>(worker)] = {true, i};
                return;  // first overflow in an ascending block is the block minimum
            }
        }
    };

    if (n_threads == 1) {
        run_block(0, 0, n_paths);
    } else {
        const std::int64_t chunk = (n_paths + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const std::int64_t lo = std::min<std::int64_t>(w * chunk, n_paths);
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n_paths);
            workers.emplace_back(run_block, w, lo, hi);
        }
        for (auto& th : workers) th.join();
    }

    std::int64_t first_overflow = -1;
    for (const auto& o : overflow) {
        if (o.hit && (first_overflow < 0 || o.path < first_overflow)) first_overflow = o.path;
    }
    if (first_overflow >= 0) {
        throw std::runtime_error("wealth overflow: |log wealth| exceeded 700 (seed=" +
                                 std::to_string(seed) + ", path=" +
                                 std::to_string(first_overflow) + ")");
    }
}

EstimateResult summarize(const std::vector<double>& outcomes, const ExperimentSpec& spec,
                         std::optional<double> closed_form) {
    const auto n = static_cast<double>(outcomes.size());
    double sum = 0.0;
    for (double x : outcomes) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : outcomes) ss += (x - mean) * (x - mean);
    const double variance = ss / (n - 1.0);

    EstimateResult res;
    res.value = mean;
    res.std_error = std::sqrt(variance / n);
    res.n_paths = spec.n_paths;
    res.n_steps = spec.n_steps;
    res.seed = spec.seed;
    res.closed_form = closed_form;
    if (closed_form && res.std_error > 0.0) {
        res.z_score = (mean - *closed_form) / res.std_error;
    }
    return res;
}

bool rate_is_zero(const ModelParams& params) {
    return params.r.min_on(params.horizon) == 0.0 && params.r.max_on(params.horizon) == 0.0;
}

std::optional<double> closed_form_for(const ExperimentSpec& spec) {
    switch (spec.estimand.kind) {
        case EstimandKind::upsilon_second_moment:
            return upsilon_variance(spec.estimand.time, spec.investor, spec.params);
        case EstimandKind::expected_log_utility:
            if (spec.rule.kind == RuleKind::optimal && spec.params.gamma == 0.0 &&
                rate_is_zero(spec.params)) {
                return value_function(spec.investor, spec.params).u_log;
            }
            return std::nullopt;
        case EstimandKind::expected_power_utility:
            if (spec.rule.kind == RuleKind::optimal && spec.params.gamma != 0.0 &&
                rate_is_zero(spec.params)) {
                return value_function(spec.investor, spec.params).u_pow;
            }
            return std::nullopt;
        case EstimandKind::terminal_wealth_mean:
            return std::nullopt;
    }
    return std::nullopt;
}

int estimand_step(const ExperimentSpec& spec, const TimeGrid& grid) {
    const double target = spec.estimand.time;
    const int k = static_cast<int>(std::llround(target / grid.dt()));
    if (k < 0 || k > grid.steps() ||
        std::fabs(grid.t(k) - target) > 1e-9 * std::max(1.0, grid.horizon())) {
        throw std::invalid_argument("estimand time does not land on the grid");
    }
    return k;
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.n_paths < 2) throw std::invalid_argument("n_paths must be at least 2");
    if (spec.n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
    if (spec.rule.kind == RuleKind::scaled && !(spec.rule.value > 0.0)) {
        throw std::invalid_argument("scaled rule factor must be strictly positive");
    }
}

double utility_from_log_vt(double log_vt, double log_x0, double gamma, EstimandKind kind) {
    const double u_log = log_x0 + log_vt;
    switch (kind) {
        case EstimandKind::expected_log_utility:
            return u_log;
        case EstimandKind::expected_power_utility:
            return gamma == 0.0 ? u_log : std::expm1(gamma * u_log) / gamma;
        case EstimandKind::terminal_wealth_mean:
            return std::exp(u_log);
        default:
            throw std::logic_error("not a wealth estimand");
    }
}

}  // namespace

EstimateResult run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    const Engine engine(spec.params, spec.n_steps, spec.investor, spec.rule);
    std::vector<double> outcomes(static_cast<std::size_t>(spec.n_paths));

    if (spec.estimand.kind == EstimandKind::upsilon_second_moment) {
        const int stop = estimand_step(spec, engine.grid);
        for_each_path(spec.seed, spec.n_paths, spec.threads,
                      [&](std::int64_t i, NormalSampler& normals) {
                          outcomes[static_cast<std::size_t>(i)] =
                              engine.upsilon_moment_outcome(normals, stop);
                      });
    } else {
        const double log_x0 = std::log(spec.params.x0);
        const double factors[1] = {1.0};
        for_each_path(spec.seed, spec.n_paths, spec.threads,
                      [&](std::int64_t i, NormalSampler& normals) {
                          double log_vt[1];
                          engine.wealth_outcomes(normals, factors, log_vt);
                          outcomes[static_cast<std::size_t>(i)] = utility_from_log_vt(
                              log_vt[0], log_x0, spec.params.gamma, spec.estimand.kind);
                      });
    }
    return summarize(outcomes, spec, closed_form_for(spec));
}

std::vector<PerturbationRow> perturbation_test(const ExperimentSpec& spec,
                                               std::span<const double> factors) {
    validate_spec(spec);
    if (spec.estimand.kind != EstimandKind::expected_log_utility &&
        spec.estimand.kind != EstimandKind::expected_power_utility) {
        throw std::invalid_argument("perturbation test needs a utility estimand");
    }
    const auto unit = std::find(factors.begin(), factors.end(), 1.0);
    if (unit == factors.end()) {
        throw std::invalid_argument("perturbation factors must include 1.0");
    }
    const std::size_t unit_idx = static_cast<std::size_t>(unit - factors.begin());

    const Engine engine(spec.params, spec.n_steps, spec.investor, spec.rule);
    const double log_x0 = std::log(spec.params.x0);
    const std::size_t n_factors = factors.size();
    std::vector<std::vector<double>> outcomes(
        n_factors, std::vector<double>(static_cast<std::size_t>(spec.n_paths)));

    for_each_path(spec.seed, spec.n_paths, spec.threads,
                  [&](std::int64_t i, NormalSampler& normals) {
                      std::vector<double> log_vt(n_factors);
                      engine.wealth_outcomes(normals, factors, log_vt);
                      for (std::size_t j = 0; j < n_factors; ++j) {
                          outcomes[j][static_cast<std::size_t>(i)] = utility_from_log_vt(
                              log_vt[j], log_x0, spec.params.gamma, spec.estimand.kind);
                      }
                  });

    std::vector<PerturbationRow> rows(n_factors);
    for (std::size_t j = 0; j < n_factors; ++j) {
        rows[j].factor = factors[j];
        rows[j].estimate = summarize(outcomes[j], spec, std::nullopt);
        // Paired differences against the unit factor, common random numbers.
        const auto n = static_cast<double>(spec.n_paths);
        double sum = 0.0;
        for (std::int64_t i = 0; i < spec.n_paths; ++i) {
            sum += outcomes[unit_idx][static_cast<std::size_t>(i)] -
                   outcomes[j][static_cast<std::size_t>(i)];
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (std::int64_t i = 0; i < spec.n_paths; ++i) {
            const double d = outcomes[unit_idx][static_cast<std::size_t>(i)] -
                             outcomes[j][static_cast<std::size_t>(i)] - mean;
            ss += d * d;
        }
        rows[j].diff_vs_unit = mean;
        rows[j].diff_std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentSpec& spec,
                                              std::span<const int> step_counts,
                                              std::span<const std::int64_t> path_counts) {
    if (step_counts.empty() || path_counts.empty()) {
        throw std::invalid_argument("convergence study needs nonempty step and path lists");
    }
    if (!std::is_sorted(step_counts.begin(), step_counts.end()) ||
        !std::is_sorted(path_counts.begin(), path_counts.end())) {
        throw std::invalid_argument("convergence study lists must be ascending");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(step_counts.size() * path_counts.size());
    for (int steps : step_counts) {
        for (std::int64_t paths : path_counts) {
            ExperimentSpec run = spec;
            run.n_steps = steps;
            run.n_paths = paths;
            const EstimateResult est = run_experiment(run);
            ConvergenceRow row;
            row.n_steps = steps;
            row.n_paths = paths;
            row.value = est.value;
            row.std_error = est.std_error;
            if (est.closed_form) row.bias_proxy = std::fabs(est.value - *est.closed_form);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace fads
