#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fads/params.hpp"
#include "fads/valuation.hpp"

// Many-path experiment harness. Each path draws from a substream derived
// from (seed, path index), and per-path outcomes are reduced in index order,
// so a run is bitwise reproducible for any worker count. Standard errors are
// plain sample statistics; no variance reduction.

namespace fads {

enum class RuleKind { optimal, scaled, constant_weight };

struct PortfolioRule {
    RuleKind kind = RuleKind::optimal;
    double value = 1.0;  // scale factor for scaled, weight for constant_weight

    static PortfolioRule optimal() { return {RuleKind::optimal, 1.0}; }
    static PortfolioRule scaled(double factor) { return {RuleKind::scaled, factor}; }
    static PortfolioRule constant(double weight) { return {RuleKind::constant_weight, weight}; }
};

enum class EstimandKind {
    expected_log_utility,
    expected_power_utility,
    upsilon_second_moment,
    terminal_wealth_mean,
};

struct Estimand {
    EstimandKind kind = EstimandKind::expected_log_utility;
    double time = 0.0;  // observation time for upsilon_second_moment

    static Estimand log_utility() { return {EstimandKind::expected_log_utility, 0.0}; }
    static Estimand power_utility() { return {EstimandKind::expected_power_utility, 0.0}; }
    static Estimand upsilon_moment(double t) { return {EstimandKind::upsilon_second_moment, t}; }
    static Estimand wealth_mean() { return {EstimandKind::terminal_wealth_mean, 0.0}; }
};

struct ExperimentSpec {
    ModelParams params;
    std::int64_t n_paths = 10000;
    int n_steps = 1000;
    std::uint64_t seed = 42;
    Investor investor = Investor::informed;
    PortfolioRule rule;
    Estimand estimand;
    int threads = 0;  // 0 picks a hardware default; any value gives identical results
};

struct EstimateResult {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
    int n_steps = 0;
    std::uint64_t seed = 0;
    std::optional<double> closed_form;  // attached when the valuation module covers the estimand
    std::optional<double> z_score;      // (value - closed_form) / std_error
};

// Deterministic given the spec. Aborts with the offending (seed, path index)
// if any path's |log wealth| exceeds 700.
EstimateResult run_experiment(const ExperimentSpec& spec);

struct PerturbationRow {
    double factor = 1.0;
    EstimateResult estimate;
    double diff_vs_unit = 0.0;       // mean of (outcome at 1.0 - outcome at factor), paired
    double diff_std_error = 0.0;
};

// Evaluates the objective under factor-scaled portfolios with common random
// numbers across factors. The factor list must contain 1.0, and the estimand
// must be one of the two utility objectives.
std::vector<PerturbationRow> perturbation_test(const ExperimentSpec& spec,
                                               std::span<const double> factors);

struct ConvergenceRow {
    int n_steps = 0;
    std::int64_t n_paths = 0;
    double value = 0.0;
    double std_error = 0.0;
    std::optional<double> bias_proxy;  // |value - closed_form| where available
};

std::vector<ConvergenceRow> convergence_study(const ExperimentSpec& spec,
                                              std::span<const int> step_counts,
                                              std::span<const std::int64_t> path_counts);

}  // namespace fads
