#pragma once

#include <span>
#include <vector>

#include "fads/dynamics.hpp"
#include "fads/params.hpp"

// The uninformed investor's information. They observe the driver Y alone and
// reconstruct an innovation Brownian motion B0 and drift adjustment upsilon0
// through the deterministic kernel gamma. Nothing in this module may read W,
// B or U; the core entry point only accepts the Y series.

namespace fads {

// Closed-form kernel gamma(s) = (1 - p^2) / (1 + p tanh(p lambda s)) - 1.
// Satisfies gamma(0) = -p^2, gamma(s) -> -p as s grows, and the Riccati
// equation gamma' = lambda (gamma^2 - p^2). For p = 1 it is identically -1,
// so the uninformed investor attributes nothing to mispricing.
double gamma_kernel(double s, double p, double lambda);

struct FilterState {
    double b0 = 0.0;
    double upsilon0 = 0.0;
};

// Predictor-form innovation update over one step of size dt at time t:
//   dB0 = dy - upsilon0 * dt            (upsilon0 is the pre-update value)
//   upsilon0' = e^{-lambda dt} upsilon0 - lambda (1 + gamma(t)) dB0
// The exponential decay between steps keeps the kernel convolution O(1)
// per step; the left-point kernel evaluation costs O(dt) weak error.
class FilterStepper {
public:
    FilterStepper(double p, double lambda, double dt)
        : p_(p), lambda_(lambda), dt_(dt), decay_(std::exp(-lambda * dt)) {}

    double weight_at(double t) const { return 1.0 + gamma_kernel(t, p_, lambda_); }

    FilterState advance(FilterState state, double dy, double t) const {
        return advance_with_weight(state, dy, weight_at(t));
    }

    // Same update with the kernel weight 1 + gamma(t) precomputed by the caller.
    FilterState advance_with_weight(FilterState state, double dy, double weight) const {
        const double db0 = dy - state.upsilon0 * dt_;
        return {state.b0 + db0, decay_ * state.upsilon0 - lambda_ * weight * db0};
    }

private:
    double p_, lambda_, dt_, decay_;
};

FilterState filter_step(FilterState state, double dy, double dt, double t,
                        const ModelParams& params);

// The uninformed investor's reconstructed trajectory.
struct FilterPath {
    TimeGrid grid;
    std::vector<double> gamma_vals;  // gamma(t_k)
    std::vector<double> b0;          // innovation Brownian motion
    std::vector<double> upsilon0;    // drift adjustment
    std::vector<double> mu0;         // mu(t) + upsilon0 * sigma(t)
};

// Causal filter over the whole grid. y must hold grid.points() values of the
// observed driver. This overload is the only computation path; it cannot see
// anything but y and the deterministic parameters.
FilterPath run_filter(std::span<const double> y, const ModelParams& params,
                      const TimeGrid& grid);

// Convenience overload; forwards path.y only.
FilterPath run_filter(const MarketPath& path, const ModelParams& params);

}  // namespace fads
