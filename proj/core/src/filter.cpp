#include "fads/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace fads {

double gamma_kernel(double s, double p, double lambda) {
    return (1.0 - p * p) / (1.0 + p * std::tanh(p * lambda * s)) - 1.0;
}

FilterState filter_step(FilterState state, double dy, double dt, double t,
                        const ModelParams& params) {
    if (!(dt > 0.0)) throw std::invalid_argument("filter step requires dt > 0");
    return FilterStepper(params.p, params.lambda, dt).advance(state, dy, t);
}

FilterPath run_filter(std::span<const double> y, const ModelParams& params,
                      const TimeGrid& grid) {
    if (y.size() != grid.points()) {
        throw std::invalid_argument("observed series does not match the grid");
    }
    const FilterStepper stepper(params.p, params.lambda, grid.dt());

    FilterPath out{grid, {}, {}, {}, {}};
    const std::size_t n = grid.points();
    out.gamma_vals.resize(n);
    out.b0.assign(n, 0.0);
    out.upsilon0.assign(n, 0.0);
    out.mu0.resize(n);

    FilterState state;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid.t(static_cast<int>(k));
        out.gamma_vals[k] = gamma_kernel(t, params.p, params.lambda);
        out.b0[k] = state.b0;
        out.upsilon0[k] = state.upsilon0;
        out.mu0[k] = params.mu(t) + state.upsilon0 * params.sigma(t);
        if (k + 1 < n) {
            state = stepper.advance(state, y[k + 1] - y[k], t);
        }
    }
    return out;
}

FilterPath run_filter(const MarketPath& path, const ModelParams& params) {
    return run_filter(std::span<const double>(path.y), params, path.grid);
}

}  // namespace fads
