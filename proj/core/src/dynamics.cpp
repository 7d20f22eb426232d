#include "fads/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace fads {

void simulate_ou(const TimeGrid& grid, double lambda, NormalSampler& normals,
                 std::vector<double>& u, std::vector<double>& b) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be strictly positive");
    const OuStepper stepper(lambda, grid.dt());
    u.assign(grid.points(), 0.0);
    b.assign(grid.points(), 0.0);
    for (int k = 0; k < grid.steps(); ++k) {
        const double u_new = stepper.advance(u[k], normals());
        b[k + 1] = b[k] + stepper.noise_increment(u[k], u_new);
        u[k + 1] = u_new;
    }
}

MarketPath simulate_market(const ModelParams& params, const TimeGrid& grid,
                           NormalSampler& normals) {
    const double p = params.p;
    const double q = params.q();
    const double dt = grid.dt();
    const double sqrt_dt = std::sqrt(dt);
    const OuStepper stepper(params.lambda, dt);

    MarketPath path{grid, {}, {}, {}, {}, {}};
    const std::size_t n = grid.points();
    path.w.assign(n, 0.0);
    path.b.assign(n, 0.0);
    path.u.assign(n, 0.0);
    path.y.assign(n, 0.0);
    path.s.assign(n, 0.0);
    path.s[0] = params.s0;

    double log_s = std::log(params.s0);
    for (int k = 0; k < grid.steps(); ++k) {
        const double t = grid.t(k);
        const double dw = sqrt_dt * normals();
        const double u_new = stepper.advance(path.u[k], normals());
        const double du = u_new - path.u[k];
        const double dy = p * dw + q * du;

        path.w[k + 1] = path.w[k] + dw;
        path.b[k + 1] = path.b[k] + stepper.noise_increment(path.u[k], u_new);
        path.u[k + 1] = u_new;
        path.y[k + 1] = path.y[k] + dy;

        const double sig = params.sigma(t);
        log_s += (params.mu(t) - 0.5 * sig * sig) * dt + sig * dy;
        path.s[k + 1] = std::exp(log_s);
    }
    return path;
}

InformedView informed_view(const MarketPath& path, const ModelParams& params) {
    const std::size_t n = path.grid.points();
    if (path.w.size() != n || path.b.size() != n || path.u.size() != n) {
        throw std::invalid_argument("market path does not match its grid");
    }
    const double p = params.p;
    const double q = params.q();

    InformedView view;
    view.b1.resize(n);
    view.upsilon1.resize(n);
    view.mu1.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = path.grid.t(static_cast<int>(k));
        view.b1[k] = p * path.w[k] + q * path.b[k];
        view.upsilon1[k] = -params.lambda * q * path.u[k];
        view.mu1[k] = params.mu(t) + view.upsilon1[k] * params.sigma(t);
    }
    return view;
}

}  // namespace fads
