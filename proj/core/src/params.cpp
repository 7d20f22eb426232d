#include "fads/params.hpp"

#include <stdexcept>

namespace fads {

ModelParams validate_params(const ModelParams& raw) {
    if (!(raw.lambda > 0.0)) {
        throw std::invalid_argument("lambda must be strictly positive");
    }
    if (!(raw.p >= 0.0 && raw.p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (!(raw.gamma < 1.0)) {
        throw std::invalid_argument("gamma must be less than 1");
    }
    if (!(raw.horizon > 0.0)) {
        throw std::invalid_argument("T must be strictly positive");
    }
    if (!(raw.s0 > 0.0)) {
        throw std::invalid_argument("s0 must be strictly positive");
    }
    if (!(raw.x0 > 0.0)) {
        throw std::invalid_argument("x0 must be strictly positive");
    }
    if (!(raw.sigma.min_on(raw.horizon) > 0.0)) {
        throw std::invalid_argument("volatility must be strictly positive");
    }
    return raw;
}

TimeGrid::TimeGrid(double horizon, int n_steps) : horizon_(horizon), n_steps_(n_steps) {
    if (!(horizon > 0.0)) throw std::invalid_argument("grid horizon must be strictly positive");
    if (n_steps < 1) throw std::invalid_argument("grid needs at least one step");
    dt_ = horizon_ / static_cast<double>(n_steps_);
}

}  // namespace fads
