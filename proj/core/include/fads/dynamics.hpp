#pragma once

#include <vector>

#include "fads/params.hpp"
#include "fads/rng.hpp"

// Path generation for the mispriced market. The mispricing process U is
// advanced by its exact transition density, so U is free of discretization
// bias; only filtered and wealth quantities carry O(dt) error.

namespace fads {

// One step of the mean-reverting process:
//   U' = e^{-lambda dt} U + xi,   xi ~ Normal(0, (1 - e^{-2 lambda dt}) / (2 lambda)).
// The recorded driving-noise increment uses the left-point drift,
//   dB = dU + lambda U dt,
// which makes dY = upsilon dt + dB identities hold exactly step by step.
class OuStepper {
public:
    OuStepper(double lambda, double dt)
        : lambda_(lambda),
          dt_(dt),
          decay_(std::exp(-lambda * dt)),
          noise_sd_(std::sqrt((1.0 - std::exp(-2.0 * lambda * dt)) / (2.0 * lambda))) {}

    double decay() const { return decay_; }
    double noise_sd() const { return noise_sd_; }

    // xi is a standard normal draw.
    double advance(double u, double xi) const { return decay_ * u + noise_sd_ * xi; }

    double noise_increment(double u_old, double u_new) const {
        return (u_new - u_old) + lambda_ * u_old * dt_;
    }

private:
    double lambda_, dt_, decay_, noise_sd_;
};

// One simulated trajectory of (W, B, U, Y, S) on a uniform grid.
struct MarketPath {
    TimeGrid grid;
    std::vector<double> w;  // permanent-shock Brownian motion
    std::vector<double> b;  // mispricing-driving Brownian motion (drift-corrected record)
    std::vector<double> u;  // mean-reverting mispricing level
    std::vector<double> y;  // composite driver, dY = p dW + q dU exactly
    std::vector<double> s;  // stock price, positive by construction
};

// What the informed investor reads off a path: their Brownian driver,
// drift adjustment and perceived drift, all exact pointwise identities.
struct InformedView {
    std::vector<double> b1;        // p*W + q*B
    std::vector<double> upsilon1;  // -lambda*q*U
    std::vector<double> mu1;       // mu(t) + upsilon1*sigma(t)
};

// Exact transition sampling of the mispricing process. Fills u and b
// (sized grid.points()); b is the drift-corrected noise record.
void simulate_ou(const TimeGrid& grid, double lambda, NormalSampler& normals,
                 std::vector<double>& u, std::vector<double>& b);

// Draw order per step: one normal for W, then one for U.
MarketPath simulate_market(const ModelParams& params, const TimeGrid& grid,
                           NormalSampler& normals);

InformedView informed_view(const MarketPath& path, const ModelParams& params);

}  // namespace fads
