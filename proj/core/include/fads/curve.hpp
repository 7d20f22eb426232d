#pragma once

#include <initializer_list>
#include <vector>

// Deterministic market coefficients as piecewise-constant curves on [0, T].
// Pointwise algebra on such curves is again piecewise constant, so every
// integral used by the model has an exact per-segment closed form.

namespace fads {

struct CurveSegment {
    double t_start;  // segment covers [t_start, next segment start)
    double value;
};

class Curve {
public:
    Curve() : segments_{{0.0, 0.0}} {}

    static Curve constant(double value) { return Curve({{0.0, value}}); }

    // Segments must start at t = 0 and have strictly increasing start times;
    // the last segment extends to the end of any horizon it is used on.
    static Curve piecewise(std::vector<CurveSegment> segments);

    explicit Curve(std::initializer_list<CurveSegment> segments)
        : Curve(piecewise(std::vector<CurveSegment>(segments))) {}

    double operator()(double t) const;

    bool is_constant() const { return segments_.size() == 1; }

    // Extremes over [0, horizon]; only segments intersecting it count.
    double min_on(double horizon) const;
    double max_on(double horizon) const;

    const std::vector<CurveSegment>& segments() const { return segments_; }

    friend Curve operator+(const Curve& a, const Curve& b);
    friend Curve operator-(const Curve& a, const Curve& b);
    friend Curve operator*(const Curve& a, const Curve& b);
    // Throws on a zero denominator segment.
    friend Curve operator/(const Curve& a, const Curve& b);

private:
    struct raw_tag {};
    Curve(raw_tag, std::vector<CurveSegment> segments) : segments_(std::move(segments)) {}

    std::vector<CurveSegment> segments_;
};

Curve square(const Curve& c);

// Exact integral over [t0, t1], 0 <= t0 <= t1.
double integrate(const Curve& c, double t0, double t1);

}  // namespace fads
