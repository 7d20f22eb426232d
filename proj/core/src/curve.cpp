#include "fads/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fads {

Curve Curve::piecewise(std::vector<CurveSegment> segments) {
    if (segments.empty()) {
        throw std::invalid_argument("curve needs at least one segment");
    }
    if (segments.front().t_start != 0.0) {
        throw std::invalid_argument("curve segments must start at t = 0");
    }
    for (std::size_t i = 1; i < segments.size(); ++i) {
        if (!(segments[i].t_start > segments[i - 1].t_start)) {
            throw std::invalid_argument("curve segment start times must be strictly increasing");
        }
    }
    for (const auto& s : segments) {
        if (!std::isfinite(s.t_start) || !std::isfinite(s.value)) {
            throw std::invalid_argument("curve segments must be finite");
        }
    }
    return Curve(raw_tag{}, std::move(segments));
}

double Curve::operator()(double t) const {
    // Last segment whose start is <= t; queries before 0 clamp to the first.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const CurveSegment& s) { return x < s.t_start; });
    if (it == segments_.begin()) return segments_.front().value;
    return std::prev(it)->value;
}

double Curve::min_on(double horizon) const {
    double m = segments_.front().value;
    for (const auto& s : segments_) {
        if (s.t_start >= horizon && s.t_start > 0.0) break;
        m = std::min(m, s.value);
    }
    return m;
}

double Curve::max_on(double horizon) const {
    double m = segments_.front().value;
    for (const auto& s : segments_) {
        if (s.t_start >= horizon && s.t_start > 0.0) break;
        m = std::max(m, s.value);
    }
    return m;
}

namespace {

template <class Op>
Curve combine(const Curve& a, const Curve& b, Op op) {
    const auto& sa = a.segments();
    const auto& sb = b.segments();
    std::vector<CurveSegment> out;
    out.reserve(sa.size() + sb.size());
    std::size_t ia = 0, ib = 0;
    double t = 0.0;
    while (true) {
        out.push_back({t, op(sa[ia].value, sb[ib].value)});
        const double next_a =
            ia + 1 < sa.size() ? sa[ia + 1].t_start : std::numeric_limits<double>::infinity();
        const double next_b =
            ib + 1 < sb.size() ? sb[ib + 1].t_start : std::numeric_limits<double>::infinity();
        t = std::min(next_a, next_b);
        if (!std::isfinite(t)) break;
        if (next_a == t) ++ia;
        if (next_b == t) ++ib;
    }
    // Merge adjacent segments with equal values.
    std::vector<CurveSegment> merged;
    for (const auto& s : out) {
        if (!merged.empty() && merged.back().value == s.value) continue;
        merged.push_back(s);
    }
    return Curve::piecewise(std::move(merged));
}

}  // namespace

Curve operator+(const Curve& a, const Curve& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

Curve operator-(const Curve& a, const Curve& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

Curve operator*(const Curve& a, const Curve& b) {
    return combine(a, b, [](double x, double y) { return x * y; });
}

Curve operator/(const Curve& a, const Curve& b) {
    for (const auto& s : b.segments()) {
        if (s.value == 0.0) throw std::domain_error("division by zero segment value");
    }
    return combine(a, b, [](double x, double y) { return x / y; });
}

Curve square(const Curve& c) { return c * c; }

double integrate(const Curve& c, double t0, double t1) {
    if (!(0.0 <= t0) || !(t0 <= t1)) {
        throw std::invalid_argument("integrate requires 0 <= t0 <= t1");
    }
    const auto& segs = c.segments();
    double total = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double lo = std::max(t0, segs[i].t_start);
        const double hi =
            i + 1 < segs.size() ? std::min(t1, segs[i + 1].t_start) : t1;
        if (hi > lo) total += segs[i].value * (hi - lo);
    }
    return total;
}

}  // namespace fads
