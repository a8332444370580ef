#ifndef HYBRIDCP_ROUNDING_HPP
#define HYBRIDCP_ROUNDING_HPP

#include <algorithm>
#include <cmath>
#include <limits>

// Directed rounding for the IEEE basic operations, realized with error-free
// transformations instead of switching the FPU rounding mode. The rounding
// error of +, -, *, / and sqrt is recovered exactly (TwoSum / FMA), so a
// bound only moves by one ulp when the native result is actually inexact.
namespace hybridcp::rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();

// Below this magnitude the FMA residual may itself be rounded (gradual
// underflow), so fall back to unconditional one-ulp widening.
inline constexpr double kTiny = 0x1p-960;

inline double next_down(double x) { return std::nextafter(x, -kInf); }
inline double next_up(double x) { return std::nextafter(x, kInf); }

inline double widen_down(double x, int ulps)
{
    for (int i = 0; i < ulps && x != -kInf; ++i) {
        x = next_down(x);
    }
    return x;
}

inline double widen_up(double x, int ulps)
{
    for (int i = 0; i < ulps && x != kInf; ++i) {
        x = next_up(x);
    }
    return x;
}

// Exact rounding error of s = fl(a + b), for finite a, b, s.
inline double two_sum_error(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        // overflow of finite operands: the true sum is finite
        return (s == kInf && std::isfinite(a) && std::isfinite(b)) ? kMax : s;
    }
    return two_sum_error(a, b, s) < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        return (s == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
    }
    return two_sum_error(a, b, s) > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// Interval convention: 0 * inf = 0.
inline double mul_down(double a, double b)
{
    if (a == 0 || b == 0) {
        return 0.0;
    }
    const double p = a * b;
    if (!std::isfinite(p)) {
        return (p == kInf && std::isfinite(a) && std::isfinite(b)) ? kMax : p;
    }
    if (std::fabs(p) < kTiny) {
        // keep the sign of the exact product when it underflows
        return (a > 0) == (b > 0) ? std::max(next_down(p), 0.0) : next_down(p);
    }
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b)
{
    if (a == 0 || b == 0) {
        return 0.0;
    }
    const double p = a * b;
    if (!std::isfinite(p)) {
        return (p == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : p;
    }
    if (std::fabs(p) < kTiny) {
        return (a > 0) != (b > 0) ? std::min(next_up(p), 0.0) : next_up(p);
    }
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

// b != 0. Interval convention: inf / inf never requested by callers.
inline double div_down(double a, double b)
{
    if (a == 0) {
        return 0.0;
    }
    const double q = a / b;
    if (std::isinf(b)) {
        return q;
    }
    if (!std::isfinite(q)) {
        return (q == kInf && std::isfinite(a)) ? kMax : q;
    }
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) {
        return (a > 0) == (b > 0) ? std::max(next_down(q), 0.0) : next_down(q);
    }
    // a - q*b is exact; sign(true - q) = sign(r) * sign(b)
    const double r = std::fma(-q, b, a);
    const bool below = (r < 0) != (b < 0) && r != 0;
    return below ? next_down(q) : q;
}

inline double div_up(double a, double b)
{
    if (a == 0) {
        return 0.0;
    }
    const double q = a / b;
    if (std::isinf(b)) {
        return q;
    }
    if (!std::isfinite(q)) {
        return (q == -kInf && std::isfinite(a)) ? -kMax : q;
    }
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) {
        return (a > 0) != (b > 0) ? std::min(next_up(q), 0.0) : next_up(q);
    }
    const double r = std::fma(-q, b, a);
    const bool above = (r > 0) != (b < 0) && r != 0;
    return above ? next_up(q) : q;
}

// a >= 0
inline double sqrt_down(double a)
{
    const double s = std::sqrt(a);
    if (s == 0 || std::isinf(s)) {
        return s;
    }
    if (a < kTiny) {
        return next_down(s);
    }
    return std::fma(-s, s, a) < 0 ? next_down(s) : s;
}

inline double sqrt_up(double a)
{
    const double s = std::sqrt(a);
    if (s == 0 || std::isinf(s)) {
        return s;
    }
    if (a < kTiny) {
        return next_up(s);
    }
    return std::fma(-s, s, a) > 0 ? next_up(s) : s;
}

} // namespace hybridcp::rounding

#endif // HYBRIDCP_ROUNDING_HPP
