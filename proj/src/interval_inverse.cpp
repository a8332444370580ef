#include "hybridcp/interval.hpp"

#include "hybridcp/rounding.hpp"
#include "pi.hpp"

#include <algorithm>

namespace hybridcp {

namespace {

constexpr double kInf = Interval::kInf;

const Interval kNonNegative{0.0, kInf};

// Values of the unknown factor x in x * d = t for some t ∈ num, d ∈ den.
// When both may be zero, every x qualifies.
Interval relational_div(const Interval& num, const Interval& den)
{
    if (num.contains_zero() && den.contains_zero()) {
        return Interval::entire();
    }
    return num / den;
}

// Enclosure of a ∩ (piece ∪ -piece).
Interval symmetric_meet(const Interval& a, const Interval& piece)
{
    return hull(intersect(a, piece), intersect(a, -piece));
}

// Largest y >= 0 that provably satisfies y^n <= v (v >= 0).
double root_down(double v, long long n)
{
    if (v == 0) {
        return 0.0;
    }
    if (v == kInf) {
        return rounding::kMax;
    }
    double y = (n == 2) ? std::sqrt(v) : (n == 3) ? std::cbrt(v)
                                                  : std::pow(v, 1.0 / static_cast<double>(n));
    for (int i = 0; i < 256; ++i) {
        if (pow_int(Interval(y), n).hi() <= v) {
            return y;
        }
        y = rounding::next_down(y);
    }
    return 0.0;
}

// Smallest y >= 0 that provably satisfies y^n >= v (v >= 0).
double root_up(double v, long long n)
{
    if (v == 0) {
        return 0.0;
    }
    if (v == kInf) {
        return kInf;
    }
    double y = (n == 2) ? std::sqrt(v) : (n == 3) ? std::cbrt(v)
                                                  : std::pow(v, 1.0 / static_cast<double>(n));
    for (int i = 0; i < 256; ++i) {
        if (pow_int(Interval(y), n).lo() >= v) {
            return y;
        }
        y = rounding::next_up(y);
    }
    return kInf;
}

// x with x^n ∈ r for n >= 1.
Interval inverse_pow_positive(const Interval& r, const Interval& a, long long n)
{
    if (n % 2 == 0) {
        const Interval rr = intersect(r, kNonNegative);
        if (rr.is_empty()) {
            return Interval::empty();
        }
        return symmetric_meet(a, {root_down(rr.lo(), n), root_up(rr.hi(), n)});
    }
    const auto odd_down = [n](double v) { return v >= 0 ? root_down(v, n) : -root_up(-v, n); };
    const auto odd_up = [n](double v) { return v >= 0 ? root_up(v, n) : -root_down(-v, n); };
    return intersect(a, {odd_down(r.lo()), odd_up(r.hi())});
}

bool is_integral_point(const Interval& e)
{
    return e.is_point() && std::isfinite(e.lo()) && std::trunc(e.lo()) == e.lo() &&
           std::fabs(e.lo()) <= 0x1p53;
}

std::pair<Interval, Interval> inverse_pow(const Interval& r, const Interval& a,
                                          const Interval& e)
{
    if (is_integral_point(e)) {
        const auto n = static_cast<long long>(e.lo());
        if (n == 0) {
            return r.contains(1.0) ? std::pair{a, e} : std::pair{Interval::empty(), e};
        }
        if (n > 0) {
            return {inverse_pow_positive(r, a, n), e};
        }
        // x^n = r  <=>  x^-n = 1/r, and x^n is never 0
        return {inverse_pow_positive(Interval(1.0) / r, a, -n), e};
    }
    // real exponent: the base lives in [0, inf)
    const Interval base = intersect(a, kNonNegative);
    const Interval rr = intersect(r, kNonNegative);
    if (base.is_empty() || rr.is_empty()) {
        return {Interval::empty(), e};
    }
    if (e.contains_zero()) {
        return {base, e};
    }
    return {intersect(base, pow(rr, Interval(1.0) / e)), e};
}

std::pair<Interval, Interval> inverse_min(const Interval& r, const Interval& a,
                                          const Interval& b)
{
    // min(a, b) = r: both operands are >= r.lo, and an operand that cannot be
    // the minimum leaves the other one equal to r.
    const Interval floor_r{r.lo(), kInf};
    Interval a2 = intersect(a, floor_r);
    Interval b2 = intersect(b, floor_r);
    if (!b2.is_empty() && b2.lo() > r.hi()) {
        a2 = intersect(a2, r);
    }
    if (!a2.is_empty() && a2.lo() > r.hi()) {
        b2 = intersect(b2, r);
    }
    return {a2, b2};
}

// Periodic inverse: hull over all branches base + k * period that meet a.
template <typename Branches>
Interval periodic_inverse(const Interval& a, const Interval& period, Branches branches)
{
    constexpr double kMaxPeriods = 64;
    if (!a.is_bounded() || (a.hi() - a.lo()) / period.lo() > kMaxPeriods ||
        std::max(-a.lo(), a.hi()) > 0x1p50) {
        return a;
    }
    const double k_lo = std::floor(a.lo() / period.lo()) - 1;
    const double k_hi = std::ceil(a.hi() / period.lo()) + 1;
    Interval acc = Interval::empty();
    for (double k = k_lo; k <= k_hi; k += 1) {
        const Interval shift = Interval(k) * period;
        branches([&](const Interval& piece) { acc = hull(acc, intersect(a, piece + shift)); });
    }
    return acc;
}

} // namespace

Interval inverse_unary(UnaryOp op, const Interval& r, const Interval& a)
{
    if (r.is_empty() || a.is_empty()) {
        return Interval::empty();
    }
    switch (op) {
    case UnaryOp::Neg:
        return intersect(a, -r);
    case UnaryOp::Sign: {
        Interval out = Interval::empty();
        if (r.contains(-1.0)) out = hull(out, intersect(a, {-kInf, 0.0}));
        if (r.contains(0.0)) out = hull(out, intersect(a, {0.0, 0.0}));
        if (r.contains(1.0)) out = hull(out, intersect(a, {0.0, kInf}));
        return out;
    }
    case UnaryOp::Abs:
        return symmetric_meet(a, intersect(r, kNonNegative));
    case UnaryOp::Sqr: {
        const Interval rr = intersect(r, kNonNegative);
        if (rr.is_empty()) {
            return rr;
        }
        return symmetric_meet(a, {rounding::sqrt_down(rr.lo()), rounding::sqrt_up(rr.hi())});
    }
    case UnaryOp::Sqrt:
        return intersect(intersect(a, kNonNegative), sqr(intersect(r, kNonNegative)));
    case UnaryOp::Exp:
        return intersect(a, log(intersect(r, kNonNegative)));
    case UnaryOp::Log:
        return intersect(intersect(a, kNonNegative), exp(r));
    case UnaryOp::Cos: {
        const Interval c = acos(r);
        if (c.is_empty()) {
            return c;
        }
        return periodic_inverse(a, pi::kTwoPi, [&](auto emit) {
            emit(c);
            emit(-c);
        });
    }
    case UnaryOp::Sin: {
        const Interval s = asin(r);
        if (s.is_empty()) {
            return s;
        }
        return periodic_inverse(a, pi::kTwoPi, [&](auto emit) {
            emit(s);
            emit(pi::kPi - s);
        });
    }
    case UnaryOp::Tan: {
        const Interval t = atan(r);
        return periodic_inverse(a, pi::kPi, [&](auto emit) { emit(t); });
    }
    case UnaryOp::Acos:
        return intersect(a, cos(intersect(r, {0.0, pi::kHi})));
    case UnaryOp::Asin:
        return intersect(a, sin(intersect(r, {-pi::kHalfHi, pi::kHalfHi})));
    case UnaryOp::Atan:
        return intersect(a, tan(intersect(r, {-pi::kHalfHi, pi::kHalfHi})));
    case UnaryOp::Cosh: {
        const Interval u = acosh(intersect(r, {1.0, kInf}));
        if (u.is_empty()) {
            return u;
        }
        return symmetric_meet(a, u);
    }
    case UnaryOp::Sinh:
        return intersect(a, asinh(r));
    case UnaryOp::Tanh:
        return intersect(a, atanh(r));
    case UnaryOp::Acosh:
        return intersect(intersect(a, {1.0, kInf}), cosh(intersect(r, kNonNegative)));
    case UnaryOp::Asinh:
        return intersect(a, sinh(r));
    case UnaryOp::Atanh:
        return intersect(intersect(a, {-1.0, 1.0}), tanh(r));
    }
    return a;
}

std::pair<Interval, Interval> inverse_binary(BinaryOp op, const Interval& r,
                                             const Interval& a, const Interval& b)
{
    if (r.is_empty() || a.is_empty() || b.is_empty()) {
        return {Interval::empty(), Interval::empty()};
    }
    switch (op) {
    case BinaryOp::Add: {
        const Interval a2 = intersect(a, r - b);
        return {a2, intersect(b, r - a2)};
    }
    case BinaryOp::Sub: {
        const Interval a2 = intersect(a, r + b);
        return {a2, intersect(b, a2 - r)};
    }
    case BinaryOp::Mul: {
        const Interval a2 = intersect(a, relational_div(r, b));
        return {a2, intersect(b, relational_div(r, a2))};
    }
    case BinaryOp::Div: {
        const Interval a2 = intersect(a, r * b);
        return {a2, intersect(b, relational_div(a2, r))};
    }
    case BinaryOp::Min:
        return inverse_min(r, a, b);
    case BinaryOp::Max: {
        // max(a, b) = -min(-a, -b)
        auto [na, nb] = inverse_min(-r, -a, -b);
        return {-na, -nb};
    }
    case BinaryOp::Pow:
        return inverse_pow(r, a, b);
    case BinaryOp::Atan2:
        // no projection; only detect an unreachable result
        if (intersect(atan2(a, b), r).is_empty()) {
            return {Interval::empty(), Interval::empty()};
        }
        return {a, b};
    }
    return {a, b};
}

} // namespace hybridcp
