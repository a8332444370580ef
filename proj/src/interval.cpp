#include "hybridcp/interval.hpp"

#include "hybridcp/rounding.hpp"
#include "pi.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

namespace hybridcp {

using namespace rounding;

double Interval::width() const noexcept
{
    if (is_empty()) {
        return 0.0;
    }
    return sub_up(hi_, lo_);
}

double Interval::mid() const noexcept
{
    if (is_empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (lo_ == -kInf && hi_ == kInf) {
        return 0.0;
    }
    if (lo_ == -kInf) {
        return std::min(hi_, -kMax);
    }
    if (hi_ == kInf) {
        return std::max(lo_, kMax);
    }
    const double w = hi_ - lo_;
    const double m = std::isfinite(w) ? lo_ + w / 2 : lo_ / 2 + hi_ / 2;
    return std::clamp(m, lo_, hi_);
}

namespace {

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), ptr};
}

} // namespace

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    if (x.is_empty()) {
        return os << "[empty]";
    }
    return os << '[' << format_double(x.lo()) << ", " << format_double(x.hi()) << ']';
}

std::string to_string(const Interval& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

bool is_empty(const Box& box) noexcept
{
    return std::any_of(box.begin(), box.end(), [](const Interval& x) { return x.is_empty(); });
}

// --------------------------------------------------------------------------
// Names
// --------------------------------------------------------------------------

namespace {

struct UnaryName {
    UnaryOp op;
    std::string_view name;
};

constexpr UnaryName kUnaryNames[] = {
    {UnaryOp::Neg, "-"},       {UnaryOp::Sign, "sign"},   {UnaryOp::Abs, "abs"},
    {UnaryOp::Sqr, "sqr"},     {UnaryOp::Sqrt, "sqrt"},   {UnaryOp::Exp, "exp"},
    {UnaryOp::Log, "log"},     {UnaryOp::Cos, "cos"},     {UnaryOp::Sin, "sin"},
    {UnaryOp::Tan, "tan"},     {UnaryOp::Acos, "acos"},   {UnaryOp::Asin, "asin"},
    {UnaryOp::Atan, "atan"},   {UnaryOp::Cosh, "cosh"},   {UnaryOp::Sinh, "sinh"},
    {UnaryOp::Tanh, "tanh"},   {UnaryOp::Acosh, "acosh"}, {UnaryOp::Asinh, "asinh"},
    {UnaryOp::Atanh, "atanh"},
};

} // namespace

std::string_view name(UnaryOp op) noexcept
{
    for (const auto& entry : kUnaryNames) {
        if (entry.op == op) {
            return entry.name;
        }
    }
    return "?";
}

std::string_view name(BinaryOp op) noexcept
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Min: return "min";
    case BinaryOp::Max: return "max";
    case BinaryOp::Pow: return "pow";
    case BinaryOp::Atan2: return "atan2";
    }
    return "?";
}

std::optional<UnaryOp> unary_from_name(std::string_view n) noexcept
{
    for (const auto& entry : kUnaryNames) {
        if (entry.op != UnaryOp::Neg && entry.name == n) {
            return entry.op;
        }
    }
    return std::nullopt;
}

std::optional<BinaryOp> binary_function_from_name(std::string_view n) noexcept
{
    if (n == "min") return BinaryOp::Min;
    if (n == "max") return BinaryOp::Max;
    if (n == "pow") return BinaryOp::Pow;
    if (n == "atan2") return BinaryOp::Atan2;
    return std::nullopt;
}

// --------------------------------------------------------------------------
// Arithmetic
// --------------------------------------------------------------------------

Interval operator-(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    return {-a.hi(), -a.lo()};
}

Interval operator+(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval operator*(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const std::array<std::pair<double, double>, 4> corners{{
        {a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()},
    }};
    double lo = kInf;
    double hi = -kInf;
    for (auto [x, y] : corners) {
        lo = std::min(lo, mul_down(x, y));
        hi = std::max(hi, mul_up(x, y));
    }
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (bl > 0) {
        if (al >= 0) return {div_down(al, bh), div_up(ah, bl)};
        if (ah <= 0) return {div_down(al, bl), div_up(ah, bh)};
        return {div_down(al, bl), div_up(ah, bl)};
    }
    if (bh < 0) {
        if (al >= 0) return {div_down(ah, bh), div_up(al, bl)};
        if (ah <= 0) return {div_down(ah, bl), div_up(al, bh)};
        return {div_down(ah, bh), div_up(al, bh)};
    }
    // 0 ∈ b
    if (bl == 0 && bh == 0) {
        return Interval::empty();
    }
    if (al == 0 && ah == 0) {
        return {0.0, 0.0};
    }
    if (bl == 0) {
        if (al >= 0) return {div_down(al, bh), kInf};
        if (ah <= 0) return {-kInf, div_up(ah, bh)};
        return Interval::entire();
    }
    if (bh == 0) {
        if (al >= 0) return {-kInf, div_up(al, bl)};
        if (ah <= 0) return {div_down(ah, bl), kInf};
        return Interval::entire();
    }
    return Interval::entire();
}

Interval min(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval max(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval sign(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    if (a.lo() > 0) return {1.0, 1.0};
    if (a.hi() < 0) return {-1.0, -1.0};
    if (a.lo() == 0 && a.hi() == 0) return {0.0, 0.0};
    if (a.lo() == 0) return {0.0, 1.0};
    if (a.hi() == 0) return {-1.0, 0.0};
    return {-1.0, 1.0};
}

Interval abs(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return {0.0, std::max(-a.lo(), a.hi())};
}

Interval sqr(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    if (a.lo() >= 0) return {mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi())};
    if (a.hi() <= 0) return {mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo())};
    const double m = std::max(-a.lo(), a.hi());
    return {0.0, mul_up(m, m)};
}

Interval sqrt(const Interval& a)
{
    const Interval x = intersect(a, {0.0, kInf});
    if (x.is_empty()) {
        return x;
    }
    return {sqrt_down(x.lo()), sqrt_up(x.hi())};
}

// --------------------------------------------------------------------------
// libm-backed functions
// --------------------------------------------------------------------------

namespace {

// glibc documents at most 2 ulps of error for every function used here.
constexpr int kLibmUlps = 2;

using RealFn = double (*)(double);

// Arguments where the libm result is exact (and is the mathematical value).
bool exact_at(UnaryOp op, double x)
{
    switch (op) {
    case UnaryOp::Exp:
    case UnaryOp::Cos:
    case UnaryOp::Cosh: return x == 0;
    case UnaryOp::Log:
    case UnaryOp::Acos:
    case UnaryOp::Acosh: return x == 1;
    case UnaryOp::Sin:
    case UnaryOp::Tan:
    case UnaryOp::Atan:
    case UnaryOp::Asin:
    case UnaryOp::Sinh:
    case UnaryOp::Tanh:
    case UnaryOp::Asinh:
    case UnaryOp::Atanh: return x == 0;
    default: return false;
    }
}

double eval_down(UnaryOp op, RealFn f, double x)
{
    const double y = f(x);
    if (std::isinf(y)) {
        // overflow of a finite argument: the true value is finite
        return (y > 0 && std::isfinite(x)) ? kMax : y;
    }
    if (std::isinf(x) || exact_at(op, x)) {
        // limits at infinity are exact except for the pi/2 ones
        if (!(std::isinf(x) && op == UnaryOp::Atan)) {
            return y;
        }
    }
    return widen_down(y, kLibmUlps);
}

double eval_up(UnaryOp op, RealFn f, double x)
{
    const double y = f(x);
    if (std::isinf(y)) {
        return (y < 0 && std::isfinite(x)) ? -kMax : y;
    }
    if (std::isinf(x) || exact_at(op, x)) {
        if (!(std::isinf(x) && op == UnaryOp::Atan)) {
            return y;
        }
    }
    return widen_up(y, kLibmUlps);
}

Interval increasing(UnaryOp op, RealFn f, const Interval& x)
{
    if (x.is_empty()) {
        return x;
    }
    return {eval_down(op, f, x.lo()), eval_up(op, f, x.hi())};
}

Interval decreasing(UnaryOp op, RealFn f, const Interval& x)
{
    if (x.is_empty()) {
        return x;
    }
    return {eval_down(op, f, x.hi()), eval_up(op, f, x.lo())};
}

double libm_exp(double x) { return std::exp(x); }
double libm_log(double x) { return std::log(x); }
double libm_cos(double x) { return std::cos(x); }
double libm_sin(double x) { return std::sin(x); }
double libm_tan(double x) { return std::tan(x); }
double libm_acos(double x) { return std::acos(x); }
double libm_asin(double x) { return std::asin(x); }
double libm_atan(double x) { return std::atan(x); }
double libm_cosh(double x) { return std::cosh(x); }
double libm_sinh(double x) { return std::sinh(x); }
double libm_tanh(double x) { return std::tanh(x); }
double libm_acosh(double x) { return std::acosh(x); }
double libm_asinh(double x) { return std::asinh(x); }
double libm_atanh(double x) { return std::atanh(x); }

// Beyond this magnitude the spacing of doubles exceeds pi/4 and locating
// extrema is pointless.
constexpr double kTrigLimit = 0x1p50;

// Does some multiple m * step (m ∈ [m_lo, m_hi], filtered by `want`) lie in
// x? `step` is an enclosure of the period constant, so the answer errs on
// the side of "yes".
template <typename Pred>
bool hits_multiple(const Interval& x, const Interval& step, Pred want)
{
    const double m_lo = std::floor(x.lo() / step.lo()) - 1;
    const double m_hi = std::ceil(x.hi() / step.lo()) + 1;
    for (double m = m_lo; m <= m_hi; m += 1) {
        if (!want(m)) {
            continue;
        }
        if (!intersect(Interval(m) * step, x).is_empty()) {
            return true;
        }
    }
    return false;
}

long long mod4(double m)
{
    const auto k = static_cast<long long>(m);
    return ((k % 4) + 4) % 4;
}

} // namespace

Interval exp(const Interval& a)
{
    Interval r = increasing(UnaryOp::Exp, libm_exp, a);
    return intersect(r, {0.0, kInf});
}

Interval log(const Interval& a)
{
    const Interval x = intersect(a, {0.0, kInf});
    if (x.is_empty() || x.hi() == 0) {
        return Interval::empty();
    }
    return increasing(UnaryOp::Log, libm_log, x);
}

Interval cos(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    const Interval unit{-1.0, 1.0};
    if (!a.is_bounded() || std::max(-a.lo(), a.hi()) > kTrigLimit ||
        a.hi() - a.lo() >= 2 * pi::kLo) {
        return unit;
    }
    double lo = std::min(eval_down(UnaryOp::Cos, libm_cos, a.lo()),
                         eval_down(UnaryOp::Cos, libm_cos, a.hi()));
    double hi = std::max(eval_up(UnaryOp::Cos, libm_cos, a.lo()),
                         eval_up(UnaryOp::Cos, libm_cos, a.hi()));
    // maxima at even multiples of pi, minima at odd ones
    if (hits_multiple(a, pi::kPi, [](double m) { return std::fmod(m, 2.0) == 0; })) {
        hi = 1.0;
    }
    if (hits_multiple(a, pi::kPi, [](double m) { return std::fmod(m, 2.0) != 0; })) {
        lo = -1.0;
    }
    return intersect({lo, hi}, unit);
}

Interval sin(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    const Interval unit{-1.0, 1.0};
    if (!a.is_bounded() || std::max(-a.lo(), a.hi()) > kTrigLimit ||
        a.hi() - a.lo() >= 2 * pi::kLo) {
        return unit;
    }
    double lo = std::min(eval_down(UnaryOp::Sin, libm_sin, a.lo()),
                         eval_down(UnaryOp::Sin, libm_sin, a.hi()));
    double hi = std::max(eval_up(UnaryOp::Sin, libm_sin, a.lo()),
                         eval_up(UnaryOp::Sin, libm_sin, a.hi()));
    // extrema at odd multiples of pi/2: +1 when m = 1 (mod 4), -1 when m = 3
    if (hits_multiple(a, pi::kHalfPi, [](double m) { return mod4(m) == 1; })) {
        hi = 1.0;
    }
    if (hits_multiple(a, pi::kHalfPi, [](double m) { return mod4(m) == 3; })) {
        lo = -1.0;
    }
    return intersect({lo, hi}, unit);
}

Interval tan(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    if (!a.is_bounded() || std::max(-a.lo(), a.hi()) > kTrigLimit ||
        a.hi() - a.lo() >= pi::kLo) {
        return Interval::entire();
    }
    // poles at odd multiples of pi/2
    if (hits_multiple(a, pi::kHalfPi, [](double m) { return mod4(m) % 2 == 1; })) {
        return Interval::entire();
    }
    return increasing(UnaryOp::Tan, libm_tan, a);
}

Interval acos(const Interval& a)
{
    const Interval x = intersect(a, {-1.0, 1.0});
    return intersect(decreasing(UnaryOp::Acos, libm_acos, x), {0.0, pi::kHi});
}

Interval asin(const Interval& a)
{
    const Interval x = intersect(a, {-1.0, 1.0});
    return intersect(increasing(UnaryOp::Asin, libm_asin, x), {-pi::kHalfHi, pi::kHalfHi});
}

Interval atan(const Interval& a)
{
    return intersect(increasing(UnaryOp::Atan, libm_atan, a), {-pi::kHalfHi, pi::kHalfHi});
}

Interval cosh(const Interval& a)
{
    if (a.is_empty()) {
        return a;
    }
    Interval r;
    if (a.lo() >= 0) {
        r = increasing(UnaryOp::Cosh, libm_cosh, a);
    } else if (a.hi() <= 0) {
        r = decreasing(UnaryOp::Cosh, libm_cosh, a);
    } else {
        r = {1.0, eval_up(UnaryOp::Cosh, libm_cosh, std::max(-a.lo(), a.hi()))};
    }
    return intersect(r, {1.0, kInf});
}

Interval sinh(const Interval& a)
{
    return increasing(UnaryOp::Sinh, libm_sinh, a);
}

Interval tanh(const Interval& a)
{
    return intersect(increasing(UnaryOp::Tanh, libm_tanh, a), {-1.0, 1.0});
}

Interval acosh(const Interval& a)
{
    const Interval x = intersect(a, {1.0, kInf});
    return intersect(increasing(UnaryOp::Acosh, libm_acosh, x), {0.0, kInf});
}

Interval asinh(const Interval& a)
{
    return increasing(UnaryOp::Asinh, libm_asinh, a);
}

Interval atanh(const Interval& a)
{
    const Interval x = intersect(a, {-1.0, 1.0});
    if (x.is_empty() || x.lo() == 1 || x.hi() == -1) {
        return Interval::empty();
    }
    const double lo = x.lo() == -1 ? -kInf : eval_down(UnaryOp::Atanh, libm_atanh, x.lo());
    const double hi = x.hi() == 1 ? kInf : eval_up(UnaryOp::Atanh, libm_atanh, x.hi());
    return {lo, hi};
}

// --------------------------------------------------------------------------
// pow and atan2
// --------------------------------------------------------------------------

namespace {

bool is_integral_point(const Interval& e)
{
    return e.is_point() && std::isfinite(e.lo()) && std::trunc(e.lo()) == e.lo() &&
           std::fabs(e.lo()) <= 0x1p53;
}

// Exact cases of x^e that libm returns without error.
bool pow_exact(double x, double e)
{
    return e == 0 || x == 1 || x == 0 || std::isinf(x) || std::isinf(e) ||
           (x == -1 && std::trunc(e) == e);
}

double pow_down(double x, double e)
{
    const double y = std::pow(x, e);
    if (pow_exact(x, e)) {
        return y;
    }
    if (std::isinf(y)) {
        return y > 0 ? kMax : y;
    }
    return widen_down(y, kLibmUlps);
}

double pow_up(double x, double e)
{
    const double y = std::pow(x, e);
    if (pow_exact(x, e)) {
        return y;
    }
    if (std::isinf(y)) {
        return y < 0 ? -kMax : y;
    }
    return widen_up(y, kLibmUlps);
}

// x^e for x >= 0 and an arbitrary exponent interval: monotone in each
// argument separately, so the extrema sit at the corners.
Interval pow_real(const Interval& base, const Interval& e)
{
    const Interval x = intersect(base, {0.0, kInf});
    if (x.is_empty() || e.is_empty()) {
        return Interval::empty();
    }
    double lo = kInf;
    double hi = -kInf;
    for (double xb : {x.lo(), x.hi()}) {
        for (double eb : {e.lo(), e.hi()}) {
            lo = std::min(lo, pow_down(xb, eb));
            hi = std::max(hi, pow_up(xb, eb));
        }
    }
    // x = 0 with a negative exponent has no value; the corner gave +inf,
    // which is the right limit for the hull.
    return intersect({lo, hi}, {0.0, kInf});
}

} // namespace

Interval pow_int(const Interval& x, long long n)
{
    if (x.is_empty()) {
        return x;
    }
    if (n == 0) {
        return {1.0, 1.0};
    }
    if (n == 1) {
        return x;
    }
    if (n == 2) {
        return sqr(x);
    }
    const double e = static_cast<double>(n);
    const bool even = n % 2 == 0;
    const double lo = x.lo();
    const double hi = x.hi();
    if (n > 0) {
        if (!even) {
            return {pow_down(lo, e), pow_up(hi, e)};
        }
        if (lo >= 0) return {pow_down(lo, e), pow_up(hi, e)};
        if (hi <= 0) return {pow_down(hi, e), pow_up(lo, e)};
        return {0.0, pow_up(std::max(-lo, hi), e)};
    }
    // negative exponent
    if (lo == 0 && hi == 0) {
        return Interval::empty();
    }
    if (lo > 0) {
        return {pow_down(hi, e), pow_up(lo, e)};
    }
    if (hi < 0) {
        if (even) return {pow_down(lo, e), pow_up(hi, e)};
        return {pow_down(hi, e), pow_up(lo, e)};
    }
    if (even) {
        return {pow_down(std::max(-lo, hi), e), kInf};
    }
    if (lo == 0) return {pow_down(hi, e), kInf};
    if (hi == 0) return {-kInf, pow_up(lo, e)};
    return Interval::entire();
}

Interval pow(const Interval& base, const Interval& exponent)
{
    if (base.is_empty() || exponent.is_empty()) {
        return Interval::empty();
    }
    if (is_integral_point(exponent)) {
        return pow_int(base, static_cast<long long>(exponent.lo()));
    }
    return pow_real(base, exponent);
}

Interval atan2(const Interval& y, const Interval& x)
{
    if (y.is_empty() || x.is_empty()) {
        return Interval::empty();
    }
    const Interval full{-pi::kHi, pi::kHi};
    if (x.contains_zero() && y.contains_zero()) {
        return full;
    }
    // the box touches the branch cut on the negative x axis from below
    // (atan2(0, x < 0) = pi while points with y < 0 approach -pi)
    if (x.lo() < 0 && y.lo() < 0 && y.hi() >= 0) {
        return full;
    }
    // normalize -0 so that y = 0 maps to +pi on the negative axis
    const double y_lo = (y.lo() == 0) ? 0.0 : y.lo();
    const double y_hi = (y.hi() == 0) ? 0.0 : y.hi();
    double lo = kInf;
    double hi = -kInf;
    for (double yb : {y_lo, y_hi}) {
        for (double xb : {x.lo(), x.hi()}) {
            const double v = std::atan2(yb, xb);
            lo = std::min(lo, widen_down(v, kLibmUlps));
            hi = std::max(hi, widen_up(v, kLibmUlps));
        }
    }
    return intersect({lo, hi}, full);
}

// --------------------------------------------------------------------------
// Dispatch
// --------------------------------------------------------------------------

Interval unary_op(UnaryOp op, const Interval& a)
{
    switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Sign: return sign(a);
    case UnaryOp::Abs: return abs(a);
    case UnaryOp::Sqr: return sqr(a);
    case UnaryOp::Sqrt: return sqrt(a);
    case UnaryOp::Exp: return exp(a);
    case UnaryOp::Log: return log(a);
    case UnaryOp::Cos: return cos(a);
    case UnaryOp::Sin: return sin(a);
    case UnaryOp::Tan: return tan(a);
    case UnaryOp::Acos: return acos(a);
    case UnaryOp::Asin: return asin(a);
    case UnaryOp::Atan: return atan(a);
    case UnaryOp::Cosh: return cosh(a);
    case UnaryOp::Sinh: return sinh(a);
    case UnaryOp::Tanh: return tanh(a);
    case UnaryOp::Acosh: return acosh(a);
    case UnaryOp::Asinh: return asinh(a);
    case UnaryOp::Atanh: return atanh(a);
    }
    return Interval::entire();
}

Interval binary_op(BinaryOp op, const Interval& a, const Interval& b)
{
    switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Min: return min(a, b);
    case BinaryOp::Max: return max(a, b);
    case BinaryOp::Pow: return pow(a, b);
    case BinaryOp::Atan2: return atan2(a, b);
    }
    return Interval::entire();
}

} // namespace hybridcp
