#ifndef HYBRIDCP_INTERVAL_HPP
#define HYBRIDCP_INTERVAL_HPP

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hybridcp {

/**
 * Closed interval [lo, hi] of doubles.
 *
 * Bounds may be infinite (lo = -inf, hi = +inf) but never NaN. The empty set
 * has a single canonical representation, lo = +inf and hi = -inf, so that it
 * survives being written into a flat bounds array.
 */
class Interval {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    /// The whole real line.
    constexpr Interval() noexcept : lo_(-kInf), hi_(kInf) {}

    /// Point interval.
    constexpr Interval(double v) noexcept : Interval(v, v) {} // NOLINT(google-explicit-constructor)

    /// [lo, hi]; any NaN, lo > hi, lo = +inf or hi = -inf yields EMPTY.
    constexpr Interval(double lo, double hi) noexcept : lo_(lo), hi_(hi)
    {
        if (!(lo <= hi) || lo == kInf || hi == -kInf) {
            lo_ = kInf;
            hi_ = -kInf;
        }
    }

    static constexpr Interval empty() noexcept { return {kInf, -kInf}; }
    static constexpr Interval entire() noexcept { return {}; }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }

    constexpr bool is_empty() const noexcept { return lo_ > hi_; }
    constexpr bool is_point() const noexcept { return lo_ == hi_; }
    constexpr bool is_entire() const noexcept { return lo_ == -kInf && hi_ == kInf; }
    constexpr bool is_bounded() const noexcept
    {
        return !is_empty() && lo_ != -kInf && hi_ != kInf;
    }
    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    constexpr bool contains_zero() const noexcept { return contains(0.0); }
    /// this ⊆ other (EMPTY is a subset of everything).
    constexpr bool subset_of(const Interval& other) const noexcept
    {
        return is_empty() || (other.lo_ <= lo_ && hi_ <= other.hi_);
    }

    /// hi - lo rounded upward; 0 for EMPTY.
    double width() const noexcept;
    /// A point of the interval close to its center; finite whenever possible.
    double mid() const noexcept;

    friend constexpr bool operator==(const Interval& a, const Interval& b) noexcept
    {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    double lo_;
    double hi_;
};

constexpr Interval intersect(const Interval& a, const Interval& b) noexcept
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    return {a.lo() > b.lo() ? a.lo() : b.lo(), a.hi() < b.hi() ? a.hi() : b.hi()};
}

constexpr Interval hull(const Interval& a, const Interval& b) noexcept
{
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    return {a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() > b.hi() ? a.hi() : b.hi()};
}

std::ostream& operator<<(std::ostream& os, const Interval& x);
std::string to_string(const Interval& x);

/// One interval per variable index; empty iff any component is EMPTY.
using Box = std::vector<Interval>;

bool is_empty(const Box& box) noexcept;

// --------------------------------------------------------------------------
// Operators of the constraint language
// --------------------------------------------------------------------------

enum class UnaryOp {
    Neg, Sign, Abs, Sqr, Sqrt, Exp, Log,
    Cos, Sin, Tan, Acos, Asin, Atan,
    Cosh, Sinh, Tanh, Acosh, Asinh, Atanh,
};

enum class BinaryOp { Add, Sub, Mul, Div, Min, Max, Pow, Atan2 };

inline constexpr UnaryOp kAllUnaryOps[] = {
    UnaryOp::Neg,  UnaryOp::Sign, UnaryOp::Abs,  UnaryOp::Sqr,   UnaryOp::Sqrt,
    UnaryOp::Exp,  UnaryOp::Log,  UnaryOp::Cos,  UnaryOp::Sin,   UnaryOp::Tan,
    UnaryOp::Acos, UnaryOp::Asin, UnaryOp::Atan, UnaryOp::Cosh,  UnaryOp::Sinh,
    UnaryOp::Tanh, UnaryOp::Acosh, UnaryOp::Asinh, UnaryOp::Atanh,
};

inline constexpr BinaryOp kAllBinaryOps[] = {
    BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,  BinaryOp::Div,
    BinaryOp::Min, BinaryOp::Max, BinaryOp::Pow, BinaryOp::Atan2,
};

/// Function name as written in expressions ("abs", "sqrt", ...); "-" for Neg.
std::string_view name(UnaryOp op) noexcept;
/// "+", "-", "*", "/" for arithmetic, function name otherwise.
std::string_view name(BinaryOp op) noexcept;
/// Lookup by function name. Neg has no function name.
std::optional<UnaryOp> unary_from_name(std::string_view name) noexcept;
/// Only the named binary functions (min, max, pow, atan2).
std::optional<BinaryOp> binary_function_from_name(std::string_view name) noexcept;

// Forward evaluation: sound, outward rounded enclosure of the image.
// Any EMPTY argument gives EMPTY.

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Hull of the extended division when 0 ∈ b; a / [0,0] is EMPTY.
Interval operator/(const Interval& a, const Interval& b);

Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
/// Integral point exponents use parity cases; otherwise base restricted to x >= 0.
Interval pow(const Interval& base, const Interval& exponent);
Interval atan2(const Interval& y, const Interval& x);

Interval sign(const Interval& a);
Interval abs(const Interval& a);
Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval cos(const Interval& a);
Interval sin(const Interval& a);
Interval tan(const Interval& a);
Interval acos(const Interval& a);
Interval asin(const Interval& a);
Interval atan(const Interval& a);
Interval cosh(const Interval& a);
Interval sinh(const Interval& a);
Interval tanh(const Interval& a);
Interval acosh(const Interval& a);
Interval asinh(const Interval& a);
Interval atanh(const Interval& a);

Interval unary_op(UnaryOp op, const Interval& a);
Interval binary_op(BinaryOp op, const Interval& a, const Interval& b);

// Backward projection: given that op(operands) must lie in `result`, return
// the operands narrowed to the values that can still reach `result`. Never
// removes a feasible value. EMPTY components signal infeasibility.

Interval inverse_unary(UnaryOp op, const Interval& result, const Interval& a);
std::pair<Interval, Interval> inverse_binary(BinaryOp op, const Interval& result,
                                             const Interval& a, const Interval& b);

/// x^n for a point integer exponent; exposed for the root computations.
Interval pow_int(const Interval& x, long long n);

} // namespace hybridcp

#endif // HYBRIDCP_INTERVAL_HPP
