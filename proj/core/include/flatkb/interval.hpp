#pragma once

// Outward-rounded interval arithmetic on doubles.
//
// Every operation is evaluated in round-to-nearest and the result endpoints
// are then pushed one representable step outward. For +,-,*,/ and sqrt the
// rounded result is within half an ulp of the exact one, so a single step is
// a sound enclosure. sin, cos and atan2 rely on the platform libm being
// accurate to within one ulp and are widened by two steps.

#include <cmath>
#include <iosfwd>
#include <limits>

namespace flatkb {

enum class SignVerdict { POSITIVE, NEGATIVE, ZERO_UNCERTIFIABLE };

const char* to_string(SignVerdict s);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    // A double is an exact point interval. Use ia_from_value for inputs
    // that only approximate the intended real number.
    constexpr Interval(double v) : lo(v), hi(v) {} // NOLINT(google-explicit-constructor)
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    double mid() const { return lo + 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    double rad() const { return 0.5 * (hi - lo); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool is_point() const { return lo == hi; }
    // Sign-agnostic magnitude bound.
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
};

namespace detail {
inline double down(double x, int steps = 1)
{
    for (int i = 0; i < steps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}
inline double up(double x, int steps = 1)
{
    for (int i = 0; i < steps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}
} // namespace detail

// Radius is max(radius, 1e-20) and the result is widened by at least one step.
Interval ia_from_value(double v, double radius = 1e-20);

// Exact-as-possible enclosure of pi.
Interval ia_pi();

enum class ArithOp { add, sub, mul, div };
Interval ia_arith(ArithOp op, const Interval& a, const Interval& b);

struct SqrtResult {
    Interval value;
    bool clamped = false;
};
// Clamps a negative lower bound to 0 (and reports it); throws
// NegativeArgument when the whole interval is negative.
SqrtResult ia_sqrt_ex(const Interval& a);
Interval ia_sqrt(const Interval& a);

Interval ia_sin(const Interval& a);
Interval ia_cos(const Interval& a);
// Polar angle of (x, y); requires the box to stay clear of the origin and
// of the negative x axis branch cut (y interval straddling 0 with x < 0).
Interval ia_atan2(const Interval& y, const Interval& x);

SignVerdict ia_sign(const Interval& a);

Interval hull(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, const Interval& b) { return ia_arith(ArithOp::add, a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return ia_arith(ArithOp::sub, a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return ia_arith(ArithOp::mul, a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return ia_arith(ArithOp::div, a, b); }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

// ADL hooks so generic code can write `sqrt(x)` for double and Interval alike.
inline Interval sqrt(const Interval& a) { return ia_sqrt(a); }
inline Interval sin(const Interval& a) { return ia_sin(a); }
inline Interval cos(const Interval& a) { return ia_cos(a); }
inline Interval atan2(const Interval& y, const Interval& x) { return ia_atan2(y, x); }
Interval sqr(const Interval& a);

std::ostream& operator<<(std::ostream& os, const Interval& a);

// Helpers shared by code templated on the scalar type.
inline double midpoint(double v) { return v; }
inline double midpoint(const Interval& v) { return v.mid(); }
inline double radius_of(double) { return 0.0; }
inline double radius_of(const Interval& v) { return v.rad(); }
inline bool certainly_positive(double v) { return v > 0.0; }
inline bool certainly_positive(const Interval& v) { return v.lo > 0.0; }
inline double sqr(double v) { return v * v; }

} // namespace flatkb
