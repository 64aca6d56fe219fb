#include "flatkb/interval.hpp"

#include "flatkb/errors.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>

namespace flatkb {

using detail::down;
using detail::up;

const char* to_string(SignVerdict s)
{
    switch (s) {
    case SignVerdict::POSITIVE: return "POSITIVE";
    case SignVerdict::NEGATIVE: return "NEGATIVE";
    case SignVerdict::ZERO_UNCERTIFIABLE: return "ZERO_UNCERTIFIABLE";
    }
    return "?";
}

Interval ia_from_value(double v, double radius)
{
    const double r = std::max(radius, 1e-20);
    // v - r and v + r are rounded to nearest; one more step covers the
    // rounding and guarantees at least one ulp of slack on each side.
    return {down(v - r), up(v + r)};
}

Interval ia_pi()
{
    // std::numbers::pi is the double nearest to pi, which is below pi.
    return {down(std::numbers::pi), up(std::numbers::pi)};
}

namespace {

// Directed rounding from round-to-nearest plus an error-free remainder: the
// result only moves when the operation was inexact, and then only toward the
// side on which the exact value lies.
double add_dn(double a, double b)
{
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err < 0.0 ? down(s) : s;
}
double add_up(double a, double b)
{
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err > 0.0 ? up(s) : s;
}
double mul_dn(double a, double b)
{
    const double p = a * b;
    return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}
double mul_up(double a, double b)
{
    const double p = a * b;
    return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}
// exact a/b - q has the sign of (a - q*b)/b, and a - q*b is exact via fma
double div_dn(double a, double b)
{
    const double q = a / b;
    const double r = -std::fma(q, b, -a);
    return (r != 0.0 && ((r < 0.0) != (b < 0.0))) ? down(q) : q;
}
double div_up(double a, double b)
{
    const double q = a / b;
    const double r = -std::fma(q, b, -a);
    return (r != 0.0 && ((r > 0.0) != (b < 0.0))) ? up(q) : q;
}

} // namespace

Interval ia_arith(ArithOp op, const Interval& a, const Interval& b)
{
    switch (op) {
    case ArithOp::add: return {add_dn(a.lo, b.lo), add_up(a.hi, b.hi)};
    case ArithOp::sub: return {add_dn(a.lo, -b.hi), add_up(a.hi, -b.lo)};
    case ArithOp::mul: {
        const double l = std::min({mul_dn(a.lo, b.lo), mul_dn(a.lo, b.hi), mul_dn(a.hi, b.lo), mul_dn(a.hi, b.hi)});
        const double h = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
        return {l, h};
    }
    case ArithOp::div: {
        if (b.lo <= 0.0 && b.hi >= 0.0)
            throw Error(ErrorCode::DivisionByIntervalContainingZero, "divisor interval contains 0");
        const double l = std::min({div_dn(a.lo, b.lo), div_dn(a.lo, b.hi), div_dn(a.hi, b.lo), div_dn(a.hi, b.hi)});
        const double h = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
        return {l, h};
    }
    }
    return {};
}

Interval hull(const Interval& a, const Interval& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval sqr(const Interval& a)
{
    if (a.lo >= 0.0) return {mul_dn(a.lo, a.lo), mul_up(a.hi, a.hi)};
    if (a.hi <= 0.0) return {mul_dn(a.hi, a.hi), mul_up(a.lo, a.lo)};
    return {0.0, std::max(mul_up(a.lo, a.lo), mul_up(a.hi, a.hi))};
}

SqrtResult ia_sqrt_ex(const Interval& a)
{
    if (a.hi < 0.0) throw Error(ErrorCode::NegativeArgument, "sqrt of a negative interval");
    SqrtResult r;
    double lo = a.lo;
    if (lo < 0.0) {
        lo = 0.0;
        r.clamped = true;
    }
    // sqrt is correctly rounded; the fma residual tells which side we are on
    const double sl = std::sqrt(lo), sh = std::sqrt(a.hi);
    r.value.lo = std::fma(sl, sl, -lo) > 0.0 ? down(sl) : sl;
    r.value.hi = std::fma(sh, sh, -a.hi) < 0.0 ? up(sh) : sh;
    return r;
}

Interval ia_sqrt(const Interval& a) { return ia_sqrt_ex(a).value; }

namespace {

constexpr int kTransSteps = 2;

// Enclosure of sin over [lo, hi] given the critical points pi/2 + k*pi.
Interval sin_impl(double lo, double hi)
{
    if (hi - lo >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
    const double s1 = std::sin(lo), s2 = std::sin(hi);
    double l = std::min(s1, s2), h = std::max(s1, s2);
    // Critical points inside the (slightly padded) range force the extreme.
    const double pi = std::numbers::pi;
    const double pad = 1e-12 * std::max(1.0, std::fabs(hi));
    const double k0 = std::ceil((lo - pad - pi / 2) / pi);
    const double k1 = std::floor((hi + pad - pi / 2) / pi);
    for (double k = k0; k <= k1; k += 1.0) {
        const bool is_max = std::fmod(std::fabs(k), 2.0) == 0.0;
        if (is_max) h = 1.0;
        else l = -1.0;
    }
    return {std::max(-1.0, down(l, kTransSteps)), std::min(1.0, up(h, kTransSteps))};
}

} // namespace

Interval ia_sin(const Interval& a) { return sin_impl(a.lo, a.hi); }

Interval ia_cos(const Interval& a)
{
    // cos(x) = sin(x + pi/2); evaluate directly to avoid widening by pi.
    if (a.hi - a.lo >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
    const double c1 = std::cos(a.lo), c2 = std::cos(a.hi);
    double l = std::min(c1, c2), h = std::max(c1, c2);
    const double pi = std::numbers::pi;
    const double pad = 1e-12 * std::max(1.0, std::fabs(a.hi));
    const double k0 = std::ceil((a.lo - pad) / pi);
    const double k1 = std::floor((a.hi + pad) / pi);
    for (double k = k0; k <= k1; k += 1.0) {
        if (std::fmod(std::fabs(k), 2.0) == 0.0) h = 1.0;
        else l = -1.0;
    }
    return {std::max(-1.0, down(l, kTransSteps)), std::min(1.0, up(h, kTransSteps))};
}

Interval ia_atan2(const Interval& y, const Interval& x)
{
    if (y.lo <= 0.0 && y.hi >= 0.0 && x.lo <= 0.0)
        throw Error(ErrorCode::InvariantViolation, "atan2 box touches the origin or the branch cut");
    const double c[4] = {std::atan2(y.lo, x.lo), std::atan2(y.lo, x.hi), std::atan2(y.hi, x.lo),
                         std::atan2(y.hi, x.hi)};
    return {down(*std::min_element(c, c + 4), kTransSteps), up(*std::max_element(c, c + 4), kTransSteps)};
}

SignVerdict ia_sign(const Interval& a)
{
    if (a.lo > 0.0) return SignVerdict::POSITIVE;
    if (a.hi < 0.0) return SignVerdict::NEGATIVE;
    return SignVerdict::ZERO_UNCERTIFIABLE;
}

std::ostream& operator<<(std::ostream& os, const Interval& a)
{
    return os << '[' << a.lo << ", " << a.hi << ']';
}

} // namespace flatkb
