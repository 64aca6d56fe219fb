#pragma once

#include "flatkb/interval.hpp"

#include <array>

namespace flatkb {

// Interval value with an enclosure of its gradient in two inputs
// (forward-mode differentiation). Used for mean-value enclosures, which
// avoid the width blow-up of plain interval evaluation in long recursions.
struct IGrad2 {
    Interval v;
    std::array<Interval, 2> d{Interval(0.0), Interval(0.0)};

    IGrad2() = default;
    IGrad2(double x) : v(x) {}
    IGrad2(const Interval& x) : v(x) {}
    IGrad2(const Interval& x, int var) : v(x) { d[static_cast<size_t>(var)] = Interval(1.0); }
    IGrad2(const Interval& x, const std::array<Interval, 2>& g) : v(x), d(g) {}

    IGrad2& operator+=(const IGrad2& o) { return *this = {v + o.v, {d[0] + o.d[0], d[1] + o.d[1]}}; }
    IGrad2& operator-=(const IGrad2& o) { return *this = {v - o.v, {d[0] - o.d[0], d[1] - o.d[1]}}; }
};

inline IGrad2 operator+(const IGrad2& a, const IGrad2& b) { return {a.v + b.v, {a.d[0] + b.d[0], a.d[1] + b.d[1]}}; }
inline IGrad2 operator-(const IGrad2& a, const IGrad2& b) { return {a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1]}}; }
inline IGrad2 operator-(const IGrad2& a) { return {-a.v, {-a.d[0], -a.d[1]}}; }
inline IGrad2 operator*(const IGrad2& a, const IGrad2& b)
{
    return {a.v * b.v, {a.d[0] * b.v + a.v * b.d[0], a.d[1] * b.v + a.v * b.d[1]}};
}
inline IGrad2 operator/(const IGrad2& a, const IGrad2& b)
{
    const Interval q = a.v / b.v;
    return {q, {(a.d[0] - q * b.d[0]) / b.v, (a.d[1] - q * b.d[1]) / b.v}};
}
inline IGrad2 sqrt(const IGrad2& a)
{
    const Interval r = ia_sqrt(a.v);
    const Interval two_r = Interval(2.0) * r;
    return {r, {a.d[0] / two_r, a.d[1] / two_r}};
}
inline IGrad2 sqr(const IGrad2& a)
{
    const Interval two_v = Interval(2.0) * a.v;
    return {sqr(a.v), {two_v * a.d[0], two_v * a.d[1]}};
}
inline double midpoint(const IGrad2& a) { return a.v.mid(); }

} // namespace flatkb
