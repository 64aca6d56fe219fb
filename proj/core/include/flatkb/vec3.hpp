#pragma once

#include "flatkb/interval.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flatkb {

// Small 3-vector templated on the scalar so that the same construction code
// runs in plain floating point and in interval arithmetic.
template <class T>
struct V3 {
    T x{}, y{}, z{};

    constexpr V3() = default;
    constexpr V3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}
    template <class U>
    explicit V3(const V3<U>& o) : x(T(o.x)), y(T(o.y)), z(T(o.z)) {}

    T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    V3& operator+=(const V3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    V3& operator-=(const V3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

using Vec3 = V3<double>;
using Point3 = V3<double>;
using IVec3 = V3<Interval>;

template <class T> V3<T> operator+(const V3<T>& a, const V3<T>& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
template <class T> V3<T> operator-(const V3<T>& a, const V3<T>& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
template <class T> V3<T> operator-(const V3<T>& a) { return {-a.x, -a.y, -a.z}; }
template <class T> V3<T> operator*(const T& s, const V3<T>& a) { return {s * a.x, s * a.y, s * a.z}; }
template <class T> V3<T> operator*(const V3<T>& a, const T& s) { return {s * a.x, s * a.y, s * a.z}; }
template <class T> V3<T> operator/(const V3<T>& a, const T& s) { return {a.x / s, a.y / s, a.z / s}; }

template <class T> T dot(const V3<T>& a, const V3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
template <class T> V3<T> cross(const V3<T>& a, const V3<T>& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
template <class T> T norm2(const V3<T>& a)
{
    return sqr(a.x) + sqr(a.y) + sqr(a.z);
}
template <class T> T norm(const V3<T>& a)
{
    using std::sqrt;
    return sqrt(norm2(a));
}

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

inline Vec3 mid(const IVec3& a) { return {a.x.mid(), a.y.mid(), a.z.mid()}; }
inline Vec3 mid(const Vec3& a) { return a; }
inline IVec3 ia_from_vec(const Vec3& v, double radius = 1e-20)
{
    return {ia_from_value(v.x, radius), ia_from_value(v.y, radius), ia_from_value(v.z, radius)};
}
inline bool contains(const IVec3& box, const Vec3& p)
{
    return box.x.contains(p.x) && box.y.contains(p.y) && box.z.contains(p.z);
}
inline double max_rad(const IVec3& a) { return std::max({a.x.rad(), a.y.rad(), a.z.rad()}); }

// Names used by the interval module's public contract.
inline Interval ia_dot3(const IVec3& a, const IVec3& b) { return dot(a, b); }
inline IVec3 ia_cross3(const IVec3& a, const IVec3& b) { return cross(a, b); }
inline Interval ia_norm3(const IVec3& a) { return norm(a); }

inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Lift a plain constant into the scalar type T.
template <class T> T lift(double v) { return T(v); }

} // namespace flatkb
