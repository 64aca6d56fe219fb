#pragma once

#include "flatkb/vec3.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace flatkb {

// An angle given either in radians or as an exact rational multiple of pi,
// so that certified runs can enclose e.g. 3pi/2 without a rounding step.
struct Angle {
    double radians = 0.0;
    long pi_num = 0;
    long pi_den = 0; // 0 means "plain radians"

    static Angle rad(double r) { return {r, 0, 0}; }
    static Angle pi_frac(long num, long den);
    bool is_pi_fraction() const { return pi_den != 0; }
    template <class T> T as() const;
    std::string str() const;
};

template <class T> T pi_as();
template <> inline double pi_as<double>() { return 3.14159265358979323846; }
template <> inline Interval pi_as<Interval>() { return ia_pi(); }

// An input quantity: the double for float runs, an enclosure of radius
// `radius` (at least one ulp) for certified runs.
template <class T> T input_scalar(double v, double radius = 1e-20);
template <> inline double input_scalar<double>(double v, double) { return v; }
template <> inline Interval input_scalar<Interval>(double v, double r) { return ia_from_value(v, r); }

enum class Handedness { RIGHT, LEFT };
inline Handedness flip(Handedness h) { return h == Handedness::RIGHT ? Handedness::LEFT : Handedness::RIGHT; }
const char* to_string(Handedness h);

template <class T>
struct RigidMotionT {
    std::array<std::array<T, 3>, 3> R{{{T(1), T(0), T(0)}, {T(0), T(1), T(0)}, {T(0), T(0), T(1)}}};
    V3<T> t{};

    V3<T> apply_point(const V3<T>& p) const { return rotate(p) + t; }
    V3<T> rotate(const V3<T>& v) const
    {
        return {R[0][0] * v.x + R[0][1] * v.y + R[0][2] * v.z, R[1][0] * v.x + R[1][1] * v.y + R[1][2] * v.z,
                R[2][0] * v.x + R[2][1] * v.y + R[2][2] * v.z};
    }
    // this after other
    RigidMotionT compose(const RigidMotionT& other) const;

    static RigidMotionT identity() { return {}; }
    static RigidMotionT translation(const V3<T>& d);
    // Counterclockwise rotation about +z by `angle` (viewed from above).
    static RigidMotionT rotation_z(const T& angle);
    // Rotation about an arbitrary unit axis (Rodrigues).
    static RigidMotionT rotation(const V3<double>& axis, double angle);
};
using RigidMotion = RigidMotionT<double>;

// Checks R^T R = I and det R = 1 within tol.
bool is_rigid(const RigidMotion& m, double tol = 1e-12);

template <class T>
struct NStarT {
    int n = 0;
    T phi{};           // interior angle at even-indexed vertices
    V3<T> center{};
    V3<T> normal{};
    std::vector<V3<T>> v; // 2n vertices
    Handedness hand = Handedness::RIGHT;

    int size() const { return static_cast<int>(v.size()); }
    int wrap(int i) const
    {
        const int m = size();
        return ((i % m) + m) % m;
    }
    const V3<T>& operator[](int i) const { return v[static_cast<size_t>(wrap(i))]; }
};
using NStar = NStarT<double>;
using INStar = NStarT<Interval>;

template <class T>
struct BridgeFrameT {
    V3<T> W, X, Y, Z, s, t;
    V3<T> u() const { return X - W; }
    V3<T> v() const { return Z - Y; }
};
using BridgeFrame = BridgeFrameT<double>;
using IBridgeFrame = BridgeFrameT<Interval>;

enum class FrameKind { BEND, VEE, DERIVED_COAXIAL };
const char* to_string(FrameKind k);

template <class T>
struct TubeFrameT {
    NStarT<T> P, Q;
    V3<T> s, t;
    FrameKind kind = FrameKind::VEE;
    int n() const { return P.n; }
};
using TubeFrame = TubeFrameT<double>;
using ITubeFrame = TubeFrameT<Interval>;

// Interior angles of an n-star alternate phi (even) and 2pi(n-1)/n - phi (odd).
template <class T> T complementary_angle(int n, const T& phi);

template <class T>
NStarT<T> make_nstar(int n, const T& phi, const V3<T>& center, const V3<T>& normal, const V3<T>& p0_direction,
                     Handedness hand);

// Theta-parameterized bend/vee frame. Vertex P_0 points along -k and carries
// the complementary angle, so the odd vertices carry phi (see README).
template <class T>
TubeFrameT<T> make_tube_frame(FrameKind kind, int n, const T& L, const T& theta, const T& phi, const T& psi);

// Concentric coplanar frame: t = -s, same center. P has
// angle phi at P_0, Q is regular (angle pi at Q_0), same winding.
template <class T>
TubeFrameT<T> make_coaxial_frame(int n, const T& phi, const V3<T>& center, const V3<T>& s, const V3<T>& p0_direction);

template <class T> NStarT<T> apply_rigid_motion(const RigidMotionT<T>& m, const NStarT<T>& s);
template <class T> BridgeFrameT<T> apply_rigid_motion(const RigidMotionT<T>& m, const BridgeFrameT<T>& f);
template <class T> TubeFrameT<T> apply_rigid_motion(const RigidMotionT<T>& m, const TubeFrameT<T>& f);

// (-P)_i = P_{-i}: keeps P_0, reverses the winding.
template <class T> NStarT<T> reverse_nstar(const NStarT<T>& s);
// Relabels so that new vertex i is old vertex i + shift.
template <class T> NStarT<T> shift_nstar(const NStarT<T>& s, int shift);

template <class T> BridgeFrameT<T> reverse_bridge_frame(const BridgeFrameT<T>& f);
template <class T> BridgeFrameT<T> bridge_frame(const TubeFrameT<T>& tf, int i);
template <class T> std::vector<BridgeFrameT<T>> bridge_frames(const TubeFrameT<T>& tf);

// Handedness measured from geometry: sign of normal . ((P_0-c) x (P_1-c)).
Handedness measured_handedness(const NStar& s);

// Invariant checks; return an empty string or a description of the failure.
std::string check_nstar(const NStar& s, double tol = 1e-12);
std::string check_bridge_frame(const BridgeFrame& f, double tol = 1e-12);

// Interior angle at vertex i (plain floating point).
double nstar_interior_angle(const NStar& s, int i);

} // namespace flatkb
