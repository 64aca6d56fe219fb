#include "flatkb/frames.hpp"

#include "flatkb/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

namespace flatkb {

const char* to_string(Handedness h) { return h == Handedness::RIGHT ? "RIGHT" : "LEFT"; }

const char* to_string(FrameKind k)
{
    switch (k) {
    case FrameKind::BEND: return "BEND";
    case FrameKind::VEE: return "VEE";
    case FrameKind::DERIVED_COAXIAL: return "DERIVED_COAXIAL";
    }
    return "?";
}

Angle Angle::pi_frac(long num, long den)
{
    if (den == 0) throw Error(ErrorCode::ParameterError, "zero denominator in pi fraction");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return {std::numbers::pi * static_cast<double>(num) / static_cast<double>(den), num, den};
}

template <> double Angle::as<double>() const { return radians; }

template <> Interval Angle::as<Interval>() const
{
    if (!is_pi_fraction()) return ia_from_value(radians);
    return ia_pi() * Interval(static_cast<double>(pi_num)) / Interval(static_cast<double>(pi_den));
}

std::string Angle::str() const
{
    std::ostringstream os;
    os.precision(17);
    if (is_pi_fraction()) {
        if (pi_num != 1) os << pi_num;
        os << "pi";
        if (pi_den != 1) os << '/' << pi_den;
    }
    else {
        os << radians;
    }
    return os.str();
}

// ---- rigid motions ---------------------------------------------------------

template <class T>
RigidMotionT<T> RigidMotionT<T>::compose(const RigidMotionT& o) const
{
    RigidMotionT r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.R[i][j] = R[i][0] * o.R[0][j] + R[i][1] * o.R[1][j] + R[i][2] * o.R[2][j];
    r.t = apply_point(o.t);
    return r;
}

template <class T>
RigidMotionT<T> RigidMotionT<T>::translation(const V3<T>& d)
{
    RigidMotionT r;
    r.t = d;
    return r;
}

template <class T>
RigidMotionT<T> RigidMotionT<T>::rotation_z(const T& angle)
{
    using std::cos;
    using std::sin;
    RigidMotionT r;
    const T c = cos(angle), s = sin(angle);
    r.R[0][0] = c;
    r.R[0][1] = -s;
    r.R[1][0] = s;
    r.R[1][1] = c;
    return r;
}

template <class T>
RigidMotionT<T> RigidMotionT<T>::rotation(const V3<double>& axis, double angle)
{
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle), C = 1 - c;
    RigidMotionT r;
    const double m[3][3] = {{c + k.x * k.x * C, k.x * k.y * C - k.z * s, k.x * k.z * C + k.y * s},
                            {k.y * k.x * C + k.z * s, c + k.y * k.y * C, k.y * k.z * C - k.x * s},
                            {k.z * k.x * C - k.y * s, k.z * k.y * C + k.x * s, c + k.z * k.z * C}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.R[i][j] = T(m[i][j]);
    return r;
}

bool is_rigid(const RigidMotion& m, double tol)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += m.R[k][i] * m.R[k][j];
            if (std::fabs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    const auto& R = m.R;
    const double det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) -
                       R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
                       R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
    return std::fabs(det - 1.0) <= tol;
}

// ---- n-stars -----------------------------------------------------------------

template <class T> T complementary_angle(int n, const T& phi)
{
    return T(2.0 * (n - 1)) * pi_as<T>() / T(static_cast<double>(n)) - phi;
}

template <class T>
NStarT<T> make_nstar(int n, const T& phi, const V3<T>& center, const V3<T>& normal, const V3<T>& p0_direction,
                     Handedness hand)
{
    using std::cos;
    using std::sin;
    if (n < 2) throw Error(ErrorCode::AngleOutOfRange, "n-star needs n >= 2");
    const double phim = midpoint(phi);
    const double max_angle = 2.0 * std::numbers::pi * (n - 1) / n;
    if (!(phim > 0.0 && phim < max_angle))
        throw Error(ErrorCode::AngleOutOfRange, "phi must lie in (0, 2pi(n-1)/n)");
    if (std::fabs(midpoint(dot(normal, p0_direction))) > 1e-12)
        throw Error(ErrorCode::NonOrthogonalDirection, "p0 direction is not orthogonal to the normal");

    const T pi = pi_as<T>();
    const T nn = T(static_cast<double>(n));
    const T half = T(0.5);
    const T sin_step = sin(pi / nn);
    // law of sines on the triangle (center, P_i, P_{i+1}) with unit base
    const T r_even = sin(pi - pi / nn - half * phi) / sin_step;
    const T r_odd = sin(half * phi) / sin_step;

    const V3<T> ax = hand == Handedness::RIGHT ? normal : -normal;
    const V3<T> e = cross(ax, p0_direction);

    NStarT<T> s;
    s.n = n;
    s.phi = phi;
    s.center = center;
    s.normal = normal;
    s.hand = hand;
    s.v.reserve(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        const T ang = T(static_cast<double>(i)) * pi / nn;
        const T r = (i % 2 == 0) ? r_even : r_odd;
        s.v.push_back(center + r * (cos(ang) * p0_direction + sin(ang) * e));
    }
    return s;
}

template <class T>
TubeFrameT<T> make_tube_frame(FrameKind kind, int n, const T& L, const T& theta, const T& phi, const T& psi)
{
    using std::cos;
    using std::sin;
    if (kind == FrameKind::DERIVED_COAXIAL)
        throw Error(ErrorCode::ParameterError, "coaxial frames are built with make_coaxial_frame");
    if (!(midpoint(L) > 0.0)) throw Error(ErrorCode::ParameterError, "L must be positive");
    const double th = midpoint(theta);
    if (th < -1e-15 || th > std::numbers::pi + 1e-15) throw Error(ErrorCode::AngleOutOfRange, "theta outside [0, pi]");

    const T zero(0.0);
    const V3<T> down_k{zero, zero, T(-1.0)};
    TubeFrameT<T> tf;
    tf.kind = kind;
    tf.s = V3<T>{T(-1.0), zero, zero};
    tf.t = V3<T>{cos(theta), sin(theta), zero};
    tf.P = make_nstar<T>(n, complementary_angle(n, phi), V3<T>{L, zero, zero}, tf.s, down_k, Handedness::RIGHT);
    tf.Q = make_nstar<T>(n, complementary_angle(n, psi), V3<T>{L * cos(theta), L * sin(theta), zero}, tf.t, down_k,
                         kind == FrameKind::BEND ? Handedness::RIGHT : Handedness::LEFT);
    return tf;
}

template <class T>
TubeFrameT<T> make_coaxial_frame(int n, const T& phi, const V3<T>& center, const V3<T>& s, const V3<T>& p0_direction)
{
    TubeFrameT<T> tf;
    tf.kind = FrameKind::DERIVED_COAXIAL;
    tf.s = s;
    tf.t = -s;
    tf.P = make_nstar<T>(n, phi, center, s, p0_direction, Handedness::RIGHT);
    // same winding as P; measured against t = -s that is the opposite hand
    tf.Q = make_nstar<T>(n, pi_as<T>(), center, tf.t, p0_direction, Handedness::LEFT);
    return tf;
}

template <class T> NStarT<T> apply_rigid_motion(const RigidMotionT<T>& m, const NStarT<T>& s)
{
    NStarT<T> r = s;
    r.center = m.apply_point(s.center);
    r.normal = m.rotate(s.normal);
    for (auto& p : r.v) p = m.apply_point(p);
    return r;
}

template <class T> BridgeFrameT<T> apply_rigid_motion(const RigidMotionT<T>& m, const BridgeFrameT<T>& f)
{
    return {m.apply_point(f.W), m.apply_point(f.X), m.apply_point(f.Y), m.apply_point(f.Z), m.rotate(f.s),
            m.rotate(f.t)};
}

template <class T> TubeFrameT<T> apply_rigid_motion(const RigidMotionT<T>& m, const TubeFrameT<T>& f)
{
    TubeFrameT<T> r = f;
    r.P = apply_rigid_motion(m, f.P);
    r.Q = apply_rigid_motion(m, f.Q);
    r.s = m.rotate(f.s);
    r.t = m.rotate(f.t);
    return r;
}

template <class T> NStarT<T> reverse_nstar(const NStarT<T>& s)
{
    NStarT<T> r = s;
    for (int i = 0; i < s.size(); ++i) r.v[static_cast<size_t>(i)] = s[-i];
    r.hand = flip(s.hand);
    return r;
}

template <class T> NStarT<T> shift_nstar(const NStarT<T>& s, int shift)
{
    NStarT<T> r = s;
    for (int i = 0; i < s.size(); ++i) r.v[static_cast<size_t>(i)] = s[i + shift];
    // an odd shift swaps the roles of the two angles
    if (((shift % 2) + 2) % 2 == 1) r.phi = complementary_angle(s.n, s.phi);
    return r;
}

template <class T> BridgeFrameT<T> reverse_bridge_frame(const BridgeFrameT<T>& f)
{
    return {f.Z, f.Y, f.X, f.W, -f.t, -f.s};
}

template <class T> BridgeFrameT<T> bridge_frame(const TubeFrameT<T>& tf, int i)
{
    const int m = tf.P.size();
    const int ii = ((i % m) + m) % m;
    if (ii % 2 == 1) return {tf.P[ii], tf.P[ii - 1], tf.Q[ii], tf.Q[ii - 1], tf.s, tf.t};
    return {tf.Q[ii], tf.Q[ii - 1], tf.P[ii], tf.P[ii - 1], -tf.t, -tf.s};
}

template <class T> std::vector<BridgeFrameT<T>> bridge_frames(const TubeFrameT<T>& tf)
{
    std::vector<BridgeFrameT<T>> out;
    for (int i = 0; i < tf.P.size(); ++i) {
        out.push_back(bridge_frame(tf, i));
        if constexpr (std::is_same_v<T, double>) {
            const std::string err = check_bridge_frame(out.back());
            if (!err.empty())
                throw Error(ErrorCode::InvariantViolation, "bridge frame " + std::to_string(i) + ": " + err);
        }
    }
    return out;
}

Handedness measured_handedness(const NStar& s)
{
    const double d = dot(s.normal, cross(s[0] - s.center, s[1] - s.center));
    return d > 0 ? Handedness::RIGHT : Handedness::LEFT;
}

double nstar_interior_angle(const NStar& s, int i)
{
    // winding axis: the direction about which the labels turn counterclockwise
    const Vec3 ax = s.hand == Handedness::RIGHT ? s.normal : -s.normal;
    const Vec3 a = s[i] - s[i - 1];
    const Vec3 b = s[i + 1] - s[i];
    const double turn = std::atan2(dot(ax, cross(a, b)), dot(a, b));
    return std::numbers::pi - turn;
}

std::string check_nstar(const NStar& s, double tol)
{
    std::ostringstream err;
    const int m = s.size();
    if (m != 2 * s.n) err << "vertex count " << m << " != 2n; ";
    for (int i = 0; i < m; ++i) {
        if (std::fabs(dist(s[i], s[i + 1]) - 1.0) > tol) err << "edge " << i << " not unit; ";
        if (std::fabs(dot(s[i] - s.center, s.normal)) > tol) err << "vertex " << i << " off plane; ";
    }
    const double other = complementary_angle(s.n, s.phi);
    for (int i = 0; i < m; ++i) {
        const double want = i % 2 == 0 ? s.phi : other;
        if (std::fabs(nstar_interior_angle(s, i) - want) > 1e-10) err << "angle " << i << " off; ";
    }
    if (measured_handedness(s) != s.hand) err << "handedness mismatch; ";
    return err.str();
}

std::string check_bridge_frame(const BridgeFrame& f, double tol)
{
    std::ostringstream err;
    if (std::fabs(norm(f.u()) - 1.0) > tol) err << "|X-W| != 1; ";
    if (std::fabs(norm(f.v()) - 1.0) > tol) err << "|Z-Y| != 1; ";
    if (std::fabs(dot(f.s, f.u())) > tol) err << "s not orthogonal to u; ";
    if (std::fabs(dot(f.t, f.v())) > tol) err << "t not orthogonal to v; ";
    if (std::fabs(norm(f.s) - 1.0) > tol) err << "|s| != 1; ";
    if (std::fabs(norm(f.t) - 1.0) > tol) err << "|t| != 1; ";
    return err.str();
}

#define FLATKB_INSTANTIATE(T)                                                                                          \
    template struct RigidMotionT<T>;                                                                                   \
    template T complementary_angle<T>(int, const T&);                                                                  \
    template NStarT<T> make_nstar<T>(int, const T&, const V3<T>&, const V3<T>&, const V3<T>&, Handedness);            \
    template TubeFrameT<T> make_tube_frame<T>(FrameKind, int, const T&, const T&, const T&, const T&);                 \
    template TubeFrameT<T> make_coaxial_frame<T>(int, const T&, const V3<T>&, const V3<T>&, const V3<T>&);            \
    template NStarT<T> apply_rigid_motion<T>(const RigidMotionT<T>&, const NStarT<T>&);                                \
    template BridgeFrameT<T> apply_rigid_motion<T>(const RigidMotionT<T>&, const BridgeFrameT<T>&);                    \
    template TubeFrameT<T> apply_rigid_motion<T>(const RigidMotionT<T>&, const TubeFrameT<T>&);                        \
    template NStarT<T> reverse_nstar<T>(const NStarT<T>&);                                                             \
    template NStarT<T> shift_nstar<T>(const NStarT<T>&, int);                                                          \
    template BridgeFrameT<T> reverse_bridge_frame<T>(const BridgeFrameT<T>&);                                          \
    template BridgeFrameT<T> bridge_frame<T>(const TubeFrameT<T>&, int);                                               \
    template std::vector<BridgeFrameT<T>> bridge_frames<T>(const TubeFrameT<T>&);

FLATKB_INSTANTIATE(double)
FLATKB_INSTANTIATE(Interval)

} // namespace flatkb
