#pragma once

#include "flatkb/frames.hpp"

#include <array>

namespace flatkb {

template <class T>
struct ZeeParamsT {
    T alpha{}, beta{}, gamma{}, delta{};
};
using ZeeParams = ZeeParamsT<double>;

// Abstract vertices of the four-face surface S, in this order.
enum ZeeVertex { zw = 0, zx, zy, zz, za, zb, zc, zd };

template <class T>
struct ZeeBridgeT {
    BridgeFrameT<T> frame;
    ZeeParamsT<T> params;
    V3<T> A, B, C, D;

    // Placed images of w, x, y, z, a, b, c, d.
    std::array<V3<T>, 8> points() const { return {frame.W, frame.X, frame.Y, frame.Z, A, B, C, D}; }
    // trapezoid [w,a,b,x], triangles [a,c,b] and [b,c,d], trapezoid [c,y,z,d]
    static constexpr std::array<std::array<int, 4>, 4> faces{
        {{zw, za, zb, zx}, {za, zc, zb, -1}, {zb, zc, zd, -1}, {zc, zy, zz, zd}}};
};
using ZeeBridge = ZeeBridgeT<double>;
using IZeeBridge = ZeeBridgeT<Interval>;

// One recursion step: bar-beta, bar-delta and the discriminant at (alpha, gamma).
template <class T>
struct ZeeStep {
    T beta{}, delta{}, ac{}, disc{};
};

template <class T> T bar_beta(const BridgeFrameT<T>& f, const T& alpha, const T& gamma);
template <class T> T bar_delta(const BridgeFrameT<T>& f, const T& alpha, const T& gamma);
template <class T> T discriminant(const BridgeFrameT<T>& f, const T& alpha, const T& gamma);
template <class T> ZeeStep<T> zee_step(const BridgeFrameT<T>& f, const T& alpha, const T& gamma);
// Mean-value enclosure of one step, f(mid) + J(box) (x - mid), intersected
// with the plain interval evaluation. Used by the certified recursion.
ZeeStep<Interval> zee_step_centered(const IBridgeFrame& f, const Interval& alpha, const Interval& gamma);
inline ZeeStep<double> zee_step_tight(const BridgeFrame& f, double alpha, double gamma) { return zee_step(f, alpha, gamma); }
inline ZeeStep<Interval> zee_step_tight(const IBridgeFrame& f, const Interval& alpha, const Interval& gamma)
{
    return zee_step_centered(f, alpha, gamma);
}

template <class T> ZeeBridgeT<T> build_zee_bridge(const BridgeFrameT<T>& f, const ZeeParamsT<T>& p);

enum class RectVerdict { RECTANGULAR, NOT_RECTANGULAR, UNCERTIFIED };
const char* to_string(RectVerdict v);

struct RectReport {
    RectVerdict verdict = RectVerdict::UNCERTIFIED;
    // alpha+|AC|+gamma - (beta+|BD|+delta) and |BC| - sqrt(1+(|AC|+alpha-beta)^2)
    Interval residual_length;
    Interval residual_diagonal;
    double width = 0.0;  // alpha + |AC| + gamma
    double height = 1.0;
};

// Float check: both residuals below 1e-9 in absolute value.
RectReport check_rectangular(const ZeeBridge& zb);
// Certified check: both residual enclosures contain 0 with width < 1e-6.
RectReport check_rectangular(const IZeeBridge& zb);

// Sufficient condition: B outside the half-infinite unit cylinder about the
// ray from C in direction t.
bool cylinder_criterion(const BridgeFrame& f, double alpha, double gamma);

} // namespace flatkb
