#include "flatkb/zee_bridge.hpp"

#include "flatkb/errors.hpp"
#include "flatkb/gradient.hpp"

#include <algorithm>
#include <cmath>

namespace flatkb {

namespace {

// Rejects denominators that are zero within 1e-12 (or, for intervals, that
// cannot be separated from zero).
void require_nonzero(double d, const char* what)
{
    if (std::fabs(d) <= 1e-12) throw Error(ErrorCode::DomainRayDegeneracy, what);
}
void require_nonzero(const Interval& d, const char* what)
{
    if (std::fabs(d.mid()) <= 1e-12 || d.contains(0.0)) throw Error(ErrorCode::DomainRayDegeneracy, what);
}

void require_nonzero(const IGrad2& d, const char* what) { require_nonzero(d.v, what); }

} // namespace

template <class T> ZeeStep<T> zee_step(const BridgeFrameT<T>& f, const T& alpha, const T& gamma)
{
    const V3<T> u = f.u(), v = f.v();
    const V3<T> A = f.W + alpha * f.s;
    const V3<T> C = f.Y - gamma * f.t;
    const V3<T> AC = C - A;
    ZeeStep<T> r;
    r.ac = norm(AC);
    const T den_b = r.ac - dot(AC, f.s);
    require_nonzero(den_b, "C lies on the ray from A in direction s");
    r.beta = alpha + dot(AC, u) / den_b;

    const V3<T> B = f.X + r.beta * f.s;
    const V3<T> BC = C - B;
    const T ell = alpha - r.beta + r.ac;
    const T den_d = dot(BC, f.t) - ell;
    require_nonzero(den_d, "BC.t equals alpha - beta + |AC|");
    r.delta = gamma + (dot(BC, v) + T(1.0)) / den_d;
    r.disc = alpha - r.beta + r.ac + gamma - r.delta;
    return r;
}

ZeeStep<Interval> zee_step_centered(const IBridgeFrame& f, const Interval& alpha, const Interval& gamma)
{
    const Interval am(alpha.mid()), gm(gamma.mid());
    const ZeeStep<Interval> c = zee_step(f, am, gm);
    const BridgeFrameT<IGrad2> fg{V3<IGrad2>(f.W), V3<IGrad2>(f.X), V3<IGrad2>(f.Y),
                                  V3<IGrad2>(f.Z), V3<IGrad2>(f.s), V3<IGrad2>(f.t)};
    const ZeeStep<IGrad2> g = zee_step(fg, IGrad2(alpha, 0), IGrad2(gamma, 1));
    const Interval da = alpha - am, dg = gamma - gm;
    auto mv = [&](const Interval& center, const IGrad2& x) {
        const Interval e = center + x.d[0] * da + x.d[1] * dg;
        // both enclose the exact value, so they intersect
        return Interval{std::max(e.lo, x.v.lo), std::min(e.hi, x.v.hi)};
    };
    return {mv(c.beta, g.beta), mv(c.delta, g.delta), mv(c.ac, g.ac), mv(c.disc, g.disc)};
}

template <class T> T bar_beta(const BridgeFrameT<T>& f, const T& alpha, const T& gamma)
{
    return zee_step(f, alpha, gamma).beta;
}
template <class T> T bar_delta(const BridgeFrameT<T>& f, const T& alpha, const T& gamma)
{
    return zee_step(f, alpha, gamma).delta;
}
template <class T> T discriminant(const BridgeFrameT<T>& f, const T& alpha, const T& gamma)
{
    return zee_step(f, alpha, gamma).disc;
}

template <class T> ZeeBridgeT<T> build_zee_bridge(const BridgeFrameT<T>& f, const ZeeParamsT<T>& p)
{
    // trapezoids degenerate (or fold over) unless all parameters are positive
    for (const T* x : {&p.alpha, &p.beta, &p.gamma, &p.delta})
        if (!(midpoint(*x) > 1e-12)) throw Error(ErrorCode::NonconvexFace, "zee-bridge parameter is not positive");
    ZeeBridgeT<T> z;
    z.frame = f;
    z.params = p;
    z.A = f.W + p.alpha * f.s;
    z.B = f.X + p.beta * f.s;
    z.C = f.Y - p.gamma * f.t;
    z.D = f.Z - p.delta * f.t;
    return z;
}

const char* to_string(RectVerdict v)
{
    switch (v) {
    case RectVerdict::RECTANGULAR: return "RECTANGULAR";
    case RectVerdict::NOT_RECTANGULAR: return "NOT_RECTANGULAR";
    case RectVerdict::UNCERTIFIED: return "UNCERTIFIED";
    }
    return "?";
}

namespace {

template <class T> std::pair<T, T> rect_residuals(const ZeeBridgeT<T>& z, T& width)
{
    using std::sqrt;
    const T ac = norm(z.C - z.A);
    const T bd = norm(z.D - z.B);
    const T bc = norm(z.C - z.B);
    const auto& p = z.params;
    width = p.alpha + ac + p.gamma;
    const T r1 = width - (p.beta + bd + p.delta);
    const T r2 = bc - sqrt(T(1.0) + sqr(ac + p.alpha - p.beta));
    return {r1, r2};
}

} // namespace

RectReport check_rectangular(const ZeeBridge& zb)
{
    RectReport r;
    double w = 0;
    const auto [r1, r2] = rect_residuals(zb, w);
    r.residual_length = Interval(r1);
    r.residual_diagonal = Interval(r2);
    r.width = w;
    r.verdict = (std::fabs(r1) < 1e-9 && std::fabs(r2) < 1e-9) ? RectVerdict::RECTANGULAR
                                                                : RectVerdict::NOT_RECTANGULAR;
    return r;
}

RectReport check_rectangular(const IZeeBridge& zb)
{
    RectReport r;
    Interval w;
    const auto [r1, r2] = rect_residuals(zb, w);
    r.residual_length = r1;
    r.residual_diagonal = r2;
    r.width = w.mid();
    if (!r1.contains(0.0) || !r2.contains(0.0)) r.verdict = RectVerdict::NOT_RECTANGULAR;
    else if (r1.width() < 1e-6 && r2.width() < 1e-6) r.verdict = RectVerdict::RECTANGULAR;
    else r.verdict = RectVerdict::UNCERTIFIED;
    return r;
}

bool cylinder_criterion(const BridgeFrame& f, double alpha, double gamma)
{
    const double beta = bar_beta(f, alpha, gamma);
    const Vec3 B = f.X + beta * f.s;
    const Vec3 C = f.Y - gamma * f.t;
    const Vec3 BC = C - B;
    const double along = dot(BC, f.t);
    return along < 0.0 || norm2(BC) - along * along > 1.0;
}

#define FLATKB_INSTANTIATE(T)                                                                                          \
    template ZeeStep<T> zee_step<T>(const BridgeFrameT<T>&, const T&, const T&);                                       \
    template T bar_beta<T>(const BridgeFrameT<T>&, const T&, const T&);                                                \
    template T bar_delta<T>(const BridgeFrameT<T>&, const T&, const T&);                                               \
    template T discriminant<T>(const BridgeFrameT<T>&, const T&, const T&);                                            \
    template ZeeBridgeT<T> build_zee_bridge<T>(const BridgeFrameT<T>&, const ZeeParamsT<T>&);

FLATKB_INSTANTIATE(double)
FLATKB_INSTANTIATE(Interval)
template ZeeStep<IGrad2> zee_step<IGrad2>(const BridgeFrameT<IGrad2>&, const IGrad2&, const IGrad2&);

} // namespace flatkb
