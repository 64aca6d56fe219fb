#include "flatkb/tube_joint.hpp"

#include "flatkb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace flatkb {

namespace {

void require_positive(double v, const char* what, int i)
{
    if (!(v > 0.0))
        throw Error(ErrorCode::NonpositiveParameter, std::string(what) + "_" + std::to_string(i) + " = " + std::to_string(v));
}
void require_positive(const Interval& v, const char* what, int i)
{
    if (!(v.lo > 0.0))
        throw Error(ErrorCode::NonpositiveParameter,
                    std::string(what) + "_" + std::to_string(i) + " not certified positive (lo = " + std::to_string(v.lo) + ")");
}

double meet_tol(double x) { return 1e-8 * std::max(1.0, std::fabs(x)); }

// Reconciles the forward and backward values at the meeting index.
double meet(double f, double b, double& residual)
{
    residual = std::max(residual, std::fabs(f - b));
    if (std::fabs(f - b) > meet_tol(f)) throw Error(ErrorCode::InconsistentAtMeet, "forward/backward values differ");
    return f;
}
Interval meet(const Interval& f, const Interval& b, double& residual)
{
    residual = std::max(residual, std::fabs(f.mid() - b.mid()));
    if (!f.intersects(b) || std::fabs(f.mid() - b.mid()) > meet_tol(f.mid()))
        throw Error(ErrorCode::InconsistentAtMeet, "forward/backward enclosures do not agree");
    // both runs enclose the same exact value
    return {std::max(f.lo, b.lo), std::min(f.hi, b.hi)};
}

template <class T> bool near_point(const V3<T>& a, const V3<T>& b);
template <> bool near_point<double>(const Vec3& a, const Vec3& b) { return dist(a, b) <= 1e-10; }
template <> bool near_point<Interval>(const IVec3& a, const IVec3& b)
{
    return a.x.intersects(b.x) && a.y.intersects(b.y) && a.z.intersects(b.z);
}

} // namespace

template <class T> JointParamsT<T> generate_parameters(const TubeFrameT<T>& tf, int k, const T& alpha, const T& gamma)
{
    const int n = tf.n();
    JointParamsT<T> jp;
    jp.n = n;
    jp.k = ((k % (2 * n)) + 2 * n) % (2 * n);
    jp.seed_alpha = alpha;
    jp.seed_gamma = gamma;
    jp.alphas.assign(static_cast<size_t>(2 * n), T(0.0));
    jp.gammas.assign(static_cast<size_t>(2 * n), T(0.0));
    require_positive(alpha, "alpha", jp.k);
    require_positive(gamma, "gamma", jp.k);
    jp.alphas[static_cast<size_t>(jp.k)] = alpha;
    jp.gammas[static_cast<size_t>(jp.k)] = gamma;

    T fa = alpha, fg = gamma;
    for (int j = 0; j < n; ++j) {
        const auto st = zee_step_tight(reverse_bridge_frame(bridge_frame(tf, jp.k + j + 1)), fa, fg);
        fg = st.beta;
        fa = st.delta;
        jp.delta_fwd.push_back(st.disc);
        require_positive(fa, "alpha", jp.wrap(jp.k + j + 1));
        require_positive(fg, "gamma", jp.wrap(jp.k + j + 1));
        if (j + 1 < n) {
            jp.alphas[static_cast<size_t>(jp.wrap(jp.k + j + 1))] = fa;
            jp.gammas[static_cast<size_t>(jp.wrap(jp.k + j + 1))] = fg;
        }
    }
    T ba = alpha, bg = gamma;
    for (int j = 0; j < n; ++j) {
        const auto st = zee_step_tight(bridge_frame(tf, jp.k - j), ba, bg);
        bg = st.beta;
        ba = st.delta;
        jp.delta_bwd.push_back(st.disc);
        require_positive(ba, "alpha", jp.wrap(jp.k - j - 1));
        require_positive(bg, "gamma", jp.wrap(jp.k - j - 1));
        if (j + 1 < n) {
            jp.alphas[static_cast<size_t>(jp.wrap(jp.k - j - 1))] = ba;
            jp.gammas[static_cast<size_t>(jp.wrap(jp.k - j - 1))] = bg;
        }
    }
    const size_t mi = static_cast<size_t>(jp.wrap(jp.k + n));
    jp.alphas[mi] = meet(fa, ba, jp.meet_residual);
    jp.gammas[mi] = meet(fg, bg, jp.meet_residual);
    return jp;
}

template <class T> std::vector<T> joint_deltas(const TubeFrameT<T>& tf, const JointParamsT<T>& jp)
{
    std::vector<T> out;
    const int n = jp.n, k = jp.k;
    for (int j = 1; j <= n; ++j)
        out.push_back(zee_step_tight(reverse_bridge_frame(bridge_frame(tf, k + j)), jp.alpha(k + j - 1), jp.gamma(k + j - 1)).disc);
    for (int j = 1; j <= n; ++j)
        out.push_back(zee_step_tight(bridge_frame(tf, k - j + 1), jp.alpha(k - j + 1), jp.gamma(k - j + 1)).disc);
    return out;
}

template <class T> TubeJointT<T> build_tube_joint(const TubeFrameT<T>& tf, const JointParamsT<T>& jp)
{
    const int n = tf.n();
    if (jp.n != n) throw Error(ErrorCode::ParameterError, "parameter vector size does not match the frame");
    TubeJointT<T> J;
    J.frame = tf;
    J.params = jp;
    const int m = 2 * n;
    for (int i = 0; i < m; ++i) {
        if (i % 2 == 1) {
            J.w.push_back(tf.P[i]);
            J.y.push_back(tf.Q[i]);
            J.a.push_back(tf.P[i] + jp.alpha(i) * tf.s);
            J.c.push_back(tf.Q[i] - jp.gamma(i) * tf.t);
        }
        else {
            J.w.push_back(tf.Q[i]);
            J.y.push_back(tf.P[i]);
            J.a.push_back(tf.Q[i] - jp.alpha(i) * tf.t);
            J.c.push_back(tf.P[i] + jp.gamma(i) * tf.s);
        }
    }
    auto at = [m](const std::vector<V3<T>>& v, int i) -> const V3<T>& { return v[static_cast<size_t>(((i % m) + m) % m)]; };
    for (int i = 0; i < m; ++i) {
        const ZeeParamsT<T> zp{jp.alpha(i), jp.gamma(i - 1), jp.gamma(i), jp.alpha(i - 1)};
        J.strips.push_back(build_zee_bridge(bridge_frame(tf, i), zp));
        const auto pts = J.strips.back().points();
        // w_i, y_{i-1}, y_i, w_{i-1}, a_i, c_{i-1}, c_i, a_{i-1}
        const V3<T> want[8] = {at(J.w, i), at(J.y, i - 1), at(J.y, i), at(J.w, i - 1),
                               at(J.a, i), at(J.c, i - 1), at(J.c, i), at(J.a, i - 1)};
        for (int q = 0; q < 8; ++q)
            if (!near_point<T>(pts[static_cast<size_t>(q)], want[q]))
                throw Error(ErrorCode::StripMismatch, "strip " + std::to_string(i) + " vertex " + std::to_string(q));
    }
    return J;
}

CWMesh joint_mesh(const TubeJointT<double>& j, const TubeJointT<Interval>* cert, const std::string& tag)
{
    CWMesh mesh;
    const int m = static_cast<int>(j.w.size());
    const std::vector<Vec3>* groups[4] = {&j.w, &j.y, &j.a, &j.c};
    const std::vector<IVec3>* igroups[4] = {nullptr, nullptr, nullptr, nullptr};
    if (cert) {
        igroups[0] = &cert->w;
        igroups[1] = &cert->y;
        igroups[2] = &cert->a;
        igroups[3] = &cert->c;
    }
    const char* names = "wyac";
    for (int g = 0; g < 4; ++g)
        for (int i = 0; i < m; ++i) {
            const std::string name = tag + ":" + names[g] + std::to_string(i);
            if (cert) mesh.add_vertex((*groups[g])[static_cast<size_t>(i)], (*igroups[g])[static_cast<size_t>(i)], name);
            else mesh.add_vertex((*groups[g])[static_cast<size_t>(i)], name);
        }
    auto W = [m](int i) { return ((i % m) + m) % m; };
    auto Y = [m, &W](int i) { return m + W(i); };
    auto A = [m, &W](int i) { return 2 * m + W(i); };
    auto C = [m, &W](int i) { return 3 * m + W(i); };
    for (int i = 0; i < m; ++i) {
        std::vector<std::vector<int>> fs = {{W(i), A(i), C(i - 1), Y(i - 1)},
                                            {A(i), C(i), C(i - 1)},
                                            {C(i - 1), C(i), A(i - 1)},
                                            {C(i), Y(i), W(i - 1), A(i - 1)}};
        // consecutive strips are mirror images in J; flip every other one
        // so the whole annulus is consistently oriented
        for (auto& f : fs) {
            if (i % 2 == 0) std::reverse(f.begin(), f.end());
            mesh.faces.push_back(f);
        }
    }
    return mesh;
}

TubeJoint make_joint_from_params(const TubeFrame& tf, const ITubeFrame* itf, const JointParams& jp,
                                 const IJointParams* ijp, const std::string& tag)
{
    TubeJoint tj;
    tj.tag = tag;
    tj.geom = build_tube_joint(tf, jp);
    if (itf && ijp) tj.cert = build_tube_joint(*itf, *ijp);
    tj.mesh = joint_mesh(tj.geom, tj.cert ? &*tj.cert : nullptr, tag);
    return tj;
}

TubeJoint make_joint(const TubeFrame& tf, const ITubeFrame* itf, int k, double alpha, double gamma,
                     double input_radius, const std::string& tag)
{
    const JointParams jp = generate_parameters<double>(tf, k, alpha, gamma);
    if (!itf) return make_joint_from_params(tf, nullptr, jp, nullptr, tag);
    const IJointParams ijp =
        generate_parameters<Interval>(*itf, k, ia_from_value(alpha, input_radius), ia_from_value(gamma, input_radius));
    return make_joint_from_params(tf, itf, jp, &ijp, tag);
}

const char* to_string(Flatness f)
{
    switch (f) {
    case Flatness::FLAT: return "FLAT";
    case Flatness::NOT_FLAT: return "NOT_FLAT";
    case Flatness::UNCERTIFIED: return "UNCERTIFIED";
    }
    return "?";
}

FlatnessReport verify_flat(const TubeJoint& tj)
{
    FlatnessReport r;
    const bool cert = tj.cert.has_value();
    const int m = 2 * tj.n();

    if (cert) {
        for (const auto& d : joint_deltas(tj.cert->frame, tj.cert->params)) r.deltas.push_back(d);
        r.meet_residual = tj.cert->params.meet_residual;
        for (const auto& s : tj.cert->strips) r.strips.push_back(check_rectangular(s));
    }
    else {
        for (double d : joint_deltas(tj.geom.frame, tj.geom.params)) r.deltas.emplace_back(d);
        r.meet_residual = tj.geom.params.meet_residual;
        for (const auto& s : tj.geom.strips) r.strips.push_back(check_rectangular(s));
    }
    r.all_deltas_positive = true;
    for (const auto& d : r.deltas) {
        r.delta_signs.push_back(ia_sign(d));
        r.all_deltas_positive &= r.delta_signs.back() == SignVerdict::POSITIVE;
    }

    bool any_not_rect = false;
    r.all_strips_rectangular = true;
    for (const auto& s : r.strips) {
        r.all_strips_rectangular &= s.verdict == RectVerdict::RECTANGULAR;
        any_not_rect |= s.verdict == RectVerdict::NOT_RECTANGULAR;
    }

    const Interval two_pi = Interval(2.0) * ia_pi();
    const Interval pi = ia_pi();
    bool any_angle_off = false;
    r.angle_sums_flat = true;
    for (int i = 0; i < m; ++i)
        for (int v : {tj.a(i), tj.c(i)}) {
            const Interval s = angle_sum(tj.mesh, v, cert);
            r.interior_angle_sums.emplace_back(v, s);
            const bool ok = cert ? (s.intersects(two_pi) && s.width() < 1e-6)
                                 : std::fabs(s.mid() - 2.0 * std::numbers::pi) < 1e-9;
            r.angle_sums_flat &= ok;
            any_angle_off |= cert ? !s.intersects(two_pi) : !ok;
        }
    for (int i = 0; i < m; ++i)
        for (int v : {tj.w(i), tj.y(i)}) {
            const Interval s = angle_sum(tj.mesh, v, cert, 1e-20, true);
            r.boundary_angle_sums.emplace_back(v, s);
            const bool ok = cert ? (s.intersects(pi) && s.width() < 1e-6) : std::fabs(s.mid() - std::numbers::pi) < 1e-9;
            r.angle_sums_flat &= ok;
            any_angle_off |= cert ? !s.intersects(pi) : !ok;
        }

    if (r.all_strips_rectangular && r.angle_sums_flat) r.verdict = Flatness::FLAT;
    else if (any_not_rect || any_angle_off) r.verdict = Flatness::NOT_FLAT;
    else r.verdict = Flatness::UNCERTIFIED;
    return r;
}

bool is_coaxial(const TubeFrame& tf, double tol)
{
    const Vec3 d = tf.Q.center - tf.P.center;
    const bool planes = norm(cross(tf.P.normal, tf.s)) < tol && norm(cross(tf.Q.normal, tf.t)) < tol;
    if (!planes) return false;
    if (norm(tf.s - tf.t) < tol) {
        const double along = dot(d, tf.s);
        return along > 0 && norm(d - along * tf.s) < tol;
    }
    if (norm(tf.s + tf.t) < tol) return norm(d) < tol;
    return false;
}

TubeJoint straight_joint(const TubeFrame& tf, const ITubeFrame* itf, double alpha0, double gamma0,
                         const std::string& tag)
{
    if (!is_coaxial(tf)) throw Error(ErrorCode::NotCoaxial, "frame satisfies neither coaxial observation");
    TubeJoint tj = make_joint(tf, itf, 0, alpha0, gamma0, 1e-20, tag);
    const auto& p = tj.geom.params;
    auto same = [](double a, double b) { return std::fabs(a - b) <= 1e-10 * std::max(1.0, std::fabs(a)); };
    for (int i = 0; i < 2 * p.n; ++i) {
        const bool ok = (i % 2 == 1) ? (same(p.alpha(i), p.alpha(1)) && same(p.gamma(i), alpha0))
                                     : (same(p.alpha(i), alpha0) && same(p.gamma(i), gamma0));
        if (!ok) throw Error(ErrorCode::InvariantViolation, "straight joint parameter pattern broken at " + std::to_string(i));
    }
    if (!(p.alpha(1) > gamma0)) throw Error(ErrorCode::InvariantViolation, "expected alpha_1 > gamma_0");
    return tj;
}

template JointParamsT<double> generate_parameters<double>(const TubeFrameT<double>&, int, const double&, const double&);
template JointParamsT<Interval> generate_parameters<Interval>(const TubeFrameT<Interval>&, int, const Interval&, const Interval&);
template std::vector<double> joint_deltas<double>(const TubeFrameT<double>&, const JointParamsT<double>&);
template std::vector<Interval> joint_deltas<Interval>(const TubeFrameT<Interval>&, const JointParamsT<Interval>&);
template TubeJointT<double> build_tube_joint<double>(const TubeFrameT<double>&, const JointParamsT<double>&);
template TubeJointT<Interval> build_tube_joint<Interval>(const TubeFrameT<Interval>&, const JointParamsT<Interval>&);

} // namespace flatkb
