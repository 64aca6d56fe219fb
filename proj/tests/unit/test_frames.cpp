#include <gtest/gtest.h>

#include "flatkb/assembly.hpp"
#include "flatkb/errors.hpp"
#include "flatkb/frames.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace flatkb;

namespace {

constexpr double pi = std::numbers::pi;

// Interior angle at vertex i measured with acos, reflex when the polygon
// turns clockwise about its winding axis there.
double measured_angle(const NStar& s, int i)
{
    const Vec3 ax = s.hand == Handedness::RIGHT ? s.normal : -s.normal;
    const Vec3 u = s[i - 1] - s[i], w = s[i + 1] - s[i];
    const double a = std::acos(std::clamp(dot(u, w) / (norm(u) * norm(w)), -1.0, 1.0));
    const bool left_turn = dot(cross(s[i] - s[i - 1], s[i + 1] - s[i]), ax) > 0;
    return left_turn ? a : 2 * pi - a;
}

double max_point_set_distance(const NStar& a, const NStar& b)
{
    double worst = 0;
    for (int i = 0; i < a.size(); ++i) {
        double best = INFINITY;
        for (int k = 0; k < b.size(); ++k) best = std::min(best, dist(a[i], b[k]));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST(NStarTest, UnitEdgesAndAlternatingAngles)
{
    std::mt19937 rng(7);
    for (int n = 3; n <= 9; ++n) {
        const double hi = 2 * pi * (n - 1) / n;
        const double phi = std::uniform_real_distribution<double>(0.05, hi - 0.05)(rng);
        const NStar s = make_nstar<double>(n, phi, {1, 2, 3}, {0, 0, 1}, {1, 0, 0}, Handedness::RIGHT);
        ASSERT_EQ(s.size(), 2 * n);
        double total = 0;
        for (int i = 0; i < 2 * n; ++i) {
            EXPECT_NEAR(dist(s[i], s[i + 1]), 1.0, 1e-12);
            EXPECT_NEAR(s[i].z, 3.0, 1e-12);
            const double want = i % 2 == 0 ? phi : hi - phi;
            EXPECT_NEAR(measured_angle(s, i), want, 1e-9) << "n=" << n << " i=" << i;
            total += measured_angle(s, i);
        }
        // interior angles of a simple 2n-gon
        EXPECT_NEAR(total, (2 * n - 2) * pi, 1e-9);
        EXPECT_TRUE(check_nstar(s).empty()) << check_nstar(s);
    }
}

TEST(NStarTest, VerticesAreEquallySpacedInAngle)
{
    const NStar s = make_nstar<double>(6, 4.0, {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, Handedness::RIGHT);
    for (int i = 0; i < 12; ++i) {
        const double a0 = std::atan2(s[i].y, s[i].x), a1 = std::atan2(s[i + 1].y, s[i + 1].x);
        double d = a1 - a0;
        while (d < 0) d += 2 * pi;
        EXPECT_NEAR(d, pi / 6, 1e-12);
    }
}

TEST(NStarTest, RejectsBadInput)
{
    try {
        (void)make_nstar<double>(6, 2 * pi * 5 / 6 + 0.1, {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, Handedness::RIGHT);
        FAIL();
    }
    catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AngleOutOfRange);
    }
    try {
        (void)make_nstar<double>(6, 4.0, {0, 0, 0}, {0, 0, 1}, {1, 0, 1}, Handedness::RIGHT);
        FAIL();
    }
    catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonOrthogonalDirection);
    }
}

TEST(NStarTest, ReverseKeepsFirstVertexAndFlipsWinding)
{
    const NStar s = make_nstar<double>(5, 3.5, {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, Handedness::RIGHT);
    const NStar r = reverse_nstar(s);
    EXPECT_EQ(r.hand, Handedness::LEFT);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(dist(r[i], s[-i]), 0.0, 0.0);
    EXPECT_TRUE(check_nstar(r).empty()) << check_nstar(r);
    EXPECT_EQ(measured_handedness(r), Handedness::LEFT);
}

TEST(NStarTest, OddShiftSwapsTheTwoAngles)
{
    const NStar s = make_nstar<double>(6, 4.2, {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, Handedness::RIGHT);
    const NStar t = shift_nstar(s, 1);
    EXPECT_NEAR(t.phi, 2 * pi * 5 / 6 - 4.2, 1e-15);
    EXPECT_NEAR(measured_angle(t, 0), t.phi, 1e-9);
    EXPECT_TRUE(check_nstar(t).empty()) << check_nstar(t);
    EXPECT_TRUE(check_nstar(shift_nstar(s, 2)).empty());
}

TEST(RigidMotionTest, RotationsAreRigidAndCompose)
{
    const auto A = RigidMotion::rotation({1, 2, 2}, 0.7);
    const auto B = RigidMotion::rotation_z(1.1).compose(RigidMotion::translation({1, -2, 0.5}));
    EXPECT_TRUE(is_rigid(A));
    EXPECT_TRUE(is_rigid(B));
    const Vec3 p{0.3, -0.4, 2.0};
    const Vec3 composed = A.compose(B).apply_point(p);
    const Vec3 stepwise = A.apply_point(B.apply_point(p));
    EXPECT_NEAR(dist(composed, stepwise), 0.0, 1e-14);
    // the axis is fixed, distances are kept
    const Vec3 axis = normalized(Vec3{1, 2, 2});
    EXPECT_NEAR(dist(A.rotate(axis), axis), 0.0, 1e-15);
    EXPECT_NEAR(dist(A.apply_point(p), A.apply_point(Vec3{1, 1, 1})), dist(p, Vec3{1, 1, 1}), 1e-14);
    // counterclockwise about +z
    const Vec3 q = RigidMotion::rotation_z(pi / 2).rotate({1, 0, 0});
    EXPECT_NEAR(q.y, 1.0, 1e-15);
}

TEST(TubeFrameTest, VeeFrameLayout)
{
    const double L = 4.0, theta = pi / 3;
    const TubeFrame tf = make_tube_frame<double>(FrameKind::VEE, 6, L, theta, pi, 3 * pi / 2);
    EXPECT_NEAR(dist(tf.s, Vec3{-1, 0, 0}), 0.0, 1e-15);
    EXPECT_NEAR(dist(tf.t, Vec3{std::cos(theta), std::sin(theta), 0}), 0.0, 1e-15);
    // centers at distance L from the origin, separated by the chord 2L sin(theta/2)
    EXPECT_NEAR(norm(tf.P.center), L, 1e-14);
    EXPECT_NEAR(norm(tf.Q.center), L, 1e-14);
    EXPECT_NEAR(dist(tf.P.center, tf.Q.center), 2 * L * std::sin(theta / 2), 1e-13);
    EXPECT_TRUE(check_nstar(tf.P).empty()) << check_nstar(tf.P);
    EXPECT_TRUE(check_nstar(tf.Q).empty()) << check_nstar(tf.Q);
    // each star lies in the plane through its center orthogonal to s resp. t
    for (int i = 0; i < 12; ++i) {
        EXPECT_NEAR(dot(tf.P[i] - tf.P.center, tf.s), 0.0, 1e-13);
        EXPECT_NEAR(dot(tf.Q[i] - tf.Q.center, tf.t), 0.0, 1e-13);
    }
    // P_0 points along -k; odd vertices carry phi = pi
    EXPECT_LT(tf.P[0].z, tf.P.center.z);
    EXPECT_NEAR(measured_angle(tf.P, 1), pi, 1e-9);
    EXPECT_EQ(tf.Q.hand, Handedness::LEFT);
    EXPECT_EQ(make_tube_frame<double>(FrameKind::BEND, 6, L, theta, pi, 3 * pi / 2).Q.hand, Handedness::RIGHT);
}

TEST(TubeFrameTest, BridgeFramesSatisfyTheirInvariants)
{
    const TubeFrame tf = make_tube_frame<double>(FrameKind::VEE, 6, 4.0, pi / 3, pi, 3 * pi / 2);
    for (const auto& f : bridge_frames(tf)) {
        EXPECT_NEAR(norm(f.u()), 1.0, 1e-12);
        EXPECT_NEAR(norm(f.v()), 1.0, 1e-12);
        EXPECT_NEAR(dot(f.s, f.u()), 0.0, 1e-12);
        EXPECT_NEAR(dot(f.t, f.v()), 0.0, 1e-12);
        const BridgeFrame r = reverse_bridge_frame(f);
        EXPECT_NEAR(dist(r.W, f.Z), 0.0, 0.0);
        EXPECT_NEAR(dist(r.s, -f.t), 0.0, 0.0);
    }
}

TEST(TubeFrameTest, IntervalFrameEnclosesFloatFrame)
{
    const TubeFrame tf = make_tube_frame<double>(FrameKind::VEE, 6, 4.0, pi / 3, pi, 3 * pi / 2);
    const ITubeFrame itf = make_tube_frame<Interval>(FrameKind::VEE, 6, Interval(4.0), ia_pi() / Interval(3.0), ia_pi(),
                                                     Angle::pi_frac(3, 2).as<Interval>());
    for (int i = 0; i < 12; ++i) {
        EXPECT_TRUE(contains(itf.P[i], tf.P[i]));
        EXPECT_TRUE(contains(itf.Q[i], tf.Q[i]));
        EXPECT_LT(max_rad(itf.P[i]), 1e-13);
    }
}

TEST(KleinFrameTest, ThreefoldSymmetryOfTheVeeFrames)
{
    const auto F = klein_frames<double>(KleinParams{});
    ASSERT_EQ(F.size(), 6u);
    for (int j : {3, 5}) {
        const auto R = RigidMotion::rotation_z(-2 * pi * (j - 1) / 6);
        const TubeFrame moved = apply_rigid_motion(R, F[1]);
        for (int i = 0; i < 12; ++i) {
            EXPECT_NEAR(dist(moved.P[i], F[static_cast<size_t>(j)].P[i]), 0.0, 1e-12);
            EXPECT_NEAR(dist(moved.Q[i], F[static_cast<size_t>(j)].Q[i]), 0.0, 1e-12);
        }
    }
}

TEST(KleinFrameTest, StraightFramesAreCoaxialWithSeparationTwiceL0)
{
    for (double L0 : {2.0, 3.5}) {
        KleinParams p;
        p.L0 = L0;
        const auto F = klein_frames<double>(p);
        for (int j : {0, 2, 4}) {
            const TubeFrame& f = F[static_cast<size_t>(j)];
            EXPECT_EQ(f.kind, FrameKind::DERIVED_COAXIAL);
            EXPECT_NEAR(dist(f.s, f.t), 0.0, 1e-12);
            EXPECT_NEAR(dist(f.Q.center - f.P.center, (2 * L0) * f.s), 0.0, 1e-12);
            EXPECT_TRUE(is_coaxial(f));
        }
    }
}

TEST(KleinFrameTest, ConsecutiveFramesShareTheirBoundaryStars)
{
    const auto F = klein_frames<double>(KleinParams{});
    for (int j = 0; j < 6; ++j) {
        const TubeFrame& a = F[static_cast<size_t>(j)];
        const TubeFrame& b = F[static_cast<size_t>((j + 1) % 6)];
        EXPECT_LT(max_point_set_distance(a.Q, b.P), 1e-12) << "seam " << j;
        EXPECT_LT(max_point_set_distance(b.P, a.Q), 1e-12) << "seam " << j;
    }
}

TEST(TorusFrameTest, SecondFrameSwapsTheStarsOfTheFirst)
{
    const auto F = torus_frames<double>(TorusParams{});
    ASSERT_EQ(F.size(), 2u);
    EXPECT_NEAR(dist(F[0].t, -F[0].s), 0.0, 0.0);
    EXPECT_NEAR(dist(F[0].P.center, F[0].Q.center), 0.0, 0.0);
    EXPECT_LT(max_point_set_distance(F[1].P, F[0].Q), 1e-12);
    EXPECT_LT(max_point_set_distance(F[1].Q, F[0].P), 1e-12);
    EXPECT_TRUE(is_coaxial(F[0]));
    EXPECT_TRUE(is_coaxial(F[1]));
    // angle phi at P_0, regular Q with angle pi at Q_0
    EXPECT_NEAR(measured_angle(F[0].P, 0), 4.5, 1e-9);
    EXPECT_NEAR(measured_angle(F[0].Q, 0), pi, 1e-9);
}
