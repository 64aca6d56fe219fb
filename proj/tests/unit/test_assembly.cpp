#include <gtest/gtest.h>

#include "flatkb/assembly.hpp"
#include "flatkb/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace flatkb;

namespace {

constexpr double pi = std::numbers::pi;

const Assembly& klein()
{
    static const Assembly a = build_flat_klein(KleinParams{});
    return a;
}

// Klein joints with joint 1 built on a translated copy of its frame.
std::vector<TubeJoint> klein_joints_with_offset(const Vec3& offset, bool certified)
{
    const KleinParams p;
    const auto F = klein_frames<double>(p);
    const auto IF = klein_frames<Interval>(p);
    AssemblyOptions opt;
    opt.certified = certified;
    std::vector<TubeJoint> joints = klein_joints(p, opt);
    const TubeFrame moved = apply_rigid_motion(RigidMotion::translation(offset), F[1]);
    const ITubeFrame imoved = apply_rigid_motion(
        RigidMotionT<Interval>::translation(IVec3{Interval(offset.x), Interval(offset.y), Interval(offset.z)}), IF[1]);
    joints[1] = make_joint(moved, certified ? &imoved : nullptr, p.n / 2, p.alpha1, p.gamma1, 1e-20, "J1");
    return joints;
}

} // namespace

TEST(AssemblyTest, KleinBottleDefault)
{
    const AssemblyReport& r = klein().report;
    EXPECT_EQ(r.verdict, ImmersionVerdict::ISOMETRIC_IMMERSION);
    EXPECT_EQ(r.flatness, Flatness::FLAT);
    EXPECT_EQ(r.topology.kind, TopologyKind::KLEIN_BOTTLE);
    EXPECT_EQ(r.topology.euler, 0);
    EXPECT_FALSE(r.topology.orientable);
    EXPECT_EQ(r.topology.boundary_loops, 0);
    EXPECT_EQ(r.reversing_seams, 3);
    EXPECT_EQ(r.merged.vertices, 108);
    EXPECT_EQ(r.merged.faces, 162);
    EXPECT_EQ(r.merged.euler, 0);
    EXPECT_EQ(r.noninjective_vertices, 0);
    EXPECT_EQ(r.indeterminate_vertices, 0);
    EXPECT_EQ(r.injective_vertices, r.glued.vertices);
    for (const auto& j : r.joints) EXPECT_EQ(j.verdict, Flatness::FLAT);
    for (const auto& s : r.seams) {
        EXPECT_TRUE(s.all_flat);
        EXPECT_TRUE(s.all_injective);
    }
    EXPECT_FALSE(r.embedded);
}

TEST(AssemblyTest, KleinSelfIntersectionsAvoidVertices)
{
    const Assembly& a = klein();
    ASSERT_TRUE(a.report.intersections_computed);
    ASSERT_FALSE(a.report.intersections.segments.empty());
    double closest = INFINITY;
    for (const auto& s : a.report.intersections.segments)
        for (const Vec3& p : {s.p, s.q}) {
            for (const Vec3& v : a.glued.mesh.pos) closest = std::min(closest, dist(p, v));
            for (const Vec3& v : a.merged.pos) closest = std::min(closest, dist(p, v));
        }
    EXPECT_GT(closest, 1e-6);
    EXPECT_NEAR(closest, a.report.min_endpoint_vertex_distance, 1e-12);
}

TEST(AssemblyTest, KleinSeamsMatchOrientationByWinding)
{
    const GluedComplex& gc = klein().glued;
    ASSERT_EQ(gc.seams.size(), 6u);
    int reversing = 0;
    for (const auto& s : gc.seams) {
        EXPECT_EQ(s.orientation == SeamOrientation::REVERSING, s.handedness_reversing);
        EXPECT_LT(s.max_mismatch, 1e-9);
        EXPECT_EQ(s.matches.size(), 12u);
        reversing += s.orientation == SeamOrientation::REVERSING;
        std::set<int> image(s.index_map.begin(), s.index_map.end());
        EXPECT_EQ(image.size(), 12u);
    }
    EXPECT_EQ(reversing, 3);
    EXPECT_EQ(gc.reversing_seams(), 3);
}

TEST(AssemblyTest, TorusDefault)
{
    const Assembly a = build_flat_torus(TorusParams{});
    const AssemblyReport& r = a.report;
    EXPECT_EQ(r.flatness, Flatness::FLAT);
    EXPECT_EQ(r.topology.kind, TopologyKind::TORUS);
    EXPECT_TRUE(r.topology.orientable);
    EXPECT_TRUE(r.intersections.segments.empty());
    EXPECT_EQ(r.intersections.coplanar_overlaps, 0);
    EXPECT_TRUE(r.embedded);
    EXPECT_EQ(r.verdict, ImmersionVerdict::ISOMETRIC_IMMERSION);
    // the second frame uses the reversed stars, so both seams reverse labels;
    // an even count keeps the surface orientable
    EXPECT_EQ(r.reversing_seams, 2);
}

TEST(AssemblyTest, OffsetJointGivesSeamMismatch)
{
    for (bool certified : {false, true}) {
        try {
            (void)glue_cycle(klein_joints_with_offset({1e-3, 0, 0}, certified));
            FAIL() << "expected SEAM_MISMATCH";
        }
        catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::SeamMismatch) << e.what();
        }
        // a zero offset still glues
        EXPECT_NO_THROW((void)glue_cycle(klein_joints_with_offset({0, 0, 0}, certified)));
    }
}

TEST(AssemblyTest, RigidMotionDoesNotChangeVerdicts)
{
    AssemblyOptions opt;
    opt.motion = RigidMotion::rotation({1, -2, 0.5}, 0.9).compose(RigidMotion::translation({3, -1, 2}));
    const Assembly b = build_flat_klein(KleinParams{}, opt);
    const AssemblyReport& r = klein().report;
    EXPECT_EQ(b.report.verdict, r.verdict);
    EXPECT_EQ(b.report.topology.kind, r.topology.kind);
    EXPECT_EQ(b.report.merged.vertices, r.merged.vertices);
    EXPECT_EQ(b.report.merged.faces, r.merged.faces);
    EXPECT_EQ(b.report.reversing_seams, r.reversing_seams);
    EXPECT_EQ(b.report.injective_vertices, r.injective_vertices);
    EXPECT_NEAR(b.report.intersections.total_length(), r.intersections.total_length(), 1e-8);
    // the placed vertices are the moved ones
    const auto& m = *opt.motion;
    for (size_t i = 0; i < b.glued.mesh.pos.size(); ++i)
        EXPECT_NEAR(dist(b.glued.mesh.pos[i], m.apply_point(klein().glued.mesh.pos[i])), 0.0, 1e-9);
}

TEST(AssemblyTest, KleinFramesHaveThreefoldSymmetry)
{
    const Assembly& a = klein();
    const auto R = RigidMotion::rotation_z(-2 * pi / 3);
    // the vertex set is invariant under the rotation
    double worst = 0;
    for (const Vec3& p : a.merged.pos) {
        const Vec3 q = R.apply_point(p);
        double best = INFINITY;
        for (const Vec3& r : a.merged.pos) best = std::min(best, dist(q, r));
        worst = std::max(worst, best);
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(SweepTest, TorusGridIsAllOk)
{
    SweepRequest req;
    req.base = SweepBase::TORUS;
    req.alphas = {0.5, 1.0, 2.0};
    req.gammas = {0.5, 1.0, 2.0};
    req.intersections = true;
    const auto cells = sweep_parameters(req);
    ASSERT_EQ(cells.size(), 9u);
    for (const auto& c : cells) EXPECT_EQ(c.status, "OK") << c.alpha << "," << c.gamma << " " << c.detail;
}

TEST(SweepTest, KleinSeedCellIsOk)
{
    SweepRequest req;
    req.base = SweepBase::KLEIN;
    req.alphas = {3.1};
    req.gammas = {2.5};
    const auto cells = sweep_parameters(req);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].status, "OK") << cells[0].detail;
}

TEST(SweepTest, RejectsEmptyOrNonpositiveLists)
{
    SweepRequest req;
    req.alphas = {};
    EXPECT_THROW((void)sweep_parameters(req), Error);
    req.alphas = {1.0};
    req.gammas = {-1.0};
    EXPECT_THROW((void)sweep_parameters(req), Error);
    EXPECT_THROW((void)linspace(0, 1, 0), Error);
    EXPECT_EQ(linspace(2.4, 2.6, 3), (std::vector<double>{2.4, 2.5, 2.6}));
}

TEST(ValidateTest, RejectsBadParameters)
{
    KleinParams k;
    k.n = 5;
    EXPECT_THROW(validate(k), Error);
    TorusParams t;
    t.alpha = 0;
    EXPECT_THROW(validate(t), Error);
}
