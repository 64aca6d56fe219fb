#include "flatkb/assembly.hpp"

#include "flatkb/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

namespace flatkb {

const char* to_string(SeamOrientation o) { return o == SeamOrientation::REVERSING ? "REVERSING" : "PRESERVING"; }

const char* to_string(ImmersionVerdict v)
{
    switch (v) {
    case ImmersionVerdict::ISOMETRIC_IMMERSION: return "ISOMETRIC_IMMERSION";
    case ImmersionVerdict::NOT_IMMERSION: return "NOT_IMMERSION";
    case ImmersionVerdict::INDETERMINATE: return "INDETERMINATE";
    }
    return "?";
}

int GluedComplex::reversing_seams() const
{
    return static_cast<int>(
        std::count_if(seams.begin(), seams.end(), [](const Seam& s) { return s.orientation == SeamOrientation::REVERSING; }));
}

MeshStats mesh_stats(const CWMesh& m)
{
    MeshStats s;
    s.vertices = m.num_vertices();
    s.edges = num_edges(m);
    s.faces = m.num_faces();
    s.euler = s.vertices - s.edges + s.faces;
    return s;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[static_cast<size_t>(x)] != x) x = p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b) p[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Winding of a boundary polygon about `normal`: +1 counterclockwise.
int winding(const CWMesh& m, const std::vector<int>& ids, const Vec3& normal)
{
    Vec3 c{0, 0, 0};
    for (int v : ids) c = c + m.pos[static_cast<size_t>(v)];
    c = (1.0 / static_cast<double>(ids.size())) * c;
    double s = 0;
    for (size_t i = 0; i < ids.size(); ++i)
        s += dot(normal, cross(m.pos[static_cast<size_t>(ids[i])] - c, m.pos[static_cast<size_t>(ids[(i + 1) % ids.size()])] - c));
    return s > 0 ? 1 : -1;
}

bool intersect_box(const IVec3& a, const IVec3& b, IVec3& out)
{
    if (!a.x.intersects(b.x) || !a.y.intersects(b.y) || !a.z.intersects(b.z)) return false;
    auto meet = [](const Interval& p, const Interval& q) { return Interval{std::max(p.lo, q.lo), std::min(p.hi, q.hi)}; };
    out = {meet(a.x, b.x), meet(a.y, b.y), meet(a.z, b.z)};
    return true;
}

Seam match_seam(const std::vector<TubeJoint>& joints, int from, int to, double tol)
{
    const TubeJoint& A = joints[static_cast<size_t>(from)];
    const TubeJoint& B = joints[static_cast<size_t>(to)];
    const int m = 2 * A.n();
    if (2 * B.n() != m) throw Error(ErrorCode::SeamMismatch, "joints have different star sizes");
    Seam s;
    s.from = from;
    s.to = to;
    std::vector<int> used(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        const Vec3& p = A.mesh.pos[static_cast<size_t>(A.q_vertex(i))];
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int k = 0; k < m; ++k) {
            const double d = dist(p, B.mesh.pos[static_cast<size_t>(B.p_vertex(k))]);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        if (bd > tol)
            throw Error(ErrorCode::SeamMismatch, "seam " + std::to_string(from) + "->" + std::to_string(to) + ": vertex " +
                                                     std::to_string(i) + " unmatched (distance " + std::to_string(bd) + ")");
        s.max_mismatch = std::max(s.max_mismatch, bd);
        s.index_map.push_back(best);
        s.matches.emplace_back(A.q_vertex(i), B.p_vertex(best));
        ++used[static_cast<size_t>(best)];
    }
    for (int u : used)
        if (u != 1) throw Error(ErrorCode::OrientationAmbiguous, "seam matching is not a bijection");

    auto wrap = [m](int x) { return ((x % m) + m) % m; };
    bool shift = true, flip = true;
    for (int i = 0; i < m; ++i) {
        shift &= wrap(s.index_map[static_cast<size_t>(i)] - i) == wrap(s.index_map[0]);
        flip &= wrap(s.index_map[static_cast<size_t>(i)] + i) == wrap(s.index_map[0]);
    }
    if (shift == flip) throw Error(ErrorCode::OrientationAmbiguous, "seam index map is neither a rotation nor a reflection");
    s.orientation = flip ? SeamOrientation::REVERSING : SeamOrientation::PRESERVING;

    // cross-check: windings of the two star labelings against one normal
    std::vector<int> qa, pb;
    for (int i = 0; i < m; ++i) {
        qa.push_back(A.q_vertex(i));
        pb.push_back(B.p_vertex(i));
    }
    const Vec3 nrm = A.geom.frame.Q.normal;
    s.handedness_reversing = winding(A.mesh, qa, nrm) != winding(B.mesh, pb, nrm);
    if (s.handedness_reversing != flip) throw Error(ErrorCode::InvariantViolation, "seam orientation disagrees with star windings");
    return s;
}

} // namespace

GluedComplex glue_cycle(std::vector<TubeJoint> joints, double tol)
{
    if (joints.empty()) throw Error(ErrorCode::InvalidComplex, "empty gluing cycle");
    GluedComplex gc;
    const int nj = static_cast<int>(joints.size());
    for (int j = 0; j < nj; ++j) gc.seams.push_back(match_seam(joints, j, (j + 1) % nj, tol));

    std::vector<int> offset(static_cast<size_t>(nj) + 1, 0);
    for (int j = 0; j < nj; ++j) offset[static_cast<size_t>(j) + 1] = offset[static_cast<size_t>(j)] + joints[static_cast<size_t>(j)].mesh.num_vertices();
    UnionFind uf(offset.back());
    for (const Seam& s : gc.seams)
        for (const auto& [a, b] : s.matches) uf.unite(offset[static_cast<size_t>(s.from)] + a, offset[static_cast<size_t>(s.to)] + b);

    bool cert = true;
    for (const auto& J : joints) cert &= J.mesh.certified_positions();

    std::vector<int> glued_id(static_cast<size_t>(offset.back()), -1);
    std::vector<int> seam_flag;
    for (int j = 0; j < nj; ++j) {
        const CWMesh& jm = joints[static_cast<size_t>(j)].mesh;
        for (int v = 0; v < jm.num_vertices(); ++v) {
            const int g = offset[static_cast<size_t>(j)] + v;
            const int r = uf.find(g);
            if (glued_id[static_cast<size_t>(r)] < 0) {
                glued_id[static_cast<size_t>(r)] =
                    cert ? gc.mesh.add_vertex(jm.pos[static_cast<size_t>(v)], jm.ipos[static_cast<size_t>(v)], jm.label[static_cast<size_t>(v)])
                         : gc.mesh.add_vertex(jm.pos[static_cast<size_t>(v)], jm.label[static_cast<size_t>(v)]);
                seam_flag.push_back(0);
            }
            else {
                const int id = glued_id[static_cast<size_t>(r)];
                seam_flag[static_cast<size_t>(id)] = 1;
                gc.mesh.label[static_cast<size_t>(id)] += "=" + jm.label[static_cast<size_t>(v)];
                if (cert) {
                    IVec3 box;
                    if (!intersect_box(gc.mesh.ipos[static_cast<size_t>(id)], jm.ipos[static_cast<size_t>(v)], box))
                        throw Error(ErrorCode::SeamMismatch, "certified enclosures of " + jm.label[static_cast<size_t>(v)] + " do not meet");
                    gc.mesh.ipos[static_cast<size_t>(id)] = box;
                }
            }
            glued_id[static_cast<size_t>(g)] = glued_id[static_cast<size_t>(r)];
        }
    }
    gc.to_glued.resize(static_cast<size_t>(nj));
    for (int j = 0; j < nj; ++j) {
        const CWMesh& jm = joints[static_cast<size_t>(j)].mesh;
        for (int v = 0; v < jm.num_vertices(); ++v)
            gc.to_glued[static_cast<size_t>(j)].push_back(glued_id[static_cast<size_t>(offset[static_cast<size_t>(j)] + v)]);
        for (auto F : jm.faces) {
            for (int& v : F) v = gc.to_glued[static_cast<size_t>(j)][static_cast<size_t>(v)];
            gc.mesh.faces.push_back(std::move(F));
            gc.face_joint.push_back(j);
        }
    }
    for (size_t v = 0; v < seam_flag.size(); ++v)
        if (seam_flag[v]) gc.seam_vertices.push_back(static_cast<int>(v));

    if (const std::string err = check_complex(gc.mesh); !err.empty()) throw Error(ErrorCode::InvalidComplex, err);
    if (!boundary_loops(gc.mesh).empty()) throw Error(ErrorCode::OpenSurface, "glued complex has boundary");
    gc.joints = std::move(joints);
    return gc;
}

std::vector<SeamReport> verify_seams(const GluedComplex& gc)
{
    std::vector<SeamReport> out;
    const CWMesh& m = gc.mesh;
    const bool cert = m.certified_positions();
    const Interval two_pi = Interval(2.0) * ia_pi();
    auto ipos = [&](int v) { return cert ? m.ipos[static_cast<size_t>(v)] : ia_from_vec(m.pos[static_cast<size_t>(v)], 1e-20); };

    for (size_t si = 0; si < gc.seams.size(); ++si) {
        const Seam& s = gc.seams[si];
        SeamReport r;
        r.seam = static_cast<int>(si);
        r.orientation = s.orientation;
        r.all_flat = r.all_injective = true;
        std::set<int> seam_ids;
        for (const auto& [a, b] : s.matches) {
            (void)b;
            const int v = gc.to_glued[static_cast<size_t>(s.from)][static_cast<size_t>(a)];
            seam_ids.insert(v);
            SeamVertexReport vr;
            vr.vertex = v;
            vr.label = m.label[static_cast<size_t>(v)];
            vr.angle_sum = angle_sum(m, v, true);
            vr.flat = vr.angle_sum.intersects(two_pi) && vr.angle_sum.width() < 1e-6;
            vr.injectivity = certify_local_injectivity(m, v).verdict;
            r.all_flat &= vr.flat;
            r.all_injective &= vr.injectivity == VertexVerdict::INJECTIVE;
            r.vertices.push_back(vr);
        }

        // plane of the shared star, from the certified frame when present
        const TubeJoint& A = gc.joints[static_cast<size_t>(s.from)];
        const IVec3 c = A.cert ? A.cert->frame.Q.center : ia_from_vec(A.geom.frame.Q.center, 1e-20);
        const IVec3 nrm = A.cert ? A.cert->frame.Q.normal : ia_from_vec(A.geom.frame.Q.normal, 1e-20);
        int side[2] = {0, 0};
        bool ok = true;
        r.min_clearance = std::numeric_limits<double>::infinity();
        for (int f = 0; f < m.num_faces(); ++f) {
            const int j = gc.face_joint[static_cast<size_t>(f)];
            if (j != s.from && j != s.to) continue;
            const auto& F = m.faces[static_cast<size_t>(f)];
            if (std::none_of(F.begin(), F.end(), [&](int v) { return seam_ids.count(v) > 0; })) continue;
            const int which = j == s.from ? 0 : 1;
            // only interior vertices; boundary stars may share the plane
            for (int v : F) {
                if (std::binary_search(gc.seam_vertices.begin(), gc.seam_vertices.end(), v)) continue;
                const Interval d = ia_dot3(ipos(v) - c, nrm);
                r.min_clearance = std::min(r.min_clearance, std::fabs(d.mid()));
                const SignVerdict sg = ia_sign(d);
                const int sv = sg == SignVerdict::POSITIVE ? 1 : sg == SignVerdict::NEGATIVE ? -1 : 0;
                if (sv == 0) ok = false;
                else if (side[which] == 0) side[which] = sv;
                else if (side[which] != sv) ok = false;
            }
        }
        r.opposite_sides = ok && side[0] != 0 && side[0] == -side[1];
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

RigidMotionT<Interval> to_interval(const RigidMotion& m)
{
    RigidMotionT<Interval> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.R[static_cast<size_t>(i)][static_cast<size_t>(j)] = Interval(m.R[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    r.t = IVec3(m.t);
    return r;
}

template <class T> std::vector<TubeFrameT<T>> moved(std::vector<TubeFrameT<T>> frames, const std::optional<RigidMotion>& mo)
{
    if (!mo) return frames;
    if constexpr (std::is_same_v<T, double>) {
        for (auto& f : frames) f = apply_rigid_motion(*mo, f);
    }
    else {
        const auto im = to_interval(*mo);
        for (auto& f : frames) f = apply_rigid_motion(im, f);
    }
    return frames;
}

template <class T> JointParamsT<T> relabel_reversed(const JointParamsT<T>& a)
{
    JointParamsT<T> b = a;
    const int m = 2 * a.n;
    for (int i = 0; i < m; ++i) {
        b.alphas[static_cast<size_t>(i)] = a.alpha(-1 - i);
        b.gammas[static_cast<size_t>(i)] = a.gamma(-1 - i);
    }
    b.k = b.wrap(-1 - a.k);
    return b;
}

} // namespace

void validate(const KleinParams& p)
{
    if (p.n < 4 || p.n % 2 != 0) throw Error(ErrorCode::ParameterError, "n must be even and at least 4");
    if (!(p.L0 > 0 && p.L1 > 0)) throw Error(ErrorCode::ParameterError, "L0 and L1 must be positive");
    if (!(p.alpha0 > 0 && p.gamma0 > 0 && p.alpha1 > 0 && p.gamma1 > 0))
        throw Error(ErrorCode::ParameterError, "seed parameters must be positive");
    const double hi = 2.0 * std::numbers::pi * (p.n - 1) / p.n;
    if (!(p.psi.radians > std::numbers::pi && p.psi.radians < hi))
        throw Error(ErrorCode::AngleOutOfRange, "psi must lie in (pi, 2pi(n-1)/n)");
}

void validate(const TorusParams& p)
{
    if (p.n < 3) throw Error(ErrorCode::ParameterError, "n must be at least 3");
    if (!(p.L > 0)) throw Error(ErrorCode::ParameterError, "L must be positive");
    if (!(p.alpha > 0 && p.gamma > 0)) throw Error(ErrorCode::ParameterError, "seed parameters must be positive");
    const double hi = 2.0 * std::numbers::pi * (p.n - 1) / p.n;
    if (!(p.phi.radians > std::numbers::pi && p.phi.radians < hi))
        throw Error(ErrorCode::AngleOutOfRange, "phi must lie in (pi, 2pi(n-1)/n)");
}

template <class T> std::vector<TubeFrameT<T>> klein_frames(const KleinParams& p)
{
    using std::cos, std::sin, std::sqrt;
    validate(p);
    const T pi = pi_as<T>();
    const T zero(0.0);
    const T L0 = input_scalar<T>(p.L0), L1 = input_scalar<T>(p.L1);
    const T psi = p.psi.as<T>();
    const T six(6.0), three(3.0);
    const V3<T> dir{cos(pi / six), sin(pi / six), zero};
    const V3<T> shift = (T(-1.0) * (L0 + L1) * (T(2.0) / sqrt(three))) * dir;

    std::vector<TubeFrameT<T>> F(6);
    std::vector<NStarT<T>> P(6);
    std::vector<V3<T>> s(6);
    for (int j = 0; j < 6; j += 2) {
        const auto M = RigidMotionT<T>::rotation_z(T(-static_cast<double>(j)) * pi / three)
                           .compose(RigidMotionT<T>::translation(shift));
        const auto V = apply_rigid_motion(M, make_tube_frame<T>(FrameKind::VEE, p.n, L1, pi / three, pi, psi));
        P[static_cast<size_t>(j)] = V.P;
        s[static_cast<size_t>(j)] = V.s;
        P[static_cast<size_t>(j) + 1] = reverse_nstar(V.Q);
        s[static_cast<size_t>(j) + 1] = V.t;
        F[static_cast<size_t>(j) + 1] = V;
    }
    for (int j = 0; j < 6; j += 2) {
        const size_t pj = static_cast<size_t>((j + 5) % 6);
        TubeFrameT<T> tf;
        tf.kind = FrameKind::DERIVED_COAXIAL;
        tf.P = shift_nstar(P[pj], 1);
        tf.Q = shift_nstar(P[static_cast<size_t>(j)], 1);
        tf.s = s[pj];
        tf.t = s[static_cast<size_t>(j)];
        F[static_cast<size_t>(j)] = tf;
    }
    return F;
}

template <class T> std::vector<TubeFrameT<T>> torus_frames(const TorusParams& p)
{
    validate(p);
    const T zero(0.0), one(1.0);
    const V3<T> center{zero, zero, zero}, s{zero, zero, one}, p0{one, zero, zero};
    const TubeFrameT<T> V1 = make_coaxial_frame<T>(p.n, p.phi.as<T>(), center, s, p0);
    TubeFrameT<T> V2;
    V2.kind = FrameKind::DERIVED_COAXIAL;
    // labels advanced by one, as for the Klein straight frames, so that index
    // 0 of V^2 is again an angle-pi vertex of Q
    V2.P = shift_nstar(reverse_nstar(V1.Q), 1);
    V2.Q = shift_nstar(reverse_nstar(V1.P), 1);
    V2.s = V1.t;
    V2.t = V1.s;
    return {V1, V2};
}

std::vector<TubeJoint> klein_joints(const KleinParams& p, const AssemblyOptions& opt)
{
    const auto F = moved(klein_frames<double>(p), opt.motion);
    std::optional<std::vector<ITubeFrame>> IF;
    if (opt.certified) IF = moved(klein_frames<Interval>(p), opt.motion);
    std::vector<TubeJoint> out;
    for (int j = 0; j < 6; ++j) {
        const std::string tag = "J" + std::to_string(j);
        const ITubeFrame* itf = IF ? &(*IF)[static_cast<size_t>(j)] : nullptr;
        if (j % 2 == 0) {
            if (!is_coaxial(F[static_cast<size_t>(j)]))
                throw Error(ErrorCode::NotCoaxial, "derived frame F^" + std::to_string(j) + " fails the coaxial check");
            out.push_back(straight_joint(F[static_cast<size_t>(j)], itf, p.alpha0, p.gamma0, tag));
        }
        else {
            out.push_back(make_joint(F[static_cast<size_t>(j)], itf, p.n / 2, p.alpha1, p.gamma1, opt.input_radius, tag));
        }
    }
    return out;
}

std::vector<TubeJoint> torus_joints(const TorusParams& p, const AssemblyOptions& opt)
{
    const auto F = moved(torus_frames<double>(p), opt.motion);
    std::optional<std::vector<ITubeFrame>> IF;
    if (opt.certified) IF = moved(torus_frames<Interval>(p), opt.motion);
    // both joints carry the parameter vectors generated for V^1, moved
    // along the label map i -> -1-i between the two frames
    std::vector<TubeJoint> out;
    out.push_back(straight_joint(F[0], IF ? &(*IF)[0] : nullptr, p.alpha, p.gamma, "T1"));
    if (!is_coaxial(F[1])) throw Error(ErrorCode::NotCoaxial, "frame V^2 fails the coaxial check");
    const TubeJoint& J1 = out.front();
    const JointParams jp = relabel_reversed(J1.geom.params);
    std::optional<IJointParams> ijp;
    if (J1.cert) ijp = relabel_reversed(J1.cert->params);
    out.push_back(make_joint_from_params(F[1], IF ? &(*IF)[1] : nullptr, jp, ijp ? &*ijp : nullptr, "T2"));
    return out;
}

Assembly assemble(const std::string& construction, std::vector<TubeJoint> joints, const AssemblyOptions& opt)
{
    Assembly as;
    AssemblyReport& r = as.report;
    r.construction = construction;
    auto fail = [&r](const std::string& cat, const std::string& what) {
        if (!r.first_failure.count(cat)) r.first_failure[cat] = what;
    };

    // flatness per joint
    bool joints_flat = true, joints_not_flat = false;
    for (const auto& J : joints) {
        r.joints.push_back(verify_flat(J));
        joints_flat &= r.joints.back().verdict == Flatness::FLAT;
        joints_not_flat |= r.joints.back().verdict == Flatness::NOT_FLAT;
        if (r.joints.back().verdict != Flatness::FLAT) fail("flatness", J.tag + " " + to_string(r.joints.back().verdict));
        if (!r.joints.back().all_deltas_positive) fail("discriminant", J.tag + " has a Delta not certified positive");
    }

    as.glued = glue_cycle(std::move(joints));
    const GluedComplex& gc = as.glued;
    r.reversing_seams = gc.reversing_seams();

    // seams
    r.seams = verify_seams(gc);
    bool seams_flat = true, seams_off = false;
    const Interval two_pi = Interval(2.0) * ia_pi();
    for (const auto& s : r.seams) {
        seams_flat &= s.all_flat;
        for (const auto& v : s.vertices)
            if (!v.flat) {
                seams_off |= !v.angle_sum.intersects(two_pi);
                fail("seam_flatness", v.label);
            }
        if (!s.opposite_sides) fail("seam_side", "seam " + std::to_string(s.seam));
    }

    // injectivity everywhere
    for (int v = 0; v < gc.mesh.num_vertices(); ++v) {
        r.injectivity.push_back(certify_local_injectivity(gc.mesh, v));
        switch (r.injectivity.back().verdict) {
        case VertexVerdict::INJECTIVE: ++r.injective_vertices; break;
        case VertexVerdict::INDETERMINATE:
            ++r.indeterminate_vertices;
            fail("injectivity", gc.mesh.label[static_cast<size_t>(v)] + " INDETERMINATE");
            break;
        case VertexVerdict::NOT_INJECTIVE:
            ++r.noninjective_vertices;
            fail("injectivity", gc.mesh.label[static_cast<size_t>(v)] + " NOT_INJECTIVE");
            break;
        }
    }

    r.topology = classify_topology(gc.mesh);
    const bool parity_torus = r.reversing_seams % 2 == 0;
    if (r.topology.orientable != parity_torus) fail("topology", "orientability disagrees with seam parity");

    r.glued = mesh_stats(gc.mesh);
    MergeResult mr = merge_coplanar(gc.mesh);
    as.merged = std::move(mr.mesh);
    r.merged_pairs = mr.merged_pairs;
    r.merged = mesh_stats(as.merged);
    if (r.merged.euler != r.glued.euler) fail("merge", "Euler characteristic changed");
    if (const auto e = check_faces_convex(as.merged, 1e-9); !e.empty()) fail("merge", e);

    if (opt.intersections) {
        r.intersections_computed = true;
        r.intersections = self_intersections(gc.mesh);
        r.min_endpoint_vertex_distance = std::numeric_limits<double>::infinity();
        for (const auto& seg : r.intersections.segments)
            for (const Vec3& p : gc.mesh.pos)
                r.min_endpoint_vertex_distance = std::min({r.min_endpoint_vertex_distance, dist(seg.p, p), dist(seg.q, p)});
    }

    r.flatness = (joints_flat && seams_flat) ? Flatness::FLAT
                 : (joints_not_flat || seams_off) ? Flatness::NOT_FLAT
                                                  : Flatness::UNCERTIFIED;
    const bool all_inj = r.injective_vertices == gc.mesh.num_vertices();
    if (r.flatness == Flatness::FLAT && all_inj) r.verdict = ImmersionVerdict::ISOMETRIC_IMMERSION;
    else if (r.flatness == Flatness::NOT_FLAT || r.noninjective_vertices > 0) r.verdict = ImmersionVerdict::NOT_IMMERSION;
    else r.verdict = ImmersionVerdict::INDETERMINATE;
    r.embedded = r.verdict == ImmersionVerdict::ISOMETRIC_IMMERSION && r.intersections_computed &&
                 r.intersections.segments.empty() && r.intersections.coplanar_overlaps == 0;
    if (r.intersections_computed && !r.intersections.segments.empty())
        fail("embedding", std::to_string(r.intersections.segments.size()) + " intersection segments");
    return as;
}

Assembly build_flat_klein(const KleinParams& p, const AssemblyOptions& opt)
{
    return assemble("klein", klein_joints(p, opt), opt);
}

Assembly build_flat_torus(const TorusParams& p, const AssemblyOptions& opt)
{
    return assemble("torus", torus_joints(p, opt), opt);
}

std::vector<double> linspace(double lo, double hi, int steps)
{
    if (steps < 1) throw Error(ErrorCode::ParameterError, "steps must be at least 1");
    std::vector<double> g;
    for (int i = 0; i < steps; ++i) {
        const double x = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
        // snap to 15 significant digits so decimal grids hit 3.1 rather than 3.0999999999999996
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.15g", x);
        g.push_back(std::strtod(buf, nullptr));
    }
    return g;
}

std::vector<SweepCell> sweep_parameters(const SweepRequest& req)
{
    if (req.alphas.empty() || req.gammas.empty()) throw Error(ErrorCode::ParameterError, "empty sweep grid");
    for (double x : req.alphas)
        if (!(x > 0)) throw Error(ErrorCode::ParameterError, "sweep values must be positive");
    for (double x : req.gammas)
        if (!(x > 0)) throw Error(ErrorCode::ParameterError, "sweep values must be positive");
    AssemblyOptions opt;
    opt.certified = req.certified;
    opt.intersections = req.intersections;

    std::vector<SweepCell> out;
    for (double a : req.alphas)
        for (double g : req.gammas) {
            SweepCell cell{a, g, "OK", ""};
            try {
                Assembly as;
                if (req.base == SweepBase::KLEIN) {
                    KleinParams p = req.klein;
                    p.alpha1 = a;
                    p.gamma1 = g;
                    as = build_flat_klein(p, opt);
                }
                else {
                    TorusParams p = req.torus;
                    p.alpha = a;
                    p.gamma = g;
                    as = build_flat_torus(p, opt);
                }
                const auto& r = as.report;
                const bool deltas = std::all_of(r.joints.begin(), r.joints.end(), [](const FlatnessReport& f) { return f.all_deltas_positive; });
                if (!deltas) cell.status = "DELTA_NOT_POSITIVE";
                else if (r.flatness != Flatness::FLAT) cell.status = std::string("FLATNESS_") + to_string(r.flatness);
                else if (r.noninjective_vertices > 0) cell.status = "INJECTIVITY_INTERSECTING";
                else if (r.indeterminate_vertices > 0) cell.status = "INJECTIVITY_INDETERMINATE";
                else if (req.intersections && !r.embedded) cell.status = "SELF_INTERSECTING";
                if (cell.status != "OK" && !r.first_failure.empty()) cell.detail = r.first_failure.begin()->second;
            }
            catch (const Error& e) {
                cell.status = std::string(to_string(e.code()));
                cell.detail = e.what();
            }
            out.push_back(cell);
        }
    return out;
}

template std::vector<TubeFrameT<double>> klein_frames<double>(const KleinParams&);
template std::vector<TubeFrameT<Interval>> klein_frames<Interval>(const KleinParams&);
template std::vector<TubeFrameT<double>> torus_frames<double>(const TorusParams&);
template std::vector<TubeFrameT<Interval>> torus_frames<Interval>(const TorusParams&);

} // namespace flatkb
