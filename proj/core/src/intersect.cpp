#include "flatkb/cw_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace flatkb {

double IntersectionResult::total_length() const
{
    double s = 0;
    for (const auto& seg : segments) s += dist(seg.p, seg.q);
    return s;
}

namespace {

using Tri = std::array<Vec3, 3>;

struct Box {
    Vec3 lo, hi;
    bool overlaps(const Box& o, double pad) const
    {
        for (int i = 0; i < 3; ++i)
            if (lo[i] > o.hi[i] + pad || o.lo[i] > hi[i] + pad) return false;
        return true;
    }
};

Box box_of(const CWMesh& m, const std::vector<int>& F)
{
    Box b{m.pos[static_cast<size_t>(F[0])], m.pos[static_cast<size_t>(F[0])]};
    for (int v : F)
        for (int i = 0; i < 3; ++i) {
            b.lo[i] = std::min(b.lo[i], m.pos[static_cast<size_t>(v)][i]);
            b.hi[i] = std::max(b.hi[i], m.pos[static_cast<size_t>(v)][i]);
        }
    return b;
}

// Portion of triangle t on the plane (n, d): n.x = d. Returns false when
// the triangle misses the plane or lies in it (sets `coplanar`).
bool plane_cut(const Tri& t, const Vec3& n, double d, double eps, Vec3& p, Vec3& q, bool& coplanar)
{
    double s[3];
    for (int i = 0; i < 3; ++i) {
        s[i] = dot(n, t[static_cast<size_t>(i)]) - d;
        if (std::fabs(s[i]) < eps) s[i] = 0.0;
    }
    coplanar = s[0] == 0.0 && s[1] == 0.0 && s[2] == 0.0;
    if (coplanar) return false;
    if ((s[0] > 0 && s[1] > 0 && s[2] > 0) || (s[0] < 0 && s[1] < 0 && s[2] < 0)) return false;
    std::vector<Vec3> pts;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        if (s[i] == 0.0) pts.push_back(t[static_cast<size_t>(i)]);
        if ((s[i] > 0 && s[j] < 0) || (s[i] < 0 && s[j] > 0)) {
            const double u = s[i] / (s[i] - s[j]);
            pts.push_back(t[static_cast<size_t>(i)] + u * (t[static_cast<size_t>(j)] - t[static_cast<size_t>(i)]));
        }
    }
    if (pts.empty()) return false;
    p = pts.front();
    q = pts.back();
    // a single touching vertex gives a degenerate segment
    if (pts.size() > 2) {
        double best = -1;
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b)
                if (dist(pts[a], pts[b]) > best) {
                    best = dist(pts[a], pts[b]);
                    p = pts[a];
                    q = pts[b];
                }
    }
    return true;
}

// 2-D overlap of two coplanar triangles (positive area) by separating axes.
bool coplanar_overlap(const Tri& a, const Tri& b, const Vec3& n, double eps)
{
    auto axes_of = [&](const Tri& t, std::vector<Vec3>& out) {
        for (int i = 0; i < 3; ++i) out.push_back(cross(n, t[static_cast<size_t>((i + 1) % 3)] - t[static_cast<size_t>(i)]));
    };
    std::vector<Vec3> axes;
    axes_of(a, axes);
    axes_of(b, axes);
    for (const Vec3& ax : axes) {
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (const Vec3& p : a) {
            amin = std::min(amin, dot(ax, p));
            amax = std::max(amax, dot(ax, p));
        }
        for (const Vec3& p : b) {
            bmin = std::min(bmin, dot(ax, p));
            bmax = std::max(bmax, dot(ax, p));
        }
        const double scale = norm(ax);
        if (amax <= bmin + eps * scale || bmax <= amin + eps * scale) return false;
    }
    return true;
}

// Intersection segment of two non-coplanar triangles.
bool tri_tri(const Tri& A, const Tri& B, double eps, Vec3& p, Vec3& q, bool& coplanar)
{
    const Vec3 na = normalized(cross(A[1] - A[0], A[2] - A[0]));
    const Vec3 nb = normalized(cross(B[1] - B[0], B[2] - B[0]));
    Vec3 a0, a1, b0, b1;
    bool cop = false;
    coplanar = false;
    if (!plane_cut(A, nb, dot(nb, B[0]), eps, a0, a1, cop)) {
        if (cop) coplanar = coplanar_overlap(A, B, nb, eps);
        return false;
    }
    if (!plane_cut(B, na, dot(na, A[0]), eps, b0, b1, cop)) {
        if (cop) coplanar = coplanar_overlap(A, B, na, eps);
        return false;
    }
    const Vec3 L = cross(na, nb);
    if (norm(L) < 1e-14) return false;
    double ta0 = dot(L, a0), ta1 = dot(L, a1), tb0 = dot(L, b0), tb1 = dot(L, b1);
    if (ta0 > ta1) {
        std::swap(ta0, ta1);
        std::swap(a0, a1);
    }
    if (tb0 > tb1) {
        std::swap(tb0, tb1);
        std::swap(b0, b1);
    }
    const double lo = std::max(ta0, tb0), hi = std::min(ta1, tb1);
    if (lo > hi) return false;
    auto at = [&](double t) {
        if (ta1 - ta0 < 1e-300) return a0;
        return a0 + ((t - ta0) / (ta1 - ta0)) * (a1 - a0);
    };
    p = at(lo);
    q = at(hi);
    return true;
}

std::vector<Tri> triangulate(const CWMesh& m, const std::vector<int>& F, int start)
{
    std::vector<Tri> out;
    const int k = static_cast<int>(F.size());
    const int s = ((start % k) + k) % k;
    const Vec3& p0 = m.pos[static_cast<size_t>(F[static_cast<size_t>(s)])];
    for (int i = 1; i + 1 < k; ++i)
        out.push_back({p0, m.pos[static_cast<size_t>(F[static_cast<size_t>((s + i) % k)])],
                       m.pos[static_cast<size_t>(F[static_cast<size_t>((s + i + 1) % k)])]});
    return out;
}

} // namespace

IntersectionResult self_intersections(const CWMesh& m, int fan_start)
{
    IntersectionResult res;
    const auto em = edge_map(m);
    std::set<std::pair<int, int>> edge_adjacent;
    for (const auto& [e, uses] : em)
        for (size_t i = 0; i < uses.size(); ++i)
            for (size_t j = i + 1; j < uses.size(); ++j)
                edge_adjacent.insert({std::min(uses[i].face, uses[j].face), std::max(uses[i].face, uses[j].face)});

    const int nf = m.num_faces();
    std::vector<Box> boxes;
    std::vector<std::vector<Tri>> tris;
    double scale = 1.0;
    for (const auto& F : m.faces) {
        boxes.push_back(box_of(m, F));
        tris.push_back(triangulate(m, F, fan_start));
        for (int i = 0; i < 3; ++i) scale = std::max(scale, std::fabs(boxes.back().hi[i]));
    }
    const double eps = 1e-12 * scale;

    for (int f = 0; f < nf; ++f) {
        for (int g = f + 1; g < nf; ++g) {
            if (edge_adjacent.count({f, g})) continue;
            if (!boxes[static_cast<size_t>(f)].overlaps(boxes[static_cast<size_t>(g)], 1e-9)) continue;
            bool overlap_counted = false;
            for (const Tri& A : tris[static_cast<size_t>(f)])
                for (const Tri& B : tris[static_cast<size_t>(g)]) {
                    Vec3 p, q;
                    bool cop = false;
                    if (tri_tri(A, B, eps, p, q, cop)) {
                        // touching at a shared vertex (or any point) is not a crossing
                        if (dist(p, q) < 1e-9) continue;
                        res.segments.push_back({p, q, f, g});
                    }
                    else if (cop && !overlap_counted) {
                        ++res.coplanar_overlaps;
                        overlap_counted = true;
                    }
                }
        }
    }
    return res;
}

} // namespace flatkb
