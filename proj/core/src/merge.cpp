#include "flatkb/cw_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace flatkb {

namespace {

Vec3 face_normal(const CWMesh& m, const std::vector<int>& F)
{
    Vec3 n{0, 0, 0};
    for (size_t i = 0; i < F.size(); ++i) {
        const Vec3& a = m.pos[static_cast<size_t>(F[i])];
        const Vec3& b = m.pos[static_cast<size_t>(F[(i + 1) % F.size()])];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return normalized(n);
}

// Rotates F so that it starts with `first`.
std::vector<int> rotate_to(const std::vector<int>& F, int first)
{
    std::vector<int> r(F);
    std::rotate(r.begin(), std::find(r.begin(), r.end(), first), r.end());
    return r;
}

// Convex (non-strictly) with respect to normal n.
bool is_convex(const CWMesh& m, const std::vector<int>& F, const Vec3& n, double tol)
{
    const size_t k = F.size();
    for (size_t i = 0; i < k; ++i) {
        const Vec3& a = m.pos[static_cast<size_t>(F[(i + k - 1) % k])];
        const Vec3& b = m.pos[static_cast<size_t>(F[i])];
        const Vec3& c = m.pos[static_cast<size_t>(F[(i + 1) % k])];
        const Vec3 e1 = b - a, e2 = c - b;
        if (dot(n, cross(e1, e2)) < -tol * norm(e1) * norm(e2)) return false;
    }
    return true;
}

// Removes vertex v from every face when it has exactly two neighbours and
// the two incident edges are collinear.
int remove_collinear_valence2(CWMesh& m, double tol)
{
    int removed = 0;
    std::vector<std::set<int>> nb(static_cast<size_t>(m.num_vertices()));
    for (const auto& F : m.faces)
        for (size_t i = 0; i < F.size(); ++i) {
            const int a = F[i], b = F[(i + 1) % F.size()];
            nb[static_cast<size_t>(a)].insert(b);
            nb[static_cast<size_t>(b)].insert(a);
        }
    std::vector<char> drop(static_cast<size_t>(m.num_vertices()), 0);
    for (int v = 0; v < m.num_vertices(); ++v) {
        const auto& N = nb[static_cast<size_t>(v)];
        if (N.size() != 2) continue;
        const int a = *N.begin(), b = *N.rbegin();
        if (drop[static_cast<size_t>(a)] || drop[static_cast<size_t>(b)]) continue;
        const Vec3 e1 = m.pos[static_cast<size_t>(a)] - m.pos[static_cast<size_t>(v)];
        const Vec3 e2 = m.pos[static_cast<size_t>(b)] - m.pos[static_cast<size_t>(v)];
        const double l = norm(e1) * norm(e2);
        if (norm(cross(e1, e2)) <= tol * l && dot(e1, e2) < 0) {
            drop[static_cast<size_t>(v)] = 1;
            ++removed;
        }
    }
    if (removed == 0) return 0;
    for (auto& F : m.faces)
        F.erase(std::remove_if(F.begin(), F.end(), [&](int v) { return drop[static_cast<size_t>(v)] != 0; }), F.end());
    return removed;
}

// Drops unreferenced vertices and renumbers.
void compact(CWMesh& m)
{
    std::vector<int> remap(static_cast<size_t>(m.num_vertices()), -1);
    for (const auto& F : m.faces)
        for (int v : F) remap[static_cast<size_t>(v)] = 0;
    CWMesh out;
    const bool cert = m.certified_positions();
    for (int v = 0; v < m.num_vertices(); ++v) {
        if (remap[static_cast<size_t>(v)] < 0) continue;
        const std::string name = m.label.empty() ? std::string() : m.label[static_cast<size_t>(v)];
        remap[static_cast<size_t>(v)] = cert ? out.add_vertex(m.pos[static_cast<size_t>(v)], m.ipos[static_cast<size_t>(v)], name)
                                             : out.add_vertex(m.pos[static_cast<size_t>(v)], name);
    }
    for (auto F : m.faces) {
        for (int& v : F) v = remap[static_cast<size_t>(v)];
        out.faces.push_back(std::move(F));
    }
    m = std::move(out);
}

} // namespace

MergeResult merge_coplanar(const CWMesh& input, double tol)
{
    MergeResult res;
    res.mesh = input;
    CWMesh& m = res.mesh;
    // face pairs that failed convexity, by content
    std::set<std::pair<std::vector<int>, std::vector<int>>> rejected_faces;

    bool changed = true;
    while (changed) {
        changed = false;
        res.removed_vertices += remove_collinear_valence2(m, tol);
        const auto em = edge_map(m);
        std::vector<Vec3> normals;
        normals.reserve(m.faces.size());
        for (const auto& F : m.faces) normals.push_back(face_normal(m, F));

        for (const auto& [e, uses] : em) {
            if (uses.size() != 2) continue;
            const int f = uses[0].face, g = uses[1].face;
            if (f == g) continue;
            // compare normals after orienting g consistently with f
            const double sgn = uses[0].forward != uses[1].forward ? 1.0 : -1.0;
            const Vec3 nf = normals[static_cast<size_t>(f)];
            const Vec3 ng = sgn * normals[static_cast<size_t>(g)];
            if (dot(nf, ng) <= 0.0 || norm(cross(nf, ng)) > tol) continue;

            std::vector<int> F = m.faces[static_cast<size_t>(f)];
            std::vector<int> G = m.faces[static_cast<size_t>(g)];
            if (rejected_faces.count({F, G})) continue;
            if (sgn < 0) std::reverse(G.begin(), G.end());
            // F contains a->b; G then contains b->a.
            int a = e.first, b = e.second;
            {
                const auto it = std::find(F.begin(), F.end(), a);
                const int after = *(std::next(it) == F.end() ? F.begin() : std::next(it));
                if (after != b) std::swap(a, b);
            }
            // the faces must share only this edge
            std::set<int> sf(F.begin(), F.end());
            int shared = 0;
            for (int v : G) shared += sf.count(v) ? 1 : 0;
            if (shared != 2) continue;

            const std::vector<int> Fp = rotate_to(F, b); // b ... a
            const std::vector<int> Gp = rotate_to(G, a); // a ... b
            std::vector<int> merged(Fp.begin(), Fp.end());
            merged.insert(merged.end(), Gp.begin() + 1, Gp.end() - 1);

            if (!is_convex(m, merged, nf, tol)) {
                rejected_faces.insert({m.faces[static_cast<size_t>(f)], m.faces[static_cast<size_t>(g)]});
                ++res.skipped_nonconvex;
                continue;
            }
            m.faces[static_cast<size_t>(f)] = merged;
            m.faces.erase(m.faces.begin() + g);
            ++res.merged_pairs;
            changed = true;
            break;
        }
    }
    compact(m);
    return res;
}

} // namespace flatkb
