#include "flatkb/cw_mesh.hpp"

#include "flatkb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace flatkb {

int CWMesh::add_vertex(const Vec3& p, std::string name)
{
    pos.push_back(p);
    label.push_back(std::move(name));
    return static_cast<int>(pos.size()) - 1;
}

int CWMesh::add_vertex(const Vec3& p, const IVec3& box, std::string name)
{
    if (ipos.size() != pos.size())
        throw Error(ErrorCode::InvalidComplex, "mixing certified and uncertified vertices");
    ipos.push_back(box);
    return add_vertex(p, std::move(name));
}

int CWMesh::find_label(const std::string& name) const
{
    const auto it = std::find(label.begin(), label.end(), name);
    return it == label.end() ? -1 : static_cast<int>(it - label.begin());
}

std::map<EdgeKey, std::vector<EdgeUse>> edge_map(const CWMesh& m)
{
    std::map<EdgeKey, std::vector<EdgeUse>> em;
    for (int f = 0; f < m.num_faces(); ++f) {
        const auto& F = m.faces[static_cast<size_t>(f)];
        for (size_t i = 0; i < F.size(); ++i) {
            const int a = F[i], b = F[(i + 1) % F.size()];
            em[edge_key(a, b)].push_back({f, a < b});
        }
    }
    return em;
}

int num_edges(const CWMesh& m) { return static_cast<int>(edge_map(m).size()); }

std::string check_complex(const CWMesh& m)
{
    std::ostringstream err;
    const int nv = m.num_vertices();
    for (int f = 0; f < m.num_faces(); ++f) {
        const auto& F = m.faces[static_cast<size_t>(f)];
        if (F.size() < 3) err << "face " << f << " has fewer than 3 vertices; ";
        std::set<int> seen;
        for (int v : F) {
            if (v < 0 || v >= nv) err << "face " << f << " index out of range; ";
            if (!seen.insert(v).second) err << "face " << f << " repeats vertex " << v << "; ";
        }
    }
    for (const auto& [e, uses] : edge_map(m))
        if (uses.size() > 2) err << "edge (" << e.first << "," << e.second << ") has " << uses.size() << " faces; ";
    return err.str();
}

namespace {

Vec3 newell_normal(const CWMesh& m, const std::vector<int>& F)
{
    Vec3 n{0, 0, 0};
    for (size_t i = 0; i < F.size(); ++i) {
        const Vec3& a = m.pos[static_cast<size_t>(F[i])];
        const Vec3& b = m.pos[static_cast<size_t>(F[(i + 1) % F.size()])];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return n;
}

} // namespace

std::string check_faces_convex(const CWMesh& m, double tol)
{
    std::ostringstream err;
    for (int f = 0; f < m.num_faces(); ++f) {
        const auto& F = m.faces[static_cast<size_t>(f)];
        Vec3 n = newell_normal(m, F);
        const double nn = norm(n);
        if (nn == 0.0) {
            err << "face " << f << " degenerate; ";
            continue;
        }
        n = n / nn;
        const Vec3& p0 = m.pos[static_cast<size_t>(F[0])];
        const size_t k = F.size();
        for (size_t i = 0; i < k; ++i) {
            const Vec3& a = m.pos[static_cast<size_t>(F[(i + k - 1) % k])];
            const Vec3& b = m.pos[static_cast<size_t>(F[i])];
            const Vec3& c = m.pos[static_cast<size_t>(F[(i + 1) % k])];
            if (std::fabs(dot(n, b - p0)) > tol) err << "face " << f << " not planar; ";
            const Vec3 e1 = b - a, e2 = c - b;
            if (dot(n, cross(e1, e2)) <= tol * norm(e1) * norm(e2)) err << "face " << f << " not strictly convex at " << i << "; ";
        }
    }
    return err.str();
}

std::vector<std::vector<int>> boundary_loops(const CWMesh& m)
{
    // directed boundary edges, following each face's own direction
    std::map<int, std::vector<int>> out;
    int count = 0;
    for (const auto& [e, uses] : edge_map(m)) {
        if (uses.size() != 1) continue;
        const bool fwd = uses[0].forward;
        out[fwd ? e.first : e.second].push_back(fwd ? e.second : e.first);
        ++count;
    }
    std::vector<std::vector<int>> loops;
    std::set<std::pair<int, int>> used;
    for (auto& [start, targets] : out) {
        for (int t : targets) {
            if (used.count({start, t})) continue;
            std::vector<int> loop{start};
            int a = start, b = t;
            while (!used.count({a, b})) {
                used.insert({a, b});
                if (b == start) break;
                loop.push_back(b);
                const auto it = out.find(b);
                if (it == out.end()) break;
                int nxt = -1;
                for (int c : it->second)
                    if (!used.count({b, c})) {
                        nxt = c;
                        break;
                    }
                if (nxt < 0) break;
                a = b;
                b = nxt;
            }
            loops.push_back(loop);
        }
    }
    (void)count;
    return loops;
}

namespace {

// neighbours of v inside face f: (previous, next) in the face's order
std::pair<int, int> face_neighbors(const std::vector<int>& F, int v)
{
    const size_t k = F.size();
    for (size_t i = 0; i < k; ++i)
        if (F[i] == v) return {F[(i + k - 1) % k], F[(i + 1) % k]};
    return {-1, -1};
}

std::vector<int> faces_at(const CWMesh& m, int v)
{
    std::vector<int> out;
    for (int f = 0; f < m.num_faces(); ++f) {
        const auto& F = m.faces[static_cast<size_t>(f)];
        if (std::find(F.begin(), F.end(), v) != F.end()) out.push_back(f);
    }
    return out;
}

// Walks the link of v starting with face `start` oriented (p, q).
Fan walk_fan(const CWMesh& m, int v, const std::vector<int>& incident, int start, int p, int q)
{
    Fan fan;
    std::set<int> used;
    int f = start;
    for (;;) {
        fan.faces.push_back(f);
        fan.prev.push_back(p);
        fan.next.push_back(q);
        used.insert(f);
        int nf = -1, nq = -1;
        for (int g : incident) {
            if (g == f) continue;
            const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(g)], v);
            if (a == q || b == q) {
                if (g == start) {
                    fan.closed = true;
                    return fan;
                }
                if (used.count(g)) continue;
                nf = g;
                nq = (a == q) ? b : a;
                break;
            }
        }
        if (nf < 0) return fan;
        p = q;
        q = nq;
        f = nf;
    }
}

} // namespace

Fan vertex_fan(const CWMesh& m, int v)
{
    const std::vector<int> inc = faces_at(m, v);
    if (inc.empty()) return {};
    // a boundary vertex has a neighbour that appears in exactly one face
    std::map<int, int> count;
    for (int f : inc) {
        const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(f)], v);
        ++count[a];
        ++count[b];
    }
    for (int f : inc) {
        const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(f)], v);
        if (count[a] == 1) return walk_fan(m, v, inc, f, a, b);
        if (count[b] == 1) return walk_fan(m, v, inc, f, b, a);
    }
    const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(inc[0])], v);
    Fan fan = walk_fan(m, v, inc, inc[0], a, b);
    if (fan.faces.size() != inc.size())
        throw Error(ErrorCode::InvalidComplex, "vertex " + std::to_string(v) + " link is not a single cycle");
    return fan;
}

Fan vertex_fan_from(const CWMesh& m, int v, int first, int second)
{
    const std::vector<int> inc = faces_at(m, v);
    for (int f : inc) {
        const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(f)], v);
        if ((a == first && b == second) || (a == second && b == first)) return walk_fan(m, v, inc, f, first, second);
    }
    throw Error(ErrorCode::InvalidComplex, "no face at vertex spans the requested edges");
}

int valence(const CWMesh& m, int v)
{
    std::set<int> nb;
    for (int f : faces_at(m, v)) {
        const auto [a, b] = face_neighbors(m.faces[static_cast<size_t>(f)], v);
        nb.insert(a);
        nb.insert(b);
    }
    return static_cast<int>(nb.size());
}

namespace {

IVec3 box_of(const CWMesh& m, int v, double radius)
{
    if (m.certified_positions()) return m.ipos[static_cast<size_t>(v)];
    return ia_from_vec(m.pos[static_cast<size_t>(v)], radius);
}

} // namespace

Interval angle_sum(const CWMesh& m, int v, bool certified, double radius, bool allow_boundary)
{
    const Fan fan = vertex_fan(m, v);
    if (!fan.closed && !allow_boundary)
        throw Error(ErrorCode::BoundaryVertex, "vertex " + std::to_string(v) + " is on the boundary");
    if (!certified) {
        double s = 0;
        const Vec3& u = m.pos[static_cast<size_t>(v)];
        for (size_t k = 0; k < fan.faces.size(); ++k) {
            const Vec3 a = m.pos[static_cast<size_t>(fan.prev[k])] - u;
            const Vec3 b = m.pos[static_cast<size_t>(fan.next[k])] - u;
            s += std::atan2(norm(cross(a, b)), dot(a, b));
        }
        return Interval(s);
    }
    const IVec3 u = box_of(m, v, radius);
    Interval s(0.0);
    for (size_t k = 0; k < fan.faces.size(); ++k) {
        const IVec3 a = box_of(m, fan.prev[k], radius) - u;
        const IVec3 b = box_of(m, fan.next[k], radius) - u;
        s += ia_atan2(norm(cross(a, b)), dot(a, b));
    }
    return s;
}

std::vector<std::pair<int, int>> kitty_corner_labels(int val)
{
    if (val < 4) throw Error(ErrorCode::LowValence, "kitty-corner pairs need valence >= 4");
    std::vector<std::pair<int, int>> out;
    auto adjacent = [val](int a, int b) {
        const int d = ((a - b) % val + val) % val;
        return d == 1 || d == val - 1;
    };
    for (int j = 1; j < val; ++j)
        for (int k = j + 1; k < val; ++k)
            if (!adjacent(j, k)) out.emplace_back(j, k);
    for (int k = 1; k < val; ++k)
        if (!adjacent(val, k)) out.emplace_back(val, k);
    return out;
}

std::vector<std::pair<int, int>> kitty_corner_pairs(const CWMesh& m, int v)
{
    const Fan fan = vertex_fan(m, v);
    const int val = static_cast<int>(fan.faces.size());
    if (!fan.closed || val < 4)
        throw Error(ErrorCode::LowValence, "vertex " + std::to_string(v) + " has fewer than 4 faces in a closed fan");
    std::vector<std::pair<int, int>> out;
    for (const auto& [j, k] : kitty_corner_labels(val))
        out.emplace_back(fan.faces[static_cast<size_t>(j - 1)], fan.faces[static_cast<size_t>(k - 1)]);
    return out;
}

namespace {

template <class T, class M> std::array<T, 4> cofactors_impl(const M& A)
{
    std::array<T, 4> c;
    for (int drop = 0; drop < 4; ++drop) {
        int cols[3], q = 0;
        for (int j = 0; j < 4; ++j)
            if (j != drop) cols[q++] = j;
        auto at = [&](int r, int cidx) -> const T& { return A[static_cast<size_t>(r)][static_cast<size_t>(cols[cidx])]; };
        const T det = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                      at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                      at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        c[static_cast<size_t>(drop)] = (drop % 2 == 0) ? det : -det;
    }
    return c;
}

// Float witness for the rank-2 case: a ray of one cone strictly inside the
// other (coplanar) cone.
bool coplanar_cone_overlap(const Vec3& v1, const Vec3& w1, const Vec3& v2, const Vec3& w2)
{
    auto inside = [](const Vec3& a, const Vec3& b, const Vec3& d) {
        const Vec3 n = cross(a, b);
        const double nn = norm(n);
        if (nn == 0.0 || std::fabs(dot(n, d)) > 1e-12 * nn * norm(d)) return false;
        // d = x a + y b with x, y > 0
        const double x = dot(cross(d, b), n) / (nn * nn);
        const double y = dot(cross(a, d), n) / (nn * nn);
        return x > 1e-12 && y > 1e-12;
    };
    const Vec3 b2 = v2 / norm(v2) + w2 / norm(w2);
    const Vec3 b1 = v1 / norm(v1) + w1 / norm(w1);
    return inside(v1, w1, b2) || inside(v2, w2, b1);
}

} // namespace

std::array<double, 4> cofactors_3x4(const Mat34& M) { return cofactors_impl<double>(M); }
std::array<Interval, 4> cofactors_3x4(const IMat34& M) { return cofactors_impl<Interval>(M); }

const char* to_string(PairVerdict v)
{
    switch (v) {
    case PairVerdict::SEPARATED: return "SEPARATED";
    case PairVerdict::INTERSECTING: return "INTERSECTING";
    case PairVerdict::INDETERMINATE: return "INDETERMINATE";
    }
    return "?";
}

const char* to_string(VertexVerdict v)
{
    switch (v) {
    case VertexVerdict::INJECTIVE: return "INJECTIVE";
    case VertexVerdict::NOT_INJECTIVE: return "NOT_INJECTIVE";
    case VertexVerdict::INDETERMINATE: return "INDETERMINATE";
    }
    return "?";
}

namespace {

PairVerdict classify_signs(const std::array<SignVerdict, 4>& s)
{
    const int pos = static_cast<int>(std::count(s.begin(), s.end(), SignVerdict::POSITIVE));
    const int neg = static_cast<int>(std::count(s.begin(), s.end(), SignVerdict::NEGATIVE));
    if (pos > 0 && neg > 0) return PairVerdict::SEPARATED;
    // an all-positive kernel vector is a common interior ray of both cones
    if (pos == 4 || neg == 4) return PairVerdict::INTERSECTING;
    return PairVerdict::INDETERMINATE;
}

} // namespace

InjectivityRow certify_pair(const CWMesh& m, int v, const Fan& fan, int j, int k, double radius)
{
    InjectivityRow row;
    row.vertex = v;
    row.vertex_label = m.label.empty() ? std::string() : m.label[static_cast<size_t>(v)];
    row.j = j;
    row.k = k;
    const size_t fj = static_cast<size_t>(j - 1), fk = static_cast<size_t>(k - 1);
    const int ids[4] = {fan.prev[fj], fan.next[fj], fan.prev[fk], fan.next[fk]};
    const Vec3& u = m.pos[static_cast<size_t>(v)];
    Vec3 cols[4];
    for (int c = 0; c < 4; ++c) {
        cols[c] = m.pos[static_cast<size_t>(ids[c])] - u;
        if (c >= 2) cols[c] = -cols[c];
        for (int r = 0; r < 3; ++r) row.M[static_cast<size_t>(r)][static_cast<size_t>(c)] = cols[c][r];
    }
    row.cofactors = cofactors_3x4(row.M);

    IMat34 cert_cols;
    auto certify = [&](bool use_ipos, double rad) {
        const IVec3 U = use_ipos ? m.ipos[static_cast<size_t>(v)] : ia_from_vec(u, rad);
        IMat34 IM;
        for (int c = 0; c < 4; ++c) {
            const IVec3 P = use_ipos ? m.ipos[static_cast<size_t>(ids[c])] : ia_from_vec(m.pos[static_cast<size_t>(ids[c])], rad);
            IVec3 col = P - U;
            if (c >= 2) col = -col;
            for (int r = 0; r < 3; ++r) IM[static_cast<size_t>(r)][static_cast<size_t>(c)] = col[r];
        }
        row.enclosures = cofactors_3x4(IM);
        cert_cols = IM;
        for (size_t c = 0; c < 4; ++c) row.signs[c] = ia_sign(row.enclosures[c]);
        row.verdict = classify_signs(row.signs);
    };
    certify(m.certified_positions(), radius);
    const bool none_certified = std::all_of(row.signs.begin(), row.signs.end(),
                                            [](SignVerdict s) { return s == SignVerdict::ZERO_UNCERTIFIABLE; });
    if (none_certified) {
        // rank-2 fallback: one representable step around the float positions
        certify(false, 0.0);
        if (std::all_of(row.signs.begin(), row.signs.end(),
                        [](SignVerdict s) { return s == SignVerdict::ZERO_UNCERTIFIABLE; }) &&
            coplanar_cone_overlap(cols[0], cols[1], -cols[2], -cols[3]))
            row.verdict = PairVerdict::INTERSECTING;
    }
    if (row.verdict == PairVerdict::INDETERMINATE) {
        // Gordan alternative: some y with y.M < 0 entrywise exists iff ker M
        // has no nonzero non-negative vector. Try bisector-based candidates.
        certify(m.certified_positions(), radius);
        auto unit = [](const Vec3& a) { return normalized(a); };
        const Vec3 b1 = unit(unit(cols[0]) + unit(cols[1]));
        const Vec3 b2 = unit(unit(-cols[2]) + unit(-cols[3]));
        for (const Vec3& y : {b2 - b1, -b1, b2}) {
            if (norm(y) < 1e-12) continue;
            bool ok = true;
            for (int c = 0; c < 4 && ok; ++c) {
                const IVec3 col{cert_cols[0][static_cast<size_t>(c)], cert_cols[1][static_cast<size_t>(c)],
                                cert_cols[2][static_cast<size_t>(c)]};
                ok = ia_dot3(IVec3(y), col).hi < 0.0;
            }
            if (ok) {
                row.verdict = PairVerdict::SEPARATED;
                row.separating_plane = true;
                row.plane_normal = y;
                break;
            }
        }
    }
    return row;
}

VertexInjectivity certify_local_injectivity(const CWMesh& m, int v, const Fan* fan_in, bool allow_low_valence)
{
    VertexInjectivity out;
    out.vertex = v;
    const Fan fan = fan_in ? *fan_in : vertex_fan(m, v);
    const int val = static_cast<int>(fan.faces.size());
    if (!fan.closed || val < 4) {
        if (allow_low_valence && fan.closed) {
            out.verdict = VertexVerdict::INJECTIVE;
            return out;
        }
        throw Error(ErrorCode::LowValence, "vertex " + std::to_string(v) + " has valence < 4 or is on the boundary");
    }
    bool any_bad = false, any_unknown = false;
    for (const auto& [j, k] : kitty_corner_labels(val)) {
        out.rows.push_back(certify_pair(m, v, fan, j, k));
        any_bad |= out.rows.back().verdict == PairVerdict::INTERSECTING;
        any_unknown |= out.rows.back().verdict == PairVerdict::INDETERMINATE;
    }
    out.verdict = any_bad ? VertexVerdict::NOT_INJECTIVE
                          : (any_unknown ? VertexVerdict::INDETERMINATE : VertexVerdict::INJECTIVE);
    return out;
}

const char* to_string(TopologyKind k)
{
    switch (k) {
    case TopologyKind::TORUS: return "TORUS";
    case TopologyKind::KLEIN_BOTTLE: return "KLEIN_BOTTLE";
    case TopologyKind::ANNULUS: return "ANNULUS";
    case TopologyKind::SPHERE: return "SPHERE";
    case TopologyKind::OTHER: return "OTHER";
    }
    return "?";
}

TopologyClass classify_topology(const CWMesh& m)
{
    TopologyClass tc;
    const auto em = edge_map(m);
    std::set<int> used_vertices;
    for (const auto& F : m.faces) used_vertices.insert(F.begin(), F.end());
    tc.euler = static_cast<int>(used_vertices.size()) - static_cast<int>(em.size()) + m.num_faces();
    tc.boundary_loops = static_cast<int>(boundary_loops(m).size());

    // propagate a face orientation across every interior edge
    std::vector<std::vector<std::pair<int, bool>>> adj(static_cast<size_t>(m.num_faces()));
    for (const auto& [e, uses] : em) {
        if (uses.size() != 2) continue;
        // same traversal direction means the neighbour must be flipped
        const bool same = uses[0].forward == uses[1].forward;
        adj[static_cast<size_t>(uses[0].face)].emplace_back(uses[1].face, same);
        adj[static_cast<size_t>(uses[1].face)].emplace_back(uses[0].face, same);
    }
    std::vector<int> orient(static_cast<size_t>(m.num_faces()), 0);
    tc.orientable = true;
    for (int s = 0; s < m.num_faces(); ++s) {
        if (orient[static_cast<size_t>(s)] != 0) continue;
        orient[static_cast<size_t>(s)] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (const auto& [g, flip] : adj[static_cast<size_t>(f)]) {
                const int want = flip ? -orient[static_cast<size_t>(f)] : orient[static_cast<size_t>(f)];
                if (orient[static_cast<size_t>(g)] == 0) {
                    orient[static_cast<size_t>(g)] = want;
                    q.push(g);
                }
                else if (orient[static_cast<size_t>(g)] != want) {
                    tc.orientable = false;
                }
            }
        }
    }

    if (tc.boundary_loops == 0) {
        if (tc.euler == 0) tc.kind = tc.orientable ? TopologyKind::TORUS : TopologyKind::KLEIN_BOTTLE;
        else if (tc.euler == 2 && tc.orientable) tc.kind = TopologyKind::SPHERE;
    }
    else if (tc.euler == 0 && tc.boundary_loops == 2 && tc.orientable) {
        tc.kind = TopologyKind::ANNULUS;
    }
    return tc;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b)
{
    const Vec3 ab = b - a;
    const double L2 = norm2(ab);
    double t = L2 > 0 ? dot(p - a, ab) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

} // namespace flatkb
