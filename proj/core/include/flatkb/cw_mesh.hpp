#pragma once

#include "flatkb/vec3.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flatkb {

// Polygonal CW-surface with placed vertices. Faces are cyclic index lists.
// `ipos`, when non-empty, holds certified enclosures of the exact vertex
// positions (one per vertex); otherwise certified routines enclose `pos`.
struct CWMesh {
    std::vector<Vec3> pos;
    std::vector<IVec3> ipos;
    std::vector<std::string> label;
    std::vector<std::vector<int>> faces;

    int add_vertex(const Vec3& p, std::string name = {});
    int add_vertex(const Vec3& p, const IVec3& box, std::string name = {});
    int num_vertices() const { return static_cast<int>(pos.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
    bool certified_positions() const { return !ipos.empty() && ipos.size() == pos.size(); }
    int find_label(const std::string& name) const; // -1 if absent
};

using EdgeKey = std::pair<int, int>; // (min, max)
inline EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

struct EdgeUse {
    int face;
    bool forward; // face traverses min -> max
};
std::map<EdgeKey, std::vector<EdgeUse>> edge_map(const CWMesh& m);
int num_edges(const CWMesh& m);

// Structural validity (edge manifoldness, simple faces); empty when valid.
std::string check_complex(const CWMesh& m);
// Strict convexity and planarity of every face within tol; empty when valid.
std::string check_faces_convex(const CWMesh& m, double tol = 1e-10);

std::vector<std::vector<int>> boundary_loops(const CWMesh& m);

// Faces around a vertex in cyclic order. For face k the vertex's two
// neighbours in that face are `prev` (shared with face k-1) and `next`
// (shared with face k+1). `closed` is false for boundary vertices.
struct Fan {
    std::vector<int> faces;
    std::vector<int> prev, next;
    bool closed = false;
};
Fan vertex_fan(const CWMesh& m, int v);
// Fan rotated and oriented so that face 0 contains the edges to `first` and
// then `second`, in that cyclic order.
Fan vertex_fan_from(const CWMesh& m, int v, int first, int second);
int valence(const CWMesh& m, int v);

// Sum of face angles at v. Throws BoundaryVertex for open fans unless
// allow_boundary is set. Certified mode returns an enclosure (ipos or
// `radius` around pos); float mode returns a point interval.
Interval angle_sum(const CWMesh& m, int v, bool certified, double radius = 1e-20, bool allow_boundary = false);

// Kitty-corner pairs as 1-based positions in the fan, ordered so that pairs
// containing the last label are written (last, k); throws LowValence.
std::vector<std::pair<int, int>> kitty_corner_labels(int valence);
std::vector<std::pair<int, int>> kitty_corner_pairs(const CWMesh& m, int v);

using Mat34 = std::array<std::array<double, 4>, 3>;
using IMat34 = std::array<std::array<Interval, 4>, 3>;
std::array<double, 4> cofactors_3x4(const Mat34& M);
std::array<Interval, 4> cofactors_3x4(const IMat34& M);

enum class PairVerdict { SEPARATED, INTERSECTING, INDETERMINATE };
enum class VertexVerdict { INJECTIVE, NOT_INJECTIVE, INDETERMINATE };
const char* to_string(PairVerdict v);
const char* to_string(VertexVerdict v);

struct InjectivityRow {
    int vertex = -1;
    std::string vertex_label;
    int j = 0, k = 0; // 1-based fan labels
    Mat34 M{};
    std::array<double, 4> cofactors{};
    std::array<Interval, 4> enclosures{};
    std::array<SignVerdict, 4> signs{};
    PairVerdict verdict = PairVerdict::INDETERMINATE;
    // Set when the cofactor signs were inconclusive (rank-deficient M) and
    // separation was certified instead by a plane through the vertex with
    // both face cones strictly on opposite sides.
    bool separating_plane = false;
    Vec3 plane_normal{};
};

struct VertexInjectivity {
    int vertex = -1;
    std::vector<InjectivityRow> rows;
    VertexVerdict verdict = VertexVerdict::INDETERMINATE;
};

// Certifies one kitty-corner pair given the fan (uses prev/next as edge
// vector order).
InjectivityRow certify_pair(const CWMesh& m, int v, const Fan& fan, int j, int k, double radius = 1e-20);
// All kitty-corner pairs at v, labels taken from `fan` (defaults to
// vertex_fan). Valence <= 3 is trivially injective when `allow_low_valence`.
VertexInjectivity certify_local_injectivity(const CWMesh& m, int v, const Fan* fan = nullptr,
                                            bool allow_low_valence = false);

struct MergeResult {
    CWMesh mesh;
    int merged_pairs = 0;
    int removed_vertices = 0;
    int skipped_nonconvex = 0;
};
MergeResult merge_coplanar(const CWMesh& m, double tol = 1e-9);

struct Segment {
    Vec3 p, q;
    int face_a = -1, face_b = -1;
};
struct IntersectionResult {
    std::vector<Segment> segments;
    int coplanar_overlaps = 0; // overlapping coplanar non-adjacent face pairs
    double total_length() const;
};
// fan_start rotates the internal fan triangulation of every face.
IntersectionResult self_intersections(const CWMesh& m, int fan_start = 0);

enum class TopologyKind { TORUS, KLEIN_BOTTLE, ANNULUS, SPHERE, OTHER };
const char* to_string(TopologyKind k);
struct TopologyClass {
    int euler = 0;
    bool orientable = false;
    int boundary_loops = 0;
    TopologyKind kind = TopologyKind::OTHER;
};
TopologyClass classify_topology(const CWMesh& m);

// Point-in-plane and distance helpers used by the mesh routines.
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

} // namespace flatkb
