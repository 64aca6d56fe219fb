#pragma once

#include "flatkb/tube_joint.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatkb {

enum class SeamOrientation { PRESERVING, REVERSING };
const char* to_string(SeamOrientation o);

// Identification of the Q-side boundary of joint `from` with the P-side
// boundary of joint `to`.
struct Seam {
    int from = -1, to = -1;
    // star index i on the Q side of `from` -> star index on the P side of `to`
    std::vector<int> index_map;
    // (local vertex in `from`, local vertex in `to`) in Q-star order
    std::vector<std::pair<int, int>> matches;
    SeamOrientation orientation = SeamOrientation::PRESERVING;
    bool handedness_reversing = false; // independent winding cross-check
    double max_mismatch = 0.0;
};

struct GluedComplex {
    std::vector<TubeJoint> joints;
    std::vector<Seam> seams;
    CWMesh mesh;
    std::vector<std::vector<int>> to_glued; // [joint][local vertex] -> glued vertex
    std::vector<int> face_joint;            // glued face -> joint
    std::vector<int> seam_vertices;         // glued ids, sorted

    int reversing_seams() const;
};

// Glues the cyclic sequence of joints (joint j's Q side onto joint j+1's P
// side) by nearest-vertex bijection within `tol`. Throws SeamMismatch,
// OrientationAmbiguous or OpenSurface.
GluedComplex glue_cycle(std::vector<TubeJoint> joints, double tol = 1e-9);

struct SeamVertexReport {
    int vertex = -1;
    std::string label;
    Interval angle_sum;
    bool flat = false;
    VertexVerdict injectivity = VertexVerdict::INDETERMINATE;
};
struct SeamReport {
    int seam = -1;
    SeamOrientation orientation = SeamOrientation::PRESERVING;
    std::vector<SeamVertexReport> vertices;
    // faces of the two joints at the seam lie strictly on opposite sides of
    // the plane of the shared n-star
    bool opposite_sides = false;
    double min_clearance = 0.0;
    bool all_flat = false;
    bool all_injective = false;
};
std::vector<SeamReport> verify_seams(const GluedComplex& gc);

enum class ImmersionVerdict { ISOMETRIC_IMMERSION, NOT_IMMERSION, INDETERMINATE };
const char* to_string(ImmersionVerdict v);

struct MeshStats {
    int vertices = 0, edges = 0, faces = 0, euler = 0;
};
MeshStats mesh_stats(const CWMesh& m);

struct AssemblyReport {
    std::string construction;
    std::vector<FlatnessReport> joints;
    Flatness flatness = Flatness::UNCERTIFIED; // joints and seam vertices
    std::vector<SeamReport> seams;
    int reversing_seams = 0;
    std::vector<VertexInjectivity> injectivity; // every glued vertex
    int injective_vertices = 0, indeterminate_vertices = 0, noninjective_vertices = 0;
    TopologyClass topology;
    MeshStats glued, merged;
    int merged_pairs = 0;
    bool intersections_computed = false;
    IntersectionResult intersections;
    double min_endpoint_vertex_distance = 0.0; // +inf when there are no segments
    bool embedded = false;
    ImmersionVerdict verdict = ImmersionVerdict::INDETERMINATE;
    std::map<std::string, std::string> first_failure; // per category
};

struct AssemblyOptions {
    bool certified = true;
    bool intersections = true;
    double input_radius = 1e-20;
    std::optional<RigidMotion> motion; // applied to every frame before building
};

struct Assembly {
    GluedComplex glued;
    CWMesh merged;
    AssemblyReport report;
};

struct KleinParams {
    int n = 6;
    double L0 = 2.0, L1 = 4.0;
    Angle psi = Angle::pi_frac(3, 2);
    double alpha1 = 3.1, gamma1 = 2.5, alpha0 = 1.0, gamma0 = 1.0;
};
struct TorusParams {
    int n = 8;
    double L = 1.0;
    Angle phi = Angle::rad(4.5);
    double alpha = 1.0, gamma = 2.0;
};

// The six frames F^0..F^5: vee frames at odd j, derived coaxial frames at
// even j.
template <class T> std::vector<TubeFrameT<T>> klein_frames(const KleinParams& p);
// The two coaxial frames V^1, V^2.
template <class T> std::vector<TubeFrameT<T>> torus_frames(const TorusParams& p);

std::vector<TubeJoint> klein_joints(const KleinParams& p, const AssemblyOptions& opt = {});
std::vector<TubeJoint> torus_joints(const TorusParams& p, const AssemblyOptions& opt = {});

// Runs every category (flatness, seams, injectivity, topology, merge,
// intersections) and records the first failure of each.
Assembly assemble(const std::string& construction, std::vector<TubeJoint> joints, const AssemblyOptions& opt = {});

Assembly build_flat_klein(const KleinParams& p, const AssemblyOptions& opt = {});
Assembly build_flat_torus(const TorusParams& p, const AssemblyOptions& opt = {});

void validate(const KleinParams& p);
void validate(const TorusParams& p);

enum class SweepBase { KLEIN, TORUS };
struct SweepRequest {
    SweepBase base = SweepBase::KLEIN;
    KleinParams klein;
    TorusParams torus;
    std::vector<double> alphas{1.0}, gammas{1.0};
    bool certified = true;
    bool intersections = false; // also require an embedding
};
struct SweepCell {
    double alpha = 0.0, gamma = 0.0;
    std::string status; // OK or the first failing certificate
    std::string detail;
};
// Row-major over (alpha, gamma).
std::vector<SweepCell> sweep_parameters(const SweepRequest& req);
// `steps` evenly spaced values including both bounds.
std::vector<double> linspace(double lo, double hi, int steps);

} // namespace flatkb
