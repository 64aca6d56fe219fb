#pragma once

#include "flatkb/workbench/config.hpp"
#include "flatkb/workbench/mesh_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace flatkb::workbench {

json provenance(const std::string& command, const json& parameters, bool certified, double input_radius,
                const std::string& mesh_kind);
json klein_params_json(const KleinParams& p);
json torus_params_json(const TorusParams& p);
json joint_spec_json(const JointSpec& s);

json assembly_report_json(const Assembly& as, const json& prov);
// Exit status for the requested verdict; float-only runs never exit 0.
int assembly_exit_code(const AssemblyReport& r, Requirement req, bool certified);

struct JointReport {
    FlatnessReport flat;
    std::vector<VertexInjectivity> injectivity; // interior vertices a_i, c_i
    int injective = 0, indeterminate = 0, noninjective = 0;
    bool intersections_computed = false;
    IntersectionResult intersections;
};
JointReport verify_joint(const TubeJoint& tj, bool intersections);
json joint_report_json(const TubeJoint& tj, const JointReport& r, const json& prov);
int joint_exit_code(const JointReport& r, Requirement req, bool certified);

enum class VertexFlatness { FLAT, NOT_FLAT, UNCERTIFIED, BOUNDARY };
const char* to_string(VertexFlatness f);

struct VerifiedVertex {
    int vertex = -1;
    std::string label;
    int valence = 0;
    Interval angle_sum;
    VertexFlatness flat = VertexFlatness::UNCERTIFIED;
    // interior vertices only; boundary vertices stay INDETERMINATE and are
    // excluded from the verdict
    VertexVerdict injectivity = VertexVerdict::INDETERMINATE;
    std::vector<InjectivityRow> rows;
};
struct MeshVerification {
    MeshStats stats;
    TopologyClass topology;
    bool certified_positions = false;
    std::vector<VerifiedVertex> vertices;
    int flat = 0, not_flat = 0, uncertified = 0, boundary = 0;
    int injective = 0, noninjective = 0, indeterminate = 0;
};
// Certifies angle sums (2pi at interior vertices, width < 1e-6) and local
// injectivity on an arbitrary mesh. Positions are enclosed by `ipos` when
// present, otherwise by boxes of `radius`. Throws InvalidComplex.
MeshVerification verify_mesh(const CWMesh& m, double radius = 0.0);
json verification_json(const MeshVerification& v, const json& source);
int verification_exit_code(const MeshVerification& v);

std::string sweep_csv(const std::vector<SweepCell>& cells);

// Full command line; argv[0] is the program name. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flatkb::workbench
