#include "flatkb/workbench/commands.hpp"

#include "flatkb/workbench/tables.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace flatkb::workbench {

namespace {

json interval_json(const Interval& x) { return {{"mid", x.mid()}, {"radius", x.rad()}, {"lo", x.lo}, {"hi", x.hi}}; }

// JSON has no infinity; unbounded distances are written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json stats_json(const MeshStats& s)
{
    return {{"vertices", s.vertices}, {"edges", s.edges}, {"faces", s.faces}, {"euler", s.euler}};
}

json topology_json(const TopologyClass& t)
{
    return {{"kind", to_string(t.kind)}, {"euler", t.euler}, {"orientable", t.orientable}, {"boundary_loops", t.boundary_loops}};
}

json intersections_json(bool computed, const IntersectionResult& r, double min_dist)
{
    if (!computed) return {{"computed", false}};
    return {{"computed", true},
            {"segments", r.segments.size()},
            {"total_length", r.total_length()},
            {"coplanar_overlaps", r.coplanar_overlaps},
            {"min_endpoint_vertex_distance", finite_or_null(min_dist)}};
}

json flatness_json(const std::string& tag, const FlatnessReport& f)
{
    json deltas = json::array();
    const size_t n = f.deltas.size() / 2;
    for (size_t j = 0; j < f.deltas.size(); ++j) {
        const int label = j < n ? static_cast<int>(j + 1) : -static_cast<int>(j - n + 1);
        json d = interval_json(f.deltas[j]);
        d["j"] = label;
        d["sign"] = to_string(f.delta_signs[j]);
        deltas.push_back(std::move(d));
    }
    double widest = 0.0;
    for (const auto& [v, s] : f.interior_angle_sums) widest = std::max(widest, s.width());
    for (const auto& [v, s] : f.boundary_angle_sums) widest = std::max(widest, s.width());
    json strips = json::array();
    for (const auto& s : f.strips)
        strips.push_back({{"verdict", to_string(s.verdict)}, {"width", s.width},
                          {"residual_length", interval_json(s.residual_length)},
                          {"residual_diagonal", interval_json(s.residual_diagonal)}});
    return {{"tag", tag},
            {"verdict", to_string(f.verdict)},
            {"all_deltas_positive", f.all_deltas_positive},
            {"all_strips_rectangular", f.all_strips_rectangular},
            {"angle_sums_flat", f.angle_sums_flat},
            {"widest_angle_sum", widest},
            {"meet_residual", f.meet_residual},
            {"deltas", std::move(deltas)},
            {"strips", std::move(strips)}};
}

int verdict_exit(bool ok, bool refuted)
{
    return ok ? EXIT_OK : (refuted ? EXIT_VERIFICATION : EXIT_INDETERMINATE);
}

std::string strip_mesh_ext(std::string p)
{
    for (const char* ext : {".obj", ".json"}) {
        const std::string e(ext);
        if (p.size() > e.size() && p.compare(p.size() - e.size(), e.size(), e) == 0) return p.substr(0, p.size() - e.size());
    }
    return p;
}

void write_mesh_pair(const std::string& prefix, const CWMesh& m, const json& prov, const IntersectionResult* inter)
{
    const std::vector<std::string> comments{
        std::string("flatkb ") + kToolVersion + " " + prov.value("command", std::string()) + " (" + prov.value("mesh", std::string()) + ")",
        "parameters " + prov["parameters"].dump(),
        std::to_string(m.num_vertices()) + " vertices, " + std::to_string(m.num_faces()) + " faces"};
    atomic_write(prefix + ".obj", to_obj(m, comments));
    atomic_write(prefix + ".json", to_json_model(m, prov, inter).dump(1) + "\n");
}

Requirement parse_requirement(const std::string& s)
{
    if (s == "flat") return Requirement::FLAT;
    if (s == "immersion") return Requirement::IMMERSION;
    if (s == "embedded") return Requirement::EMBEDDED;
    throw Error(ErrorCode::ParameterError, "--require must be flat, immersion or embedded");
}

void print_kv(std::ostream& out, const std::string& k, const std::string& v) { out << k << ": " << v << "\n"; }

std::string stats_str(const MeshStats& s)
{
    return "V=" + std::to_string(s.vertices) + " E=" + std::to_string(s.edges) + " F=" + std::to_string(s.faces) +
           " chi=" + std::to_string(s.euler);
}

} // namespace

json provenance(const std::string& command, const json& parameters, bool certified, double input_radius,
                const std::string& mesh_kind)
{
    return {{"tool", "flatkb"},
            {"tool_version", kToolVersion},
            {"command", command},
            {"mesh", mesh_kind},
            {"certified", certified},
            {"parameters", parameters},
            {"tolerances",
             {{"input_radius", input_radius},
              {"seam_match", 1e-9},
              {"angle_sum_width", 1e-6},
              {"float_residual", 1e-9},
              {"meet_relative", 1e-8},
              {"merge_coplanar", 1e-9},
              {"intersection_contact", 1e-9}}}};
}

json klein_params_json(const KleinParams& p)
{
    return {{"n", p.n}, {"L0", p.L0}, {"L1", p.L1}, {"psi", p.psi.str()}, {"alpha", p.alpha1},
            {"gamma", p.gamma1}, {"alpha0", p.alpha0}, {"gamma0", p.gamma0}};
}

json torus_params_json(const TorusParams& p)
{
    return {{"n", p.n}, {"L", p.L}, {"phi", p.phi.str()}, {"alpha", p.alpha}, {"gamma", p.gamma}};
}

json joint_spec_json(const JointSpec& s)
{
    json j = {{"kind", to_string(s.kind)}, {"n", s.n}, {"phi", s.phi.str()}, {"alpha", s.alpha}, {"gamma", s.gamma}};
    if (s.kind != JointKind::STRAIGHT) {
        j["k"] = s.k;
        j["L"] = s.L;
        j["theta"] = s.theta.str();
        j["psi"] = s.psi.str();
    }
    return j;
}

json assembly_report_json(const Assembly& as, const json& prov)
{
    const AssemblyReport& r = as.report;
    json j;
    j["provenance"] = prov;
    j["construction"] = r.construction;
    j["verdict"] = to_string(r.verdict);
    j["flatness"] = to_string(r.flatness);
    j["embedded"] = r.embedded;
    j["topology"] = topology_json(r.topology);
    j["reversing_seams"] = r.reversing_seams;
    j["glued"] = stats_json(r.glued);
    j["merged"] = stats_json(r.merged);
    j["merged_pairs"] = r.merged_pairs;
    j["injectivity"] = {{"vertices", r.injectivity.size()},
                        {"injective", r.injective_vertices},
                        {"indeterminate", r.indeterminate_vertices},
                        {"not_injective", r.noninjective_vertices},
                        {"separating_plane_rows", [&r] {
                             int c = 0;
                             for (const auto& vi : r.injectivity)
                                 for (const auto& row : vi.rows) c += row.separating_plane ? 1 : 0;
                             return c;
                         }()}};
    j["intersections"] = intersections_json(r.intersections_computed, r.intersections, r.min_endpoint_vertex_distance);
    json joints = json::array();
    for (size_t i = 0; i < r.joints.size(); ++i) joints.push_back(flatness_json(as.glued.joints[i].tag, r.joints[i]));
    j["joints"] = std::move(joints);
    json seams = json::array();
    for (size_t i = 0; i < r.seams.size(); ++i) {
        const Seam& s = as.glued.seams[i];
        const SeamReport& sr = r.seams[i];
        double widest = 0.0;
        for (const auto& v : sr.vertices) widest = std::max(widest, v.angle_sum.width());
        seams.push_back({{"seam", sr.seam},
                         {"from", as.glued.joints[static_cast<size_t>(s.from)].tag},
                         {"to", as.glued.joints[static_cast<size_t>(s.to)].tag},
                         {"orientation", to_string(sr.orientation)},
                         {"handedness_reversing", s.handedness_reversing},
                         {"index_map", s.index_map},
                         {"max_mismatch", s.max_mismatch},
                         {"all_flat", sr.all_flat},
                         {"all_injective", sr.all_injective},
                         {"widest_angle_sum", widest},
                         {"opposite_sides", sr.opposite_sides},
                         {"min_clearance", sr.min_clearance}});
    }
    j["seams"] = std::move(seams);
    j["first_failure"] = r.first_failure;
    return j;
}

int assembly_exit_code(const AssemblyReport& r, Requirement req, bool certified)
{
    int code = EXIT_OK;
    switch (req) {
    case Requirement::FLAT:
        code = verdict_exit(r.flatness == Flatness::FLAT, r.flatness == Flatness::NOT_FLAT);
        break;
    case Requirement::IMMERSION:
    case Requirement::EMBEDDED:
        code = verdict_exit(r.verdict == ImmersionVerdict::ISOMETRIC_IMMERSION, r.verdict == ImmersionVerdict::NOT_IMMERSION);
        if (code == EXIT_OK && req == Requirement::EMBEDDED) code = r.embedded ? EXIT_OK : EXIT_VERIFICATION;
        break;
    }
    if (!certified && code == EXIT_OK) return EXIT_INDETERMINATE;
    return code;
}

JointReport verify_joint(const TubeJoint& tj, bool intersections)
{
    JointReport r;
    r.flat = verify_flat(tj);
    for (int i = 0; i < 2 * tj.n(); ++i)
        for (int v : {tj.a(i), tj.c(i)}) {
            r.injectivity.push_back(certify_local_injectivity(tj.mesh, v));
            switch (r.injectivity.back().verdict) {
            case VertexVerdict::INJECTIVE: ++r.injective; break;
            case VertexVerdict::INDETERMINATE: ++r.indeterminate; break;
            case VertexVerdict::NOT_INJECTIVE: ++r.noninjective; break;
            }
        }
    if (intersections) {
        r.intersections_computed = true;
        r.intersections = self_intersections(tj.mesh);
    }
    return r;
}

json joint_report_json(const TubeJoint& tj, const JointReport& r, const json& prov)
{
    json j;
    j["provenance"] = prov;
    j["construction"] = "joint";
    j["flatness"] = flatness_json(tj.tag, r.flat);
    json params = json::array();
    for (int i = 0; i < 2 * tj.n(); ++i) {
        json row = {{"i", i}};
        if (tj.cert) {
            row["alpha"] = interval_json(tj.cert->params.alpha(i));
            row["gamma"] = interval_json(tj.cert->params.gamma(i));
        }
        else {
            row["alpha"] = tj.geom.params.alpha(i);
            row["gamma"] = tj.geom.params.gamma(i);
        }
        params.push_back(std::move(row));
    }
    j["parameters"] = std::move(params);
    j["mesh"] = stats_json(mesh_stats(tj.mesh));
    j["topology"] = topology_json(classify_topology(tj.mesh));
    j["injectivity"] = {{"interior_vertices", r.injectivity.size()},
                        {"injective", r.injective},
                        {"indeterminate", r.indeterminate},
                        {"not_injective", r.noninjective}};
    j["intersections"] = intersections_json(r.intersections_computed, r.intersections,
                                            std::numeric_limits<double>::infinity());
    return j;
}

int joint_exit_code(const JointReport& r, Requirement req, bool certified)
{
    const bool flat = r.flat.verdict == Flatness::FLAT;
    const bool not_flat = r.flat.verdict == Flatness::NOT_FLAT;
    int code = verdict_exit(flat, not_flat);
    if (code == EXIT_OK && req != Requirement::FLAT)
        code = verdict_exit(r.injective == static_cast<int>(r.injectivity.size()), r.noninjective > 0);
    if (code == EXIT_OK && req == Requirement::EMBEDDED)
        code = (r.intersections.segments.empty() && r.intersections.coplanar_overlaps == 0) ? EXIT_OK : EXIT_VERIFICATION;
    if (!certified && code == EXIT_OK) return EXIT_INDETERMINATE;
    return code;
}

const char* to_string(VertexFlatness f)
{
    switch (f) {
    case VertexFlatness::FLAT: return "FLAT";
    case VertexFlatness::NOT_FLAT: return "NOT_FLAT";
    case VertexFlatness::UNCERTIFIED: return "UNCERTIFIED";
    case VertexFlatness::BOUNDARY: return "BOUNDARY";
    }
    return "?";
}

MeshVerification verify_mesh(const CWMesh& input, double radius)
{
    if (const std::string e = check_complex(input); !e.empty()) throw Error(ErrorCode::InvalidComplex, e);
    CWMesh m = input;
    if (radius > 0 && !m.certified_positions()) {
        m.ipos.clear();
        for (const Vec3& p : m.pos) m.ipos.push_back(ia_from_vec(p, radius));
    }
    MeshVerification out;
    out.certified_positions = m.certified_positions();
    out.stats = mesh_stats(m);
    out.topology = classify_topology(m);
    const Interval two_pi = Interval(2.0) * ia_pi();
    for (int v = 0; v < m.num_vertices(); ++v) {
        VerifiedVertex vv;
        vv.vertex = v;
        vv.label = m.label.empty() ? std::string() : m.label[static_cast<size_t>(v)];
        const Fan fan = vertex_fan(m, v);
        vv.valence = static_cast<int>(fan.faces.size());
        if (!fan.closed || fan.faces.empty()) {
            vv.flat = VertexFlatness::BOUNDARY;
            ++out.boundary;
            out.vertices.push_back(std::move(vv));
            continue;
        }
        vv.angle_sum = angle_sum(m, v, true);
        if (!vv.angle_sum.intersects(two_pi)) vv.flat = VertexFlatness::NOT_FLAT;
        else if (vv.angle_sum.width() < 1e-6) vv.flat = VertexFlatness::FLAT;
        else vv.flat = VertexFlatness::UNCERTIFIED;
        switch (vv.flat) {
        case VertexFlatness::FLAT: ++out.flat; break;
        case VertexFlatness::NOT_FLAT: ++out.not_flat; break;
        default: ++out.uncertified; break;
        }
        VertexInjectivity vi = certify_local_injectivity(m, v, &fan, true);
        vv.injectivity = vi.verdict;
        vv.rows = std::move(vi.rows);
        switch (vv.injectivity) {
        case VertexVerdict::INJECTIVE: ++out.injective; break;
        case VertexVerdict::NOT_INJECTIVE: ++out.noninjective; break;
        case VertexVerdict::INDETERMINATE: ++out.indeterminate; break;
        }
        out.vertices.push_back(std::move(vv));
    }
    return out;
}

json verification_json(const MeshVerification& v, const json& source)
{
    json j;
    j["source"] = source;
    j["certified_positions"] = v.certified_positions;
    j["mesh"] = stats_json(v.stats);
    j["topology"] = topology_json(v.topology);
    j["summary"] = {{"flat", v.flat},       {"not_flat", v.not_flat},       {"uncertified", v.uncertified},
                    {"boundary", v.boundary}, {"injective", v.injective},     {"not_injective", v.noninjective},
                    {"indeterminate", v.indeterminate}};
    json verts = json::array();
    for (const auto& vv : v.vertices) {
        json row = {{"vertex", vv.vertex + 1}, {"label", vv.label}, {"valence", vv.valence}, {"flatness", to_string(vv.flat)}};
        if (vv.flat != VertexFlatness::BOUNDARY) {
            row["angle_sum"] = interval_json(vv.angle_sum);
            row["injectivity"] = to_string(vv.injectivity);
            json pairs = json::array();
            for (const auto& r : vv.rows) {
                json c = json::array();
                for (const auto& e : r.enclosures) c.push_back(e.mid());
                pairs.push_back({{"j", r.j}, {"k", r.k}, {"cofactors", std::move(c)}, {"verdict", to_string(r.verdict)},
                                 {"separating_plane", r.separating_plane}});
            }
            row["pairs"] = std::move(pairs);
        }
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    return j;
}

int verification_exit_code(const MeshVerification& v)
{
    if (v.not_flat > 0 || v.noninjective > 0) return EXIT_VERIFICATION;
    if (v.uncertified > 0 || v.indeterminate > 0) return EXIT_INDETERMINATE;
    return EXIT_OK;
}

std::string sweep_csv(const std::vector<SweepCell>& cells)
{
    std::string out = "alpha,gamma,status,detail\n";
    for (const auto& c : cells)
        out += format_shortest(c.alpha) + "," + format_shortest(c.gamma) + "," + csv_field(c.status) + "," + csv_field(c.detail) + "\n";
    return out;
}

namespace {

int cmd_build(const RunConfig& cfg, std::ostream& out)
{
    reject_unused(cfg);
    const std::string command = "build " + cfg.target;
    if (cfg.target == "joint") {
        const JointSpec spec = joint_spec(cfg);
        const Requirement req = parse_requirement(cfg.require.value_or("flat"));
        const TubeJoint tj = build_joint(spec, cfg.certified);
        const JointReport r = verify_joint(tj, req == Requirement::EMBEDDED || !cfg.intersections.empty());
        const json prov = provenance(command, joint_spec_json(spec), cfg.certified, spec.input_radius, "joint");
        if (!cfg.out.empty()) write_mesh_pair(strip_mesh_ext(cfg.out), tj.mesh, prov, r.intersections_computed ? &r.intersections : nullptr);
        if (!cfg.report.empty()) atomic_write(cfg.report, joint_report_json(tj, r, prov).dump(2) + "\n");
        if (!cfg.intersections.empty()) atomic_write(cfg.intersections, intersections_csv(r.intersections));
        const int code = joint_exit_code(r, req, cfg.certified);
        print_kv(out, "construction", std::string("joint ") + to_string(spec.kind));
        print_kv(out, "certified", cfg.certified ? "yes" : "no");
        print_kv(out, "flatness", to_string(r.flat.verdict));
        print_kv(out, "deltas_positive", r.flat.all_deltas_positive ? "yes" : "no");
        print_kv(out, "strips_rectangular", r.flat.all_strips_rectangular ? "yes" : "no");
        print_kv(out, "injective_interior_vertices",
                 std::to_string(r.injective) + "/" + std::to_string(r.injectivity.size()));
        print_kv(out, "mesh", stats_str(mesh_stats(tj.mesh)));
        if (r.intersections_computed) print_kv(out, "intersection_segments", std::to_string(r.intersections.segments.size()));
        print_kv(out, "required", to_string(req));
        print_kv(out, "exit", std::to_string(code));
        return code;
    }

    const Requirement req = parse_requirement(cfg.require.value_or("immersion"));
    AssemblyOptions opt;
    opt.certified = cfg.certified;
    opt.intersections = true;
    opt.input_radius = cfg.input_radius;
    Assembly as;
    json params;
    if (cfg.target == "klein") {
        const KleinParams p = klein_params(cfg);
        params = klein_params_json(p);
        as = build_flat_klein(p, opt);
    }
    else {
        const TorusParams p = torus_params(cfg);
        params = torus_params_json(p);
        as = build_flat_torus(p, opt);
    }
    const AssemblyReport& r = as.report;
    const json prov = provenance(command, params, cfg.certified, cfg.input_radius, "glued");
    if (!cfg.out.empty()) {
        const std::string prefix = strip_mesh_ext(cfg.out);
        write_mesh_pair(prefix, as.glued.mesh, prov, &r.intersections);
        if (cfg.merge) {
            json mprov = prov;
            mprov["mesh"] = "merged";
            write_mesh_pair(prefix + ".merged", as.merged, mprov, nullptr);
        }
    }
    if (!cfg.report.empty()) atomic_write(cfg.report, assembly_report_json(as, prov).dump(2) + "\n");
    if (!cfg.intersections.empty()) atomic_write(cfg.intersections, intersections_csv(r.intersections));

    const int code = assembly_exit_code(r, req, cfg.certified);
    print_kv(out, "construction", r.construction);
    print_kv(out, "certified", cfg.certified ? "yes" : "no");
    print_kv(out, "verdict", to_string(r.verdict));
    print_kv(out, "flatness", to_string(r.flatness));
    print_kv(out, "topology", std::string(to_string(r.topology.kind)) + " chi=" + std::to_string(r.topology.euler) +
                                  (r.topology.orientable ? " orientable" : " non-orientable") +
                                  " boundary_loops=" + std::to_string(r.topology.boundary_loops));
    print_kv(out, "reversing_seams", std::to_string(r.reversing_seams));
    print_kv(out, "glued", stats_str(r.glued));
    print_kv(out, "merged", stats_str(r.merged));
    print_kv(out, "injective_vertices", std::to_string(r.injective_vertices) + "/" + std::to_string(r.injectivity.size()));
    print_kv(out, "intersection_segments", std::to_string(r.intersections.segments.size()));
    print_kv(out, "intersection_length", format_fixed5(r.intersections.total_length()));
    print_kv(out, "embedded", r.embedded ? "yes" : "no");
    for (const auto& [cat, what] : r.first_failure) print_kv(out, "first_failure." + cat, what);
    print_kv(out, "required", to_string(req));
    print_kv(out, "exit", std::to_string(code));
    return code;
}

int cmd_tables(const RunConfig& cfg, bool all_rows, std::ostream& out)
{
    RunConfig c = cfg;
    c.target = "joint";
    reject_unused(c);
    const JointSpec spec = joint_spec(c);
    const TableSet t = compute_tables(spec, all_rows);
    if (!cfg.out.empty()) write_tables(t, cfg.out);
    else out << table1a_csv(t) << "\n" << table1b_csv(t) << "\n" << cofactor_csv(t.at_a) << "\n" << cofactor_csv(t.at_c) << "\n";

    bool deltas_ok = true, deltas_refuted = false;
    for (const auto& d : t.deltas) {
        deltas_ok &= d.sign == SignVerdict::POSITIVE;
        deltas_refuted |= d.sign == SignVerdict::NEGATIVE;
    }
    int separated = 0, intersecting = 0;
    for (const auto* rows : {&t.at_a, &t.at_c})
        for (const auto& r : *rows) {
            separated += r.row.verdict == PairVerdict::SEPARATED ? 1 : 0;
            intersecting += r.row.verdict == PairVerdict::INTERSECTING ? 1 : 0;
        }
    const int total = static_cast<int>(t.at_a.size() + t.at_c.size());
    const bool narrow = t.max_radius < 1e-6;
    std::ostringstream rad;
    rad << t.max_radius;
    std::ostringstream sym;
    sym << t.symmetry_residual;
    out << "rows: table1a=" << t.params.size() << " table1b=" << t.deltas.size() << " table2=" << t.at_a.size()
        << " table3=" << t.at_c.size() << "\n";
    print_kv(out, "deltas_positive", deltas_ok ? "yes" : "no");
    print_kv(out, "separated_pairs", std::to_string(separated) + "/" + std::to_string(total));
    print_kv(out, "max_radius", rad.str());
    print_kv(out, "symmetry_residual", sym.str());
    if (deltas_refuted || intersecting > 0) return EXIT_VERIFICATION;
    if (!deltas_ok || separated != total || !narrow) return EXIT_INDETERMINATE;
    return EXIT_OK;
}

int cmd_verify(const std::string& path, const std::string& report, double radius, std::ostream& out)
{
    const MeshModel model = read_mesh_file(path);
    const MeshVerification v = verify_mesh(model.mesh, radius);
    json source = {{"path", std::filesystem::path(path).filename().string()}, {"radius", radius}};
    if (!model.provenance.empty()) source["provenance"] = model.provenance;
    if (!report.empty()) atomic_write(report, verification_json(v, source).dump(2) + "\n");
    const int code = verification_exit_code(v);
    print_kv(out, "mesh", stats_str(v.stats));
    print_kv(out, "topology", std::string(to_string(v.topology.kind)) + (v.topology.orientable ? " orientable" : " non-orientable"));
    print_kv(out, "certified_positions", v.certified_positions ? "yes" : "no");
    print_kv(out, "flat", std::to_string(v.flat));
    print_kv(out, "not_flat", std::to_string(v.not_flat));
    print_kv(out, "uncertified", std::to_string(v.uncertified));
    print_kv(out, "boundary", std::to_string(v.boundary));
    print_kv(out, "injective", std::to_string(v.injective));
    print_kv(out, "not_injective", std::to_string(v.noninjective));
    print_kv(out, "indeterminate", std::to_string(v.indeterminate));
    print_kv(out, "exit", std::to_string(code));
    return code;
}

int cmd_sweep(const RunConfig& cfg, const std::string& alphas, const std::string& gammas, bool embedded, std::ostream& out,
              std::ostream& err)
{
    reject_unused(cfg);
    SweepRequest req;
    req.certified = cfg.certified;
    req.intersections = embedded;
    if (cfg.target == "klein") {
        req.base = SweepBase::KLEIN;
        RunConfig c = cfg;
        c.alpha.reset();
        c.gamma.reset();
        req.klein = klein_params(c);
        req.alphas = alphas.empty() ? std::vector<double>{3.0, 3.1, 3.2} : parse_value_list(alphas);
        req.gammas = gammas.empty() ? std::vector<double>{2.4, 2.5, 2.6} : parse_value_list(gammas);
    }
    else {
        req.base = SweepBase::TORUS;
        RunConfig c = cfg;
        c.alpha.reset();
        c.gamma.reset();
        req.torus = torus_params(c);
        req.alphas = alphas.empty() ? std::vector<double>{0.5, 1.0, 2.0} : parse_value_list(alphas);
        req.gammas = gammas.empty() ? std::vector<double>{0.5, 1.0, 2.0} : parse_value_list(gammas);
    }
    const auto cells = sweep_parameters(req);
    const std::string csv = sweep_csv(cells);
    if (!cfg.out.empty()) atomic_write(cfg.out, csv);
    else out << csv;
    int ok = 0;
    bool refuted = false;
    for (const auto& c : cells) {
        ok += c.status == "OK" ? 1 : 0;
        refuted |= c.status != "OK" && c.status != "INJECTIVITY_INDETERMINATE" && c.status != "FLATNESS_UNCERTIFIED";
    }
    print_kv(cfg.out.empty() ? err : out, "ok_cells", std::to_string(ok) + "/" + std::to_string(cells.size()));
    if (ok == static_cast<int>(cells.size())) return cfg.certified ? EXIT_OK : EXIT_INDETERMINATE;
    return refuted ? EXIT_VERIFICATION : EXIT_INDETERMINATE;
}

// Binds an option to an optional field.
template <class T>
CLI::Option* add_opt(CLI::App* app, const std::string& name, std::optional<T>& field, const std::string& desc)
{
    return app->add_option_function<T>(name, [&field](const T& v) { field = v; }, desc);
}

void add_geometry_options(CLI::App* app, RunConfig& cfg)
{
    add_opt(app, "--n", cfg.n, "number of star points n (2n-star)");
    add_opt(app, "--l0", cfg.L0, "straight-joint length L0 (torus: L)");
    add_opt(app, "--l1", cfg.L1, "vee/bend joint length L1");
    add_opt(app, "--theta", cfg.theta, "frame angle theta (radians or e.g. pi/3)");
    add_opt(app, "--phi", cfg.phi, "n-star angle phi (radians or e.g. 3pi/2)");
    add_opt(app, "--psi", cfg.psi, "n-star angle psi of the vee joints (radians or e.g. 3pi/2)");
    add_opt(app, "--alpha", cfg.alpha, "seed alpha");
    add_opt(app, "--gamma", cfg.gamma, "seed gamma");
    add_opt(app, "--alpha0", cfg.alpha0, "straight-joint seed alpha0");
    add_opt(app, "--gamma0", cfg.gamma0, "straight-joint seed gamma0");
    add_opt(app, "--k", cfg.k, "anchor index k (default n/2)");
    app->add_option("--input-radius", cfg.input_radius, "radius of the input enclosures")->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified flat tori and flat Klein bottle constructions", "flatkb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunConfig cfg;
    bool all_rows = false, embedded = false;
    double radius = 0.0;
    std::string verify_path, alphas, gammas;

    auto* build = app.add_subcommand("build", "build and certify a construction");
    build->add_option("target", cfg.target, "klein, torus or joint")->required()->check(CLI::IsMember({"klein", "torus", "joint"}));
    add_geometry_options(build, cfg);
    build->add_option("--kind", cfg.joint_kind, "joint kind: vee, bend or straight")->check(CLI::IsMember({"vee", "bend", "straight"}));
    build->add_flag("--certified,!--no-certified", cfg.certified, "interval certification (default on)");
    build->add_flag("--merge,!--no-merge", cfg.merge, "also write the merged mesh (default on)");
    add_opt(build, "--require", cfg.require, "verdict for exit 0: flat, immersion or embedded")
        ->check(CLI::IsMember({"flat", "immersion", "embedded"}));
    build->add_option("--out", cfg.out, "mesh output prefix (writes PREFIX.obj/.json and PREFIX.merged.*)");
    build->add_option("--report", cfg.report, "verification report (JSON)");
    build->add_option("--intersections", cfg.intersections, "self-intersection segments (CSV)");

    auto* tables = app.add_subcommand("tables", "certified parameter and cofactor tables of a vee or bend joint");
    add_geometry_options(tables, cfg);
    tables->add_option("--kind", cfg.joint_kind, "joint kind: vee or bend")->check(CLI::IsMember({"vee", "bend"}));
    tables->add_option("--out", cfg.out, "output directory (default: print to stdout)");
    tables->add_flag("--all", all_rows, "rows for all 2n indices instead of k..k+n");

    auto* verify = app.add_subcommand("verify", "certify angle sums and local injectivity of a mesh file");
    verify->add_option("path", verify_path, "mesh file (.obj or .json)")->required();
    verify->add_option("--report", cfg.report, "verification report (JSON)");
    verify->add_option("--radius", radius, "enclose every coordinate in a box of this radius")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "feasibility grid over the seeds (alpha, gamma)");
    sweep->add_option("target", cfg.target, "klein or torus")->required()->check(CLI::IsMember({"klein", "torus"}));
    add_geometry_options(sweep, cfg);
    sweep->add_option("--alphas", alphas, "alpha values: a,b,c or lo:hi:steps");
    sweep->add_option("--gammas", gammas, "gamma values: a,b,c or lo:hi:steps");
    sweep->add_flag("--certified,!--no-certified", cfg.certified, "interval certification (default on)");
    sweep->add_flag("--embedded", embedded, "also require zero self-intersections");
    sweep->add_option("--out", cfg.out, "CSV output (default: stdout)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? EXIT_OK : EXIT_PARAM;
    }

    try {
        if (*build) {
            cfg.command = "build";
            return cmd_build(cfg, out);
        }
        if (*tables) {
            cfg.command = "tables";
            return cmd_tables(cfg, all_rows, out);
        }
        if (*verify) {
            cfg.command = "verify";
            return cmd_verify(verify_path, cfg.report, radius, out);
        }
        cfg.command = "sweep";
        if (cfg.alpha || cfg.gamma)
            throw Error(ErrorCode::ParameterError, "use --alphas/--gammas for the sweep grid");
        return cmd_sweep(cfg, alphas, gammas, embedded, out, err);
    }
    catch (const Error& e) {
        err << "flatkb: error: " << e.what() << "\n";
        err << "failure_category: " << to_string(e.code()) << "\n";
        return exit_code_for(e.code());
    }
    catch (const std::exception& e) {
        err << "flatkb: error: " << e.what() << "\n";
        err << "failure_category: INTERNAL\n";
        return EXIT_CONSTRUCTION;
    }
}

} // namespace flatkb::workbench
