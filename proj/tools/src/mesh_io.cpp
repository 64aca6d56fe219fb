#include "flatkb/workbench/mesh_io.hpp"

#include "flatkb/errors.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <tuple>
#include <unistd.h>

namespace flatkb::workbench {

std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_shortest(double v)
{
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_fixed5(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    std::string s(buf);
    if (s == "-0.00000") s = "0.00000";
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void atomic_write(const std::filesystem::path& path, const std::string& content)
{
    const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorCode::ParameterError, "cannot write " + tmp.string());
        os << content;
        os.flush();
        if (!os) throw Error(ErrorCode::ParameterError, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorCode::ParameterError, "cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::ParameterError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string to_obj(const CWMesh& m, const std::vector<std::string>& comments)
{
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    for (const Vec3& p : m.pos) out += "v " + format_g17(p.x) + " " + format_g17(p.y) + " " + format_g17(p.z) + "\n";
    for (const auto& F : m.faces) {
        out += "f";
        for (int v : F) out += " " + std::to_string(v + 1);
        out += "\n";
    }
    return out;
}

namespace {

[[noreturn]] void parse_fail(size_t line, size_t col, const std::string& what)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

struct Token {
    std::string_view text;
    size_t col; // 1-based
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const size_t s = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(s, i - s), s + 1});
    }
    return out;
}

} // namespace

CWMesh parse_obj(const std::string& text)
{
    CWMesh m;
    // raw 1-based indices with the (line, column) of each, checked once all vertices are known
    std::vector<std::vector<std::tuple<long, size_t, size_t>>> faces;
    std::string_view rest(text);
    size_t lineno = 0;
    while (!rest.empty()) {
        ++lineno;
        const size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
        if (const size_t h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        const auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string_view kw = tok[0].text;
        if (kw == "v") {
            if (tok.size() != 4 && tok.size() != 5) parse_fail(lineno, tok[0].col, "vertex needs 3 coordinates");
            double xyz[3];
            for (int c = 0; c < 3; ++c) {
                const auto& t = tok[static_cast<size_t>(c) + 1];
                const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), xyz[c]);
                if (ec != std::errc() || p != t.text.data() + t.text.size() || !std::isfinite(xyz[c]))
                    parse_fail(lineno, t.col, "bad coordinate '" + std::string(t.text) + "'");
            }
            m.add_vertex({xyz[0], xyz[1], xyz[2]}, "v" + std::to_string(m.num_vertices() + 1));
        }
        else if (kw == "f") {
            if (tok.size() < 4) parse_fail(lineno, tok[0].col, "face needs at least 3 vertices");
            std::vector<std::tuple<long, size_t, size_t>> idx;
            for (size_t c = 1; c < tok.size(); ++c) {
                std::string_view t = tok[c].text;
                t = t.substr(0, t.find('/'));
                long v = 0;
                const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec != std::errc() || p != t.data() + t.size() || v == 0)
                    parse_fail(lineno, tok[c].col, "bad face index '" + std::string(tok[c].text) + "'");
                // negative indices are relative to the vertices read so far
                if (v < 0) v = static_cast<long>(m.num_vertices()) + 1 + v;
                if (v < 1) parse_fail(lineno, tok[c].col, "face index out of range");
                idx.emplace_back(v, lineno, tok[c].col);
            }
            faces.push_back(std::move(idx));
        }
        else if (kw == "vn" || kw == "vt" || kw == "o" || kw == "g" || kw == "s" || kw == "usemtl" || kw == "mtllib" ||
                 kw == "l") {
            continue;
        }
        else {
            parse_fail(lineno, tok[0].col, "unknown record '" + std::string(kw) + "'");
        }
    }
    for (const auto& idx : faces) {
        std::vector<int> F;
        for (const auto& [v, line, col] : idx) {
            if (v > m.num_vertices()) parse_fail(line, col, "face index " + std::to_string(v) + " out of range");
            F.push_back(static_cast<int>(v - 1));
        }
        m.faces.push_back(std::move(F));
    }
    return m;
}

json to_json_model(const CWMesh& m, const json& provenance, const IntersectionResult* inter)
{
    json j;
    j["format"] = "flatkb-mesh";
    j["format_version"] = 1;
    j["provenance"] = provenance;
    j["counts"] = {{"vertices", m.num_vertices()}, {"faces", m.num_faces()}};
    json verts = json::array();
    for (const Vec3& p : m.pos) verts.push_back({p.x, p.y, p.z});
    j["vertices"] = std::move(verts);
    j["labels"] = m.label.empty() ? json::array() : json(m.label);
    json faces = json::array();
    for (const auto& F : m.faces) {
        json f = json::array();
        for (int v : F) f.push_back(v + 1);
        faces.push_back(std::move(f));
    }
    j["faces"] = std::move(faces);
    if (m.certified_positions()) {
        json enc = json::array();
        for (const IVec3& b : m.ipos) enc.push_back({{b.x.lo, b.x.hi}, {b.y.lo, b.y.hi}, {b.z.lo, b.z.hi}});
        j["enclosures"] = std::move(enc);
    }
    if (inter) {
        json segs = json::array();
        for (const auto& s : inter->segments)
            segs.push_back({{"p", {s.p.x, s.p.y, s.p.z}}, {"q", {s.q.x, s.q.y, s.q.z}}, {"faces", {s.face_a + 1, s.face_b + 1}}});
        j["intersections"] = std::move(segs);
    }
    return j;
}

namespace {

Vec3 vec_of(const json& a, const std::string& where)
{
    if (!a.is_array() || a.size() != 3) throw Error(ErrorCode::ParseError, where + ": expected [x, y, z]");
    for (const auto& c : a)
        if (!c.is_number()) throw Error(ErrorCode::ParseError, where + ": non-numeric coordinate");
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

} // namespace

MeshModel parse_json_model(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; convert it to line and column
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            }
            else {
                ++col;
            }
        }
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "flatkb-mesh") throw Error(ErrorCode::ParseError, "not a flatkb-mesh JSON model");
    if (!j.contains("vertices") || !j["vertices"].is_array() || !j.contains("faces") || !j["faces"].is_array())
        throw Error(ErrorCode::ParseError, "model needs 'vertices' and 'faces' arrays");

    MeshModel out;
    if (j.contains("provenance")) out.provenance = j["provenance"];
    const json& V = j["vertices"];
    const json labels = j.value("labels", json::array());
    const bool has_labels = labels.is_array() && labels.size() == V.size();
    const bool has_enc = j.contains("enclosures");
    if (has_enc && (!j["enclosures"].is_array() || j["enclosures"].size() != V.size()))
        throw Error(ErrorCode::ParseError, "'enclosures' must have one entry per vertex");
    for (size_t i = 0; i < V.size(); ++i) {
        const std::string where = "vertex " + std::to_string(i + 1);
        const Vec3 p = vec_of(V[i], where);
        const std::string name = has_labels ? labels[i].get<std::string>() : "v" + std::to_string(i + 1);
        if (!has_enc) {
            out.mesh.add_vertex(p, name);
            continue;
        }
        const json& e = j["enclosures"][i];
        IVec3 box;
        if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::ParseError, where + ": bad enclosure");
        for (int c = 0; c < 3; ++c) {
            const json& iv = e[static_cast<size_t>(c)];
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
                throw Error(ErrorCode::ParseError, where + ": bad enclosure interval");
            box[c] = Interval(iv[0].get<double>(), iv[1].get<double>());
            if (!(box[c].lo <= p[c] && p[c] <= box[c].hi))
                throw Error(ErrorCode::ParseError, where + ": enclosure does not contain the coordinate");
        }
        out.mesh.add_vertex(p, box, name);
    }
    const json& F = j["faces"];
    for (size_t f = 0; f < F.size(); ++f) {
        if (!F[f].is_array() || F[f].size() < 3) throw Error(ErrorCode::ParseError, "face " + std::to_string(f + 1) + ": needs at least 3 indices");
        std::vector<int> face;
        for (const auto& v : F[f]) {
            if (!v.is_number_integer() || v.get<long>() < 1 || v.get<long>() > static_cast<long>(V.size()))
                throw Error(ErrorCode::ParseError, "face " + std::to_string(f + 1) + ": index out of range");
            face.push_back(v.get<int>() - 1);
        }
        out.mesh.faces.push_back(std::move(face));
    }
    if (j.contains("counts")) {
        const json& c = j["counts"];
        if (c.value("vertices", -1) != out.mesh.num_vertices() || c.value("faces", -1) != out.mesh.num_faces())
            throw Error(ErrorCode::ParseError, "'counts' disagree with the vertex and face lists");
    }
    if (j.contains("intersections"))
        for (const auto& s : j["intersections"]) {
            Segment seg;
            seg.p = vec_of(s.at("p"), "intersection");
            seg.q = vec_of(s.at("q"), "intersection");
            seg.face_a = s.at("faces")[0].get<int>() - 1;
            seg.face_b = s.at("faces")[1].get<int>() - 1;
            out.intersections.push_back(seg);
        }
    return out;
}

MeshModel read_mesh_file(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    const std::string ext = path.extension().string();
    bool as_json = ext == ".json";
    if (ext != ".json" && ext != ".obj") {
        const size_t p = text.find_first_not_of(" \t\r\n");
        as_json = p != std::string::npos && text[p] == '{';
    }
    if (as_json) return parse_json_model(text);
    MeshModel m;
    m.mesh = parse_obj(text);
    return m;
}

std::string intersections_csv(const IntersectionResult& r)
{
    std::string out = "x1,y1,z1,x2,y2,z2,face_a,face_b\n";
    for (const auto& s : r.segments)
        out += format_g17(s.p.x) + "," + format_g17(s.p.y) + "," + format_g17(s.p.z) + "," + format_g17(s.q.x) + "," +
               format_g17(s.q.y) + "," + format_g17(s.q.z) + "," + std::to_string(s.face_a + 1) + "," +
               std::to_string(s.face_b + 1) + "\n";
    return out;
}

} // namespace flatkb::workbench
