#pragma once

#include "flatkb/cw_mesh.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace flatkb::workbench {

using json = nlohmann::ordered_json;

// 17 significant digits, round-trips every double.
std::string format_g17(double v);
// Shortest representation that round-trips.
std::string format_shortest(double v);
// Fixed 5 decimals; never prints a negative zero.
std::string format_fixed5(double v);
// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s);

// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// "v x y z" / "f i j k ..." text, 1-based, preceded by '#' comment lines.
std::string to_obj(const CWMesh& m, const std::vector<std::string>& comments = {});
// Throws ParseError "line L, column C: ..." on malformed input.
CWMesh parse_obj(const std::string& text);

struct MeshModel {
    CWMesh mesh;
    json provenance = json::object();
    std::vector<Segment> intersections;
};

// Canonical JSON model: provenance header, 1-based faces, vertex labels,
// optional certified enclosures and intersection segments.
json to_json_model(const CWMesh& m, const json& provenance, const IntersectionResult* inter = nullptr);
MeshModel parse_json_model(const std::string& text);

// Dispatches on the extension (.obj or .json), falling back to content.
MeshModel read_mesh_file(const std::filesystem::path& path);

// x1,y1,z1,x2,y2,z2,face_a,face_b (faces 1-based).
std::string intersections_csv(const IntersectionResult& r);

} // namespace flatkb::workbench
