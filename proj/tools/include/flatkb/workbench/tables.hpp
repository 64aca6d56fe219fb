#pragma once

#include "flatkb/workbench/config.hpp"
#include "flatkb/workbench/mesh_io.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace flatkb::workbench {

struct ParamRow {
    int i = 0;
    Interval alpha, gamma;
};
struct DeltaRow {
    int j = 0; // 1..n forward, -1..-n backward
    Interval delta;
    SignVerdict sign = SignVerdict::ZERO_UNCERTIFIABLE;
};
struct CofactorRow {
    int i = 0;
    InjectivityRow row;
};

struct TableSet {
    JointSpec spec;
    std::vector<ParamRow> params;      // table 1a
    std::vector<DeltaRow> deltas;      // table 1b
    std::vector<CofactorRow> at_a;     // table 2: kitty-corner pairs at a_i
    std::vector<CofactorRow> at_c;     // table 3: kitty-corner pairs at c_i
    // max |alpha_{k-j} - alpha_{k+j}|, |gamma_{k-j} - gamma_{k+j}|, |Delta_j - Delta_{-j}|
    double symmetry_residual = 0.0;
    double max_radius = 0.0;
};

// Certified tables for a vee or bend joint. Rows cover i = k..k+n, or all
// 2n indices when `all_rows` is set. Fans at a_i start with the face
// spanned by the edges to c_{i+1} and w_i; fans at c_i with the face
// spanned by the edges to a_{i+1} and c_{i+1}.
TableSet compute_tables(const JointSpec& spec, bool all_rows = false);

std::string table1a_csv(const TableSet& t);
std::string table1b_csv(const TableSet& t);
std::string cofactor_csv(const std::vector<CofactorRow>& rows);
json tables_json(const TableSet& t);

// Writes table1a.csv, table1b.csv, table2.csv, table3.csv, tables.json.
void write_tables(const TableSet& t, const std::filesystem::path& dir);

} // namespace flatkb::workbench
