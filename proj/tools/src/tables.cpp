#include "flatkb/workbench/tables.hpp"

#include <algorithm>
#include <cmath>

namespace flatkb::workbench {

TableSet compute_tables(const JointSpec& spec, bool all_rows)
{
    if (spec.kind == JointKind::STRAIGHT) throw Error(ErrorCode::ParameterError, "tables need a vee or bend joint");
    TableSet t;
    t.spec = spec;
    const TubeJoint tj = build_joint(spec, true);
    const IJointParams& jp = tj.cert->params;
    const int n = spec.n, k = spec.k;
    const int lo = all_rows ? 0 : k;
    const int hi = all_rows ? 2 * n - 1 : k + n;

    auto note = [&t](const Interval& x) { t.max_radius = std::max(t.max_radius, x.rad()); };
    for (int i = lo; i <= hi; ++i) {
        t.params.push_back({i, jp.alpha(i), jp.gamma(i)});
        note(jp.alpha(i));
        note(jp.gamma(i));
    }
    for (int j = 1; j <= n; ++j) {
        const Interval& d = jp.delta_fwd[static_cast<size_t>(j - 1)];
        t.deltas.push_back({j, d, ia_sign(d)});
        note(d);
    }
    for (int j = 1; j <= n; ++j) {
        const Interval& d = jp.delta_bwd[static_cast<size_t>(j - 1)];
        t.deltas.push_back({-j, d, ia_sign(d)});
        note(d);
    }

    const auto& P = tj.geom.params;
    for (int j = 1; j <= n; ++j) {
        t.symmetry_residual = std::max({t.symmetry_residual, std::fabs(P.alpha(k - j) - P.alpha(k + j)),
                                        std::fabs(P.gamma(k - j) - P.gamma(k + j)),
                                        std::fabs(P.delta_fwd[static_cast<size_t>(j - 1)] - P.delta_bwd[static_cast<size_t>(j - 1)])});
    }

    for (int i = lo; i <= hi; ++i) {
        const int a = tj.a(i), c = tj.c(i);
        const Fan fa = vertex_fan_from(tj.mesh, a, tj.c(i + 1), tj.w(i));
        for (const auto& [j, kk] : kitty_corner_labels(static_cast<int>(fa.faces.size())))
            t.at_a.push_back({tj.wrap(i), certify_pair(tj.mesh, a, fa, j, kk)});
        const Fan fc = vertex_fan_from(tj.mesh, c, tj.a(i + 1), tj.c(i + 1));
        for (const auto& [j, kk] : kitty_corner_labels(static_cast<int>(fc.faces.size())))
            t.at_c.push_back({tj.wrap(i), certify_pair(tj.mesh, c, fc, j, kk)});
    }
    for (const auto* rows : {&t.at_a, &t.at_c})
        for (const auto& r : *rows)
            for (const auto& e : r.row.enclosures) note(e);
    return t;
}

std::string table1a_csv(const TableSet& t)
{
    std::string out = "i,alpha_i,gamma_i,alpha_radius,gamma_radius\n";
    for (const auto& r : t.params)
        out += std::to_string(r.i) + "," + format_fixed5(r.alpha.mid()) + "," + format_fixed5(r.gamma.mid()) + "," +
               format_g17(r.alpha.rad()) + "," + format_g17(r.gamma.rad()) + "\n";
    return out;
}

std::string table1b_csv(const TableSet& t)
{
    std::string out = "j,Delta_j,Delta_radius,sign\n";
    for (const auto& r : t.deltas)
        out += std::to_string(r.j) + "," + format_fixed5(r.delta.mid()) + "," + format_g17(r.delta.rad()) + "," +
               to_string(r.sign) + "\n";
    return out;
}

std::string cofactor_csv(const std::vector<CofactorRow>& rows)
{
    std::string out = "i,j,k,c1,c2,c3,c4,verdict,r1,r2,r3,r4,certificate\n";
    for (const auto& cr : rows) {
        const auto& r = cr.row;
        out += std::to_string(cr.i) + "," + std::to_string(r.j) + "," + std::to_string(r.k);
        for (const auto& e : r.enclosures) out += "," + format_fixed5(e.mid());
        out += std::string(",") + to_string(r.verdict);
        for (const auto& e : r.enclosures) out += "," + format_g17(e.rad());
        out += r.separating_plane ? ",separating_plane\n" : ",cofactor_signs\n";
    }
    return out;
}

json tables_json(const TableSet& t)
{
    auto iv = [](const Interval& x) { return json{{"mid", x.mid()}, {"lo", x.lo}, {"hi", x.hi}, {"radius", x.rad()}}; };
    json j;
    j["joint"] = {{"kind", to_string(t.spec.kind)}, {"n", t.spec.n}, {"k", t.spec.k}, {"L", t.spec.L},
                  {"theta", t.spec.theta.str()}, {"phi", t.spec.phi.str()}, {"psi", t.spec.psi.str()},
                  {"alpha", t.spec.alpha}, {"gamma", t.spec.gamma}};
    json a = json::array();
    for (const auto& r : t.params) a.push_back({{"i", r.i}, {"alpha", iv(r.alpha)}, {"gamma", iv(r.gamma)}});
    j["table1a"] = std::move(a);
    json b = json::array();
    for (const auto& r : t.deltas) b.push_back({{"j", r.j}, {"Delta", iv(r.delta)}, {"sign", to_string(r.sign)}});
    j["table1b"] = std::move(b);
    auto cof = [&iv](const std::vector<CofactorRow>& rows) {
        json out = json::array();
        for (const auto& cr : rows) {
            json c = json::array();
            for (const auto& e : cr.row.enclosures) c.push_back(iv(e));
            out.push_back({{"i", cr.i}, {"j", cr.row.j}, {"k", cr.row.k}, {"cofactors", std::move(c)},
                           {"verdict", to_string(cr.row.verdict)}, {"separating_plane", cr.row.separating_plane}});
        }
        return out;
    };
    j["table2"] = cof(t.at_a);
    j["table3"] = cof(t.at_c);
    j["symmetry_residual"] = t.symmetry_residual;
    j["max_radius"] = t.max_radius;
    return j;
}

void write_tables(const TableSet& t, const std::filesystem::path& dir)
{
    atomic_write(dir / "table1a.csv", table1a_csv(t));
    atomic_write(dir / "table1b.csv", table1b_csv(t));
    atomic_write(dir / "table2.csv", cofactor_csv(t.at_a));
    atomic_write(dir / "table3.csv", cofactor_csv(t.at_c));
    atomic_write(dir / "tables.json", tables_json(t).dump(2) + "\n");
}

} // namespace flatkb::workbench
