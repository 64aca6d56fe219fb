#include "flatkb/workbench/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <regex>

namespace flatkb::workbench {

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::ParameterError:
    case ErrorCode::AngleOutOfRange:
    case ErrorCode::ParseError: return EXIT_PARAM;
    case ErrorCode::InvalidComplex: return EXIT_VERIFICATION;
    default: return EXIT_CONSTRUCTION;
    }
}

double parse_double(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw Error(ErrorCode::ParameterError, "not a number: '" + std::string(s) + "'");
    return v;
}

Angle parse_angle(std::string_view s)
{
    static const std::regex re(R"(^\s*([+-]?)\s*(\d*)\s*\*?\s*(?:pi|π)\s*(?:/\s*(\d+))?\s*$)");
    const std::string str(s);
    std::smatch m;
    if (std::regex_match(str, m, re)) {
        long num = m[2].length() ? std::stol(m[2].str()) : 1;
        const long den = m[3].matched ? std::stol(m[3].str()) : 1;
        if (den == 0) throw Error(ErrorCode::ParameterError, "zero denominator in angle '" + str + "'");
        if (m[1].str() == "-") num = -num;
        return Angle::pi_frac(num, den);
    }
    return Angle::rad(parse_double(s));
}

std::vector<double> parse_value_list(std::string_view s)
{
    std::vector<std::string_view> parts;
    const char sep = s.find(':') != std::string_view::npos ? ':' : ',';
    size_t start = 0;
    while (true) {
        const size_t p = s.find(sep, start);
        parts.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    if (sep == ':') {
        if (parts.size() != 3) throw Error(ErrorCode::ParameterError, "range must be lo:hi:steps");
        const double steps = parse_double(parts[2]);
        if (steps < 1 || steps != std::floor(steps)) throw Error(ErrorCode::ParameterError, "steps must be a positive integer");
        return linspace(parse_double(parts[0]), parse_double(parts[1]), static_cast<int>(steps));
    }
    std::vector<double> out;
    for (auto p : parts) out.push_back(parse_double(p));
    return out;
}

const char* to_string(JointKind k)
{
    switch (k) {
    case JointKind::VEE: return "vee";
    case JointKind::BEND: return "bend";
    case JointKind::STRAIGHT: return "straight";
    }
    return "?";
}

JointKind parse_joint_kind(std::string_view s)
{
    if (s == "vee") return JointKind::VEE;
    if (s == "bend") return JointKind::BEND;
    if (s == "straight") return JointKind::STRAIGHT;
    throw Error(ErrorCode::ParameterError, "joint kind must be vee, bend or straight");
}

const char* to_string(Requirement r)
{
    switch (r) {
    case Requirement::FLAT: return "flat";
    case Requirement::IMMERSION: return "immersion";
    case Requirement::EMBEDDED: return "embedded";
    }
    return "?";
}

void validate(const JointSpec& s)
{
    if (s.n < 3) throw Error(ErrorCode::ParameterError, "n must be at least 3");
    if (s.kind != JointKind::STRAIGHT && (s.k < 0 || s.k >= 2 * s.n))
        throw Error(ErrorCode::ParameterError, "k must lie in [0, 2n)");
    if (!(s.L > 0)) throw Error(ErrorCode::ParameterError, "L must be positive");
    if (!(s.alpha > 0 && s.gamma > 0)) throw Error(ErrorCode::ParameterError, "seed parameters must be positive");
    if (!(s.input_radius >= 0)) throw Error(ErrorCode::ParameterError, "input radius must be non-negative");
}

TubeJoint build_joint(const JointSpec& s, bool certified)
{
    validate(s);
    if (s.kind == JointKind::STRAIGHT) {
        const Vec3 c{0, 0, 0}, axis{0, 0, 1}, p0{1, 0, 0};
        const TubeFrame tf = make_coaxial_frame<double>(s.n, s.phi.as<double>(), c, axis, p0);
        std::optional<ITubeFrame> itf;
        if (certified)
            itf = make_coaxial_frame<Interval>(s.n, s.phi.as<Interval>(), IVec3(c), IVec3(axis), IVec3(p0));
        return straight_joint(tf, itf ? &*itf : nullptr, s.alpha, s.gamma, "S");
    }
    const FrameKind fk = s.kind == JointKind::VEE ? FrameKind::VEE : FrameKind::BEND;
    const TubeFrame tf = make_tube_frame<double>(fk, s.n, s.L, s.theta.as<double>(), s.phi.as<double>(), s.psi.as<double>());
    std::optional<ITubeFrame> itf;
    if (certified)
        itf = make_tube_frame<Interval>(fk, s.n, input_scalar<Interval>(s.L, s.input_radius), s.theta.as<Interval>(),
                                        s.phi.as<Interval>(), s.psi.as<Interval>());
    return make_joint(tf, itf ? &*itf : nullptr, s.k, s.alpha, s.gamma, s.input_radius, "J");
}

KleinParams klein_params(const RunConfig& c)
{
    KleinParams p;
    if (c.n) p.n = *c.n;
    if (c.L0) p.L0 = *c.L0;
    if (c.L1) p.L1 = *c.L1;
    if (c.psi) p.psi = parse_angle(*c.psi);
    if (c.alpha) p.alpha1 = *c.alpha;
    if (c.gamma) p.gamma1 = *c.gamma;
    if (c.alpha0) p.alpha0 = *c.alpha0;
    if (c.gamma0) p.gamma0 = *c.gamma0;
    validate(p);
    return p;
}

TorusParams torus_params(const RunConfig& c)
{
    TorusParams p;
    if (c.n) p.n = *c.n;
    if (c.L0) p.L = *c.L0;
    if (c.phi) p.phi = parse_angle(*c.phi);
    if (c.alpha) p.alpha = *c.alpha;
    if (c.gamma) p.gamma = *c.gamma;
    validate(p);
    return p;
}

JointSpec joint_spec(const RunConfig& c)
{
    JointSpec s;
    s.kind = parse_joint_kind(c.joint_kind);
    if (s.kind == JointKind::STRAIGHT) {
        s.phi = Angle::rad(4.5);
        s.n = 8;
        s.alpha = 1.0;
        s.gamma = 1.0;
    }
    if (c.n) s.n = *c.n;
    s.k = c.k ? *c.k : s.n / 2;
    if (c.L1) s.L = *c.L1;
    if (c.theta) s.theta = parse_angle(*c.theta);
    if (c.phi) s.phi = parse_angle(*c.phi);
    if (c.psi) s.psi = parse_angle(*c.psi);
    if (c.alpha) s.alpha = *c.alpha;
    if (c.gamma) s.gamma = *c.gamma;
    s.input_radius = c.input_radius;
    validate(s);
    return s;
}

void reject_unused(const RunConfig& c)
{
    std::vector<std::string> bad;
    auto no = [&bad](bool set, const char* name) {
        if (set) bad.emplace_back(name);
    };
    if (c.target == "klein") {
        no(c.theta.has_value(), "--theta");
        no(c.phi.has_value(), "--phi");
        no(c.k.has_value(), "--k");
    }
    else if (c.target == "torus") {
        no(c.L1.has_value(), "--l1");
        no(c.theta.has_value(), "--theta");
        no(c.psi.has_value(), "--psi");
        no(c.alpha0.has_value(), "--alpha0");
        no(c.gamma0.has_value(), "--gamma0");
        no(c.k.has_value(), "--k");
    }
    else if (c.target == "joint") {
        no(c.L0.has_value(), "--l0");
        no(c.alpha0.has_value(), "--alpha0");
        no(c.gamma0.has_value(), "--gamma0");
        if (c.joint_kind == "straight") {
            no(c.L1.has_value(), "--l1");
            no(c.theta.has_value(), "--theta");
            no(c.psi.has_value(), "--psi");
            no(c.k.has_value(), "--k");
        }
    }
    if (!bad.empty()) {
        std::string msg = "option(s) not used by '" + c.target + "':";
        for (const auto& b : bad) msg += " " + b;
        throw Error(ErrorCode::ParameterError, msg);
    }
}

} // namespace flatkb::workbench
