#pragma once

#include "flatkb/assembly.hpp"
#include "flatkb/errors.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flatkb::workbench {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { EXIT_OK = 0, EXIT_PARAM = 2, EXIT_CONSTRUCTION = 3, EXIT_VERIFICATION = 4, EXIT_INDETERMINATE = 5 };

// Maps a library error onto the exit-status contract.
int exit_code_for(ErrorCode c);

// Accepts radians ("4.5", "-1e-3") or exact rational multiples of pi
// ("pi", "3pi/2", "3*pi/2", "-pi/3", "2π/3"). Throws ParameterError.
Angle parse_angle(std::string_view s);
// Strict full-string double parse. Throws ParameterError.
double parse_double(std::string_view s);
// "a,b,c" or "lo:hi:steps".
std::vector<double> parse_value_list(std::string_view s);

enum class JointKind { VEE, BEND, STRAIGHT };
const char* to_string(JointKind k);
JointKind parse_joint_kind(std::string_view s);

// A single tube joint: theta-parameterized vee/bend frame, or a coaxial
// straight frame built from phi alone.
struct JointSpec {
    JointKind kind = JointKind::VEE;
    int n = 6;
    int k = 3;
    double L = 4.0;
    Angle theta = Angle::pi_frac(1, 3);
    Angle phi = Angle::pi_frac(1, 1);
    Angle psi = Angle::pi_frac(3, 2);
    double alpha = 3.1, gamma = 2.5;
    double input_radius = 1e-20;
};
void validate(const JointSpec& s);
TubeJoint build_joint(const JointSpec& s, bool certified);

enum class Requirement { FLAT, IMMERSION, EMBEDDED };
const char* to_string(Requirement r);

// Every option the CLI accepts; unset optionals take the per-construction
// defaults (Klein: n=6, L0=2, L1=4, psi=3pi/2, alpha=3.1, gamma=2.5,
// alpha0=gamma0=1; torus: n=8, phi=4.5, alpha=1, gamma=2).
struct RunConfig {
    std::string command;
    std::string target; // klein, torus or joint
    std::string joint_kind = "vee";
    std::optional<int> n, k;
    std::optional<double> L0, L1;
    std::optional<std::string> theta, phi, psi;
    std::optional<double> alpha, gamma, alpha0, gamma0;
    bool certified = true;
    bool merge = true;
    std::optional<std::string> require;
    double input_radius = 1e-20;
    std::string out, report, intersections;
};

KleinParams klein_params(const RunConfig& c);
TorusParams torus_params(const RunConfig& c);
JointSpec joint_spec(const RunConfig& c);
// Options that do not apply to the chosen target raise ParameterError.
void reject_unused(const RunConfig& c);

} // namespace flatkb::workbench
