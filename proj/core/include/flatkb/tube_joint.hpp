#pragma once

#include "flatkb/cw_mesh.hpp"
#include "flatkb/frames.hpp"
#include "flatkb/zee_bridge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatkb {

template <class T>
struct JointParamsT {
    int n = 0;
    int k = 0;
    T seed_alpha{}, seed_gamma{};
    std::vector<T> alphas, gammas; // indexed 0..2n-1
    // forward Delta_1..Delta_n and backward Delta_{-1}..Delta_{-n}
    std::vector<T> delta_fwd, delta_bwd;
    double meet_residual = 0.0;

    const T& alpha(int i) const { return alphas[static_cast<size_t>(wrap(i))]; }
    const T& gamma(int i) const { return gammas[static_cast<size_t>(wrap(i))]; }
    int wrap(int i) const
    {
        const int m = 2 * n;
        return ((i % m) + m) % m;
    }
};
using JointParams = JointParamsT<double>;
using IJointParams = JointParamsT<Interval>;

// Recursive generation anchored at k. Forward steps use the reversed frames
// F~_{k+j+1}, backward steps the frames F_{k-j}; the two runs must meet at
// index k+n = k-n.
template <class T> JointParamsT<T> generate_parameters(const TubeFrameT<T>& tf, int k, const T& alpha, const T& gamma);

// Delta_j for j = 1..n followed by Delta_{-j} for j = 1..n, recomputed
// from the parameter vectors.
template <class T> std::vector<T> joint_deltas(const TubeFrameT<T>& tf, const JointParamsT<T>& jp);

// Placed tube joint; strip i is the zee-bridge for F_i with parameters
// (alpha_i, gamma_{i-1}, gamma_i, alpha_{i-1}).
template <class T>
struct TubeJointT {
    TubeFrameT<T> frame;
    JointParamsT<T> params;
    std::vector<ZeeBridgeT<T>> strips;
    std::vector<V3<T>> w, y, a, c; // images of w_i, y_i, a_i, c_i
};

template <class T> TubeJointT<T> build_tube_joint(const TubeFrameT<T>& tf, const JointParamsT<T>& jp);

// Float joint, optional certified shadow, and the CW-mesh of J.
// Mesh vertex layout: w_i at i, y_i at 2n+i, a_i at 4n+i, c_i at 6n+i.
struct TubeJoint {
    TubeJointT<double> geom;
    std::optional<TubeJointT<Interval>> cert;
    CWMesh mesh;
    std::string tag;

    int n() const { return geom.frame.n(); }
    int w(int i) const { return wrap(i); }
    int y(int i) const { return 2 * n() + wrap(i); }
    int a(int i) const { return 4 * n() + wrap(i); }
    int c(int i) const { return 6 * n() + wrap(i); }
    int wrap(int i) const
    {
        const int m = 2 * n();
        return ((i % m) + m) % m;
    }
    // boundary vertex ids on the P side and Q side, by star index
    int p_vertex(int i) const { return (wrap(i) % 2 == 1) ? w(i) : y(i); }
    int q_vertex(int i) const { return (wrap(i) % 2 == 1) ? y(i) : w(i); }
};

CWMesh joint_mesh(const TubeJointT<double>& j, const TubeJointT<Interval>* cert, const std::string& tag);

// Generates (float and, when `certified`, interval) parameters and builds
// the joint. `itf` must be the interval shadow of `tf` when certified.
TubeJoint make_joint(const TubeFrame& tf, const ITubeFrame* itf, int k, double alpha, double gamma,
                     double input_radius = 1e-20, const std::string& tag = "J");
// Rebuilds from explicit parameter vectors (used by perturbation tests).
TubeJoint make_joint_from_params(const TubeFrame& tf, const ITubeFrame* itf, const JointParams& jp,
                                 const IJointParams* ijp, const std::string& tag = "J");

enum class Flatness { FLAT, NOT_FLAT, UNCERTIFIED };
const char* to_string(Flatness f);

struct FlatnessReport {
    std::vector<Interval> deltas;           // Delta_1..Delta_n, Delta_{-1}..Delta_{-n}
    std::vector<SignVerdict> delta_signs;
    std::vector<RectReport> strips;         // per strip i
    std::vector<std::pair<int, Interval>> interior_angle_sums;
    std::vector<std::pair<int, Interval>> boundary_angle_sums;
    double meet_residual = 0.0;
    bool all_deltas_positive = false;
    bool all_strips_rectangular = false;
    bool angle_sums_flat = false;
    Flatness verdict = Flatness::UNCERTIFIED;
};

// Certifies every strip rectangular (edge-length residuals) and independently
// every interior angle sum 2pi and boundary angle sum pi.
FlatnessReport verify_flat(const TubeJoint& tj);

// True for the coaxial layout (s = t, Q~ = P~ + 2L s) or the concentric layout (s = -t, Q~ = P~).
bool is_coaxial(const TubeFrame& tf, double tol = 1e-10);

// Coaxial straight joint anchored at 0; asserts the equal-parameter pattern.
TubeJoint straight_joint(const TubeFrame& tf, const ITubeFrame* itf, double alpha0, double gamma0,
                         const std::string& tag = "S");

} // namespace flatkb
