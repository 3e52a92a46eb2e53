// navigation.hpp
//
// Pseudorange model for three navigation satellites plus one RIS-relayed
// INAC link, and an iterative least-squares (Gauss-Newton) position/clock
// solver.
//
// The fourth measurement travels satellite -> RIS -> user. The receiver
// knows the satellite-RIS leg, so only the RIS-user leg depends on the
// unknown position and the RIS acts as the anchor of that row.

#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "inac/geometry.hpp"
#include "inac/montecarlo.hpp"

namespace inac::navigation {

using Vec3 = Eigen::Vector3d;
using State = Eigen::Vector4d;  // x, y, z [m], c * clock bias [m]

/// What the receiver knows about the measurement geometry.
struct NavGeometry {
    std::array<Vec3, 3> sat_positions;
    Vec3 ris_position = Vec3::Zero();
    double ris_leg = 0.0;  // |inac satellite - RIS| [m]
};

struct NavScene {
    std::array<Vec3, 3> sat_positions;
    Vec3 inac_sat_position = Vec3::Zero();
    Vec3 ris_position = Vec3::Zero();
    Vec3 true_user = Vec3::Zero();
    double clock_bias = 0.0;  // [s]

    NavGeometry geometry() const;
    State true_state() const;
    /// Throws RankError when the design matrix at the true state is singular.
    void validate() const;
};

struct PseudorangeSet {
    std::array<double, 4> rho{};
    std::array<double, 4> sigma{};
};

struct LsmControl {
    int iters = 20;
    double loss = 1e-6;  // [m^2]
    State x0 = State::Zero();

    void validate() const;
};

struct PositionFix {
    State state = State::Zero();
    int iterations_used = 0;
    double final_cost = 0.0;
    bool converged = false;

    Vec3 position() const { return state.head<3>(); }
    double clock_bias() const { return state[3] / geometry::kSpeedOfLight; }
};

/// Noise-free ranges plus Gaussian noise with the given per-range sigma.
PseudorangeSet synthesize_pseudoranges(const NavScene& scene, const std::array<double, 4>& sigma,
                                       montecarlo::TrialRng& rng);
PseudorangeSet synthesize_pseudoranges(const NavScene& scene, double noise_sigma, montecarlo::TrialRng& rng);

/// Modelled pseudoranges at `state`.
std::array<double, 4> predicted_ranges(const NavGeometry& geom, const State& state);

/// Gradient of the range from `anchor` with respect to (x, y, z, c dt) at `at`:
/// [(x - x_a)/r, (y - y_a)/r, (z - z_a)/r, 1].
Eigen::RowVector4d design_row(const Vec3& anchor, const Vec3& at);

Eigen::Matrix4d design_matrix(const NavGeometry& geom, const State& state);

/// Sum of squared observed-minus-predicted residuals.
double residual_cost(const PseudorangeSet& pr, const NavGeometry& geom, const State& state);

PositionFix lsm_solve(const PseudorangeSet& pr, const NavGeometry& geom, const LsmControl& ctrl = {});

/// sqrt(trace((U^T U)^-1)) at `state`, and its position-only block.
double gdop(const NavGeometry& geom, const State& state);
double pdop(const NavGeometry& geom, const State& state);

/// Delay-estimation noise c / (2 BW sqrt(2 snr)); DomainError for snr <= 0.
double range_noise_from_snr(double snr, double bandwidth_hz);

/// Code-resolution floor c / (2 chip_rate), chip rate equal to the spread bandwidth.
double code_floor(double bandwidth_hz);

/// max(range_noise_from_snr, floor), or +infinity when the link carries no power.
double pseudorange_sigma(double snr, double bandwidth_hz, double floor_m);

/// Position RMSE over `trials` noise draws, solved from a cold start.
/// Infinite when any sigma is infinite (the link is absent).
double position_rmse(const NavScene& scene, const std::array<double, 4>& sigma, std::int64_t trials,
                     std::uint64_t seed, const LsmControl& ctrl = {});

/// A fixed, well-conditioned scene: user on the surface at (0, 0, r_e),
/// navigation satellites at several elevations, the INAC satellite at the
/// orbit elevation and the RIS `ris_user_distance` away from the user.
NavScene default_scene(const geometry::OrbitGeometry& orbit, double ris_user_distance);

}  // namespace inac::navigation
