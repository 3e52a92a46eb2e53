// navigation.cpp

#include "inac/navigation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "inac/errors.hpp"

namespace inac::navigation {

namespace {

constexpr double kC = geometry::kSpeedOfLight;
constexpr double kRankTolerance = 1e-12;

Vec3 enu_direction(double elevation, double azimuth) {
    return {std::cos(elevation) * std::sin(azimuth), std::cos(elevation) * std::cos(azimuth), std::sin(elevation)};
}

Eigen::Matrix4d checked_normal_inverse(const Eigen::Matrix4d& u) {
    const Eigen::Matrix4d normal = u.transpose() * u;
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(normal);
    const auto& sv = svd.singularValues();
    if (!(sv(3) > kRankTolerance * sv(0))) {
        throw RankError("navigation: design matrix is rank deficient");
    }
    return normal.inverse();
}

}  // namespace

NavGeometry NavScene::geometry() const {
    return {sat_positions, ris_position, (inac_sat_position - ris_position).norm()};
}

State NavScene::true_state() const {
    State s;
    s << true_user, kC * clock_bias;
    return s;
}

void NavScene::validate() const {
    (void)checked_normal_inverse(design_matrix(geometry(), true_state()));
}

void LsmControl::validate() const {
    if (iters < 1) throw DomainError("LsmControl: iters must be >= 1");
    if (!(loss > 0.0)) throw DomainError("LsmControl: loss must be positive");
}

std::array<double, 4> predicted_ranges(const NavGeometry& geom, const State& state) {
    const Vec3 p = state.head<3>();
    std::array<double, 4> out{};
    for (int i = 0; i < 3; ++i) out[i] = (geom.sat_positions[i] - p).norm() + state[3];
    out[3] = geom.ris_leg + (geom.ris_position - p).norm() + state[3];
    return out;
}

PseudorangeSet synthesize_pseudoranges(const NavScene& scene, const std::array<double, 4>& sigma,
                                       montecarlo::TrialRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    PseudorangeSet pr;
    pr.sigma = sigma;
    pr.rho = predicted_ranges(scene.geometry(), scene.true_state());
    for (int i = 0; i < 4; ++i) {
        if (sigma[i] < 0.0) throw DomainError("synthesize_pseudoranges: sigma must be >= 0");
        if (sigma[i] > 0.0) pr.rho[i] += sigma[i] * normal(rng);
    }
    return pr;
}

PseudorangeSet synthesize_pseudoranges(const NavScene& scene, double noise_sigma, montecarlo::TrialRng& rng) {
    return synthesize_pseudoranges(scene, {noise_sigma, noise_sigma, noise_sigma, noise_sigma}, rng);
}

Eigen::RowVector4d design_row(const Vec3& anchor, const Vec3& at) {
    const Vec3 delta = at - anchor;
    const double r = delta.norm();
    if (!(r > 0.0)) throw RankError("design_row: linearization point coincides with the anchor");
    Eigen::RowVector4d row;
    row << delta.transpose() / r, 1.0;
    return row;
}

Eigen::Matrix4d design_matrix(const NavGeometry& geom, const State& state) {
    const Vec3 p = state.head<3>();
    Eigen::Matrix4d u;
    for (int i = 0; i < 3; ++i) u.row(i) = design_row(geom.sat_positions[i], p);
    u.row(3) = design_row(geom.ris_position, p);
    return u;
}

double residual_cost(const PseudorangeSet& pr, const NavGeometry& geom, const State& state) {
    const auto pred = predicted_ranges(geom, state);
    double cost = 0.0;
    for (int i = 0; i < 4; ++i) cost += (pr.rho[i] - pred[i]) * (pr.rho[i] - pred[i]);
    return cost;
}

PositionFix lsm_solve(const PseudorangeSet& pr, const NavGeometry& geom, const LsmControl& ctrl) {
    ctrl.validate();
    PositionFix fix;
    State x = ctrl.x0;
    double cost = residual_cost(pr, geom, x);
    for (int i = 1; i <= ctrl.iters; ++i) {
        fix.iterations_used = i;
        const auto pred = predicted_ranges(geom, x);
        Eigen::Vector4d b;
        for (int k = 0; k < 4; ++k) b[k] = pr.rho[k] - pred[k];
        const Eigen::Matrix4d u = design_matrix(geom, x);
        Eigen::Matrix4d q;
        try {
            q = checked_normal_inverse(u);
        } catch (const RankError&) {
            // singular at the start is a geometry error; later it is an
            // iterate collapsing onto the RIS, reported as non-convergence
            if (i == 1) throw;
            break;
        }
        const State step = q * (u.transpose() * b);
        // Halve the step until the cost drops. Noisy ranges close to the RIS
        // can leave the system without an exact root, and the full step then
        // oscillates around the anchor.
        double scale = 1.0;
        State next = x + step;
        double next_cost = residual_cost(pr, geom, next);
        while (next_cost > cost && scale > 1e-6) {
            scale *= 0.5;
            next = x + scale * step;
            next_cost = residual_cost(pr, geom, next);
        }
        if (next_cost > cost) break;  // no descent left: a least-squares minimum
        x = next;
        cost = next_cost;
        if (cost < ctrl.loss) {
            fix.converged = true;
            break;
        }
    }
    fix.state = x;
    fix.final_cost = cost;
    return fix;
}

double gdop(const NavGeometry& geom, const State& state) {
    return std::sqrt(checked_normal_inverse(design_matrix(geom, state)).trace());
}

double pdop(const NavGeometry& geom, const State& state) {
    const Eigen::Matrix4d q = checked_normal_inverse(design_matrix(geom, state));
    return std::sqrt(q(0, 0) + q(1, 1) + q(2, 2));
}

double range_noise_from_snr(double snr, double bandwidth_hz) {
    if (!(snr > 0.0)) throw DomainError("range_noise_from_snr: snr must be positive");
    if (!(bandwidth_hz > 0.0)) throw DomainError("range_noise_from_snr: bandwidth must be positive");
    return kC / (2.0 * bandwidth_hz * std::sqrt(2.0 * snr));
}

double code_floor(double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("code_floor: bandwidth must be positive");
    return kC / (2.0 * bandwidth_hz);
}

double pseudorange_sigma(double snr, double bandwidth_hz, double floor_m) {
    if (snr == 0.0) return std::numeric_limits<double>::infinity();
    return std::max(range_noise_from_snr(snr, bandwidth_hz), floor_m);
}

double position_rmse(const NavScene& scene, const std::array<double, 4>& sigma, std::int64_t trials,
                     std::uint64_t seed, const LsmControl& ctrl) {
    for (double s : sigma) {
        if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    }
    if (trials < 1) throw DomainError("position_rmse: trials must be >= 1");
    const NavGeometry geom = scene.geometry();
    double sq = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        auto rng = montecarlo::trial_stream(seed, static_cast<std::uint64_t>(t), 0x4e4156);
        const auto pr = synthesize_pseudoranges(scene, sigma, rng);
        const auto fix = lsm_solve(pr, geom, ctrl);
        sq += (fix.position() - scene.true_user).squaredNorm();
    }
    return std::sqrt(sq / static_cast<double>(trials));
}

NavScene default_scene(const geometry::OrbitGeometry& orbit, double ris_user_distance) {
    orbit.validate();
    if (!(ris_user_distance > 0.0)) throw DomainError("default_scene: RIS-user distance must be positive");
    const double deg = std::numbers::pi / 180.0;
    const Vec3 user(0.0, 0.0, orbit.earth_radius);
    auto place = [&](double elevation, double azimuth) {
        geometry::OrbitGeometry g = orbit;
        g.elevation = elevation;
        return Vec3(user + geometry::slant_range(g) * enu_direction(elevation, azimuth));
    };
    NavScene scene;
    scene.true_user = user;
    scene.sat_positions = {place(60 * deg, 0.0), place(35 * deg, 120 * deg), place(25 * deg, 240 * deg)};
    scene.inac_sat_position = place(orbit.elevation, 60 * deg);
    scene.ris_position = user + ris_user_distance * Vec3(2.0, 1.0, 0.5).normalized();
    scene.clock_bias = 1e-4;
    return scene;
}

}  // namespace inac::navigation
