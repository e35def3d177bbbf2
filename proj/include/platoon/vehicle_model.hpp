#pragma once

#include <Eigen/Dense>
#include <vector>

namespace platoon {

// Physical constants of the longitudinal model. The platoon is homogeneous,
// so one instance is shared by every vehicle.
struct VehicleParams {
    double mass = 1500.0;            // [kg]
    double inertial_delay = 0.5;     // tau [s]
    double air_density = 1.2041;     // sigma [kg/m^3]
    double cross_section = 2.2;      // phi [m^2]
    double drag_coeff = 0.35;        // c_d [-]
    double mech_drag = 150.0;        // d_m [N]

    void validate() const;  // all strictly positive
};

struct VehicleState {
    double pos = 0.0;  // [m]
    double vel = 0.0;  // [m/s]
    double acc = 0.0;  // [m/s^2]

    [[nodiscard]] Eigen::Vector3d vec() const { return {pos, vel, acc}; }
    static VehicleState from(const Eigen::Vector3d& x) { return {x(0), x(1), x(2)}; }
};

// Linearized longitudinal dynamics xdot = A x + B u obtained by cancelling
// the drag terms through the engine input.
struct LinearModel {
    Eigen::Matrix3d a;
    Eigen::Vector3d b;
    double tau = 0.5;

    static LinearModel from_params(const VehicleParams& params);
};

// Head-vehicle velocity profile: piecewise-constant acceleration with the
// position evaluated as the exact integral (the head is never integrated
// numerically). Phase k applies on (until[k-1], until[k]]; acceleration is
// zero after the last phase.
struct HeadProfile {
    struct Phase {
        double until = 0.0;
        double accel = 0.0;
    };

    double initial_position = 0.0;
    double initial_velocity = 20.0;
    std::vector<Phase> phases;

    [[nodiscard]] VehicleState at(double t) const;

    // 20 m/s, ramping at 2 m/s^2 over (5 s, 10 s] to 30 m/s.
    static HeadProfile speed_ramp();
    static HeadProfile constant_speed(double velocity, double position = 0.0);
};

// Desired formation geometry: follower i sits i * spacing behind the head.
struct FormationSpec {
    double spacing = 20.0;  // d_r [m]

    void validate() const;
    // Offset for follower i (1-based), [i * d_r, 0, 0].
    [[nodiscard]] Eigen::Vector3d offset(int i) const {
        return {static_cast<double>(i) * spacing, 0.0, 0.0};
    }
};

/// Engine input that linearizes the longitudinal dynamics for commanded
/// input u: b = m*u + (sigma*phi*cd/2) v^2 + d_m + tau * sigma*phi*cd * v * a.
double engine_input(const VehicleParams& params, const VehicleState& state, double u);

/// Time derivative of [p, v, a] under the nonlinear longitudinal model with
/// engine input b.
Eigen::Vector3d nonlinear_derivative(const VehicleParams& params, const VehicleState& state,
                                     double b);

/// Tracking error eps_i = x_i + d_i - x_0.
Eigen::Vector3d tracking_error(const Eigen::Vector3d& follower, const Eigen::Vector3d& offset,
                               const Eigen::Vector3d& head);

}  // namespace platoon
