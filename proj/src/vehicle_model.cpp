#include "platoon/vehicle_model.hpp"

#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

void VehicleParams::validate() const {
    const bool ok = mass > 0.0 && inertial_delay > 0.0 && air_density > 0.0 &&
                    cross_section > 0.0 && drag_coeff > 0.0 && mech_drag > 0.0;
    if (!ok) throw ConfigError("vehicle parameters must all be strictly positive");
}

LinearModel LinearModel::from_params(const VehicleParams& params) {
    params.validate();
    LinearModel model;
    model.tau = params.inertial_delay;
    model.a << 0.0, 1.0, 0.0,
               0.0, 0.0, 1.0,
               0.0, 0.0, -1.0 / model.tau;
    model.b << 0.0, 0.0, 1.0 / model.tau;
    return model;
}

VehicleState HeadProfile::at(double t) const {
    if (t < 0.0) throw InputError("head profile queried at negative time");

    double pos = initial_position;
    double vel = initial_velocity;
    double prev = 0.0;
    for (const Phase& phase : phases) {
        const double seg = std::min(t, phase.until) - prev;
        if (seg > 0.0) {
            pos += vel * seg + 0.5 * phase.accel * seg * seg;
            vel += phase.accel * seg;
        }
        if (t <= phase.until) return {pos, vel, phase.accel};
        prev = phase.until;
    }
    pos += vel * (t - prev);
    return {pos, vel, 0.0};
}

HeadProfile HeadProfile::speed_ramp() {
    HeadProfile profile;
    profile.initial_position = 0.0;
    profile.initial_velocity = 20.0;
    profile.phases = {{5.0, 0.0}, {10.0, 2.0}};
    return profile;
}

HeadProfile HeadProfile::constant_speed(double velocity, double position) {
    HeadProfile profile;
    profile.initial_position = position;
    profile.initial_velocity = velocity;
    return profile;
}

void FormationSpec::validate() const {
    if (!(spacing > 0.0)) throw ConfigError("formation spacing d_r must be positive");
}

double engine_input(const VehicleParams& params, const VehicleState& state, double u) {
    const double drag = params.air_density * params.cross_section * params.drag_coeff;
    // The v*a compensation carries the inertial delay so the drag terms cancel
    // exactly against the nonlinear model for any tau, not just tau = 1.
    return params.mass * u + 0.5 * drag * state.vel * state.vel + params.mech_drag +
           params.inertial_delay * drag * state.vel * state.acc;
}

Eigen::Vector3d nonlinear_derivative(const VehicleParams& params, const VehicleState& state,
                                     double b) {
    const double drag = params.air_density * params.cross_section * params.drag_coeff;
    const double f = -(state.acc + 0.5 * drag / params.mass * state.vel * state.vel +
                       params.mech_drag / params.mass) /
                         params.inertial_delay -
                     drag / params.mass * state.vel * state.acc;
    return {state.vel, state.acc, f + b / (params.inertial_delay * params.mass)};
}

Eigen::Vector3d tracking_error(const Eigen::Vector3d& follower, const Eigen::Vector3d& offset,
                               const Eigen::Vector3d& head) {
    return follower + offset - head;
}

}  // namespace platoon
