#pragma once

#include <Eigen/Dense>

#include "platoon/config.hpp"
#include "platoon/numerics.hpp"
#include "platoon/rng.hpp"
#include "platoon/sim.hpp"

namespace platoon::testutil {

inline Eigen::MatrixXd random_matrix(RngStream& rng, int rows, int cols, double scale = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (2.0 * rng.uniform() - 1.0) * scale;
    return m;
}

// Random matrix shifted left so every eigenvalue has real part <= -margin.
inline Eigen::MatrixXd random_hurwitz(RngStream& rng, int n, double margin = 0.5) {
    Eigen::MatrixXd m = random_matrix(rng, n, n);
    const double shift = numerics::eigenvalues(m).max_real() + margin;
    return m - shift * Eigen::MatrixXd::Identity(n, n);
}

// Random symmetric positive definite matrix.
inline Eigen::MatrixXd random_spd(RngStream& rng, int n) {
    const Eigen::MatrixXd c = random_matrix(rng, n, n);
    return c.transpose() * c + Eigen::MatrixXd::Identity(n, n);
}

inline LinearModel default_model() {
    return LinearModel::from_params(VehicleParams{});
}

// Guaranteed-stabilizable Riccati test instance: either a controllable
// companion-form pair (possibly unstable) or a stable a with arbitrary b.
// Avoids the near-unstabilizable pairs that fully random (a, b) produce.
struct CareInstance {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
};

inline CareInstance random_care_instance(RngStream& rng, int n) {
    CareInstance instance;
    if (rng.uniform() < 0.5) {
        instance.a = Eigen::MatrixXd::Zero(n, n);
        instance.a.topRightCorner(n - 1, n - 1).setIdentity();
        for (int j = 0; j < n; ++j) instance.a(n - 1, j) = 4.0 * rng.uniform() - 2.0;
        instance.b = Eigen::MatrixXd::Zero(n, 1);
        instance.b(n - 1, 0) = 1.0;
    } else {
        instance.a = random_hurwitz(rng, n);
        instance.b = random_matrix(rng, n, 1);
    }
    return instance;
}

// Scenario wired for tests: given topology kind and overrides.
inline SimConfig make_sim(TopologyKind kind, int n, QuantizerKind quant, double delta,
                          double duration, std::uint64_t seed = 7) {
    SimConfig cfg;
    cfg.topology = build_standard(kind, n);
    cfg.model = default_model();
    cfg.gains = synthesize(cfg.model, cfg.topology, 1.0);
    cfg.quantizer = {quant, delta};
    cfg.head = HeadProfile::speed_ramp();
    cfg.formation.spacing = 20.0;
    cfg.duration = duration;
    cfg.seed = seed;
    return cfg;
}

}  // namespace platoon::testutil
