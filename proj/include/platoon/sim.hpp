#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "platoon/quantizer.hpp"
#include "platoon/synthesis.hpp"
#include "platoon/topology.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

// Closed-loop scenario description. Controls are recomputed from freshly
// quantized states every comm_period and held (zero-order hold) while the
// follower dynamics are integrated with fixed-step RK4 substeps of
// integrator_step. The head vehicle follows its profile in closed form.
struct SimConfig {
    CommTopology topology;
    LinearModel model;
    GainSet gains;
    QuantizerSpec quantizer;
    HeadProfile head;
    FormationSpec formation;
    // Optional per-follower offsets added to the exact-formation initial
    // states x_i(0) = x_0(0) - d_i; empty means start in formation.
    std::vector<Eigen::Vector3d> initial_perturbations;
    double duration = 60.0;         // T [s]
    double integrator_step = 1e-3;  // h_int [s]
    double comm_period = 1e-2;      // h_comm [s]
    std::uint64_t seed = 0;
    int record_stride = 1;          // keep every k-th communication instant

    void validate() const;
    [[nodiscard]] int steps_per_comm() const;
    [[nodiscard]] int comm_steps() const;
};

// Time series sampled on the recorded communication grid. Vehicle 0 is the
// head; followers are 1..N.
struct SimTrace {
    int n_followers = 0;
    std::vector<double> times;
    std::vector<std::vector<Eigen::Vector3d>> states;          // [t][vehicle]
    std::vector<std::vector<Eigen::Vector3d>> tracking_errors; // [t][follower-1]
    std::vector<std::vector<double>> spacing_errors;           // [t][follower-1]
    std::vector<std::vector<double>> inputs;                   // [t][follower-1]
    std::vector<Eigen::VectorXd> transmitted;                  // [t] stacked 3(N+1), head first
    std::vector<double> eps_norm;                              // [t] collective ||eps||

    // Stacked tracking error [eps_1; ...; eps_N] at record index idx.
    [[nodiscard]] Eigen::VectorXd stacked_error(std::size_t idx) const;
    [[nodiscard]] std::size_t index_at_time(double t) const;
};

// Eavesdropper observer co-integrated with the platoon.
struct ObserverTrace {
    int target = 0;  // follower index, 1-based
    std::vector<double> times;
    std::vector<Eigen::Vector3d> estimate;
    std::vector<Eigen::Vector3d> truth;
    std::vector<double> error_norm;
};

/// Distributed control input for follower i (1-based) from quantized data:
///   u_i = K ( sum_j m_ij ((q_j + d_j) - (q_i + d_i)) + s_i (q_0 - (q_i + d_i)) ).
/// `follower_q` is indexed by follower (1-based index j at position j-1) and
/// must carry exactly the neighbors of i; `leader_q` must be present exactly
/// when follower i is pinned. Violations raise ProtocolError.
double control_input(int i, const std::vector<std::optional<Eigen::Vector3d>>& follower_q,
                     const std::optional<Eigen::Vector3d>& leader_q,
                     const Eigen::Vector3d& own_q, const GainSet& gains,
                     const CommTopology& topo, const FormationSpec& formation);

/// Single closed-loop run (replica 0 of the seed).
SimTrace run(const SimConfig& cfg);

/// Independent replicas with per-replica substreams of cfg.seed. Traces are
/// identical unless the quantizer is probabilistic.
std::vector<SimTrace> run_ensemble(const SimConfig& cfg, int replicas);

/// Co-integrates a Luenberger-style observer driven by the target follower's
/// transmitted (quantized) stream and its control input:
///   xhat' = A xhat + B u_i + C (Q(x_i) - Q(xhat)),
/// with Q(xhat) drawn from an independent stream for probabilistic quantizers.
std::pair<SimTrace, ObserverTrace> run_with_observer(const SimConfig& cfg, int target,
                                                     const Eigen::Matrix3d& injection_gain);

}  // namespace platoon
