#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "platoon/quantizer.hpp"
#include "platoon/sim.hpp"
#include "platoon/topology.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

// Everything a CLI run needs. Defaults reproduce the reference scenario:
// ten followers behind one head vehicle on the BDL topology, 20 m spacing,
// the 20 -> 30 m/s speed ramp, and unit-step deterministic quantization.
struct ScenarioConfig {
    std::optional<TopologyKind> topology_kind = TopologyKind::BDL;
    int n_followers = 10;
    std::optional<CommTopology> explicit_topology;  // overrides kind + count

    VehicleParams vehicle;
    double gamma = 1.0;
    QuantizerSpec quantizer{QuantizerKind::Deterministic, 1.0};
    HeadProfile head = HeadProfile::speed_ramp();
    double spacing = 20.0;  // d_r
    double duration = 60.0;
    double integrator_step = 1e-3;
    double comm_period = 1e-2;
    int record_stride = 1;
    std::uint64_t seed = 42;
    int replicas = 200;
    std::string output_dir = "out";
    std::vector<Eigen::Vector3d> initial_perturbations;

    // privacy / attack / trade-off sections
    double privacy_zeta = 0.5;
    int privacy_pairs = 10000;
    int attack_target = 1;
    std::vector<std::pair<double, double>> tradeoff_weights = {{1.0, 2.0}};
    double front_min = 0.25;
    double front_max = 4.0;
    int front_points = 50;

    void validate() const;
    [[nodiscard]] CommTopology make_topology() const;
    // Synthesizes gains for the configured topology and gamma.
    [[nodiscard]] SimConfig make_sim_config() const;
};

/// Parses and validates a config document; unknown keys are rejected.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config_file(const std::string& path);

/// Serialization with every key present; parse(serialize(c)) == c.
nlohmann::json to_json(const ScenarioConfig& cfg);

/// FNV-1a over the canonical serialized form; embedded in CSV metadata.
std::uint64_t config_hash(const ScenarioConfig& cfg);

}  // namespace platoon
