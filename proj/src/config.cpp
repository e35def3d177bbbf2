#include "platoon/config.hpp"

#include <fstream>
#include <set>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
    return obj.at(key).get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    return obj.at(key).get<int>();
}

VehicleParams parse_vehicle(const json& obj) {
    reject_unknown_keys(obj, {"mass", "inertial_delay", "air_density", "cross_section",
                              "drag_coeff", "mech_drag"},
                        "vehicle");
    VehicleParams params;
    params.mass = get_number(obj, "mass", params.mass);
    params.inertial_delay = get_number(obj, "inertial_delay", params.inertial_delay);
    params.air_density = get_number(obj, "air_density", params.air_density);
    params.cross_section = get_number(obj, "cross_section", params.cross_section);
    params.drag_coeff = get_number(obj, "drag_coeff", params.drag_coeff);
    params.mech_drag = get_number(obj, "mech_drag", params.mech_drag);
    return params;
}

HeadProfile parse_head(const json& obj) {
    reject_unknown_keys(obj, {"initial_position", "initial_velocity", "phases"}, "head_profile");
    HeadProfile head;
    head.initial_position = get_number(obj, "initial_position", head.initial_position);
    head.initial_velocity = get_number(obj, "initial_velocity", head.initial_velocity);
    head.phases.clear();
    if (obj.contains("phases")) {
        for (const auto& item : obj.at("phases")) {
            reject_unknown_keys(item, {"until", "accel"}, "head_profile.phases");
            HeadProfile::Phase phase;
            phase.until = get_number(item, "until", 0.0);
            phase.accel = get_number(item, "accel", 0.0);
            head.phases.push_back(phase);
        }
    }
    double prev = 0.0;
    for (const auto& phase : head.phases) {
        if (!(phase.until > prev))
            throw ConfigError("head_profile phases must have strictly increasing 'until' times");
        prev = phase.until;
    }
    return head;
}

}  // namespace

void ScenarioConfig::validate() const {
    vehicle.validate();
    quantizer.validate();
    if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
    if (!(spacing > 0.0)) throw ConfigError("spacing must be positive");
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    if (!explicit_topology && n_followers < 1)
        throw ConfigError("followers must be >= 1");
    if (!(privacy_zeta > 0.0) || !(privacy_zeta < quantizer.step))
        throw ConfigError("privacy zeta must satisfy 0 < zeta < quantizer step");
    if (privacy_pairs < 1) throw ConfigError("privacy pairs must be >= 1");
    const CommTopology topo = make_topology();
    if (attack_target < 1 || attack_target > topo.n_followers)
        throw ConfigError("attack_target must name a follower");
    for (const auto& [w1, w2] : tradeoff_weights)
        if (!(w1 > 0.0) || !(w2 > 0.0)) throw ConfigError("trade-off weights must be positive");
    if (!(front_min > 0.0) || !(front_max > front_min) || front_points < 2)
        throw ConfigError("Pareto front grid must satisfy 0 < front_min < front_max, points >= 2");

    const ValidationReport report = platoon::validate(topo);
    if (!report.passed()) throw ConfigError("topology rejected: " + report.failure_summary());

    // Remaining sim invariants (step ratios, perturbation count) are shared
    // with SimConfig::validate via make_sim_config at run time.
    if (!(duration > 0.0)) throw ConfigError("duration must be positive");
    if (!(integrator_step > 0.0) || !(comm_period >= integrator_step))
        throw ConfigError("need 0 < integrator_step <= comm_period");
}

CommTopology ScenarioConfig::make_topology() const {
    if (explicit_topology) return *explicit_topology;
    if (!topology_kind) throw ConfigError("no topology given");
    return build_standard(*topology_kind, n_followers);
}

SimConfig ScenarioConfig::make_sim_config() const {
    validate();
    SimConfig sim;
    sim.topology = make_topology();
    sim.model = LinearModel::from_params(vehicle);
    sim.gains = synthesize(sim.model, sim.topology, gamma);
    sim.quantizer = quantizer;
    sim.head = head;
    sim.formation.spacing = spacing;
    sim.initial_perturbations = initial_perturbations;
    sim.duration = duration;
    sim.integrator_step = integrator_step;
    sim.comm_period = comm_period;
    sim.seed = seed;
    sim.record_stride = record_stride;
    sim.validate();
    return sim;
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(doc,
                        {"topology", "vehicle", "gamma", "quantizer", "head_profile", "spacing",
                         "duration", "integrator_step", "comm_period", "record_stride", "seed",
                         "replicas", "output_dir", "initial_perturbations", "privacy",
                         "attack_target", "tradeoff"},
                        "config");

    ScenarioConfig cfg;
    if (doc.contains("topology")) {
        const json& topo = doc.at("topology");
        reject_unknown_keys(topo, {"kind", "followers", "adjacency", "pinned"}, "topology");
        if (topo.contains("adjacency") || topo.contains("pinned")) {
            if (!topo.contains("adjacency") || !topo.contains("pinned"))
                throw ConfigError("explicit topology needs both 'adjacency' and 'pinned'");
            CommTopology custom;
            const auto& rows = topo.at("adjacency");
            const int n = static_cast<int>(rows.size());
            custom.n_followers = n;
            custom.adjacency = numerics::Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(rows.at(i).size()) != n)
                    throw ConfigError("adjacency must be a square matrix");
                for (int j = 0; j < n; ++j)
                    custom.adjacency(i, j) = rows.at(i).at(j).get<double>();
            }
            for (const auto& s : topo.at("pinned")) custom.pinned.push_back(s.get<int>());
            if (custom.pinned.size() != static_cast<std::size_t>(n))
                throw ConfigError("pinned vector length must match adjacency");
            cfg.explicit_topology = std::move(custom);
            cfg.topology_kind.reset();
            cfg.n_followers = n;
        } else {
            if (topo.contains("kind"))
                cfg.topology_kind = topology_kind_from_string(topo.at("kind").get<std::string>());
            cfg.n_followers = get_int(topo, "followers", cfg.n_followers);
        }
    }
    if (doc.contains("vehicle")) cfg.vehicle = parse_vehicle(doc.at("vehicle"));
    cfg.gamma = get_number(doc, "gamma", cfg.gamma);
    if (doc.contains("quantizer")) {
        const json& q = doc.at("quantizer");
        reject_unknown_keys(q, {"kind", "step"}, "quantizer");
        if (q.contains("kind"))
            cfg.quantizer.kind = quantizer_kind_from_string(q.at("kind").get<std::string>());
        cfg.quantizer.step = get_number(q, "step", cfg.quantizer.step);
    }
    if (doc.contains("head_profile")) cfg.head = parse_head(doc.at("head_profile"));
    cfg.spacing = get_number(doc, "spacing", cfg.spacing);
    cfg.duration = get_number(doc, "duration", cfg.duration);
    cfg.integrator_step = get_number(doc, "integrator_step", cfg.integrator_step);
    cfg.comm_period = get_number(doc, "comm_period", cfg.comm_period);
    cfg.record_stride = get_int(doc, "record_stride", cfg.record_stride);
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.replicas = get_int(doc, "replicas", cfg.replicas);
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("initial_perturbations")) {
        for (const auto& row : doc.at("initial_perturbations")) {
            if (row.size() != 3)
                throw ConfigError("each initial perturbation must have 3 entries [dp, dv, da]");
            cfg.initial_perturbations.emplace_back(row.at(0).get<double>(),
                                                   row.at(1).get<double>(),
                                                   row.at(2).get<double>());
        }
    }
    if (doc.contains("privacy")) {
        const json& p = doc.at("privacy");
        reject_unknown_keys(p, {"zeta", "pairs"}, "privacy");
        cfg.privacy_zeta = get_number(p, "zeta", cfg.privacy_zeta);
        cfg.privacy_pairs = get_int(p, "pairs", cfg.privacy_pairs);
    }
    cfg.attack_target = get_int(doc, "attack_target", cfg.attack_target);
    if (doc.contains("tradeoff")) {
        const json& t = doc.at("tradeoff");
        reject_unknown_keys(t, {"weights", "front_min", "front_max", "front_points"}, "tradeoff");
        if (t.contains("weights")) {
            cfg.tradeoff_weights.clear();
            for (const auto& pair : t.at("weights")) {
                if (pair.size() != 2) throw ConfigError("each weight entry must be [w1, w2]");
                cfg.tradeoff_weights.emplace_back(pair.at(0).get<double>(),
                                                  pair.at(1).get<double>());
            }
        }
        cfg.front_min = get_number(t, "front_min", cfg.front_min);
        cfg.front_max = get_number(t, "front_max", cfg.front_max);
        cfg.front_points = get_int(t, "front_points", cfg.front_points);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw ConfigError("config parse error in '" + path + "': " + err.what());
    }
    return parse_config(doc);
}

json to_json(const ScenarioConfig& cfg) {
    json doc;
    if (cfg.explicit_topology) {
        json rows = json::array();
        const auto& topo = *cfg.explicit_topology;
        for (int i = 0; i < topo.n_followers; ++i) {
            json row = json::array();
            for (int j = 0; j < topo.n_followers; ++j)
                row.push_back(static_cast<int>(topo.adjacency(i, j)));
            rows.push_back(row);
        }
        doc["topology"] = {{"adjacency", rows}, {"pinned", topo.pinned}};
    } else {
        doc["topology"] = {{"kind", to_string(*cfg.topology_kind)},
                           {"followers", cfg.n_followers}};
    }
    doc["vehicle"] = {{"mass", cfg.vehicle.mass},
                      {"inertial_delay", cfg.vehicle.inertial_delay},
                      {"air_density", cfg.vehicle.air_density},
                      {"cross_section", cfg.vehicle.cross_section},
                      {"drag_coeff", cfg.vehicle.drag_coeff},
                      {"mech_drag", cfg.vehicle.mech_drag}};
    doc["gamma"] = cfg.gamma;
    doc["quantizer"] = {{"kind", to_string(cfg.quantizer.kind)}, {"step", cfg.quantizer.step}};
    json phases = json::array();
    for (const auto& phase : cfg.head.phases)
        phases.push_back({{"until", phase.until}, {"accel", phase.accel}});
    doc["head_profile"] = {{"initial_position", cfg.head.initial_position},
                           {"initial_velocity", cfg.head.initial_velocity},
                           {"phases", phases}};
    doc["spacing"] = cfg.spacing;
    doc["duration"] = cfg.duration;
    doc["integrator_step"] = cfg.integrator_step;
    doc["comm_period"] = cfg.comm_period;
    doc["record_stride"] = cfg.record_stride;
    doc["seed"] = cfg.seed;
    doc["replicas"] = cfg.replicas;
    doc["output_dir"] = cfg.output_dir;
    json perturbations = json::array();
    for (const auto& p : cfg.initial_perturbations)
        perturbations.push_back({p(0), p(1), p(2)});
    doc["initial_perturbations"] = perturbations;
    doc["privacy"] = {{"zeta", cfg.privacy_zeta}, {"pairs", cfg.privacy_pairs}};
    doc["attack_target"] = cfg.attack_target;
    json weights = json::array();
    for (const auto& [w1, w2] : cfg.tradeoff_weights) weights.push_back({w1, w2});
    doc["tradeoff"] = {{"weights", weights},
                       {"front_min", cfg.front_min},
                       {"front_max", cfg.front_max},
                       {"front_points", cfg.front_points}};
    return doc;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    // The hash identifies the scenario; where its outputs land is not part of
    // that identity, so runs into different directories stay byte-identical.
    nlohmann::json doc = to_json(cfg);
    doc.erase("output_dir");
    const std::string canonical = doc.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace platoon
