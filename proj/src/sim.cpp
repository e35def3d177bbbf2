#include "platoon/sim.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "platoon/errors.hpp"
#include "platoon/rng.hpp"

namespace platoon {

namespace {

// One RK4 step of xdot = A x + B u with u held constant.
Eigen::Vector3d rk4_step(const Eigen::Matrix3d& a, const Eigen::Vector3d& b,
                         const Eigen::Vector3d& x, double u, double h) {
    const Eigen::Vector3d bu = b * u;
    const Eigen::Vector3d k1 = a * x + bu;
    const Eigen::Vector3d k2 = a * (x + 0.5 * h * k1) + bu;
    const Eigen::Vector3d k3 = a * (x + 0.5 * h * k2) + bu;
    const Eigen::Vector3d k4 = a * (x + h * k3) + bu;
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Control law evaluated on the dense transmitted set (head + all followers).
double control_from_quantized(int i, const std::vector<Eigen::Vector3d>& quantized,
                              const GainSet& gains, const CommTopology& topo,
                              const FormationSpec& formation) {
    const Eigen::Vector3d own = quantized[static_cast<std::size_t>(i)] + formation.offset(i);
    Eigen::Vector3d consensus = Eigen::Vector3d::Zero();
    for (int j = 1; j <= topo.n_followers; ++j) {
        if (topo.receives_from(i - 1, j - 1))
            consensus += quantized[static_cast<std::size_t>(j)] + formation.offset(j) - own;
    }
    if (topo.leader_pinned(i - 1)) consensus += quantized[0] - own;
    return gains.k.dot(consensus);
}

struct ObserverSetup {
    int target = 0;  // 1-based follower
    Eigen::Matrix3d injection_gain;
};

std::pair<SimTrace, ObserverTrace> simulate(const SimConfig& cfg, int replica,
                                            const std::optional<ObserverSetup>& observer) {
    cfg.validate();
    const int n = cfg.topology.n_followers;
    if (cfg.gains.n_followers() != n)
        throw ConfigError("gains were synthesized for a different follower count");

    const int n_comm = cfg.comm_steps();
    const int n_sub = cfg.steps_per_comm();
    const double h = cfg.integrator_step;

    RngStream replica_stream = RngStream(cfg.seed).substream(static_cast<std::uint64_t>(replica));

    std::vector<Eigen::Vector3d> x(static_cast<std::size_t>(n));
    const Eigen::Vector3d head0 = cfg.head.at(0.0).vec();
    for (int i = 1; i <= n; ++i) {
        x[static_cast<std::size_t>(i - 1)] = head0 - cfg.formation.offset(i);
        if (!cfg.initial_perturbations.empty())
            x[static_cast<std::size_t>(i - 1)] +=
                cfg.initial_perturbations[static_cast<std::size_t>(i - 1)];
    }

    SimTrace trace;
    trace.n_followers = n;
    ObserverTrace obs_trace;
    Eigen::Vector3d xhat = Eigen::Vector3d::Zero();
    if (observer) obs_trace.target = observer->target;

    std::vector<Eigen::Vector3d> quantized(static_cast<std::size_t>(n + 1));
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);

    for (int k = 0; k <= n_comm; ++k) {
        const double t = k * cfg.comm_period;
        const Eigen::Vector3d head = cfg.head.at(t).vec();

        for (int i = 1; i <= n; ++i) {
            if (!x[static_cast<std::size_t>(i - 1)].allFinite())
                throw DivergenceError("state of vehicle " + std::to_string(i) +
                                      " diverged at t = " + std::to_string(t));
        }

        // Every vehicle broadcasts one freshly quantized state per instant.
        for (int v = 0; v <= n; ++v) {
            RngStream stream = replica_stream.substream(
                kRngDomainTransmit, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(k));
            const Eigen::Vector3d state = v == 0 ? head : x[static_cast<std::size_t>(v - 1)];
            quantized[static_cast<std::size_t>(v)] =
                quantize_vector(state, cfg.quantizer, stream);
        }
        for (int i = 1; i <= n; ++i)
            u[static_cast<std::size_t>(i - 1)] =
                control_from_quantized(i, quantized, cfg.gains, cfg.topology, cfg.formation);

        Eigen::Vector3d innovation = Eigen::Vector3d::Zero();
        if (observer) {
            RngStream stream = replica_stream.substream(
                kRngDomainAttack, static_cast<std::uint64_t>(observer->target),
                static_cast<std::uint64_t>(k));
            const Eigen::Vector3d qhat = quantize_vector(xhat, cfg.quantizer, stream);
            innovation = quantized[static_cast<std::size_t>(observer->target)] - qhat;
        }

        if (k % cfg.record_stride == 0 || k == n_comm) {
            trace.times.push_back(t);
            std::vector<Eigen::Vector3d> states(static_cast<std::size_t>(n + 1));
            states[0] = head;
            std::vector<Eigen::Vector3d> errors(static_cast<std::size_t>(n));
            std::vector<double> spacing(static_cast<std::size_t>(n));
            double eps_sq = 0.0;
            for (int i = 1; i <= n; ++i) {
                states[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)];
                const Eigen::Vector3d eps = tracking_error(
                    x[static_cast<std::size_t>(i - 1)], cfg.formation.offset(i), head);
                errors[static_cast<std::size_t>(i - 1)] = eps;
                spacing[static_cast<std::size_t>(i - 1)] = eps(0);
                eps_sq += eps.squaredNorm();
            }
            trace.states.push_back(std::move(states));
            trace.tracking_errors.push_back(std::move(errors));
            trace.spacing_errors.push_back(std::move(spacing));
            trace.inputs.push_back(u);
            Eigen::VectorXd tx(3 * (n + 1));
            for (int v = 0; v <= n; ++v) tx.segment<3>(3 * v) = quantized[static_cast<std::size_t>(v)];
            trace.transmitted.push_back(std::move(tx));
            trace.eps_norm.push_back(std::sqrt(eps_sq));

            if (observer) {
                obs_trace.times.push_back(t);
                obs_trace.estimate.push_back(xhat);
                obs_trace.truth.push_back(x[static_cast<std::size_t>(observer->target - 1)]);
                obs_trace.error_norm.push_back(
                    (xhat - x[static_cast<std::size_t>(observer->target - 1)]).norm());
            }
        }

        if (k == n_comm) break;

        for (int m = 0; m < n_sub; ++m) {
            for (int i = 1; i <= n; ++i) {
                auto& xi = x[static_cast<std::size_t>(i - 1)];
                xi = rk4_step(cfg.model.a, cfg.model.b, xi, u[static_cast<std::size_t>(i - 1)], h);
            }
            if (observer) {
                const double u_target = u[static_cast<std::size_t>(observer->target - 1)];
                const Eigen::Vector3d drive =
                    cfg.model.b * u_target + observer->injection_gain * innovation;
                const Eigen::Vector3d k1 = cfg.model.a * xhat + drive;
                const Eigen::Vector3d k2 = cfg.model.a * (xhat + 0.5 * h * k1) + drive;
                const Eigen::Vector3d k3 = cfg.model.a * (xhat + 0.5 * h * k2) + drive;
                const Eigen::Vector3d k4 = cfg.model.a * (xhat + h * k3) + drive;
                xhat += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
    }
    return {std::move(trace), std::move(obs_trace)};
}

}  // namespace

void SimConfig::validate() const {
    quantizer.validate();
    formation.validate();
    if (!(duration > 0.0)) throw ConfigError("duration must be positive");
    if (!(integrator_step > 0.0)) throw ConfigError("integrator step must be positive");
    if (!(comm_period >= integrator_step))
        throw ConfigError("communication period must be at least the integrator step");
    const double ratio = comm_period / integrator_step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ConfigError("communication period must be an integer multiple of the "
                          "integrator step");
    if (record_stride < 1) throw ConfigError("record stride must be >= 1");
    if (!initial_perturbations.empty() &&
        initial_perturbations.size() != static_cast<std::size_t>(topology.n_followers))
        throw ConfigError("initial perturbations must list one entry per follower");
}

int SimConfig::steps_per_comm() const {
    return static_cast<int>(std::llround(comm_period / integrator_step));
}

int SimConfig::comm_steps() const {
    return static_cast<int>(std::ceil(duration / comm_period - 1e-9));
}

Eigen::VectorXd SimTrace::stacked_error(std::size_t idx) const {
    const auto& errs = tracking_errors.at(idx);
    Eigen::VectorXd out(3 * static_cast<Eigen::Index>(errs.size()));
    for (std::size_t i = 0; i < errs.size(); ++i)
        out.segment<3>(3 * static_cast<Eigen::Index>(i)) = errs[i];
    return out;
}

std::size_t SimTrace::index_at_time(double t) const {
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double gap = std::abs(times[i] - t);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    return best;
}

double control_input(int i, const std::vector<std::optional<Eigen::Vector3d>>& follower_q,
                     const std::optional<Eigen::Vector3d>& leader_q,
                     const Eigen::Vector3d& own_q, const GainSet& gains,
                     const CommTopology& topo, const FormationSpec& formation) {
    const int n = topo.n_followers;
    if (i < 1 || i > n) throw ProtocolError("follower index out of range");
    if (follower_q.size() != static_cast<std::size_t>(n))
        throw ProtocolError("received-state list must have one slot per follower");

    const Eigen::Vector3d own = own_q + formation.offset(i);
    Eigen::Vector3d consensus = Eigen::Vector3d::Zero();
    for (int j = 1; j <= n; ++j) {
        const bool neighbor = topo.receives_from(i - 1, j - 1);
        const auto& received = follower_q[static_cast<std::size_t>(j - 1)];
        if (neighbor && !received)
            throw ProtocolError("missing state from neighbor " + std::to_string(j) +
                                " for follower " + std::to_string(i));
        if (!neighbor && received && j != i)
            throw ProtocolError("unexpected state from non-neighbor " + std::to_string(j) +
                                " for follower " + std::to_string(i));
        if (neighbor) consensus += *received + formation.offset(j) - own;
    }
    const bool pinned = topo.leader_pinned(i - 1);
    if (pinned && !leader_q)
        throw ProtocolError("missing head-vehicle state for pinned follower " + std::to_string(i));
    if (!pinned && leader_q)
        throw ProtocolError("unexpected head-vehicle state for unpinned follower " +
                            std::to_string(i));
    if (pinned) consensus += *leader_q - own;
    return gains.k.dot(consensus);
}

SimTrace run(const SimConfig& cfg) {
    return simulate(cfg, /*replica=*/0, std::nullopt).first;
}

std::vector<SimTrace> run_ensemble(const SimConfig& cfg, int replicas) {
    if (replicas < 1) throw ConfigError("replica count must be >= 1");
    std::vector<SimTrace> traces;
    traces.reserve(static_cast<std::size_t>(replicas));
    for (int r = 0; r < replicas; ++r)
        traces.push_back(simulate(cfg, r, std::nullopt).first);
    return traces;
}

std::pair<SimTrace, ObserverTrace> run_with_observer(const SimConfig& cfg, int target,
                                                     const Eigen::Matrix3d& injection_gain) {
    if (target < 1 || target > cfg.topology.n_followers)
        throw ConfigError("observer target must be a follower index in 1..N");
    return simulate(cfg, /*replica=*/0, ObserverSetup{target, injection_gain});
}

}  // namespace platoon
