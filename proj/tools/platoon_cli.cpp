// Command-line front end: scenario configuration, gain synthesis, closed-loop
// simulation, Monte Carlo ensembles, privacy checks, the estimator attack,
// and the control-privacy trade-off. Outputs are CSV files plus a short
// summary on stdout.
//
// Exit codes: 0 success, 1 runtime or numerical error, 2 configuration error,
// 3 a checked bound was violated.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "platoon/analysis.hpp"
#include "platoon/config.hpp"
#include "platoon/csv.hpp"
#include "platoon/errors.hpp"
#include "platoon/privacy.hpp"
#include "platoon/sim.hpp"
#include "platoon/tradeoff.hpp"

namespace {

using namespace platoon;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBoundViolated = 3;

struct CliOptions {
    std::string config_path;
    std::string out_dir;  // overrides the config's output_dir when set
    std::optional<std::uint64_t> seed;
    std::optional<int> replicas;
    std::vector<double> deltas;
    std::string topology;
    std::string quantizer;
    double w1 = 0.0;
    double w2 = 0.0;
};

ScenarioConfig resolve_config(const CliOptions& opts) {
    ScenarioConfig cfg =
        opts.config_path.empty() ? ScenarioConfig{} : load_config_file(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.replicas) cfg.replicas = *opts.replicas;
    if (!opts.topology.empty()) {
        cfg.topology_kind = topology_kind_from_string(opts.topology);
        cfg.explicit_topology.reset();
    }
    if (!opts.quantizer.empty())
        cfg.quantizer.kind = quantizer_kind_from_string(opts.quantizer);
    if (opts.deltas.size() == 1) cfg.quantizer.step = opts.deltas.front();
    if (opts.w1 > 0.0 && opts.w2 > 0.0) cfg.tradeoff_weights = {{opts.w1, opts.w2}};
    if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
    cfg.validate();
    return cfg;
}

std::string output_path(const ScenarioConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::string scenario_tag(const ScenarioConfig& cfg) {
    const std::string topo =
        cfg.explicit_topology ? "custom" : to_string(*cfg.topology_kind);
    return topo + "_" + to_string(cfg.quantizer.kind);
}

void echo_seed(const ScenarioConfig& cfg) { std::cout << "seed: " << cfg.seed << "\n"; }

int cmd_synthesize(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    const LinearModel model = LinearModel::from_params(cfg.vehicle);
    const CommTopology topo = cfg.make_topology();
    GainSet gains;
    try {
        gains = synthesize(model, topo, cfg.gamma);
    } catch (const SynthesisError& err) {
        std::cerr << "synthesis failed: " << err.what() << "\n";
        return kExitRuntime;
    }

    nlohmann::json artifact;
    for (int i = 0; i < 3; ++i) {
        artifact["P"].push_back({gains.p(i, 0), gains.p(i, 1), gains.p(i, 2)});
    }
    artifact["K"] = {gains.k(0), gains.k(1), gains.k(2)};
    artifact["gamma"] = gains.gamma;
    artifact["lambda_min"] = gains.lambda_min;
    artifact["lambda_max"] = gains.lambda_max;
    artifact["design_residual_max_eig"] = gains.riccati_residual;
    nlohmann::json spectrum = nlohmann::json::array();
    for (const auto& z : gains.a_eps_spectrum.eigenvalues)
        spectrum.push_back({z.real(), z.imag()});
    artifact["closed_loop_spectrum"] = spectrum;

    const std::string path = output_path(cfg, "gains_" + scenario_tag(cfg) + ".json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << artifact.dump(2) << "\n";

    std::printf("topology %s, N=%d: lambda_1=%.6g lambda_N=%.6g\n",
                scenario_tag(cfg).c_str(), topo.n_followers, gains.lambda_min,
                gains.lambda_max);
    std::printf("design residual (max eigenvalue): %.3e\n", gains.riccati_residual);
    std::printf("closed-loop max Re(eig): %.6g\n", gains.a_eps_spectrum.max_real());
    std::printf("K = [%.9g, %.9g, %.9g]\n", gains.k(0), gains.k(1), gains.k(2));
    std::cout << "gains written to " << path << "\n";
    return kExitOk;
}

int cmd_simulate(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    const SimConfig sim_cfg = cfg.make_sim_config();
    const SimTrace trace = run(sim_cfg);
    const std::string path = output_path(cfg, "trace_" + scenario_tag(cfg) + ".csv");
    write_trace_csv(path, trace, csv_metadata(config_hash(cfg), cfg.seed));
    std::printf("simulated %.6g s, final ||eps|| = %.6g\n", trace.times.back(),
                trace.eps_norm.back());
    if (cfg.quantizer.kind == QuantizerKind::Deterministic) {
        std::printf("ultimate bound (deterministic, delta=%.6g): %.6g\n", cfg.quantizer.step,
                    uub_bound(sim_cfg.gains, sim_cfg.model, cfg.quantizer.step));
    }
    std::cout << "trace written to " << path << "\n";
    return kExitOk;
}

int cmd_ensemble(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    const SimConfig sim_cfg = cfg.make_sim_config();
    const auto traces = run_ensemble(sim_cfg, cfg.replicas);
    const EnsembleStats stats = ensemble_stats(traces);
    const std::string path = output_path(cfg, "ensemble_" + scenario_tag(cfg) + ".csv");
    write_stats_csv(path, stats, csv_metadata(config_hash(cfg), cfg.seed));
    std::cout << "stats written to " << path << " (" << cfg.replicas << " replicas)\n";

    int code = kExitOk;
    if (cfg.quantizer.kind == QuantizerKind::Deterministic) {
        const double bound = uub_bound(sim_cfg.gains, sim_cfg.model, cfg.quantizer.step);
        const double t_from = 0.5 * sim_cfg.duration;
        double worst = 0.0;
        for (const SimTrace& trace : traces)
            worst = std::max(worst, max_error_norm_from(trace, t_from));
        const bool pass = worst <= bound;
        std::printf("UUB check: sup_{t>=%.3g} ||eps|| = %.6g %s bound %.6g -> %s\n", t_from,
                    worst, pass ? "<=" : ">", bound, pass ? "pass" : "FAIL");
        if (!pass) code = kExitBoundViolated;
    } else if (cfg.quantizer.kind == QuantizerKind::Probabilistic) {
        const VarianceBound bound = compute_variance_bound(sim_cfg.gains, cfg.quantizer.step);
        const double window_mean = steady_window_mean_sq(stats);
        const bool pass = window_mean <= bound.value;
        std::printf("variance check: steady E[eps'eps] = %.6g %s bound %.6g -> %s\n",
                    window_mean, pass ? "<=" : ">", bound.value, pass ? "pass" : "FAIL");
        if (!pass) code = kExitBoundViolated;
    }
    return code;
}

int cmd_privacy(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    if (cfg.quantizer.kind != QuantizerKind::Probabilistic)
        std::cout << "note: differential privacy applies to the probabilistic quantizer; "
                     "checking its output laws at the configured step\n";
    const double step = cfg.quantizer.step;
    const int dim = 3 * (cfg.make_topology().n_followers + 1);

    auto pairs = random_adjacent_pairs(cfg.privacy_pairs, dim, step, cfg.privacy_zeta,
                                       RngStream(cfg.seed));
    pairs.push_back(tightness_witness_pair(dim, step, cfg.privacy_zeta));
    const DpReport report = verify_dp(pairs, step);
    const std::string path = output_path(cfg, "dp_report.csv");
    write_dp_csv(path, report, csv_metadata(config_hash(cfg), cfg.seed));

    std::printf("checked %zu adjacent pairs: max TV distance %.12g, bound %.12g -> %s\n",
                report.pairs.size(), report.overall_max_tv, report.claimed_bound,
                report.pass ? "pass" : "FAIL");
    const double mid = step / 2.0;
    const double z_low = mid - cfg.privacy_zeta / 2.0;
    const double z_high = mid + cfg.privacy_zeta / 2.0;
    std::printf("deterministic counterexample: Q_d(%.6g) = %.6g vs Q_d(%.6g) = %.6g "
                "(adjacent inputs, TV distance 1)\n",
                z_low, quantize_det(z_low, step), z_high, quantize_det(z_high, step));
    std::cout << "report written to " << path << "\n";
    if (!report.pass) {
        std::printf("violated: TV %.12g > zeta/Delta = %.12g\n", report.overall_max_tv,
                    report.claimed_bound);
        return kExitBoundViolated;
    }
    return kExitOk;
}

int cmd_attack(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    const SimConfig sim_cfg = cfg.make_sim_config();
    const AttackResult result = run_attack(sim_cfg, cfg.attack_target);
    const std::string path = output_path(cfg, "attack_" + scenario_tag(cfg) + ".csv");
    write_attack_csv(path, result.observer, csv_metadata(config_hash(cfg), cfg.seed));
    std::printf("eavesdropper estimate of follower %d: terminal error %.6g, "
                "time-averaged error %.6g\n",
                cfg.attack_target, result.terminal_error, result.time_averaged_error);
    std::cout << "attack trace written to " << path << "\n";
    return kExitOk;
}

int cmd_tradeoff(const CliOptions& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    echo_seed(cfg);
    std::vector<double> grid;
    for (int i = 0; i < cfg.front_points; ++i) {
        grid.push_back(cfg.front_min + (cfg.front_max - cfg.front_min) * i /
                                           (cfg.front_points - 1));
    }
    const auto front = pareto_front(grid);
    std::vector<std::pair<TradeoffWeights, TradeoffPoint>> optima;
    for (const auto& [w1, w2] : cfg.tradeoff_weights) {
        const TradeoffWeights weights{w1, w2};
        const TradeoffPoint point = optimal_step(weights);
        optima.emplace_back(weights, point);
        std::printf("w1=%.6g w2=%.6g -> delta*=%.9g f1=%.9g f2=%.9g\n", w1, w2, point.step,
                    point.control_cost, point.privacy_cost);
    }
    const std::string path = output_path(cfg, "pareto.csv");
    write_pareto_csv(path, front, optima, csv_metadata(config_hash(cfg), cfg.seed));
    std::cout << "Pareto front written to " << path << "\n";
    return kExitOk;
}

int cmd_sweep(const CliOptions& opts) {
    ScenarioConfig cfg = resolve_config(opts);
    if (cfg.quantizer.kind == QuantizerKind::None)
        cfg.quantizer.kind = QuantizerKind::Deterministic;
    echo_seed(cfg);
    std::vector<double> deltas = opts.deltas;
    if (deltas.empty()) deltas = {0.25, 0.5, 0.75, 1.0};
    const SimConfig sim_cfg = cfg.make_sim_config();
    const int replicas =
        cfg.quantizer.kind == QuantizerKind::Probabilistic ? std::min(cfg.replicas, 20) : 1;
    const SweepTable table = delta_sweep(sim_cfg, deltas, replicas);
    const std::string path = output_path(cfg, "sweep_" + scenario_tag(cfg) + ".csv");
    write_sweep_csv(path, table, csv_metadata(config_hash(cfg), cfg.seed));
    for (const SweepRow& row : table.rows)
        std::printf("delta=%.6g steady RMS=%.6g bound=%.6g\n", row.delta, row.steady_rms,
                    row.bound);
    if (table.monotonicity_checked)
        std::printf("steady RMS nondecreasing in delta: %s\n",
                    table.monotone_nondecreasing ? "yes" : "NO");
    std::cout << "sweep written to " << path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed platoon control under quantization: simulation and analysis"};
    app.require_subcommand(1);

    CliOptions opts;
    app.add_option("--config", opts.config_path, "Config file (JSON); defaults used if omitted")
        ->check(CLI::ExistingFile);
    app.add_option("--out", opts.out_dir, "Output directory (overrides config output_dir)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the config seed");
    int replicas_value = 0;
    auto* replicas_opt =
        app.add_option("--replicas", replicas_value, "Override the replica count");
    app.add_option("--delta", opts.deltas,
                   "Quantization step; repeat for sweep values")
        ->allow_extra_args(false);
    app.add_option("--topology", opts.topology, "Topology kind: BD, BDL, PF, PLF, TPF, TPLF");
    app.add_option("--quantizer", opts.quantizer,
                   "Quantizer kind: none, deterministic, probabilistic");
    app.add_option("--w1", opts.w1, "Trade-off weight on control cost");
    app.add_option("--w2", opts.w2, "Trade-off weight on privacy cost");
    app.fallthrough();

    app.add_subcommand("synthesize", "Design the distributed gain and write a gains artifact");
    app.add_subcommand("simulate", "Run one closed-loop scenario and write the trace CSV");
    app.add_subcommand("ensemble",
                       "Run Monte Carlo replicas, write stats, check the stability bounds");
    app.add_subcommand("privacy", "Verify differential privacy of the probabilistic quantizer");
    app.add_subcommand("attack", "Run the eavesdropper estimator against one follower");
    app.add_subcommand("tradeoff", "Pareto front and weighted-sum optimal quantization step");
    app.add_subcommand("sweep", "Steady-state error across quantization steps");

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) opts.seed = seed_value;
    if (replicas_opt->count() > 0) opts.replicas = replicas_value;

    try {
        if (app.got_subcommand("synthesize")) return cmd_synthesize(opts);
        if (app.got_subcommand("simulate")) return cmd_simulate(opts);
        if (app.got_subcommand("ensemble")) return cmd_ensemble(opts);
        if (app.got_subcommand("privacy")) return cmd_privacy(opts);
        if (app.got_subcommand("attack")) return cmd_attack(opts);
        if (app.got_subcommand("tradeoff")) return cmd_tradeoff(opts);
        if (app.got_subcommand("sweep")) return cmd_sweep(opts);
    } catch (const ConfigError& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
