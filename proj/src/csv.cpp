#include "platoon/csv.hpp"

#include <cstdio>
#include <fstream>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::ofstream open_csv(const std::string& path, const std::string& metadata) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << metadata << "\n";
    return out;
}

void write_cells(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ",";
        out << cells[i];
    }
    out << "\n";
}

}  // namespace

std::string csv_metadata(std::uint64_t config_hash, std::uint64_t seed) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "# config_hash=%016llx seed=%llu",
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed));
    return buf;
}

void write_trace_csv(const std::string& path, const SimTrace& trace,
                     const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    std::vector<std::string> header = {"t"};
    for (int i = 1; i <= trace.n_followers; ++i) {
        const std::string s = std::to_string(i);
        header.push_back("p" + s);
        header.push_back("v" + s);
        header.push_back("a" + s);
        header.push_back("u" + s);
        header.push_back("spacing" + s);
    }
    header.push_back("eps_norm");
    write_cells(out, header);

    for (std::size_t t = 0; t < trace.times.size(); ++t) {
        std::vector<std::string> row = {fmt(trace.times[t])};
        for (int i = 1; i <= trace.n_followers; ++i) {
            const Eigen::Vector3d& x = trace.states[t][static_cast<std::size_t>(i)];
            row.push_back(fmt(x(0)));
            row.push_back(fmt(x(1)));
            row.push_back(fmt(x(2)));
            row.push_back(fmt(trace.inputs[t][static_cast<std::size_t>(i - 1)]));
            row.push_back(fmt(trace.spacing_errors[t][static_cast<std::size_t>(i - 1)]));
        }
        row.push_back(fmt(trace.eps_norm[t]));
        write_cells(out, row);
    }
}

void write_stats_csv(const std::string& path, const EnsembleStats& stats,
                     const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    write_cells(out, {"t", "norm_mean_eps", "halfwidth_mean_eps", "mean_eps_sq",
                      "halfwidth_eps_sq"});
    for (std::size_t t = 0; t < stats.times.size(); ++t) {
        write_cells(out, {fmt(stats.times[t]), fmt(stats.mean_error_norm[t]),
                          fmt(stats.mean_error_halfwidth[t]), fmt(stats.mean_sq_error[t]),
                          fmt(stats.mean_sq_error_halfwidth[t])});
    }
}

void write_dp_csv(const std::string& path, const DpReport& report,
                  const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    write_cells(out, {"pair", "max_tv", "bound", "pass"});
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        write_cells(out, {std::to_string(i), fmt(report.pairs[i].max_tv),
                          fmt(report.claimed_bound), report.pairs[i].pass ? "1" : "0"});
    }
}

void write_attack_csv(const std::string& path, const ObserverTrace& observer,
                      const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    write_cells(out, {"t", "p_true", "v_true", "a_true", "p_est", "v_est", "a_est",
                      "err_norm"});
    for (std::size_t t = 0; t < observer.times.size(); ++t) {
        const Eigen::Vector3d& truth = observer.truth[t];
        const Eigen::Vector3d& est = observer.estimate[t];
        write_cells(out, {fmt(observer.times[t]), fmt(truth(0)), fmt(truth(1)), fmt(truth(2)),
                          fmt(est(0)), fmt(est(1)), fmt(est(2)), fmt(observer.error_norm[t])});
    }
}

void write_pareto_csv(const std::string& path,
                      const std::vector<std::pair<double, double>>& front,
                      const std::vector<std::pair<TradeoffWeights, TradeoffPoint>>& optima,
                      const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    write_cells(out, {"f2", "f1", "w1", "w2", "delta_star"});
    for (const auto& [f2, f1] : front)
        write_cells(out, {fmt(f2), fmt(f1), "", "", ""});
    for (const auto& [weights, point] : optima) {
        write_cells(out, {fmt(point.privacy_cost), fmt(point.control_cost),
                          fmt(weights.control), fmt(weights.privacy), fmt(point.step)});
    }
}

void write_sweep_csv(const std::string& path, const SweepTable& table,
                     const std::string& metadata) {
    std::ofstream out = open_csv(path, metadata);
    write_cells(out, {"delta", "steady_rms", "bound"});
    for (const SweepRow& row : table.rows)
        write_cells(out, {fmt(row.delta), fmt(row.steady_rms), fmt(row.bound)});
}

}  // namespace platoon
