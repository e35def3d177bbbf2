#include "platoon/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

constexpr double kNormal95 = 1.959963984540054;

}  // namespace

VarianceBound compute_variance_bound(const GainSet& gains, double delta) {
    if (delta < 0.0) throw InputError("quantization step must be nonnegative");
    if (gains.a_eps_spectrum.max_real() >= 0.0)
        throw InputError("variance bound requires a Hurwitz closed loop");

    VarianceBound bound;
    bound.gramian = numerics::solve_lyapunov(
        gains.a_eps, numerics::Matrix(gains.b_eps * gains.b_eps.transpose()));
    bound.trace_gramian = bound.gramian.trace();
    const double n = gains.n_followers();
    bound.value = delta * delta / 4.0 * (n + 1.0) * bound.trace_gramian;
    return bound;
}

EnsembleStats ensemble_stats(const std::vector<SimTrace>& traces) {
    if (traces.empty()) throw InputError("ensemble statistics need at least one trace");
    const std::size_t n_times = traces.front().times.size();
    const int n = traces.front().n_followers;
    for (const SimTrace& trace : traces) {
        if (trace.times != traces.front().times || trace.n_followers != n)
            throw InputError("ensemble traces must share one time grid");
    }

    const double r = static_cast<double>(traces.size());
    EnsembleStats stats;
    stats.replicas = static_cast<int>(traces.size());
    stats.times = traces.front().times;
    stats.mean_error.reserve(n_times);
    stats.mean_error_norm.reserve(n_times);
    stats.mean_error_halfwidth.reserve(n_times);
    stats.mean_sq_error.reserve(n_times);
    stats.mean_sq_error_halfwidth.reserve(n_times);

    for (std::size_t t = 0; t < n_times; ++t) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(3 * n);
        Eigen::VectorXd sq = Eigen::VectorXd::Zero(3 * n);
        double mean_ss = 0.0;
        double sq_ss = 0.0;
        for (const SimTrace& trace : traces) {
            const Eigen::VectorXd eps = trace.stacked_error(t);
            mean += eps;
            sq += eps.cwiseProduct(eps);
            const double ss = eps.squaredNorm();
            mean_ss += ss;
            sq_ss += ss * ss;
        }
        mean /= r;
        mean_ss /= r;

        Eigen::VectorXd hw = Eigen::VectorXd::Zero(3 * n);
        double hw_ss = 0.0;
        if (traces.size() > 1) {
            const Eigen::VectorXd var =
                (sq - r * mean.cwiseProduct(mean)).cwiseMax(0.0) / (r - 1.0);
            hw = kNormal95 * (var / r).cwiseSqrt();
            const double var_ss = std::max(0.0, (sq_ss - r * mean_ss * mean_ss) / (r - 1.0));
            hw_ss = kNormal95 * std::sqrt(var_ss / r);
        }
        stats.mean_error.push_back(mean);
        stats.mean_error_norm.push_back(mean.norm());
        stats.mean_error_halfwidth.push_back(hw.norm());
        stats.mean_sq_error.push_back(mean_ss);
        stats.mean_sq_error_halfwidth.push_back(hw_ss);
    }
    return stats;
}

double steady_window_mean_sq(const SimTrace& trace) {
    if (trace.times.empty()) throw InputError("empty trace");
    const double t_from = trace.times.back() * (1.0 - kSteadyWindowFraction);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.times[i] >= t_from) {
            acc += trace.eps_norm[i] * trace.eps_norm[i];
            ++count;
        }
    }
    return acc / static_cast<double>(count);
}

double steady_window_mean_sq(const EnsembleStats& stats) {
    if (stats.times.empty()) throw InputError("empty ensemble statistics");
    const double t_from = stats.times.back() * (1.0 - kSteadyWindowFraction);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (stats.times[i] >= t_from) {
            acc += stats.mean_sq_error[i];
            ++count;
        }
    }
    return acc / static_cast<double>(count);
}

double max_error_norm_from(const SimTrace& trace, double t_from) {
    double mx = 0.0;
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        if (trace.times[i] >= t_from) mx = std::max(mx, trace.eps_norm[i]);
    return mx;
}

SweepTable delta_sweep(const SimConfig& base, const std::vector<double>& deltas,
                       int replicas) {
    if (deltas.empty()) throw InputError("delta sweep needs at least one step value");
    for (double d : deltas)
        if (!(d > 0.0)) throw InputError("delta sweep steps must be positive");
    if (base.quantizer.kind == QuantizerKind::None)
        throw InputError("delta sweep requires a quantizing configuration");

    SweepTable table;
    table.kind = base.quantizer.kind;
    const bool probabilistic = base.quantizer.kind == QuantizerKind::Probabilistic;

    for (double delta : deltas) {
        SimConfig cfg = base;
        cfg.quantizer.step = delta;
        SweepRow row;
        row.delta = delta;
        if (probabilistic) {
            const auto traces = run_ensemble(cfg, replicas);
            double acc = 0.0;
            for (const SimTrace& trace : traces) acc += steady_window_mean_sq(trace);
            row.steady_rms = std::sqrt(acc / static_cast<double>(traces.size()));
            row.bound = compute_variance_bound(cfg.gains, delta).value;
        } else {
            row.steady_rms = std::sqrt(steady_window_mean_sq(run(cfg)));
            row.bound = uub_bound(cfg.gains, cfg.model, delta);
        }
        table.rows.push_back(row);
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const SweepRow& x, const SweepRow& y) { return x.delta < y.delta; });
    table.monotonicity_checked = table.rows.size() >= 2;
    table.monotone_nondecreasing = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        if (table.rows[i].steady_rms < table.rows[i - 1].steady_rms)
            table.monotone_nondecreasing = false;
    return table;
}

}  // namespace platoon
