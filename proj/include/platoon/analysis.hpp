#pragma once

#include <Eigen/Dense>
#include <vector>

#include "platoon/sim.hpp"
#include "platoon/synthesis.hpp"

namespace platoon {

// Monte Carlo aggregates over an ensemble of traces sharing one time grid.
// Half-widths are 95% normal-approximation confidence intervals and shrink
// as 1/sqrt(replicas).
struct EnsembleStats {
    int replicas = 0;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> mean_error;       // [t] stacked 3N mean of eps
    std::vector<double> mean_error_norm;           // [t] ||mean eps||
    std::vector<double> mean_error_halfwidth;      // [t] norm of componentwise half-widths
    std::vector<double> mean_sq_error;             // [t] mean of eps' eps
    std::vector<double> mean_sq_error_halfwidth;   // [t]
};

// Steady-state second-moment bound from the closed-loop Lyapunov equation
// a_eps W + W a_eps' + b_eps b_eps' = 0:
// lim E[eps' eps] <= delta^2/4 * (N+1) * trace(W).
struct VarianceBound {
    numerics::Matrix gramian;  // W
    double trace_gramian = 0.0;
    double value = 0.0;
};

struct SweepRow {
    double delta = 0.0;
    double steady_rms = 0.0;   // sqrt(window mean of eps' eps)
    double bound = 0.0;        // UUB (deterministic) or variance bound (probabilistic)
};

struct SweepTable {
    QuantizerKind kind = QuantizerKind::Deterministic;
    std::vector<SweepRow> rows;
    bool monotone_nondecreasing = false;
    bool monotonicity_checked = false;  // only meaningful with >= 2 deltas
};

// Fraction of the horizon treated as steady state (the trailing window).
inline constexpr double kSteadyWindowFraction = 0.25;

/// W and the steady-state second-moment bound for the given gains and step.
VarianceBound compute_variance_bound(const GainSet& gains, double delta);

/// Pointwise sample means and confidence half-widths over replicas.
EnsembleStats ensemble_stats(const std::vector<SimTrace>& traces);

/// Mean of eps' eps over the trailing steady-state window of a trace.
double steady_window_mean_sq(const SimTrace& trace);
double steady_window_mean_sq(const EnsembleStats& stats);

/// Largest ||eps(t)|| over t >= t_from.
double max_error_norm_from(const SimTrace& trace, double t_from);

/// Per-delta steady-state summary for the template scenario. Probabilistic
/// sweeps average the window RMS over `replicas` independent runs.
SweepTable delta_sweep(const SimConfig& base, const std::vector<double>& deltas,
                       int replicas = 1);

}  // namespace platoon
