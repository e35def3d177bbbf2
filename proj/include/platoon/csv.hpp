#pragma once

#include <string>
#include <utility>
#include <vector>

#include "platoon/analysis.hpp"
#include "platoon/privacy.hpp"
#include "platoon/sim.hpp"
#include "platoon/tradeoff.hpp"

namespace platoon {

// Metadata embedded as a leading comment line in every CSV, e.g.
// "# config_hash=00a1... seed=42".
std::string csv_metadata(std::uint64_t config_hash, std::uint64_t seed);

/// Columns: t, then p,v,a,u,spacing per follower, then collective ||eps||.
void write_trace_csv(const std::string& path, const SimTrace& trace,
                     const std::string& metadata);

/// Columns: t, norm_mean_eps, halfwidth_mean_eps, mean_eps_sq, halfwidth_eps_sq.
void write_stats_csv(const std::string& path, const EnsembleStats& stats,
                     const std::string& metadata);

/// Columns: pair, max_tv, bound, pass.
void write_dp_csv(const std::string& path, const DpReport& report,
                  const std::string& metadata);

/// Columns: t, true p,v,a, estimated p,v,a, error norm.
void write_attack_csv(const std::string& path, const ObserverTrace& observer,
                      const std::string& metadata);

/// Columns: f2, f1, plus one marker row per optimized weight pair.
void write_pareto_csv(const std::string& path,
                      const std::vector<std::pair<double, double>>& front,
                      const std::vector<std::pair<TradeoffWeights, TradeoffPoint>>& optima,
                      const std::string& metadata);

/// Columns: delta, steady_rms, bound.
void write_sweep_csv(const std::string& path, const SweepTable& table,
                     const std::string& metadata);

}  // namespace platoon
