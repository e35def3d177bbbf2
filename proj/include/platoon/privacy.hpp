#pragma once

#include <Eigen/Dense>
#include <vector>

#include "platoon/quantizer.hpp"
#include "platoon/sim.hpp"

namespace platoon {

// Half-open set of inputs [lower, upper) that the deterministic quantizer
// maps onto one observed level.
struct PreimageInterval {
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] bool contains(double z) const { return lower <= z && z < upper; }
};

// Pair of stacked state sequences whose closeness is measured in l1 norm.
struct AdjacencyPair {
    Eigen::VectorXd chi;
    Eigen::VectorXd chi_prime;
    double zeta = 0.0;  // adjacency budget, 0 < zeta < step for DP claims

    [[nodiscard]] double l1_distance() const { return (chi - chi_prime).lpNorm<1>(); }
};

struct DpReport {
    struct PairResult {
        std::vector<double> element_tv;  // exact TV distance per coordinate
        double max_tv = 0.0;             // worst coordinate
        bool pass = false;
    };
    double step = 0.0;           // Delta
    double claimed_bound = 0.0;  // zeta / Delta (for the largest zeta checked)
    std::vector<PairResult> pairs;
    double overall_max_tv = 0.0;
    bool pass = false;
};

// Eavesdropper estimate of one follower's state, driven by the quantized
// stream with injection gain C = A + I.
struct AttackResult {
    ObserverTrace observer;
    double terminal_error = 0.0;      // max ||xhat - x|| over the trailing window
    double time_averaged_error = 0.0; // mean ||xhat - x|| after the settle time
};

/// Inputs that the deterministic quantizer maps to the observed level:
/// [observed - step/2, observed + step/2). `observed` must lie on the grid.
/// The interval is uncountable, so the observation never identifies the state.
PreimageInterval preimage_interval(double observed, double step);

/// Exact total-variation distance between the probabilistic quantizer's
/// output laws at z and z_prime (half the l1 distance over the union support).
double tv_distance(double z, double z_prime, double step);

/// Checks every pair elementwise against the zeta/step total-variation bound;
/// exact computation from the closed-form output laws, no sampling.
DpReport verify_dp(const std::vector<AdjacencyPair>& pairs, double step);

/// Runs the estimator attack against follower `target` inside the given
/// scenario. The settle time excludes the observer's cold-start transient
/// from the error summaries.
AttackResult run_attack(const SimConfig& cfg, int target, double settle_time = 20.0);

/// Randomized zeta-adjacent pairs of dimension `dim`, alternating between
/// same-cell and cell-straddling perturbation geometries, with the adjacency
/// budget sometimes split across several coordinates.
std::vector<AdjacencyPair> random_adjacent_pairs(int count, int dim, double step, double zeta,
                                                 RngStream rng);

/// A pair whose worst elementwise total-variation distance equals zeta/step
/// exactly: one coordinate moved by the full budget inside a single cell.
AdjacencyPair tightness_witness_pair(int dim, double step, double zeta);

}  // namespace platoon
