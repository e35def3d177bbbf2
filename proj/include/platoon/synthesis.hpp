#pragma once

#include <Eigen/Dense>

#include "platoon/numerics.hpp"
#include "platoon/topology.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

// Output of the distributed-gain design. The closed-loop matrices couple all
// followers: a_eps = I_N (x) A - (L+S) (x) B*K and b_eps = (L+S) (x) B*K.
struct GainSet {
    Eigen::Matrix3d p;              // Riccati solution, symmetric positive definite
    Eigen::RowVector3d k;           // K = B' P
    double gamma = 1.0;
    double lambda_min = 0.0;        // lambda_1(L+S)
    double lambda_max = 0.0;        // lambda_N(L+S)
    numerics::Matrix laplacian_pinning;  // L + S
    numerics::Spectrum topology_spectrum;
    numerics::Matrix a_eps;         // 3N x 3N
    numerics::Matrix b_eps;         // 3N x 3N
    numerics::Spectrum a_eps_spectrum;  // computed blockwise via similarity
    double riccati_residual = 0.0;  // max eigenvalue of PA + A'P - 2 lambda_1 PBB'P + gamma I

    [[nodiscard]] int n_followers() const {
        return static_cast<int>(laplacian_pinning.rows());
    }
};

/// Designs the distributed gain for the given platoon model and topology:
/// P solves A'P + PA - 2*lambda_1 PBB'P + gamma I = 0, K = B'P, and the
/// closed-loop matrices are assembled and verified Hurwitz.
GainSet synthesize(const LinearModel& model, const CommTopology& topo, double gamma);

/// Ultimate bound on ||eps(t)|| under deterministic quantization with step
/// delta: sqrt(cond(P)) * 2 sqrt(3N) * lambda_N * ||P B B' P||_2 * delta / gamma.
double uub_bound(const GainSet& gains, const LinearModel& model, double delta);

}  // namespace platoon
