#include "platoon/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

GainSet synthesize(const LinearModel& model, const CommTopology& topo, double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");

    GainSet gains;
    gains.gamma = gamma;
    std::tie(gains.laplacian_pinning, gains.topology_spectrum) = laplacian_plus_pinning(topo);
    gains.lambda_min = gains.topology_spectrum.min_real();
    gains.lambda_max = gains.topology_spectrum.max_real();

    const numerics::Matrix a = model.a;
    const numerics::Matrix b = model.b;
    const numerics::Matrix q = gamma * numerics::Matrix::Identity(3, 3);
    numerics::Matrix p;
    try {
        p = numerics::solve_care(a, b, q, 2.0 * gains.lambda_min);
    } catch (const NumericalError& err) {
        throw SynthesisError(std::string("gain design failed: ") + err.what());
    }
    gains.p = p;
    gains.k = model.b.transpose() * gains.p;

    // Design condition residual: PA + A'P - 2 lambda_1 PBB'P + gamma I <= 0,
    // met as an equality by the Riccati solution.
    const Eigen::Matrix3d condition = gains.p * model.a + model.a.transpose() * gains.p -
                                      2.0 * gains.lambda_min * gains.p * model.b *
                                          model.b.transpose() * gains.p +
                                      gamma * Eigen::Matrix3d::Identity();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> cond_eigs(condition);
    gains.riccati_residual = cond_eigs.eigenvalues().maxCoeff();

    const int n = topo.n_followers;
    const numerics::Matrix identity_n = numerics::Matrix::Identity(n, n);
    const numerics::Matrix bk = model.b * gains.k;
    gains.b_eps = numerics::kron(gains.laplacian_pinning, bk);
    gains.a_eps = numerics::kron(identity_n, numerics::Matrix(model.a)) - gains.b_eps;

    // Spectrum through the similarity with I (x) A - Lambda (x) BK: the union
    // of the 3x3 blocks A - lambda_i BK. This route stays well conditioned
    // even when L+S is defective (PF and friends are single Jordan blocks).
    std::vector<std::complex<double>> block_union;
    block_union.reserve(static_cast<std::size_t>(3 * n));
    for (const auto& lambda : gains.topology_spectrum.eigenvalues) {
        const Eigen::Matrix3d block = model.a - lambda.real() * bk;
        const numerics::Spectrum spec = numerics::eigenvalues(block, "A - lambda BK");
        block_union.insert(block_union.end(), spec.eigenvalues.begin(), spec.eigenvalues.end());
    }
    std::sort(block_union.begin(), block_union.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    gains.a_eps_spectrum.eigenvalues = std::move(block_union);
    gains.a_eps_spectrum.all_real =
        std::all_of(gains.a_eps_spectrum.eigenvalues.begin(),
                    gains.a_eps_spectrum.eigenvalues.end(),
                    [](const auto& z) { return std::abs(z.imag()) <= numerics::kImagTol; });

    if (gains.a_eps_spectrum.max_real() >= 0.0)
        throw NumericalError("closed-loop matrix is not Hurwitz; gain design is inconsistent");
    return gains;
}

double uub_bound(const GainSet& gains, const LinearModel& model, double delta) {
    if (delta < 0.0) throw InputError("quantization step must be nonnegative");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> p_eigs(gains.p);
    const double cond = p_eigs.eigenvalues().maxCoeff() / p_eigs.eigenvalues().minCoeff();
    const Eigen::Matrix3d pbbp =
        gains.p * model.b * model.b.transpose() * gains.p;
    const double n3 = 3.0 * gains.n_followers();
    return std::sqrt(cond) * 2.0 * std::sqrt(n3) * gains.lambda_max *
           numerics::spectral_norm_sym(pbbp) * delta / gains.gamma;
}

}  // namespace platoon
