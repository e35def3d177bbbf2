#include "platoon/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon::numerics {

namespace {

Spectrum make_spectrum(std::vector<std::complex<double>> vals) {
    std::sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    Spectrum s;
    s.all_real = std::all_of(vals.begin(), vals.end(),
                             [](const auto& z) { return std::abs(z.imag()) <= kImagTol; });
    s.eigenvalues = std::move(vals);
    return s;
}

bool strictly_lower_triangular_is_zero(const Matrix& m) {
    for (Eigen::Index i = 1; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (m(i, j) != 0.0) return false;
    return true;
}

bool strictly_upper_triangular_is_zero(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != 0.0) return false;
    return true;
}

}  // namespace

double Spectrum::min_real() const {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues) mn = std::min(mn, z.real());
    return mn;
}

double Spectrum::max_real() const {
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues) mx = std::max(mx, z.real());
    return mx;
}

std::vector<double> Spectrum::real_parts() const {
    std::vector<double> out;
    out.reserve(eigenvalues.size());
    for (const auto& z : eigenvalues) out.push_back(z.real());
    return out;
}

void require_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite()) throw InputError(what + ": entries must be finite");
}

void require_square(const Matrix& m, const std::string& what) {
    if (m.rows() == 0 || m.cols() == 0)
        throw DimensionError(what + ": dimensions must be positive");
    if (m.rows() != m.cols())
        throw DimensionError(what + ": expected a square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

Spectrum eigenvalues(const Matrix& m, const std::string& what) {
    require_square(m, what);
    require_finite(m, what);

    // Triangular input: the diagonal is exact, and avoids the QR splitting of
    // defective clusters (e.g. the PF chain, one Jordan block per eigenvalue).
    if (strictly_lower_triangular_is_zero(m) || strictly_upper_triangular_is_zero(m)) {
        std::vector<std::complex<double>> vals;
        vals.reserve(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) vals.emplace_back(m(i, i), 0.0);
        return make_spectrum(std::move(vals));
    }

    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError(what + ": eigenvalue iteration failed to converge");

    std::vector<std::complex<double>> vals;
    vals.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) vals.push_back(solver.eigenvalues()(i));
    return make_spectrum(std::move(vals));
}

Matrix expm(const Matrix& m) {
    require_square(m, "expm input");
    require_finite(m, "expm input");

    const Eigen::Index n = m.rows();
    const Matrix identity = Matrix::Identity(n, n);

    // Scale so the Pade(13,13) approximant is inside its accuracy region.
    const double theta13 = 5.371920351148152;
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const Matrix a = m / std::pow(2.0, squarings);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};

    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                          b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * identity);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                     b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * identity;

    Matrix result = Eigen::PartialPivLU<Matrix>(v - u).solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& q) {
    require_square(a, "lyapunov a");
    require_square(q, "lyapunov q");
    require_finite(a, "lyapunov a");
    require_finite(q, "lyapunov q");
    if (a.rows() != q.rows())
        throw DimensionError("lyapunov: a and q dimensions differ");

    const double q_scale = std::max(1.0, q.norm());
    if ((q - q.transpose()).norm() > 1e-9 * q_scale)
        throw InputError("lyapunov: q must be symmetric");
    if (!is_hurwitz(a, "lyapunov a"))
        throw InputError("lyapunov: a must be Hurwitz");

    const Eigen::Index n = a.rows();
    const Matrix identity = Matrix::Identity(n, n);
    // vec(aW + Wa') = (I (x) a + a (x) I) vec(W) with column-major vec.
    const Matrix system = kron(identity, a) + kron(a, identity);
    const Vector rhs = -Eigen::Map<const Vector>(q.data(), n * n);

    Eigen::PartialPivLU<Matrix> lu(system);
    Vector w_vec = lu.solve(rhs);
    Matrix w = Eigen::Map<const Matrix>(w_vec.data(), n, n);
    w = 0.5 * (w + w.transpose().eval());

    const double residual = (a * w + w * a.transpose() + q).norm();
    if (!w.allFinite() || residual > 1e-8 * q_scale)
        throw NumericalError("lyapunov: residual " + std::to_string(residual) +
                             " exceeds tolerance (system may be singular)");
    return w;
}

Matrix solve_care(const Matrix& a, const Matrix& b, const Matrix& q, double r_inv) {
    require_square(a, "care a");
    require_square(q, "care q");
    require_finite(a, "care a");
    require_finite(b, "care b");
    require_finite(q, "care q");
    const Eigen::Index n = a.rows();
    if (b.rows() != n) throw DimensionError("care: b row count must match a");
    if (q.rows() != n) throw DimensionError("care: q dimension must match a");
    if (!(r_inv > 0.0)) throw InputError("care: r_inv must be positive");

    const double q_scale = std::max(1.0, q.norm());
    const auto residual_of = [&](const Matrix& p) {
        return (a.transpose() * p + p * a - r_inv * p * b * b.transpose() * p + q).norm();
    };

    // Stable invariant subspace of the Hamiltonian matrix.
    Matrix ham(2 * n, 2 * n);
    ham << a, -r_inv * b * b.transpose(), -q, -a.transpose();
    Eigen::EigenSolver<Matrix> solver(ham, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw SynthesisError("care: Hamiltonian eigenvalue iteration failed");

    Eigen::MatrixXcd basis(2 * n, n);
    Eigen::Index found = 0;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        if (solver.eigenvalues()(i).real() < 0.0) {
            if (found == n)
                throw SynthesisError("care: no clean stable/antistable split of the Hamiltonian");
            basis.col(found++) = solver.eigenvectors().col(i);
        }
    }
    if (found != n)
        throw SynthesisError("care: stable Hamiltonian subspace has dimension " +
                             std::to_string(found) + ", need " + std::to_string(n));

    const Eigen::MatrixXcd x1 = basis.topRows(n);
    const Eigen::MatrixXcd x2 = basis.bottomRows(n);
    Eigen::FullPivLU<Eigen::MatrixXcd> x1_lu(x1);
    if (!x1_lu.isInvertible())
        throw SynthesisError("care: stable subspace is not a graph over the state space");
    Matrix p = (x2 * x1_lu.inverse()).real();
    p = 0.5 * (p + p.transpose().eval());

    // Newton-Kleinman polish; each step solves a Lyapunov equation in the
    // current closed loop and converges quadratically from the subspace seed.
    // The best iterate is kept in case the iteration stalls at rounding level.
    const double tol = 1e-8 * q_scale;
    Matrix best = p;
    double best_residual = residual_of(p);
    for (int iter = 0; iter < 10 && best_residual > 0.01 * tol; ++iter) {
        const Matrix closed = a - r_inv * b * b.transpose() * p;
        if (!is_hurwitz(closed, "care closed loop")) break;
        Matrix p_next;
        try {
            p_next = solve_lyapunov(closed.transpose(),
                                    q + r_inv * p * b * b.transpose() * p);
        } catch (const NumericalError&) {
            break;
        }
        p_next = 0.5 * (p_next + p_next.transpose().eval());
        const double step_size = (p_next - p).norm();
        p = p_next;
        const double residual = residual_of(p);
        if (residual < best_residual) {
            best_residual = residual;
            best = p;
        }
        if (step_size <= 1e-14 * std::max(1.0, p.norm())) break;
    }
    p = best;

    const double residual = best_residual;
    if (residual > tol)
        throw NumericalError("care: residual " + std::to_string(residual) +
                             " exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> p_eigs(p);
    if (p_eigs.eigenvalues().minCoeff() <= 0.0)
        throw SynthesisError("care: solution is not positive definite");
    if (!is_hurwitz(a - r_inv * b * b.transpose() * p, "care closed loop"))
        throw SynthesisError("care: solution does not stabilize the closed loop");
    return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double spectral_norm_sym(const Matrix& m) {
    require_square(m, "spectral norm input");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_hurwitz(const Matrix& m, const std::string& what) {
    return eigenvalues(m, what).max_real() < 0.0;
}

}  // namespace platoon::numerics
