#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace platoon::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Imaginary parts at or below this magnitude are treated as rounding noise
// when classifying a spectrum as real.
inline constexpr double kImagTol = 1e-9;

// Eigenvalues sorted ascending by real part (ties by imaginary part).
struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    bool all_real = false;

    [[nodiscard]] std::size_t size() const { return eigenvalues.size(); }
    [[nodiscard]] double min_real() const;
    [[nodiscard]] double max_real() const;
    [[nodiscard]] std::vector<double> real_parts() const;
};

// Input validation helpers; `what` names the offending matrix in messages.
void require_finite(const Matrix& m, const std::string& what);
void require_square(const Matrix& m, const std::string& what);

/// All eigenvalues of a square matrix. Exactly triangular inputs take a fast
/// path that returns the diagonal, since QR iteration scatters defective
/// eigenvalue clusters far beyond the advertised tolerance.
Spectrum eigenvalues(const Matrix& m, const std::string& what = "matrix");

/// Matrix exponential via scaling-and-squaring with a degree-13 Pade
/// approximant.
Matrix expm(const Matrix& m);

/// Solves a*W + W*a' + q = 0 for symmetric W by dense LU on the
/// Kronecker-vectorized system. `a` must be Hurwitz and `q` symmetric.
/// Residual contract: ||a*W + W*a' + q||_F <= 1e-8 * max(1, ||q||_F).
Matrix solve_lyapunov(const Matrix& a, const Matrix& q);

/// Solves the continuous algebraic Riccati equation
///   a'*P + P*a - r_inv * P*b*b'*P + q = 0
/// for the stabilizing P > 0. Seeded from the stable invariant subspace of the
/// Hamiltonian matrix, then polished by Newton-Kleinman iterations until
/// ||residual||_F <= 1e-8 * max(1, ||q||_F).
Matrix solve_care(const Matrix& a, const Matrix& b, const Matrix& q, double r_inv);

/// Standard Kronecker product, (ra*rb) x (ca*cb).
Matrix kron(const Matrix& a, const Matrix& b);

/// Spectral (induced-2) norm of a symmetric matrix.
double spectral_norm_sym(const Matrix& m);

/// True when every eigenvalue has strictly negative real part.
bool is_hurwitz(const Matrix& m, const std::string& what = "matrix");

}  // namespace platoon::numerics
