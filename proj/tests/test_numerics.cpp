#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "platoon/errors.hpp"
#include "platoon/numerics.hpp"
#include "test_util.hpp"

using namespace platoon;
using numerics::Matrix;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("eigenvalues: known spectra") {
    SUBCASE("diagonal matrix") {
        Matrix m = Matrix::Zero(3, 3);
        m(0, 0) = 3.0;
        m(1, 1) = 1.0;
        m(2, 2) = 2.0;
        const auto spec = numerics::eigenvalues(m);
        REQUIRE(spec.size() == 3);
        CHECK(spec.all_real);
        CHECK(spec.eigenvalues[0].real() == doctest::Approx(1.0));
        CHECK(spec.eigenvalues[1].real() == doctest::Approx(2.0));
        CHECK(spec.eigenvalues[2].real() == doctest::Approx(3.0));
    }
    SUBCASE("rotation generator has a conjugate pair") {
        const auto spec = numerics::eigenvalues(mat2(0, 1, -1, 0));
        CHECK_FALSE(spec.all_real);
        CHECK(spec.eigenvalues[0].imag() == doctest::Approx(-1.0));
        CHECK(spec.eigenvalues[1].imag() == doctest::Approx(1.0));
        CHECK(spec.eigenvalues[0].real() == doctest::Approx(0.0));
    }
    SUBCASE("PF chain L+S: triple eigenvalue 1, exactly") {
        // det(L+S - lambda I) = (1 - lambda)^3 for the 3-follower chain.
        Matrix m(3, 3);
        m << 1, 0, 0, -1, 1, 0, 0, -1, 1;
        const auto spec = numerics::eigenvalues(m);
        CHECK(spec.all_real);
        for (const auto& z : spec.eigenvalues) {
            CHECK(z.real() == 1.0);
            CHECK(z.imag() == 0.0);
        }
    }
    SUBCASE("non-square input is rejected") {
        CHECK_THROWS_AS(numerics::eigenvalues(Matrix::Zero(2, 3)), DimensionError);
    }
    SUBCASE("non-finite input is rejected") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 1) = std::nan("");
        CHECK_THROWS_AS(numerics::eigenvalues(m), InputError);
    }
}

TEST_CASE("eigenvalues: transpose invariance as multisets") {
    RngStream rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Matrix m = testutil::random_matrix(rng, 5, 5, 3.0);
        const auto a = numerics::eigenvalues(m).eigenvalues;
        const auto b = numerics::eigenvalues(Matrix(m.transpose())).eigenvalues;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i] - b[i]) < 1e-9 * std::max(1.0, std::abs(a[i])));
    }
}

TEST_CASE("expm: closed forms") {
    SUBCASE("zero matrix") {
        const Matrix e = numerics::expm(Matrix::Zero(4, 4));
        CHECK((e - Matrix::Identity(4, 4)).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("diagonal") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 1.5;
        m(1, 1) = -2.0;
        const Matrix e = numerics::expm(m);
        CHECK(e(0, 0) == doctest::Approx(std::exp(1.5)).epsilon(1e-12));
        CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
        CHECK(std::abs(e(0, 1)) < 1e-14);
    }
    SUBCASE("nilpotent: series is exact") {
        const Matrix e = numerics::expm(mat2(0, 1, 0, 0));
        CHECK(e(0, 0) == doctest::Approx(1.0));
        CHECK(e(0, 1) == doctest::Approx(1.0));
        CHECK(e(1, 0) == doctest::Approx(0.0));
        CHECK(e(1, 1) == doctest::Approx(1.0));
    }
}

TEST_CASE("expm: inverse identity on random matrices") {
    RngStream rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = testutil::random_matrix(rng, 4, 4, 2.0);
        if (m.norm() > 10.0) m *= 10.0 / m.norm();
        const Matrix prod = numerics::expm(m) * numerics::expm(Matrix(-m));
        CHECK((prod - Matrix::Identity(4, 4)).norm() < 1e-8);
    }
}

TEST_CASE("solve_lyapunov: closed forms and residual contract") {
    SUBCASE("scalar: -2w + 1 = 0") {
        Matrix a(1, 1), q(1, 1);
        a << -1.0;
        q << 1.0;
        CHECK(numerics::solve_lyapunov(a, q)(0, 0) == doctest::Approx(0.5));
    }
    SUBCASE("diagonal") {
        const Matrix a = -Matrix::Identity(2, 2);
        Matrix q = Matrix::Zero(2, 2);
        q(0, 0) = 2.0;
        q(1, 1) = 4.0;
        const Matrix w = numerics::solve_lyapunov(a, q);
        CHECK(w(0, 0) == doctest::Approx(1.0));
        CHECK(w(1, 1) == doctest::Approx(2.0));
        CHECK(std::abs(w(0, 1)) < 1e-12);
    }
    SUBCASE("upper-triangular case verified by substitution") {
        const Matrix a = mat2(-1, 1, 0, -2);
        const Matrix q = Matrix::Identity(2, 2);
        const Matrix w = numerics::solve_lyapunov(a, q);
        CHECK((a * w + w * a.transpose() + q).norm() <= 1e-8);
    }
    SUBCASE("non-Hurwitz a is rejected") {
        CHECK_THROWS_AS(numerics::solve_lyapunov(mat2(1, 0, 0, -1), Matrix::Identity(2, 2)),
                        InputError);
    }
    SUBCASE("asymmetric q is rejected") {
        CHECK_THROWS_AS(numerics::solve_lyapunov(-Matrix::Identity(2, 2), mat2(1, 2, 0, 1)),
                        InputError);
    }
}

TEST_CASE("solve_lyapunov: random instances stay symmetric with small residuals") {
    RngStream rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 5.0);  // 2..6
        const Matrix a = testutil::random_hurwitz(rng, n);
        const Matrix q = testutil::random_spd(rng, n);
        const Matrix w = numerics::solve_lyapunov(a, q);
        CHECK((a * w + w * a.transpose() + q).norm() <= 1e-8 * std::max(1.0, q.norm()));
        CHECK((w - w.transpose()).norm() <= 1e-10 * std::max(1e-300, w.norm()));
    }
}

TEST_CASE("solve_care: scalar closed forms") {
    Matrix a(1, 1), b(1, 1), q(1, 1);
    SUBCASE("a=0, b=1, q=1: -p^2 + 1 = 0") {
        a << 0.0;
        b << 1.0;
        q << 1.0;
        CHECK(numerics::solve_care(a, b, q, 1.0)(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("a=-1, b=1, q=3: -p^2 - 2p + 3 = 0, positive root") {
        a << -1.0;
        b << 1.0;
        q << 3.0;
        CHECK(numerics::solve_care(a, b, q, 1.0)(0, 0) == doctest::Approx(1.0));
    }
}

TEST_CASE("solve_care: platoon model satisfies the design equality") {
    const LinearModel model = testutil::default_model();
    const Matrix q = Matrix::Identity(3, 3);
    const double r_inv = 2.0;  // 2 * lambda_1 with lambda_1 = 1
    const Matrix p = numerics::solve_care(model.a, model.b, q, r_inv);

    const Matrix residual = model.a.transpose() * p + p * model.a -
                            r_inv * p * model.b * model.b.transpose() * p + q;
    Eigen::SelfAdjointEigenSolver<Matrix> eigs(residual);
    CHECK(eigs.eigenvalues().cwiseAbs().maxCoeff() < 1e-6);

    Eigen::SelfAdjointEigenSolver<Matrix> p_eigs(p);
    CHECK(p_eigs.eigenvalues().minCoeff() > 0.0);
    CHECK(numerics::is_hurwitz(model.a - r_inv * model.b * model.b.transpose() * p));
}

TEST_CASE("solve_care: random stabilizable instances") {
    RngStream rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3.0);  // 2..4
        const auto [a, b] = testutil::random_care_instance(rng, n);
        const Matrix q = testutil::random_spd(rng, n);
        const double r_inv = 0.5 + 3.5 * rng.uniform();
        const Matrix p = numerics::solve_care(a, b, q, r_inv);
        const Matrix residual =
            a.transpose() * p + p * a - r_inv * p * b * b.transpose() * p + q;
        CHECK(residual.norm() <= 1e-8 * std::max(1.0, q.norm()));
        Eigen::SelfAdjointEigenSolver<Matrix> p_eigs(p);
        CHECK(p_eigs.eigenvalues().minCoeff() > 0.0);
        CHECK((p - p.transpose()).norm() <= 1e-10 * p.norm());
    }
}

TEST_CASE("kron: fixed examples") {
    SUBCASE("identity times scalar block") {
        Matrix s(1, 1);
        s << 5.0;
        const Matrix k = numerics::kron(Matrix::Identity(2, 2), s);
        CHECK(k.rows() == 2);
        CHECK(k(0, 0) == 5.0);
        CHECK(k(1, 1) == 5.0);
        CHECK(k(0, 1) == 0.0);
    }
    SUBCASE("ones vector stacks the block") {
        Matrix ones(2, 1), v(2, 1);
        ones << 1.0, 1.0;
        v << 3.0, 7.0;
        const Matrix k = numerics::kron(ones, v);
        REQUIRE(k.rows() == 4);
        CHECK(k(0, 0) == 3.0);
        CHECK(k(1, 0) == 7.0);
        CHECK(k(2, 0) == 3.0);
        CHECK(k(3, 0) == 7.0);
    }
    SUBCASE("swap matrix gives a 4x4 block swap") {
        const Matrix k = numerics::kron(mat2(0, 1, 1, 0), Matrix::Identity(2, 2));
        CHECK(k.block(0, 2, 2, 2).isApprox(Matrix::Identity(2, 2)));
        CHECK(k.block(2, 0, 2, 2).isApprox(Matrix::Identity(2, 2)));
        CHECK(k.block(0, 0, 2, 2).norm() == 0.0);
    }
    SUBCASE("vec identity used by the Lyapunov solver") {
        // vec(aXb') = (b (x) a) vec(X), column-major.
        RngStream rng(5);
        const Matrix a = testutil::random_matrix(rng, 3, 3);
        const Matrix b = testutil::random_matrix(rng, 3, 3);
        const Matrix x = testutil::random_matrix(rng, 3, 3);
        const Matrix lhs = a * x * b.transpose();
        const Eigen::VectorXd vec_lhs = Eigen::Map<const Eigen::VectorXd>(lhs.data(), 9);
        const Eigen::VectorXd vec_x = Eigen::Map<const Eigen::VectorXd>(x.data(), 9);
        CHECK((numerics::kron(b, a) * vec_x - vec_lhs).norm() < 1e-12);
    }
}
