#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "relspec/linalg.hpp"
#include "relspec/types.hpp"

using namespace relspec;

TEST_CASE("hermitian_eig on the 2x2 flip matrix") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    EigenDecomposition d = hermitian_eig(HermitianMatrix(m));
    CHECK(d.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.values(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality, random 6x6") {
    HermitianMatrix H = random_hermitian(6, 42);
    EigenDecomposition d = hermitian_eig(H);
    Matrix rec = d.vectors * d.values.cast<cplx>().asDiagonal() * d.vectors.adjoint();
    CHECK((rec - H.mat()).norm() <= tol::eig * std::max(1.0, H.frobenius()));
    CHECK((d.vectors.adjoint() * d.vectors - Matrix::Identity(6, 6)).norm() <= tol::orthonormal);
    for (Eigen::Index i = 1; i < d.values.size(); ++i) CHECK(d.values(i - 1) <= d.values(i));
}

TEST_CASE("general_eigenvalues of the companion of lambda^2 + 1") {
    Matrix c(2, 2);
    c << 0, -1, 1, 0;
    auto ev = general_eigenvalues(c);
    REQUIRE(ev.size() == 2);
    std::vector<cplx> expect{cplx(0, 1), cplx(0, -1)};
    CHECK(oracles::hausdorff_brute(ev, expect) < 1e-10);
}

TEST_CASE("general_eigenvalues matches a characteristic polynomial oracle") {
    Matrix A = random_matrix(5, 5, 7);
    auto ev = general_eigenvalues(A);
    // charpoly by Vandermonde interpolation of det(xI - A)
    std::vector<cplx> coeffs;
    {
        const int n = 5;
        Matrix V(n + 1, n + 1);
        Vector rhs(n + 1);
        for (int j = 0; j <= n; ++j) {
            cplx x = std::polar(1.0 + A.norm(), 2.0 * M_PI * j / (n + 1));
            cplx pw = 1.0;
            for (int k = 0; k <= n; ++k) {
                V(j, k) = pw;
                pw *= x;
            }
            rhs(j) = (x * Matrix::Identity(n, n) - A).determinant();
        }
        Vector c = V.fullPivLu().solve(rhs);
        coeffs.assign(c.data(), c.data() + c.size());
    }
    auto roots = oracles::poly_roots(coeffs);
    CHECK(oracles::hausdorff_brute(ev, roots) < 1e-6);
}

TEST_CASE("psd_sqrt of diag(4, 9)") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 4;
    m(1, 1) = 9;
    HermitianMatrix s = psd_sqrt(HermitianMatrix(m));
    CHECK(std::abs(s.mat()(0, 0) - cplx(2)) < 1e-12);
    CHECK(std::abs(s.mat()(1, 1) - cplx(3)) < 1e-12);
    CHECK(std::abs(s.mat()(0, 1)) < 1e-12);
}

TEST_CASE("psd_sqrt squares back on a random Gram matrix") {
    Matrix G = random_matrix(5, 5, 11);
    HermitianMatrix M(Matrix(G.adjoint() * G));
    HermitianMatrix s = psd_sqrt(M);
    CHECK((s.mat() * s.mat() - M.mat()).norm() <= 1e-9 * std::max(1.0, M.frobenius()));
    // homogeneity: sqrt(4 M) = 2 sqrt(M)
    HermitianMatrix s4 = psd_sqrt(HermitianMatrix(Matrix(4.0 * M.mat())));
    CHECK((s4.mat() - 2.0 * s.mat()).norm() <= 1e-9 * std::max(1.0, s.frobenius()));
}

TEST_CASE("psd_sqrt rejects an indefinite matrix") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    CHECK_THROWS_AS(psd_sqrt(HermitianMatrix(m)), NotPositiveSemidefinite);
}

TEST_CASE("psd_sqrt clamps a tiny negative eigenvalue") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1e-13;
    HermitianMatrix s = psd_sqrt(HermitianMatrix(m));
    CHECK(std::abs(s.mat()(1, 1)) < 1e-6);
}

TEST_CASE("smallest_singular_value of diag(3, 5)") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3;
    m(1, 1) = 5;
    CHECK(smallest_singular_value(m) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("complete_unitary extends orthonormal columns") {
    Matrix cols(4, 2);
    cols.setZero();
    cols(0, 0) = 1;
    cols(2, 1) = 1;
    Matrix U = complete_unitary(cols, 4);
    CHECK((U.leftCols(2) - cols).norm() < 1e-12);
    CHECK((U.adjoint() * U - Matrix::Identity(4, 4)).norm() < tol::orthonormal);
}

TEST_CASE("random fixtures are deterministic and Hermitian") {
    HermitianMatrix a = random_hermitian(4, 3);
    HermitianMatrix b = random_hermitian(4, 3);
    CHECK((a.mat() - b.mat()).norm() == 0.0);
    CHECK((a.mat() - a.mat().adjoint()).norm() < 1e-14);
    Matrix u = random_unitary(4, 9);
    CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < tol::orthonormal);
}
