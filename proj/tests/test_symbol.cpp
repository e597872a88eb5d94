#include <cmath>

#include "doctest.h"
#include "relspec/symbol.hpp"
#include "relspec/types.hpp"

using namespace relspec;

TEST_CASE("build_symbol centered request has an imaginary constant term") {
    AnalyticSymbol s = build_symbol(1.0, 0.0, 0.3, 128);
    CHECK(std::abs(s.coeffs(0).real()) < 1e-8);
    CHECK(s.coeffs(0).imag() > 0.0);
    CHECK(s.coeffs(0).imag() < 0.3);
}

TEST_CASE("build_symbol boundary stays inside the certified box") {
    AnalyticSymbol s = build_symbol(1.5, 0.4, 0.25, 192);
    CHECK(std::abs(s.eval(cplx(0, 0)).real() - 0.4) < 1e-8);
    CHECK(s.re_min >= -1.5 - 1e-9);
    CHECK(s.re_max <= 1.5 + 1e-9);
    CHECK(s.im_min >= -1e-9);
    CHECK(s.im_max <= 0.25 + 1e-9);
    for (int k = 0; k < 733; ++k) {
        cplx w = s.boundary(2.0 * M_PI * k / 733.0);
        CHECK(w.real() >= s.re_min - 1e-7);
        CHECK(w.real() <= s.re_max + 1e-7);
        CHECK(w.imag() >= s.im_min - 1e-7);
        CHECK(w.imag() <= s.im_max + 1e-7);
    }
}

TEST_CASE("build_symbol satisfies the mean value property") {
    AnalyticSymbol s = build_symbol(2.0, 0.5, 0.4, 256);
    cplx mean = 0.0;
    const int n = 4096;
    for (int k = 0; k < n; ++k) mean += s.boundary(2.0 * M_PI * k / n);
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean - s.eval(cplx(0, 0))) < 1e-8);
}

TEST_CASE("build_symbol rejects a displacement at the interval edge") {
    // the thin-height sine map cannot place its center value that close to rho
    CHECK_THROWS_AS(build_symbol(1.0, 0.999999, 1e-9, 64), ConstructionError);
}

TEST_CASE("toeplitz of a single coefficient") {
    Vector one(1);
    one << 1.0;
    CHECK((toeplitz(one, 0, 4) - Matrix::Identity(4, 4)).norm() < 1e-15);
    Matrix sub = toeplitz(one, 1, 4);
    for (Eigen::Index j = 0; j < 4; ++j)
        for (Eigen::Index k = 0; k < 4; ++k)
            CHECK(std::abs(sub(j, k) - cplx(j - k == 1 ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("toeplitz_analytic is lower triangular with constant diagonal c0") {
    AnalyticSymbol s = build_symbol(2.0, 0.5, 0.4, 128);
    Matrix L = toeplitz_analytic(s, 12);
    for (Eigen::Index j = 0; j < 12; ++j) {
        CHECK(std::abs(L(j, j) - s.coeffs(0)) < 1e-14);
        for (Eigen::Index k = j + 1; k < 12; ++k) CHECK(std::abs(L(j, k)) < 1e-15);
    }
}

TEST_CASE("real and imaginary part Toeplitz matrices split the analytic one") {
    AnalyticSymbol s = build_symbol(2.0, 0.3, 0.4, 128);
    const Eigen::Index N = 10;
    Matrix B = toeplitz_real_part(s, N);
    Matrix A = toeplitz_imag_part(s, N);
    CHECK((B - B.adjoint()).norm() < 1e-12);
    CHECK((A - A.adjoint()).norm() < 1e-12);
    Matrix L = toeplitz_analytic(s, N);
    // B + iA agrees with the analytic Toeplitz on and below the diagonal
    Matrix C = B + cplx(0, 1) * A;
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index k = 0; k <= j; ++k) CHECK(std::abs(C(j, k) - L(j, k)) < 1e-12);
}

TEST_CASE("derivative_bound dominates finite differences on the boundary") {
    AnalyticSymbol s = build_symbol(1.0, 0.2, 0.3, 128);
    double bound = s.derivative_bound();
    const int n = 2048;
    for (int k = 0; k < n; ++k) {
        double t0 = 2.0 * M_PI * k / n;
        double t1 = 2.0 * M_PI * (k + 1) / n;
        double diff = std::abs(s.boundary(t1) - s.boundary(t0)) / (t1 - t0);
        CHECK(diff <= bound * 1.0001 + 1e-12);
    }
}
