#include "relspec/linalg.hpp"

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace relspec {

EigenDecomposition hermitian_eig(const HermitianMatrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.mat());
    if (es.info() != Eigen::Success)
        throw Error("hermitian_eig: eigensolver failed to converge");
    EigenDecomposition d{es.eigenvalues(), es.eigenvectors()};
    const double scale = std::max(1.0, H.frobenius());
    const double res = (d.vectors * d.values.asDiagonal() * d.vectors.adjoint() - H.mat()).norm();
    if (res > tol::eig * scale)
        throw Error("hermitian_eig: reconstruction residual " + std::to_string(res));
    return d;
}

std::vector<cplx> general_eigenvalues(const Matrix& A) {
    if (A.rows() != A.cols()) throw Error("general_eigenvalues: matrix must be square");
    require_finite(A, "general_eigenvalues");
    Eigen::ComplexEigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw Error("general_eigenvalues: QR iteration failed to converge");
    const auto& v = es.eigenvalues();
    cplx sum = 0.0;
    std::vector<cplx> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) { out[i] = v(i); sum += v(i); }
    const double trace_dev = std::abs(sum - A.trace());
    if (trace_dev > 1e-8 * static_cast<double>(A.rows()) * std::max(1.0, A.norm()))
        throw Error("general_eigenvalues: trace mismatch " + std::to_string(trace_dev));
    return out;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& M) {
    EigenDecomposition d = hermitian_eig(M);
    const double nrm = std::max(std::abs(d.values(0)), std::abs(d.values(d.values.size() - 1)));
    const double tol_psd = std::max(1e-10 * nrm, tol::floor_abs);
    if (d.values(0) < -tol_psd)
        throw NotPositiveSemidefinite(
            "psd_sqrt: matrix not positive semidefinite, min eigenvalue " +
                std::to_string(d.values(0)),
            d.values(0));
    RealVector s = d.values.cwiseMax(0.0).cwiseSqrt();
    return HermitianMatrix(d.vectors * s.asDiagonal() * d.vectors.adjoint());
}

double smallest_singular_value(const Matrix& A) {
    if (A.rows() != A.cols()) throw Error("smallest_singular_value: matrix must be square");
    require_finite(A, "smallest_singular_value");
    Eigen::BDCSVD<Matrix> svd(A);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix complete_unitary(const Matrix& columns, Eigen::Index dim) {
    const Eigen::Index k = columns.cols();
    if (columns.rows() != dim || k > dim)
        throw Error("complete_unitary: column shape incompatible with dimension");
    if (k > 0) {
        const double gram_res =
            (columns.adjoint() * columns - Matrix::Identity(k, k)).norm();
        if (gram_res > tol::orthonormal)
            throw Error("complete_unitary: supplied columns not orthonormal, Gram residual " +
                        std::to_string(gram_res));
    }
    if (k == dim) return columns;
    // fill the remaining columns deterministically from the coordinate basis
    Matrix U(dim, dim);
    U.leftCols(k) = columns;
    Eigen::Index filled = k;
    for (Eigen::Index j = 0; j < dim && filled < dim; ++j) {
        Vector v = Vector::Zero(dim);
        v(j) = 1.0;
        // Gram-Schmidt against everything accepted so far, twice for stability
        for (int pass = 0; pass < 2; ++pass)
            v -= U.leftCols(filled) * (U.leftCols(filled).adjoint() * v).eval();
        const double nv = v.norm();
        if (nv > 1e-8) {
            U.col(filled++) = v / nv;
        }
    }
    if (filled != dim) throw Error("complete_unitary: failed to span the complement");
    const double res = (U.adjoint() * U - Matrix::Identity(dim, dim)).norm();
    if (res > tol::orthonormal)
        throw Error("complete_unitary: completion not unitary, residual " + std::to_string(res));
    return U;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * cplx(g(rng), g(rng));
    return m;
}

HermitianMatrix random_hermitian(Eigen::Index dim, unsigned seed, double scale) {
    Matrix m = random_matrix(dim, dim, seed, scale);
    return HermitianMatrix(0.5 * (m + m.adjoint().eval()));
}

Matrix random_unitary(Eigen::Index dim, unsigned seed) {
    Matrix m = random_matrix(dim, dim, seed);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    // fix phases so the result is deterministic across backends
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        cplx d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace relspec
