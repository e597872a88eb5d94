#include "relspec/types.hpp"

#include <algorithm>
#include <cmath>

namespace relspec {

void require_finite(const Matrix& m, const char* who) {
    if (!m.allFinite()) throw Error(std::string(who) + ": matrix has non-finite entries");
}

HermitianMatrix::HermitianMatrix(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw Error("HermitianMatrix: matrix must be square and nonempty");
    require_finite(m, "HermitianMatrix");
    const double scale = std::max(1.0, m.norm());
    const double dev = (m - m.adjoint().eval()).norm();
    if (dev > tol::hermitian * scale)
        throw Error("HermitianMatrix: anti-Hermitian part " + std::to_string(dev) +
                    " exceeds tolerance");
    m_ = 0.5 * (m + m.adjoint().eval());
}

double HermitianMatrix::norm2() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    const auto& v = es.eigenvalues();
    return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

Subspace::Subspace(Eigen::Index ambient_dim, Matrix basis) : ambient_(ambient_dim) {
    if (basis.rows() != ambient_dim || basis.cols() > ambient_dim)
        throw Error("Subspace: basis shape incompatible with ambient dimension");
    require_finite(basis, "Subspace");
    const double dev = (basis.adjoint() * basis - Matrix::Identity(basis.cols(), basis.cols())).norm();
    if (dev > tol::orthonormal)
        throw Error("Subspace: basis not orthonormal, Gram residual " + std::to_string(dev));
    basis_ = std::move(basis);
}

Subspace Subspace::leading_coordinates(Eigen::Index ambient_dim, Eigen::Index k) {
    Matrix b = Matrix::Zero(ambient_dim, k);
    for (Eigen::Index i = 0; i < k; ++i) b(i, i) = 1.0;
    return Subspace(ambient_dim, std::move(b));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

QuadraticPencil::QuadraticPencil(HermitianMatrix b, HermitianMatrix m)
    : B(std::move(b)), M(std::move(m)) {
    if (B.dim() != M.dim()) throw Error("QuadraticPencil: dimension mismatch");
    // compression inequality (M - B^2 >= -tol), the dilation condition
    Matrix d = M.mat() - B.mat() * B.mat();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint().eval()),
                                             Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    const double t = tol::rel(1e-8, M.norm2() + B.norm2() * B.norm2());
    if (lmin < -t)
        throw Error("QuadraticPencil: compression inequality violated, min eigenvalue of M - B^2 is " +
                    std::to_string(lmin) + " (non-orthonormal basis?)");
}

Matrix QuadraticPencil::eval(cplx lambda) const {
    const Eigen::Index n = dim();
    return lambda * lambda * Matrix::Identity(n, n) - 2.0 * lambda * B.mat() + M.mat();
}

double QuadraticPencil::scale() const {
    const double nb = B.norm2();
    return std::max({1.0, M.norm2(), nb * nb});
}

bool SpectrumSet::check_conjugation_symmetry(double tolerance) const {
    std::vector<bool> used(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const cplx want = std::conj(points[i]);
        double best = std::numeric_limits<double>::infinity();
        std::size_t bj = points.size();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(points[j] - want);
            if (d < best) { best = d; bj = j; }
        }
        if (bj == points.size() || best > tolerance) return false;
        used[bj] = true;
    }
    return true;
}

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw Error("IntervalUnion: empty");
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals_) {
        if (!(prev < iv.lo) || !(iv.lo < iv.hi))
            throw Error("IntervalUnion: intervals must be strictly increasing and nondegenerate");
        prev = iv.hi;
    }
}

std::vector<Interval> IntervalUnion::gaps() const {
    std::vector<Interval> g;
    for (std::size_t j = 0; j + 1 < intervals_.size(); ++j)
        g.push_back({intervals_[j].hi, intervals_[j + 1].lo});
    return g;
}

bool IntervalUnion::contains(double x) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [x](const Interval& iv) { return iv.contains(x); });
}

double IntervalUnion::distance_to(double x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals_) {
        if (iv.contains(x)) return 0.0;
        d = std::min(d, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
    }
    return d;
}

bool QRegion::contains(cplx z, double inflate) const {
    if (std::abs(z - outer_.center) > outer_.radius + inflate) return false;
    for (const auto& g : gaps_)
        if (std::abs(z - g.center) < g.radius - inflate) return false;
    return true;
}

double QRegion::signed_distance(cplx z) const {
    // negative inside; distance to the nearest boundary circle
    double d = std::abs(z - outer_.center) - outer_.radius;  // <0 inside outer
    bool inside = d <= 0.0;
    double bdry = std::abs(d);
    for (const auto& g : gaps_) {
        const double dg = g.radius - std::abs(z - g.center);  // >0 inside gap
        if (dg > 0.0) inside = false;
        bdry = std::min(bdry, std::abs(dg));
    }
    return inside ? -bdry : bdry;
}

}  // namespace relspec
