#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace relspec {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotPositiveSemidefinite : public Error {
public:
    NotPositiveSemidefinite(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

class NotDilatable : public Error {
public:
    NotDilatable(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

namespace tol {
/// Absolute floor applied below every relative tolerance.
inline constexpr double floor_abs = 1e-14;
inline constexpr double hermitian = 1e-12;
inline constexpr double eig = 1e-10;
inline constexpr double orthonormal = 1e-10;
inline constexpr double point_match = 1e-8;

inline double rel(double t, double scale) {
    double s = t * std::max(1.0, scale);
    return s < floor_abs ? floor_abs : s;
}
}  // namespace tol

void require_finite(const Matrix& m, const char* who);

/// Dense self-adjoint complex matrix. Construction symmetrizes H <- (H+H*)/2
/// and rejects inputs whose anti-Hermitian part exceeds tolerance.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(Matrix m);
    static HermitianMatrix zero(Eigen::Index dim) { return HermitianMatrix(Matrix::Zero(dim, dim)); }
    static HermitianMatrix identity(Eigen::Index dim) { return HermitianMatrix(Matrix::Identity(dim, dim)); }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& mat() const { return m_; }
    double norm2() const;       // spectral norm
    double frobenius() const { return m_.norm(); }

private:
    Matrix m_;
};

struct EigenDecomposition {
    RealVector values;  // ascending
    Matrix vectors;     // unitary, columns
};

/// Orthonormal-basis subspace of C^ambient.
class Subspace {
public:
    Subspace() = default;
    Subspace(Eigen::Index ambient_dim, Matrix basis);
    /// Span of coordinates [0, k).
    static Subspace leading_coordinates(Eigen::Index ambient_dim, Eigen::Index k);
    static Subspace full(Eigen::Index ambient_dim);

    Eigen::Index ambient_dim() const { return ambient_; }
    Eigen::Index rank() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

private:
    Eigen::Index ambient_ = 0;
    Matrix basis_;
};

/// Pair (B, M) representing the pencil  lambda^2 I - 2 lambda B + M.
struct QuadraticPencil {
    HermitianMatrix B;
    HermitianMatrix M;

    QuadraticPencil() = default;
    QuadraticPencil(HermitianMatrix b, HermitianMatrix m);
    Eigen::Index dim() const { return B.dim(); }
    /// lambda^2 I - 2 lambda B + M
    Matrix eval(cplx lambda) const;
    double scale() const;  // max(1, |M|, |B|^2)
};

struct SpectrumSet {
    std::vector<cplx> points;
    bool conjugation_symmetric = false;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    /// Checks multiset invariance under conjugation within tolerance.
    bool check_conjugation_symmetry(double tolerance = tol::point_match) const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Sorted disjoint closed real intervals; gaps between consecutive intervals
/// are the open intervals (hi_j, lo_{j+1}).
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    double min() const { return intervals_.front().lo; }
    double max() const { return intervals_.back().hi; }
    std::vector<Interval> gaps() const;
    bool contains(double x) const;
    double distance_to(double x) const;

private:
    std::vector<Interval> intervals_;
};

struct Disk {
    cplx center;
    double radius = 0.0;
    bool contains_closed(cplx z) const { return std::abs(z - center) <= radius; }
    bool contains_open(cplx z) const { return std::abs(z - center) < radius; }
};

/// Q(Sigma): closed disk over [min, max] minus the open disks over the gaps.
class QRegion {
public:
    QRegion() = default;
    QRegion(Disk outer, std::vector<Disk> gap_disks)
        : outer_(outer), gaps_(std::move(gap_disks)) {}

    const Disk& outer() const { return outer_; }
    const std::vector<Disk>& gap_disks() const { return gaps_; }
    /// Closed outer disk, open gap disks; gap boundaries count as inside.
    bool contains(cplx z, double inflate = 0.0) const;
    /// Negative inside the region.
    double signed_distance(cplx z) const;

private:
    Disk outer_;
    std::vector<Disk> gaps_;
};

}  // namespace relspec
