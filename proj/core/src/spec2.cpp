#include "relspec/spec2.hpp"

#include <algorithm>
#include <cmath>

#include "relspec/linalg.hpp"

namespace relspec {

QuadraticPencil compress(const HermitianMatrix& T, const Subspace& L) {
    if (T.dim() != L.ambient_dim())
        throw Error("compress: operator and subspace dimensions differ");
    const Matrix& Q = L.basis();
    Matrix TQ = T.mat() * Q;
    Matrix B = Q.adjoint() * TQ;
    Matrix M = TQ.adjoint() * TQ;  // Q* T^2 Q, manifestly PSD-compatible
    return QuadraticPencil(HermitianMatrix(std::move(B)), HermitianMatrix(std::move(M)));
}

SpectrumSet spec2(const QuadraticPencil& p) {
    const Eigen::Index n = p.dim();
    Matrix C = Matrix::Zero(2 * n, 2 * n);
    C.topRightCorner(n, n) = Matrix::Identity(n, n);
    C.bottomLeftCorner(n, n) = -p.M.mat();
    C.bottomRightCorner(n, n) = 2.0 * p.B.mat();
    SpectrumSet s;
    s.points = general_eigenvalues(C);
    s.conjugation_symmetric = true;
    return s;
}

SpectrumSet spec2(const HermitianMatrix& T, const Subspace& L) {
    return spec2(compress(T, L));
}

std::vector<double> galerkin_spectrum(const HermitianMatrix& T, const Subspace& L) {
    const Matrix& Q = L.basis();
    HermitianMatrix B(Matrix(Q.adjoint() * T.mat() * Q));
    EigenDecomposition d = hermitian_eig(B);
    return std::vector<double>(d.values.data(), d.values.data() + d.values.size());
}

std::vector<EnclosureVerdict> enclosure_check(const SpectrumSet& s,
                                              const std::vector<double>& spec_T,
                                              double scale) {
    if (spec_T.empty()) throw Error("enclosure_check: empty reference spectrum");
    const double t = tol::rel(1e-8, scale);
    std::vector<EnclosureVerdict> out;
    out.reserve(s.points.size());
    for (cplx lam : s.points) {
        EnclosureVerdict v;
        v.point = lam;
        v.interval_lo = lam.real() - std::abs(lam.imag()) - t;
        v.interval_hi = lam.real() + std::abs(lam.imag()) + t;
        double best = std::numeric_limits<double>::infinity();
        for (double x : spec_T) {
            double d = 0.0;
            if (x < v.interval_lo) d = v.interval_lo - x;
            else if (x > v.interval_hi) d = x - v.interval_hi;
            if (d < best) { best = d; v.nearest_spectrum_point = x; }
        }
        v.pass = best == 0.0;
        out.push_back(v);
    }
    return out;
}

bool enclosure_all_pass(const SpectrumSet& s, const std::vector<double>& spec_T, double scale) {
    auto verdicts = enclosure_check(s, spec_T, scale);
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const EnclosureVerdict& v) { return v.pass; });
}

double hausdorff(const std::vector<cplx>& F, const std::vector<cplx>& G) {
    if (F.empty() || G.empty()) throw Error("hausdorff: empty set");
    auto directed = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        double sup = 0.0;
        for (cplx x : a) {
            double inf = std::numeric_limits<double>::infinity();
            for (cplx y : b) inf = std::min(inf, std::abs(x - y));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(F, G), directed(G, F));
}

double hausdorff(const SpectrumSet& F, const SpectrumSet& G) {
    return hausdorff(F.points, G.points);
}

double hausdorff_to_interval(const std::vector<cplx>& F, Interval iv, int samples) {
    std::vector<cplx> g(samples);
    for (int i = 0; i < samples; ++i)
        g[i] = iv.lo + (iv.hi - iv.lo) * i / double(samples - 1);
    return hausdorff(F, g);
}

QRegion q_region(const IntervalUnion& sigma) {
    auto disk_over = [](double a, double b) {
        return Disk{cplx(0.5 * (a + b), 0.0), 0.5 * (b - a)};
    };
    std::vector<Disk> gaps;
    for (const auto& g : sigma.gaps()) gaps.push_back(disk_over(g.lo, g.hi));
    return QRegion(disk_over(sigma.min(), sigma.max()), std::move(gaps));
}

namespace {

// Boundary of the union of closed eps-disks: points of each circle not
// strictly inside another disk.
struct ContourSample {
    cplx point;
    double arc_step;  // local spacing along the circle
};

std::vector<ContourSample> union_boundary_samples(const std::vector<cplx>& centers,
                                                  double eps, long per_circle) {
    std::vector<ContourSample> out;
    const double dt = 2.0 * M_PI / static_cast<double>(per_circle);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (long k = 0; k < per_circle; ++k) {
            const cplx z = centers[i] + std::polar(eps, dt * static_cast<double>(k));
            bool interior = false;
            for (std::size_t j = 0; j < centers.size(); ++j) {
                if (j == i) continue;
                if (std::abs(z - centers[j]) < eps * (1.0 - 1e-12)) { interior = true; break; }
            }
            if (!interior) out.push_back({z, eps * dt});
        }
    }
    return out;
}

}  // namespace

DeltaBound delta_bound(const QuadraticPencil& p, double eps,
                       const std::vector<cplx>& known_centers) {
    if (!(eps > 0.0)) throw Error("delta_bound: eps must be positive");
    std::vector<cplx> root_points = known_centers;
    if (root_points.empty()) root_points = spec2(p).points;
    // merge root centers that coincide within tolerance to keep circles few
    std::vector<cplx> centers;
    for (cplx z : root_points) {
        bool dup = false;
        for (cplx c : centers)
            if (std::abs(z - c) < 1e-12 * std::max(1.0, std::abs(z))) { dup = true; break; }
        if (!dup) centers.push_back(z);
    }
    const double normB = p.B.norm2();
    DeltaBound result;
    long per_circle = 256;
    for (int round = 0; round < 8; ++round) {
        auto samples = union_boundary_samples(centers, eps, per_circle);
        if (samples.empty()) {
            result.degenerate = true;
            result.value = 0.0;
            return result;
        }
        double smin = std::numeric_limits<double>::infinity();
        double max_abs = 0.0;
        for (const auto& s : samples) {
            smin = std::min(smin, smallest_singular_value(p.eval(s.point)));
            max_abs = std::max(max_abs, std::abs(s.point));
        }
        // |sigma_min(P(l)) - sigma_min(P(l'))| <= |l - l'| (|l| + |l'| + 2|B|)
        const double lip = 2.0 * max_abs + 2.0 * normB;
        const double slack = 0.5 * samples[0].arc_step * lip;
        result.sampled_min = smin;
        result.lipschitz_slack = slack;
        result.samples = static_cast<long>(samples.size());
        result.value = std::max(0.0, smin - slack);
        if (slack <= 0.05 * smin || result.value == 0.0) break;
        per_circle *= 2;
    }
    if (result.value <= tol::floor_abs) {
        result.degenerate = true;
        result.value = 0.0;
    }
    return result;
}

}  // namespace relspec
