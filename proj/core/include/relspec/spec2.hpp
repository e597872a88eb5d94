#pragma once

#include "relspec/types.hpp"

namespace relspec {

/// Compression of (T - lambda I)^2 to L: B = Q*TQ, M = Q*T^2Q.
QuadraticPencil compress(const HermitianMatrix& T, const Subspace& L);

/// Second-order relative spectrum of the pencil: eigenvalues of the
/// companion linearization [[0, I], [-M, 2B]]. Returns 2*dim points,
/// conjugation-symmetric.
SpectrumSet spec2(const QuadraticPencil& p);

SpectrumSet spec2(const HermitianMatrix& T, const Subspace& L);

/// Eigenvalues of Q*TQ (the pollution-prone first-order baseline).
std::vector<double> galerkin_spectrum(const HermitianMatrix& T, const Subspace& L);

struct EnclosureVerdict {
    cplx point;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double nearest_spectrum_point = 0.0;
    bool pass = false;
};

/// For each lambda, checks Spec(T) meets [Re l - |Im l|, Re l + |Im l|]
/// inflated by 1e-8 * scale.
std::vector<EnclosureVerdict> enclosure_check(const SpectrumSet& s,
                                              const std::vector<double>& spec_T,
                                              double scale = 1.0);

bool enclosure_all_pass(const SpectrumSet& s, const std::vector<double>& spec_T,
                        double scale = 1.0);

/// Hausdorff distance between nonempty finite point sets.
double hausdorff(const std::vector<cplx>& F, const std::vector<cplx>& G);
double hausdorff(const SpectrumSet& F, const SpectrumSet& G);
/// Hausdorff distance between a finite set and a sampled real interval.
double hausdorff_to_interval(const std::vector<cplx>& F, Interval iv, int samples = 4001);

QRegion q_region(const IntervalUnion& sigma);

struct DeltaBound {
    double value = 0.0;        // certified lower bound on sigma_min over the contour
    double sampled_min = 0.0;  // raw minimum over samples
    double lipschitz_slack = 0.0;
    long samples = 0;
    bool degenerate = false;   // contour collapsed, Delta reported as 0
};

/// Certified root-stability radius: min of sigma_min(p(lambda)) over the
/// boundary of the union of closed eps-disks around spec2(p), minus the
/// Lipschitz sampling slack. Any Hermitian perturbation D of M with
/// |D| < value keeps every pencil root within eps of spec2(p) and preserves
/// the per-disk root counts. When the exact root locations are known (e.g.
/// certified by a triangular factorization), pass them as `centers` to
/// bypass the numerically spread spec2 computation.
DeltaBound delta_bound(const QuadraticPencil& p, double eps,
                       const std::vector<cplx>& centers = {});

}  // namespace relspec
