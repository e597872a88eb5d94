#pragma once

#include <array>
#include <optional>

#include "relspec/nesting.hpp"
#include "relspec/spec2.hpp"
#include "relspec/types.hpp"

namespace relspec {

/// Description of a compact target set F, symmetric w.r.t. the real line.
/// Segments and disks are sampled; points enter as-is. Only the closed upper
/// half needs to be given; the lower half is implied by symmetry.
struct TargetGeometry {
    std::vector<cplx> points;
    std::vector<std::pair<cplx, cplx>> segments;
    std::vector<Disk> disks;
    bool empty() const { return points.empty() && segments.empty() && disks.empty(); }
};

struct TargetSet {
    TargetGeometry F;
    IntervalUnion sigma;
};

/// Validates F subset Q(sigma) and that F meets every open band; throws
/// ConstructionError listing offenders otherwise. Boundary points are nudged
/// inward by 1e-3 * diam before sampling (recorded in `nudged`).
void validate_target(const TargetSet& target);

struct LevelSample {
    int level = 0;
    std::vector<cplx> F_l;          // symmetric finite sample
    std::vector<cplx> upper_half;   // representatives with Im >= 0
    double dH_to_reference = 0.0;   // verified d_H(F_l, fine reference sample)
    int nudged = 0;
};

/// Finite symmetric sample of F with d_H(F_l, F) < 2^-(l+1).
LevelSample sample_target(const TargetSet& target, int level);

/// Convex-combination witness: lambda_m in the open bands, weights t_m in
/// [0,1] summing to 1 with sum t_m (mu - lambda_m)^2 = 0.
struct PlantTarget {
    cplx mu;
    std::array<double, 3> lambda{};
    std::array<double, 3> t{};
    double residual = 0.0;
};

/// Searches lambda triples on a per-band grid (64 points per band unless an
/// explicit grid is supplied) and solves the barycentric system for zero.
/// Real mu inside a band returns the degenerate solution (mu, (1,0,0)).
PlantTarget solve_weights(cplx mu, const IntervalUnion& sigma,
                          const std::vector<double>& grid = {});

struct GadgetBundle {
    std::vector<PlantTarget> targets;
    Matrix u;                       // one unit column per (m, k) with t_m > 0
    std::vector<std::array<int, 3>> u_index;  // per target: column of u_{m,k}, -1 if t_m = 0
    Matrix v;                       // one unit column per target
    double orthogonality_residual = 0.0;      // max |(T^q x, y)| over constraint pairs
    double eps_prime = 0.0;
};

/// Chooses unit vectors in the eigenvector spans of T over the spectral
/// windows (lambda_m - eps', lambda_m + eps'), orthogonal to T^q(L0) and to
/// T^q of every other gadget for q = 0, 1, 2. Throws ConstructionError when
/// a window's span is exhausted by the constraints.
GadgetBundle gadget_vectors(const HermitianMatrix& T,
                            const std::vector<PlantTarget>& targets,
                            const Subspace& L0, double eps_prime);

struct PlantReport {
    Subspace L_prime;
    SpectrumSet spectrum;                  // Spec2(T, L') = Spec2(T, L0) + planted roots
    std::vector<std::array<cplx, 2>> planted_roots;   // per target
    std::vector<std::array<double, 2>> coeff_deviation;  // |p_k - q_k| per coefficient
    double block_diag_residual = 0.0;
    double coeff_bound = 0.0;              // C * eps' with C = 2 max(1, |T|)
};

/// Extends L0 by the gadget vectors; the compressed pencil becomes block
/// diagonal with 1x1 blocks p_k(lambda) = ((lambda I - T)^2 v_k, v_k).
PlantReport plant(const HermitianMatrix& T, const GadgetBundle& bundle,
                  const Subspace& L0);

enum class PlantMode { mechanism, full };

struct LevelReport {
    int level = 0;
    std::vector<cplx> F_l;
    SpectrumSet spectrum;
    double dH_to_F_l = 0.0;
    double dH_to_F = 0.0;          // against a fine reference sample of F
    bool enclosure_ok = false;
    bool q_region_ok = false;
    Eigen::Index subspace_dim = 0;
};

struct Theorem11Options {
    int levels = 4;
    PlantMode mode = PlantMode::mechanism;
    int eigenvalues_per_band = 200;   // mechanism-mode diagonal model
    int nest_stages = 1;              // full mode
    Eigen::Index nest_N_max = 1024;   // full mode
};

struct Theorem11Run {
    std::vector<LevelReport> levels;
    HermitianMatrix T;                // the operator used
    std::vector<double> spec_T;       // its eigenvalues
};

/// Drives the full pipeline: per level, sample F_l, solve weights, build
/// gadgets, plant, and report d_H(Spec2(T, L_l), F).
Theorem11Run theorem11_run(const TargetSet& target, const Theorem11Options& opts = {});

/// Interleaves two target sets: even levels chase F, odd levels chase F0.
struct InterleavedRun {
    Theorem11Run even;  // reports for F at levels 0,2,4,...
    Theorem11Run odd;   // reports for F0 at levels 1,3,5,...
};
InterleavedRun interleaved_run(const TargetSet& F, const TargetSet& F0,
                               const Theorem11Options& opts = {});

}  // namespace relspec
