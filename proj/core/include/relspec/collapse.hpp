#pragma once

#include <optional>

#include "relspec/symbol.hpp"
#include "relspec/types.hpp"

namespace relspec {

/// Verified inequalities of a vertical-collapse construction on
/// [rho_minus, rho_plus]: Hermitian B, A, R with B + iA lower triangular of
/// constant diagonal z0, R = sqrt(-i[B,A] + A^2), so every root of
/// det(lambda^2 I - 2 lambda B + B^2 + R^2) equals z0 or conj(z0).
struct CollapseChecks {
    double triangular_residual = 0.0;   // |strict upper part of B + iA|_F
    double diagonal_residual = 0.0;     // max |diag(B + iA) - z0|
    double commutator_min_eigenvalue = 0.0;  // lambda_min(-i[B,A] + A^2)
    double norm_R = 0.0;
    double norm_R_bound = 0.0;          // 2 rho eps0 + (sqrt(2 rho eps0) + eps0)^2
    double density_gap = 0.0;           // sup over [rho-,rho+] of dist to Spec(B)
    double spec_lo = 0.0, spec_hi = 0.0;
    double factorization_residual = 0.0;  // pencil vs (l - (B+iA))(l - (B-iA)) at random l
    bool triangular_ok = false;
    bool commutator_ok = false;
    bool norm_ok = false;
    bool density_ok = false;
    bool spec_in_interval_ok = false;
    bool root_location_ok = false;  // |Im z0| < eps
    bool all_pass() const {
        return triangular_ok && commutator_ok && norm_ok && density_ok &&
               spec_in_interval_ok && root_location_ok;
    }
};

struct CollapseCertificate {
    // construction request
    double rho_minus = 0.0, rho_plus = 0.0, r = 0.0, delta = 0.0, eps = 0.0;
    // chosen parameters
    double eps0 = 0.0;
    double a0 = 0.0;        // Im of symbol at 0
    Eigen::Index N = 0;
    AnalyticSymbol symbol;
    HermitianMatrix B, A, R;
    cplx z0;                // r + i(sqrt(2 rho eps0) + a0)
    CollapseChecks checks;
};

struct CollapseOptions {
    Eigen::Index N_max = 4096;
    Eigen::Index N_min = 16;  // starting size for the density escalation
    int degree = 384;
    /// When set, build at exactly this N and skip the density escalation;
    /// density is still measured and recorded.
    std::optional<Eigen::Index> fixed_N;
    /// When true a failed density check is recorded instead of thrown.
    bool allow_density_failure = false;
};

/// The Toeplitz/analytic-symbol construction: all pencil roots collapse onto
/// the vertical segment at Re = r while Spec(B) stays delta-dense in the
/// interval. N doubles from 16 up to N_max until density holds.
CollapseCertificate collapse_construct(double rho_minus, double rho_plus, double r,
                                       double delta, double eps,
                                       const CollapseOptions& opts = {});

/// Re-runs every check of an existing certificate against its matrices.
CollapseChecks verify_collapse(const CollapseCertificate& cert);

/// Dilation [[B, (M-B^2)^{1/2}], [(M-B^2)^{1/2}, 0]]; requires B^2 <= M.
HermitianMatrix dilate(const HermitianMatrix& B, const HermitianMatrix& M);

struct Counterexample {
    HermitianMatrix T;  // [[B, R], [R, 0]], 2N x 2N
    Subspace L;         // first N coordinates
};

/// Assembles the 2N x 2N operator whose second-order spectrum on the first
/// block equals the collapsed pencil roots {z0, conj z0}.
Counterexample assemble_counterexample(const CollapseCertificate& cert);

}  // namespace relspec
