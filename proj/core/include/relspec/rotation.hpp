#pragma once

#include "relspec/types.hpp"

namespace relspec {

/// For each target eigenvalue mu_k: distinct spectrum indices (lo_k, hi_k)
/// with lambda_lo <= mu_k <= lambda_hi, lambda_hi - lambda_lo < 2 delta, and
/// the interpolation weight t_k with mu_k = (1-t) lambda_lo + t lambda_hi.
struct EigenPairing {
    struct Pair {
        double mu = 0.0;
        Eigen::Index lo_index = 0, hi_index = 0;
        double lambda_lo = 0.0, lambda_hi = 0.0;
        double t = 0.0;
    };
    std::vector<Pair> pairs;
};

/// Greedy-with-backtracking selection of 2n distinct bracketing eigenvalues.
/// Throws ConstructionError naming the blocking target when the spectrum is
/// not dense enough.
EigenPairing pair_eigenvalues(const std::vector<double>& mu,
                              const RealVector& spectrum, double delta);

struct RotationResult {
    Matrix V;            // unitary, V = U U1
    HermitianMatrix B;   // V* B' V, top-left n x n block equals T
    HermitianMatrix R;   // V* R' V
    Matrix S;            // off-diagonal n x (N-n) block of B
    double norm_S = 0.0;
    double block_residual = 0.0;   // |top-left block - T|_F
    double unitary_residual = 0.0; // |V*V - I|_F
    EigenPairing pairing;
};

/// Rotates B' by a unitary so the top-left block becomes exactly T, with
/// coupling |S| < delta; R' is conjugated along.
RotationResult rotate_embedding(const HermitianMatrix& T, const HermitianMatrix& Bp,
                                const HermitianMatrix& Rp, double delta);

}  // namespace relspec
