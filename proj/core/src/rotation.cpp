#include "relspec/rotation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

struct Candidate {
    Eigen::Index lo, hi;
    double width;
};

// depth-first assignment of disjoint bracketing pairs, candidates tried
// tightest first
bool assign(std::size_t k, const std::vector<std::vector<Candidate>>& cands,
            std::vector<bool>& used, std::vector<std::size_t>& choice,
            long& budget) {
    if (k == cands.size()) return true;
    for (std::size_t c = 0; c < cands[k].size(); ++c) {
        if (--budget < 0) return false;
        const auto& cd = cands[k][c];
        if (used[cd.lo] || used[cd.hi]) continue;
        used[cd.lo] = used[cd.hi] = true;
        choice[k] = c;
        if (assign(k + 1, cands, used, choice, budget)) return true;
        used[cd.lo] = used[cd.hi] = false;
    }
    return false;
}

}  // namespace

EigenPairing pair_eigenvalues(const std::vector<double>& mu,
                              const RealVector& spectrum, double delta) {
    const Eigen::Index m = spectrum.size();
    if (2 * static_cast<Eigen::Index>(mu.size()) > m)
        throw ConstructionError("pair_eigenvalues: need at least 2n spectrum points");
    // only the nearest spectrum points on each side of a target can give
    // tight brackets; keep a window of them so the search stays linear in m
    std::vector<Eigen::Index> order(m);
    for (Eigen::Index i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return spectrum(a) < spectrum(b); });
    // window large enough that even fully clustered targets find disjoint pairs
    const long window =
        std::min<long>(m, std::max<long>(12, static_cast<long>(mu.size()) + 4));
    std::vector<std::vector<Candidate>> cands(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const long split = std::upper_bound(order.begin(), order.end(), mu[k],
                                            [&](double v, Eigen::Index idx) {
                                                return v < spectrum(idx);
                                            }) -
                           order.begin();
        const long lo_begin = std::max(0L, split - window);
        const long hi_end = std::min(static_cast<long>(m), split + window);
        for (long a = lo_begin; a < split; ++a) {
            const Eigen::Index i = order[a];
            for (long b = split; b < hi_end; ++b) {
                const Eigen::Index j = order[b];
                const double w = spectrum(j) - spectrum(i);
                if (w < 2.0 * delta) cands[k].push_back({i, j, w});
            }
        }
        if (cands[k].empty())
            throw ConstructionError(
                "pair_eigenvalues: no bracketing pair within 2 delta for target " +
                std::to_string(mu[k]));
        std::sort(cands[k].begin(), cands[k].end(),
                  [](const Candidate& a, const Candidate& b) { return a.width < b.width; });
    }
    std::vector<bool> used(m, false);
    std::vector<std::size_t> choice(mu.size());
    long budget = 1000000;
    if (!assign(0, cands, used, choice, budget))
        throw ConstructionError(
            "pair_eigenvalues: no disjoint assignment of bracketing pairs "
            "(spectrum not delta-dense enough for all targets)");
    EigenPairing p;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const auto& cd = cands[k][choice[k]];
        EigenPairing::Pair pr;
        pr.mu = mu[k];
        pr.lo_index = cd.lo;
        pr.hi_index = cd.hi;
        pr.lambda_lo = spectrum(cd.lo);
        pr.lambda_hi = spectrum(cd.hi);
        pr.t = cd.width > 0.0 ? (mu[k] - pr.lambda_lo) / cd.width : 0.5;
        p.pairs.push_back(pr);
    }
    return p;
}

RotationResult rotate_embedding(const HermitianMatrix& T, const HermitianMatrix& Bp,
                                const HermitianMatrix& Rp, double delta) {
    const Eigen::Index n = T.dim();
    const Eigen::Index N = Bp.dim();
    if (Rp.dim() != N) throw Error("rotate_embedding: B' and R' dimensions differ");
    if (2 * n > N) throw ConstructionError("rotate_embedding: ambient space too small");

    EigenDecomposition dT = hermitian_eig(T);
    EigenDecomposition dB = hermitian_eig(Bp);
    std::vector<double> mu(dT.values.data(), dT.values.data() + n);
    EigenPairing pairing = pair_eigenvalues(mu, dB.values, delta);

    // rotated eigenvectors: v_k hits mu_k exactly, v_{-k} spans the rest of
    // the chosen two-dimensional eigenplane
    Matrix cols(N, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& pr = pairing.pairs[k];
        const double ct = std::sqrt(1.0 - pr.t);
        const double st = std::sqrt(pr.t);
        cols.col(k) = ct * dB.vectors.col(pr.lo_index) + st * dB.vectors.col(pr.hi_index);
        cols.col(n + k) =
            -st * dB.vectors.col(pr.lo_index) + ct * dB.vectors.col(pr.hi_index);
    }
    Matrix U = complete_unitary(cols, N);
    // align the leading diagonal block diag(mu) back onto T itself
    Matrix V = U;
    V.leftCols(n) = U.leftCols(n) * dT.vectors.adjoint();

    RotationResult res;
    res.pairing = std::move(pairing);
    res.V = V;
    res.B = HermitianMatrix(Matrix(V.adjoint() * Bp.mat() * V));
    res.R = HermitianMatrix(Matrix(V.adjoint() * Rp.mat() * V));
    res.S = res.B.mat().topRightCorner(n, N - n);
    Eigen::JacobiSVD<Matrix> svd(res.S);
    res.norm_S = svd.singularValues()(0);
    res.block_residual = (res.B.mat().topLeftCorner(n, n) - T.mat()).norm();
    res.unitary_residual = (V.adjoint() * V - Matrix::Identity(N, N)).norm();
    if (res.norm_S >= delta)
        throw ConstructionError("rotate_embedding: coupling norm " +
                                std::to_string(res.norm_S) + " not below delta");
    return res;
}

}  // namespace relspec
