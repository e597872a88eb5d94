#include "relspec/collapse.hpp"

#include <cmath>

#include "relspec/linalg.hpp"
#include "relspec/spec2.hpp"

namespace relspec {

namespace {

// largest eps0 = eps^2/(8 rho) 2^-k whose collapse radius and root height
// keep a 10% margin under eps
double eps0_schedule(double rho, double eps) {
    for (int k = 0; k <= 60; ++k) {
        const double e0 = eps * eps / (8.0 * rho) * std::pow(2.0, -k);
        const double beta = std::sqrt(2.0 * rho * e0);
        if (2.0 * rho * e0 + (beta + e0) * (beta + e0) < 0.81 * eps * eps &&
            beta + e0 < 0.9 * eps)
            return e0;
    }
    throw ConstructionError("collapse: no feasible eps0 in the halving schedule");
}

double density_gap_of(const std::vector<double>& eigs, double lo, double hi) {
    const int n = 4001;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / double(n - 1);
        double best = std::numeric_limits<double>::infinity();
        for (double e : eigs) best = std::min(best, std::abs(x - e));
        worst = std::max(worst, best);
    }
    return worst;
}

CollapseChecks run_checks(const CollapseCertificate& c) {
    CollapseChecks k;
    const Eigen::Index N = c.N;
    const Matrix L = c.B.mat() + cplx(0.0, 1.0) * c.A.mat();
    k.triangular_residual = Matrix(L.triangularView<Eigen::StrictlyUpper>()).norm();
    k.diagonal_residual = (L.diagonal().array() - c.z0).abs().maxCoeff();
    k.triangular_ok = k.triangular_residual <= tol::rel(1e-10, L.norm()) &&
                      k.diagonal_residual <= tol::rel(1e-10, std::abs(c.z0));

    Matrix C = cplx(0.0, -1.0) * (c.B.mat() * c.A.mat() - c.A.mat() * c.B.mat()) +
               c.A.mat() * c.A.mat();
    C = 0.5 * (C + C.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(C, Eigen::EigenvaluesOnly);
    k.commutator_min_eigenvalue = es.eigenvalues()(0);
    k.commutator_ok = k.commutator_min_eigenvalue >= -tol::rel(1e-9, C.norm());

    const double rho = 0.5 * (c.rho_plus - c.rho_minus);
    k.norm_R = c.R.norm2();
    k.norm_R_bound = 2.0 * rho * c.eps0 +
                     (std::sqrt(2.0 * rho * c.eps0) + c.eps0) *
                         (std::sqrt(2.0 * rho * c.eps0) + c.eps0);
    k.norm_ok = k.norm_R * k.norm_R <= k.norm_R_bound * (1.0 + 1e-9) &&
                k.norm_R < c.eps;

    EigenDecomposition d = hermitian_eig(c.B);
    std::vector<double> eigs(d.values.data(), d.values.data() + d.values.size());
    k.spec_lo = eigs.front();
    k.spec_hi = eigs.back();
    k.spec_in_interval_ok = k.spec_lo >= c.rho_minus - 1e-9 && k.spec_hi <= c.rho_plus + 1e-9;
    k.density_gap = density_gap_of(eigs, c.rho_minus, c.rho_plus);
    k.density_ok = k.density_gap < c.delta;

    k.root_location_ok = std::abs(c.z0.imag()) < c.eps &&
                         std::abs(c.z0.real() - c.r) <= tol::rel(1e-10, std::abs(c.r));

    // factorization identity at pseudo-random points:
    // l^2 - 2 l B + B^2 + R^2 = (l - (B + iA))(l - (B - iA))
    const Matrix I = Matrix::Identity(N, N);
    const Matrix B2R2 = c.B.mat() * c.B.mat() + c.R.mat() * c.R.mat();
    double fres = 0.0;
    Matrix probe = random_matrix(20, 1, 1u);
    for (int i = 0; i < 20; ++i) {
        const cplx l = probe(i, 0);
        const Matrix lhs = l * l * I - 2.0 * l * c.B.mat() + B2R2;
        const Matrix rhs = (l * I - (c.B.mat() + cplx(0.0, 1.0) * c.A.mat())) *
                           (l * I - (c.B.mat() - cplx(0.0, 1.0) * c.A.mat()));
        fres = std::max(fres, (lhs - rhs).norm());
    }
    k.factorization_residual = fres;
    return k;
}

}  // namespace

CollapseCertificate collapse_construct(double rho_minus, double rho_plus, double r,
                                       double delta, double eps,
                                       const CollapseOptions& opts) {
    if (!(rho_minus < rho_plus)) throw ConstructionError("collapse: empty interval");
    if (!(delta > 0.0) || !(eps > 0.0)) throw ConstructionError("collapse: need delta, eps > 0");
    if (!(rho_minus < r) || !(r < rho_plus))
        throw ConstructionError("collapse: r must lie strictly inside the interval");

    // work on the centered interval [-rho, rho]
    const double mid = 0.5 * (rho_minus + rho_plus);
    const double rho = 0.5 * (rho_plus - rho_minus);
    const double rc = r - mid;

    const double eps0 = eps0_schedule(rho, eps);
    AnalyticSymbol sym = build_symbol(rho, rc, eps0, opts.degree);

    Eigen::Index N = opts.fixed_N.value_or(std::max<Eigen::Index>(16, opts.N_min));
    if (!opts.fixed_N.has_value() && N > opts.N_max)
        throw ConstructionError("collapse: N_min " + std::to_string(N) +
                                " exceeds N_max " + std::to_string(opts.N_max));
    std::optional<Matrix> B0;
    double gap = std::numeric_limits<double>::infinity();
    double prev_gap = std::numeric_limits<double>::infinity();
    while (true) {
        Matrix Bc = toeplitz_real_part(sym, N);
        Eigen::SelfAdjointEigenSolver<Matrix> es(Bc, Eigen::EigenvaluesOnly);
        std::vector<double> eigs(es.eigenvalues().data(),
                                 es.eigenvalues().data() + es.eigenvalues().size());
        gap = density_gap_of(eigs, -rho, rho);
        if (gap < delta || opts.fixed_N.has_value()) { B0 = std::move(Bc); break; }
        if (2 * N > opts.N_max) {
            if (opts.allow_density_failure) { B0 = std::move(Bc); break; }
            throw ConstructionError(
                "collapse: Spec(B) not delta-dense at the size cap (gap " +
                std::to_string(gap) + " at N = " + std::to_string(N) +
                "); the required size grows exponentially in rho/eps0");
        }
        // edge-bound gaps barely move when N doubles; bail out early instead
        // of burning the whole escalation on a spectrum that cannot spread
        if (!opts.allow_density_failure && gap > 1.5 * delta && gap > 0.9 * prev_gap)
            throw ConstructionError(
                "collapse: density gap stagnating at " + std::to_string(gap) +
                " (N = " + std::to_string(N) +
                "); the required size grows exponentially in rho/eps0");
        prev_gap = gap;
        N *= 2;
    }

    const double beta = std::sqrt(2.0 * rho * eps0);
    const Matrix& Bc = *B0;
    Matrix Ac = beta * Matrix::Identity(N, N) + toeplitz_imag_part(sym, N);
    Matrix C = cplx(0.0, -1.0) * (Bc * Ac - Ac * Bc) + Ac * Ac;

    CollapseCertificate cert;
    cert.rho_minus = rho_minus;
    cert.rho_plus = rho_plus;
    cert.r = r;
    cert.delta = delta;
    cert.eps = eps;
    cert.eps0 = eps0;
    cert.a0 = sym.coeffs(0).imag();
    cert.N = N;
    cert.symbol = sym;
    // shift back from the centered interval
    cert.B = HermitianMatrix(*B0 + mid * Matrix::Identity(N, N));
    cert.A = HermitianMatrix(std::move(Ac));
    cert.R = psd_sqrt(HermitianMatrix(std::move(C)));
    cert.z0 = cplx(r, beta + cert.a0);
    cert.checks = run_checks(cert);
    if (!cert.checks.density_ok && !opts.allow_density_failure && !opts.fixed_N.has_value())
        throw ConstructionError("collapse: density check failed after shift-back");
    return cert;
}

CollapseChecks verify_collapse(const CollapseCertificate& cert) {
    return run_checks(cert);
}

HermitianMatrix dilate(const HermitianMatrix& B, const HermitianMatrix& M) {
    if (B.dim() != M.dim()) throw Error("dilate: dimension mismatch");
    Matrix d = M.mat() - B.mat() * B.mat();
    HermitianMatrix R = [&] {
        try {
            return psd_sqrt(HermitianMatrix(0.5 * (d + d.adjoint().eval())));
        } catch (const NotPositiveSemidefinite& e) {
            throw NotDilatable(std::string("dilate: M - B^2 not positive semidefinite (") +
                                   e.what() + ")",
                               e.min_eigenvalue);
        }
    }();
    const Eigen::Index N = B.dim();
    Matrix T = Matrix::Zero(2 * N, 2 * N);
    T.topLeftCorner(N, N) = B.mat();
    T.topRightCorner(N, N) = R.mat();
    T.bottomLeftCorner(N, N) = R.mat();
    return HermitianMatrix(std::move(T));
}

Counterexample assemble_counterexample(const CollapseCertificate& cert) {
    const Eigen::Index N = cert.N;
    Matrix T = Matrix::Zero(2 * N, 2 * N);
    T.topLeftCorner(N, N) = cert.B.mat();
    T.topRightCorner(N, N) = cert.R.mat();
    T.bottomLeftCorner(N, N) = cert.R.mat();
    return Counterexample{HermitianMatrix(std::move(T)),
                          Subspace::leading_coordinates(2 * N, N)};
}

}  // namespace relspec
