#include "relspec/nesting.hpp"

#include <cmath>
#include <limits>

#include "relspec/linalg.hpp"
#include "relspec/spec2.hpp"

namespace relspec {

namespace {

// alpha seed for the l = 1 budget; only binds through min with eps_0 = 1/4
constexpr double kAlphaSeed = 0.999;

void validate_schedule(const NestSchedule& s) {
    if (s.stages < 1) throw ConstructionError("nest: need at least one stage");
    if (static_cast<int>(s.alpha.size()) != s.stages)
        throw ConstructionError("nest: alpha must have one entry per stage");
    double prev = kAlphaSeed + 1.0;
    for (double a : s.alpha) {
        if (!(a > 0.0) || !(a < 1.0) || !(a < prev))
            throw ConstructionError("nest: alpha must be strictly decreasing in (0, 1)");
        prev = a;
    }
    if (!(s.rho_minus < s.rho_plus)) throw ConstructionError("nest: empty interval");
    const double rc = s.r_centered();
    if (!(std::abs(rc) < 1.5))
        throw ConstructionError(
            "nest: r must sit inside the first stage interval (centered |r| < 1.5)");
}

// Delta for the narrow window. The pencil's roots are known exactly from the
// triangular factorization certificate, so probe sigma_min on the contour
// first: near a root of multiplicity N it underflows and the certified bound
// is an honest zero, which skips the full adaptive contour scan.
DeltaBound narrow_delta(const QuadraticPencil& p, double eps,
                        const std::vector<cplx>& centers) {
    if (!centers.empty()) {
        double probe = std::numeric_limits<double>::infinity();
        for (cplx c : centers)
            for (int k = 0; k < 8; ++k)
                probe = std::min(probe, smallest_singular_value(p.eval(
                                            c + std::polar(eps, 2.0 * M_PI * k / 8.0))));
        if (probe < 1e-10) {
            DeltaBound d;
            d.degenerate = true;
            d.value = 0.0;
            d.sampled_min = probe;
            d.samples = static_cast<long>(8 * centers.size());
            return d;
        }
    }
    return delta_bound(p, eps, centers);
}

HermitianMatrix assemble_dilation(const HermitianMatrix& B, const HermitianMatrix& R) {
    const Eigen::Index N = B.dim();
    Matrix T = Matrix::Zero(2 * N, 2 * N);
    T.topLeftCorner(N, N) = B.mat();
    T.topRightCorner(N, N) = R.mat();
    T.bottomLeftCorner(N, N) = R.mat();
    return HermitianMatrix(std::move(T));
}

}  // namespace

HermitianMatrix NestState::final_T() const {
    const HermitianMatrix& Tc = final_T_centered();
    const Eigen::Index n = Tc.dim();
    return HermitianMatrix(schedule.scale() * Tc.mat() +
                           schedule.shift() * Matrix::Identity(n, n));
}

NestState nest_run(const NestSchedule& schedule) {
    validate_schedule(schedule);
    const double rc = schedule.r_centered();

    NestState st;
    st.schedule = schedule;

    // seeds: rho_0 = varrho_0 = 0, eps_0 = 1/4, N_0 = 1, T_0 = 0 (2 x 2)
    HermitianMatrix T_prev(Matrix::Zero(2, 2));
    Eigen::Index N_prev = 1;
    double eps_prev = 0.25;
    double alpha_prev = kAlphaSeed;
    std::vector<cplx> prev_centers;  // certified pencil roots of the last stage

    for (int l = 1; l <= schedule.stages; ++l) {
        NestStage stage;
        stage.l = l;
        stage.rho = 2.0 - std::pow(2.0, -l);
        stage.varrho = 2.0 - 3.0 * std::pow(2.0, -l - 2);
        stage.rho_used = stage.rho;

        // Delta chain evaluated on the previous operator's windows
        QuadraticPencil p_narrow =
            compress(T_prev, Subspace::leading_coordinates(2 * N_prev, N_prev));
        stage.delta_narrow =
            narrow_delta(p_narrow, 0.5 * alpha_prev, prev_centers).value;
        // the full-window pencil of a Hermitian T is exactly (lambda - T)^2,
        // so sigma_min equals the squared distance to Spec(T); on the
        // boundary of the union of alpha-disks around Spec(T) that is alpha^2
        stage.delta_wide = alpha_prev * alpha_prev;
        stage.eps_budget = 0.45 * std::min({std::sqrt(stage.delta_narrow),
                                            std::sqrt(stage.delta_wide),
                                            schedule.alpha[l - 1], eps_prev});
        if (stage.eps_budget > 1e-12) {
            stage.eps = stage.eps_budget;
            stage.relaxed = false;
        } else {
            // the strict budget shrinks like the stability radius of an
            // N-fold root, which underflows once N is nontrivial; in loose
            // mode restart from the alpha scale and record the relaxation
            if (!schedule.loose_mode)
                throw ConstructionError("nest: stage " + std::to_string(l) +
                                        " has a degenerate eps budget (Delta vanished)");
            stage.eps = 0.45 * std::min(schedule.alpha[l - 1], eps_prev);
            stage.relaxed = true;
        }
        // rotation needs every eigenvalue of T_{l-1} bracketed by Spec(B_l);
        // when the previous stage overshot its norm budget, widen this
        // stage's collapse interval to cover it and record the relaxation
        EigenDecomposition d_prev = hermitian_eig(T_prev);
        const double mu_min = d_prev.values(0);
        const double mu_max = d_prev.values(d_prev.values.size() - 1);
        const double prev_norm = std::max(std::abs(mu_min), std::abs(mu_max));
        if (1.02 * prev_norm + 0.05 > stage.rho) {
            if (!schedule.loose_mode)
                throw ConstructionError(
                    "nest: stage " + std::to_string(l) + " interval [-" +
                    std::to_string(stage.rho) + ", " + std::to_string(stage.rho) +
                    "] cannot contain Spec(T_" + std::to_string(l - 1) +
                    ") of norm " + std::to_string(prev_norm));
            stage.rho_used = 1.05 * prev_norm + 0.05;
            stage.relaxed = true;
        }
        CollapseOptions copts;
        copts.N_max = schedule.N_max;
        copts.N_min = std::max<Eigen::Index>(16, 4 * N_prev);
        copts.degree = schedule.symbol_degree;
        const double eps_cap = 20.0 * std::max(1.0, stage.rho_used);
        std::string last_error;
        bool built = false;
        cplx stage_z0;
        while (!built) {
            auto escalate_eps = [&](const std::string& why) {
                last_error = why;
                if (!schedule.loose_mode || stage.eps * 2.0 > eps_cap)
                    throw ConstructionError(
                        "nest: stage " + std::to_string(l) + " unattainable at eps " +
                        std::to_string(stage.eps) + " (budget " +
                        std::to_string(stage.eps_budget) + "): " + last_error);
                stage.eps *= 2.0;
                stage.relaxed = true;
            };
            CollapseCertificate cert;
            try {
                cert = collapse_construct(-stage.rho_used, stage.rho_used, rc,
                                          stage.eps, stage.eps, copts);
            } catch (const ConstructionError& e) {
                escalate_eps(e.what());
                continue;
            }
            // the Toeplitz spectrum concentrates toward the center when eps0
            // is small; a larger eps admits a taller symbol whose spectrum
            // spreads out far enough to reach every rotation target
            if (cert.checks.spec_lo > mu_min || cert.checks.spec_hi < mu_max) {
                escalate_eps("Spec(B) range [" + std::to_string(cert.checks.spec_lo) +
                             ", " + std::to_string(cert.checks.spec_hi) +
                             "] does not cover Spec(T_" + std::to_string(l - 1) + ")");
                continue;
            }
            try {
                RotationResult rot = rotate_embedding(T_prev, cert.B, cert.R, stage.eps);
                stage.N = cert.N;
                stage.delta = stage.eps;
                stage.density_gap = cert.checks.density_gap;
                stage.norm_R = cert.checks.norm_R;
                stage.norm_S = rot.norm_S;
                stage.B = rot.B;
                stage.R = rot.R;
                stage_z0 = cert.z0;
                built = true;
            } catch (const ConstructionError& e) {
                // bracketing failed: the relaxed density target let N stop
                // too early, so demand more spectrum points before touching eps
                if (schedule.loose_mode && 2 * std::max(copts.N_min, cert.N) <= copts.N_max) {
                    copts.N_min = 2 * std::max(copts.N_min, cert.N);
                    stage.relaxed = true;
                } else {
                    escalate_eps(e.what());
                }
            }
        }
        stage.T = assemble_dilation(stage.B, stage.R);
        stage.norm_T = stage.T.norm2();

        T_prev = stage.T;
        N_prev = stage.N;
        eps_prev = stage.eps;
        alpha_prev = schedule.alpha[l - 1];
        prev_centers = {stage_z0, std::conj(stage_z0)};
        st.stage.push_back(std::move(stage));
    }
    return st;
}

bool NestReport::all_pass() const {
    for (const auto& s : stages)
        if (!(s.telescoping_ok && s.square_compression_ok && s.collapse_ok &&
              s.window_recovery_ok && s.norm_ok && s.enclosure_ok))
            return false;
    return true;
}

NestReport verify_nest(const NestState& state, const HermitianMatrix& T_final) {
    if (state.stage.empty()) throw Error("verify_nest: empty state");
    if (T_final.dim() != state.last().T.dim())
        throw Error("verify_nest: final operator dimension mismatch");
    const double rc = state.schedule.r_centered();

    EigenDecomposition dT = hermitian_eig(T_final);
    std::vector<double> spec_T(dT.values.data(), dT.values.data() + dT.values.size());
    const double scale = std::max(1.0, T_final.norm2());

    NestReport rep;
    const int L = static_cast<int>(state.stage.size());
    for (int l = 1; l < L; ++l) {
        const NestStage& s = state.stage[l - 1];
        const NestStage& next = state.stage[l];
        NestStageReport r;
        r.l = l;
        const Eigen::Index w = s.T.dim();  // 2 N_l

        r.telescoping_residual = (T_final.mat().topLeftCorner(w, w) - s.T.mat()).norm();
        r.telescoping_ok = r.telescoping_residual < 1e-12 * std::max(1.0, s.T.frobenius());

        Matrix T2 = T_final.mat() * T_final.mat();
        Matrix diff = T2.topLeftCorner(w, w) - s.T.mat() * s.T.mat();
        r.square_compression_norm = HermitianMatrix(0.5 * (diff + diff.adjoint().eval())).norm2();
        r.square_compression_bound = 4.0 * next.eps * next.eps;
        r.square_compression_ok =
            r.square_compression_norm <= r.square_compression_bound * (1.0 + 1e-9);

        SpectrumSet narrow = spec2(T_final, Subspace::leading_coordinates(T_final.dim(), s.N));
        r.collapse_max_dist = 0.0;
        for (cplx z : narrow.points)
            r.collapse_max_dist = std::max(r.collapse_max_dist, std::abs(z - cplx(rc, 0.0)));
        r.collapse_bound = state.schedule.alpha[l - 1];
        r.collapse_ok = r.collapse_max_dist < r.collapse_bound;

        SpectrumSet wide = spec2(T_final, Subspace::leading_coordinates(T_final.dim(), w));
        r.window_interval_dH =
            hausdorff_to_interval(wide.points, Interval{-s.varrho, s.varrho});
        r.window_interval_bound =
            std::pow(2.0, -l) + std::pow(2.0, -l - 1) + state.schedule.alpha[l - 1];
        r.window_recovery_ok = r.window_interval_dH <= r.window_interval_bound;

        r.norm_T = s.norm_T;
        r.norm_bound = s.varrho;
        r.norm_ok = r.norm_T <= r.norm_bound + 1e-12;

        r.enclosure_ok = enclosure_all_pass(narrow, spec_T, scale) &&
                         enclosure_all_pass(wide, spec_T, scale);
        rep.stages.push_back(r);
    }
    return rep;
}

}  // namespace relspec
