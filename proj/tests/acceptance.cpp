// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Two checks are expected to fail at desk scale and are reported honestly:
// the thin-height density requirement of criterion 1(b) and the collapse and
// window-recovery radii of criterion 5. Both need the spectrum of a Toeplitz
// matrix with a very thin symbol to reach the interval edges, and the edge
// mass of such symbols decays like exp(-c * width / height), so the required
// matrix size grows exponentially past any desk-scale cap.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relspec/collapse.hpp"
#include "relspec/linalg.hpp"
#include "relspec/nesting.hpp"
#include "relspec/planting.hpp"
#include "relspec/rotation.hpp"
#include "relspec/spec2.hpp"

using namespace relspec;

namespace {

struct Recorded {
    SpectrumSet spectrum;
    std::vector<double> spec_T;
    double scale = 1.0;
};
std::vector<Recorded> g_spectra;

void record(const SpectrumSet& s, const HermitianMatrix& T) {
    EigenDecomposition d = hermitian_eig(T);
    Recorded r;
    r.spectrum = s;
    r.spec_T.assign(d.values.data(), d.values.data() + d.values.size());
    r.scale = std::max(1.0, T.norm2());
    g_spectra.push_back(std::move(r));
}

void record(const SpectrumSet& s, const std::vector<double>& spec_T, double scale) {
    g_spectra.push_back({s, spec_T, scale});
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail,
            std::chrono::steady_clock::time_point t0) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  (%s; %.1fs)\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// criterion 1: triangular collapse certificate on [-2, 2], r = 0.5,
// delta = 0.2, eps = 0.4, N <= 1024
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        CollapseOptions opts;
        opts.N_max = 1024;
        opts.allow_density_failure = true;
        CollapseCertificate c = collapse_construct(-2.0, 2.0, 0.5, 0.2, 0.4, opts);
        bool a = c.checks.norm_R < 0.4;
        bool b = c.checks.spec_lo >= -2.0 - 1e-8 && c.checks.spec_hi <= 2.0 + 1e-8 &&
                 c.checks.density_gap <= 0.2;
        double im_z0 = std::sqrt(2.0 * 2.0 * c.eps0) + c.a0;
        bool cc = c.checks.triangular_residual < 1e-8 && c.checks.diagonal_residual < 1e-8 &&
                  std::abs(c.z0.imag() - im_z0) < 1e-10 && std::abs(c.z0.imag()) < 0.4;
        bool d = c.checks.factorization_residual < 1e-8;
        std::string detail = "a " + std::string(a ? "ok" : "fail") +
                             fmt(", |R| = %.3f", c.checks.norm_R) + "; b " +
                             (b ? "ok" : "fail") +
                             fmt(", density gap %.3f at N = %.0f", c.checks.density_gap,
                                 static_cast<double>(c.N)) +
                             "; c " + (cc ? "ok" : "fail") + "; d " + (d ? "ok" : "fail");
        report(1, a && b && cc && d, detail, t0);
    } catch (const Error& e) {
        report(1, false, std::string("construction failed: ") + e.what(), t0);
    }
}

// criterion 2: companion eigenvalues of the collapsed pencil cluster at
// {z0, conj z0} within 10 * (1e-12)^(1/N) for N in {8, 16, 32}
void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (Eigen::Index N : {8, 16, 32}) {
        CollapseOptions opts;
        opts.fixed_N = N;
        opts.allow_density_failure = true;
        CollapseCertificate c = collapse_construct(-2.0, 2.0, 0.5, 0.2, 0.4, opts);
        Counterexample cx = assemble_counterexample(c);
        SpectrumSet s = spec2(cx.T, cx.L);
        record(s, cx.T);
        double worst = 0.0;
        for (cplx z : s.points)
            worst = std::max(worst,
                             std::min(std::abs(z - c.z0), std::abs(z - std::conj(c.z0))));
        double radius = 10.0 * std::pow(1e-12, 1.0 / static_cast<double>(N));
        if (worst >= radius) pass = false;
        if (!detail.empty()) detail += ", ";
        detail += "N " + std::to_string(N) + fmt(" scatter %.2e of %.2e", worst, radius);
    }
    report(2, pass, detail, t0);
}

// criterion 3: dilation roundtrip for 100 random pairs plus the refusal case
void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    double worst_B = 0.0, worst_M = 0.0;
    for (unsigned k = 0; k < 100; ++k) {
        Eigen::Index n = 2 + (k % 7);
        HermitianMatrix B = random_hermitian(n, 1000 + k);
        Matrix G = random_matrix(n, n, 2000 + k);
        HermitianMatrix M(Matrix(B.mat() * B.mat() + G.adjoint() * G));
        HermitianMatrix T = dilate(B, M);
        QuadraticPencil p = compress(T, Subspace::leading_coordinates(2 * n, n));
        worst_B = std::max(worst_B, (p.B.mat() - B.mat()).norm());
        worst_M = std::max(worst_M,
                           (p.M.mat() - M.mat()).norm() / std::max(1.0, M.frobenius()));
    }
    if (worst_B > 1e-12 || worst_M > 1e-9) pass = false;
    bool refused = false;
    try {
        HermitianMatrix B = random_hermitian(3, 42);
        dilate(B, HermitianMatrix(Matrix(B.mat() * B.mat() - 1e-3 * Matrix::Identity(3, 3))));
    } catch (const NotDilatable&) {
        refused = true;
    }
    if (!refused) pass = false;
    report(3, pass,
           fmt("max |B residual| %.1e, rel M residual %.1e", worst_B, worst_M) +
               (refused ? ", refusal ok" : ", refusal MISSING"),
           t0);
}

// criterion 4: 50 random Hermitian targets rotated into a dense certificate
void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        CollapseOptions opts;
        opts.N_max = 1024;
        CollapseCertificate c = collapse_construct(-2.0, 2.0, 0.5, 0.05, 13.0, opts);
        bool pass = true;
        double worst_block = 0.0, worst_S = 0.0, worst_spec = 0.0;
        for (unsigned k = 0; k < 50; ++k) {
            Eigen::Index n = 1 + (k % 4);
            HermitianMatrix T0 = random_hermitian(n, 3000 + k);
            double scale = 1.4 / std::max(1.0, T0.norm2());
            HermitianMatrix T(Matrix(scale * T0.mat()));
            RotationResult rot = rotate_embedding(T, c.B, c.R, 0.1);
            worst_block = std::max(worst_block, rot.block_residual);
            worst_S = std::max(worst_S, rot.norm_S);
            EigenDecomposition before = hermitian_eig(c.B);
            EigenDecomposition after = hermitian_eig(rot.B);
            worst_spec =
                std::max(worst_spec, (before.values - after.values).cwiseAbs().maxCoeff());
        }
        if (worst_block >= 1e-10 || worst_S >= 0.1 || worst_spec >= 1e-9) pass = false;
        report(4, pass,
               fmt("block residual %.1e, max |S| %.3f", worst_block, worst_S) +
                   fmt(", spec drift %.1e", worst_spec),
               t0);
    } catch (const Error& e) {
        report(4, false, std::string("construction failed: ") + e.what(), t0);
    }
}

// criterion 5: two-stage nested run on [-2, 2], r = 0.5, alpha = (0.5, 0.4)
void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        NestSchedule s;
        s.stages = 2;
        s.alpha = {0.5, 0.4};
        s.r = 0.5;
        s.N_max = 2048;
        NestState st = nest_run(s);
        const HermitianMatrix& T = st.final_T_centered();
        NestReport rep = verify_nest(st, T);
        const NestStageReport& r = rep.stages.at(0);
        EigenDecomposition d = hermitian_eig(T);
        std::vector<double> spec_T(d.values.data(), d.values.data() + d.values.size());
        double scale = std::max(1.0, T.norm2());
        SpectrumSet narrow =
            spec2(T, Subspace::leading_coordinates(T.dim(), st.stage[0].N));
        SpectrumSet wide =
            spec2(T, Subspace::leading_coordinates(T.dim(), 2 * st.stage[0].N));
        record(narrow, spec_T, scale);
        record(wide, spec_T, scale);
        bool tele = r.telescoping_residual < 1e-12 * std::max(1.0, st.stage[0].T.frobenius());
        bool collapse = r.collapse_max_dist < 0.5;
        bool window = r.window_interval_dH <= 0.5 + 0.25 + 0.5;
        report(5, tele && collapse && window,
               fmt("telescoping %.1e", r.telescoping_residual) +
                   fmt(", collapse radius %.2f (need < 0.50)", r.collapse_max_dist) +
                   fmt(", window dH %.2f (need <= 1.25)", r.window_interval_dH) +
                   (st.stage[0].relaxed || st.stage[1].relaxed ? ", loose mode" : ""),
               t0);
    } catch (const Error& e) {
        report(5, false, std::string("construction failed: ") + e.what(), t0);
    }
}

TargetSet standard_target() {
    TargetSet t;
    t.sigma = IntervalUnion(std::vector<Interval>{{-1.0, 0.0}, {1.0, 2.0}});
    t.F.points = {cplx(-0.5, 0.0), cplx(1.5, 0.0), cplx(0.5, 0.8)};
    return t;
}

// criterion 6: diagonal-model planting run, 200 eigenvalues per band, 4 levels
void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        Theorem11Options opts;
        opts.levels = 4;
        opts.eigenvalues_per_band = 200;
        Theorem11Run run = theorem11_run(standard_target(), opts);
        bool pass = true;
        double prev = 1e300, last = 1e300;
        for (const LevelReport& lv : run.levels) {
            if (lv.dH_to_F > prev + 1e-12) pass = false;
            if (!lv.enclosure_ok || !lv.q_region_ok) pass = false;
            record(lv.spectrum, run.spec_T, 2.0);
            prev = lv.dH_to_F;
            last = lv.dH_to_F;
        }
        if (!(last < 0.05)) pass = false;
        report(6, pass, fmt("final dH %.2e over %.0f levels", last, 4.0), t0);
    } catch (const Error& e) {
        report(6, false, std::string("construction failed: ") + e.what(), t0);
    }
}

// criterion 7: interleaving two target sets across levels
void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        TargetSet F0;
        F0.sigma = IntervalUnion(std::vector<Interval>{{-1.0, 0.0}, {1.0, 2.0}});
        F0.F.points = {cplx(-0.5, 0.0), cplx(1.5, 0.0), cplx(0.3, 0.5)};
        Theorem11Options opts;
        opts.levels = 4;
        opts.eigenvalues_per_band = 200;
        InterleavedRun run = interleaved_run(standard_target(), F0, opts);
        bool pass = true;
        double worst = 0.0;
        for (const LevelReport& lv : run.even.levels) {
            if (!(lv.dH_to_F < 0.05) || lv.level % 2 != 0) pass = false;
            record(lv.spectrum, run.even.spec_T, 2.0);
            worst = std::max(worst, lv.dH_to_F);
        }
        for (const LevelReport& lv : run.odd.levels) {
            if (!(lv.dH_to_F < 0.05) || lv.level % 2 != 1) pass = false;
            record(lv.spectrum, run.odd.spec_T, 2.0);
            worst = std::max(worst, lv.dH_to_F);
        }
        report(7, pass, fmt("worst interleaved dH %.2e", worst), t0);
    } catch (const Error& e) {
        report(7, false, std::string("construction failed: ") + e.what(), t0);
    }
}

// criterion 8: every spectrum recorded by criteria 1-7 passes enclosure
void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = !g_spectra.empty();
    long points = 0;
    for (const Recorded& r : g_spectra) {
        points += static_cast<long>(r.spectrum.size());
        if (!enclosure_all_pass(r.spectrum, r.spec_T, r.scale)) pass = false;
    }
    report(8, pass,
           fmt("%.0f spectra, %.0f points", static_cast<double>(g_spectra.size()),
               static_cast<double>(points)),
           t0);
}

// criterion 9: certified stability radius keeps perturbed roots in place
void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    const double eps = 0.1;
    bool pass = true;
    double worst_excess = 0.0;
    for (unsigned k = 0; k < 50 && pass; ++k) {
        Eigen::Index n = 2 + (k % 4);
        HermitianMatrix B = random_hermitian(n, 5000 + k);
        Matrix G = random_matrix(n, n, 6000 + k);
        HermitianMatrix M(Matrix(B.mat() * B.mat() + G.adjoint() * G));
        QuadraticPencil p(B, M);
        DeltaBound d = delta_bound(p, eps);
        if (!(d.value > 0.0)) continue;  // degenerate bound certifies nothing
        std::vector<cplx> base = spec2(p).points;
        // connected components of the eps-disk union
        std::vector<int> comp(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) comp[i] = static_cast<int>(i);
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = 0; j < base.size(); ++j)
                if (std::abs(base[i] - base[j]) <= 2.0 * eps) {
                    int a = comp[i], b = comp[j];
                    for (auto& c : comp)
                        if (c == b) c = a;
                }
        for (unsigned q = 0; q < 50 && pass; ++q) {
            HermitianMatrix D = random_hermitian(n, 7000 + 97 * k + q);
            double scale = 0.9 * d.value / D.norm2();
            std::vector<cplx> moved =
                oracles::companion_roots(B.mat(), M.mat() + scale * D.mat());
            std::vector<int> count_base(base.size(), 0), count_moved(base.size(), 0);
            for (std::size_t i = 0; i < base.size(); ++i) ++count_base[comp[i]];
            for (cplx z : moved) {
                double best = 1e300;
                std::size_t arg = 0;
                for (std::size_t i = 0; i < base.size(); ++i)
                    if (std::abs(z - base[i]) < best) {
                        best = std::abs(z - base[i]);
                        arg = i;
                    }
                worst_excess = std::max(worst_excess, best - eps);
                if (best > eps + 1e-9) pass = false;
                ++count_moved[comp[arg]];
            }
            if (count_base != count_moved) pass = false;
        }
    }
    report(9, pass, fmt("worst root drift beyond eps: %.1e", worst_excess), t0);
}

// criterion 10: spec2 against the expanded-determinant root oracle
void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<QuadraticPencil> corpus;
    corpus.emplace_back(HermitianMatrix::zero(1), HermitianMatrix::identity(1));
    corpus.emplace_back(HermitianMatrix::zero(1), HermitianMatrix::zero(1));
    {
        Matrix b(1, 1), m(1, 1);
        b << 1;
        m << 2;
        corpus.emplace_back(HermitianMatrix(b), HermitianMatrix(m));
    }
    for (unsigned k = 0; k < 12; ++k) {
        Eigen::Index n = 2 + (k % 2);
        HermitianMatrix B = random_hermitian(n, 8000 + k);
        Matrix G = random_matrix(n, n, 9000 + k);
        corpus.emplace_back(B, HermitianMatrix(Matrix(B.mat() * B.mat() + G.adjoint() * G)));
    }
    double worst = 0.0;
    for (const QuadraticPencil& p : corpus)
        worst = std::max(worst, oracles::hausdorff_brute(spec2(p).points,
                                                         oracles::pencil_roots(p)));
    report(10, worst < 1e-6, fmt("worst oracle Hausdorff %.1e", worst), t0);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
