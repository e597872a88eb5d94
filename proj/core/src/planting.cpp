#include "relspec/planting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/SVD>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

constexpr double kRealTol = 1e-9;

// upper-half sample of the target geometry at the given spacing
std::vector<cplx> sample_geometry(const TargetGeometry& g, double h) {
    std::vector<cplx> out;
    for (cplx p : g.points) out.push_back(p);
    for (const auto& seg : g.segments) {
        const double len = std::abs(seg.second - seg.first);
        const int n = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int i = 0; i <= n; ++i)
            out.push_back(seg.first + (seg.second - seg.first) * (double(i) / n));
    }
    for (const Disk& d : g.disks) {
        out.push_back(d.center);
        for (double rad = d.radius; rad > 0.0; rad -= h) {
            const int n = std::max(4, static_cast<int>(std::ceil(2.0 * M_PI * rad / h)));
            for (int i = 0; i < n; ++i)
                out.push_back(d.center + std::polar(rad, 2.0 * M_PI * i / n));
        }
    }
    return out;
}

cplx nudge_inward(cplx z, const QRegion& q, double d, bool* moved) {
    const Disk& o = q.outer();
    if (std::abs(z - o.center) > o.radius - d) {
        const cplx dir = std::abs(z - o.center) > 0 ? (z - o.center) / std::abs(z - o.center)
                                                    : cplx(0.0, 1.0);
        z = o.center + dir * (o.radius - d);
        *moved = true;
    }
    for (const Disk& g : q.gap_disks()) {
        if (std::abs(z - g.center) < g.radius + d) {
            const cplx dir = std::abs(z - g.center) > 0
                                 ? (z - g.center) / std::abs(z - g.center)
                                 : cplx(0.0, 1.0);
            z = g.center + dir * (g.radius + d);
            *moved = true;
        }
    }
    return z;
}

std::vector<cplx> symmetrize(const std::vector<cplx>& upper) {
    std::vector<cplx> out = upper;
    for (cplx z : upper)
        if (z.imag() > kRealTol) out.push_back(std::conj(z));
    return out;
}

}  // namespace

void validate_target(const TargetSet& target) {
    if (target.F.empty()) throw ConstructionError("target: F is empty");
    const QRegion q = q_region(target.sigma);
    const double diam = 2.0 * q.outer().radius;
    const std::vector<cplx> fine = sample_geometry(target.F, diam / 512.0);
    std::ostringstream offenders;
    int bad = 0;
    for (cplx z : fine) {
        if (!q.contains(z, 1e-9 * diam)) {
            if (bad < 5) offenders << " (" << z.real() << ", " << z.imag() << ")";
            ++bad;
        }
    }
    if (bad > 0)
        throw ConstructionError("target: " + std::to_string(bad) +
                                " sampled points of F leave Q(sigma):" + offenders.str());
    for (const Interval& band : target.sigma.intervals()) {
        bool hit = false;
        for (cplx z : fine)
            if (std::abs(z.imag()) < kRealTol && band.lo < z.real() && z.real() < band.hi) {
                hit = true;
                break;
            }
        if (!hit)
            throw ConstructionError("target: F misses the open band (" +
                                    std::to_string(band.lo) + ", " +
                                    std::to_string(band.hi) + ")");
    }
}

LevelSample sample_target(const TargetSet& target, int level) {
    const QRegion q = q_region(target.sigma);
    const double diam = 2.0 * q.outer().radius;
    const double h = std::pow(2.0, -level - 2);

    LevelSample s;
    s.level = level;
    for (cplx z : sample_geometry(target.F, h)) {
        bool moved = false;
        z = nudge_inward(z, q, 1e-3 * diam, &moved);
        if (moved) ++s.nudged;
        if (std::abs(z.imag()) < kRealTol) z = cplx(z.real(), 0.0);
        bool dup = false;
        for (cplx w : s.upper_half)
            if (std::abs(w - z) < 1e-12) { dup = true; break; }
        if (!dup) s.upper_half.push_back(z);
    }
    s.F_l = symmetrize(s.upper_half);
    const std::vector<cplx> ref = symmetrize([&] {
        std::vector<cplx> r;
        for (cplx z : sample_geometry(target.F, h / 8.0)) {
            bool moved = false;
            r.push_back(nudge_inward(z, q, 1e-3 * diam, &moved));
        }
        return r;
    }());
    s.dH_to_reference = hausdorff(s.F_l, ref);
    return s;
}

PlantTarget solve_weights(cplx mu, const IntervalUnion& sigma,
                          const std::vector<double>& grid) {
    PlantTarget best;
    best.mu = mu;
    if (std::abs(mu.imag()) <= kRealTol) {
        for (const Interval& band : sigma.intervals())
            if (band.lo < mu.real() && mu.real() < band.hi) {
                best.lambda = {mu.real(), mu.real(), mu.real()};
                best.t = {1.0, 0.0, 0.0};
                best.residual = 0.0;
                return best;
            }
        throw ConstructionError("solve_weights: real target " +
                                std::to_string(mu.real()) + " lies in no open band");
    }

    std::vector<double> pts;
    if (grid.empty()) {
        for (const Interval& band : sigma.intervals())
            for (int i = 0; i < 64; ++i)
                pts.push_back(band.lo + (i + 0.5) * (band.hi - band.lo) / 64.0);
    } else {
        for (double x : grid) {
            bool open = false;
            for (const Interval& band : sigma.intervals())
                if (band.lo < x && x < band.hi) { open = true; break; }
            if (open) pts.push_back(x);
        }
    }
    // keep the triple enumeration tractable on dense grids
    if (pts.size() > 72) {
        std::vector<double> sub;
        const double step = double(pts.size()) / 72.0;
        for (int i = 0; i < 72; ++i) sub.push_back(pts[static_cast<std::size_t>(i * step)]);
        pts.swap(sub);
    }
    if (pts.size() < 2)
        throw ConstructionError("solve_weights: grid has fewer than two usable points");

    std::vector<cplx> w(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx d = mu - pts[i];
        w[i] = d * d;
    }
    double best_margin = -1.0;
    double best_residual = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                // barycentric coordinates of 0 in the triangle {w_i, w_j, w_k}
                const cplx a = w[i] - w[k], b = w[j] - w[k];
                const double det = a.real() * b.imag() - a.imag() * b.real();
                if (std::abs(det) < 1e-14) continue;
                const double t1 = (-w[k].real() * b.imag() + w[k].imag() * b.real()) / det;
                const double t2 = (-a.real() * w[k].imag() + a.imag() * w[k].real()) / det;
                const double t3 = 1.0 - t1 - t2;
                const double mn = std::min({t1, t2, t3});
                if (mn < -1e-12) continue;
                std::array<double, 3> t{std::clamp(t1, 0.0, 1.0),
                                        std::clamp(t2, 0.0, 1.0),
                                        std::clamp(t3, 0.0, 1.0)};
                const double sum = t[0] + t[1] + t[2];
                for (double& x : t) x /= sum;
                const cplx res = t[0] * w[i] + t[1] * w[j] + t[2] * w[k];
                if (!found || mn > best_margin) {
                    found = true;
                    best_margin = mn;
                    best_residual = std::abs(res);
                    best.lambda = {pts[i], pts[j], pts[k]};
                    best.t = t;
                    best.residual = std::abs(res);
                }
                best_residual = std::min(best_residual, std::abs(res));
            }
    if (!found || best.residual > 1e-10 * (1.0 + std::norm(mu)))
        throw ConstructionError(
            "solve_weights: no weight triple contains 0 for target (" +
            std::to_string(mu.real()) + ", " + std::to_string(mu.imag()) +
            "); best residual " + std::to_string(best_residual));
    return best;
}

GadgetBundle gadget_vectors(const HermitianMatrix& T,
                            const std::vector<PlantTarget>& targets,
                            const Subspace& L0, double eps_prime) {
    if (!(eps_prime > 0.0)) throw ConstructionError("gadget_vectors: eps' must be positive");
    const Eigen::Index dim = T.dim();
    if (L0.ambient_dim() != dim) throw Error("gadget_vectors: base space dimension mismatch");
    EigenDecomposition d = hermitian_eig(T);

    GadgetBundle bundle;
    bundle.targets = targets;
    bundle.eps_prime = eps_prime;
    // L0 basis then accepted gadget vectors
    Matrix chosen = L0.rank() > 0 ? Matrix(L0.basis()) : Matrix(dim, 0);

    std::vector<Vector> u_cols;
    for (const PlantTarget& tg : targets) {
        std::array<int, 3> idx{-1, -1, -1};
        for (int m = 0; m < 3; ++m) {
            if (tg.t[m] <= 1e-14) continue;
            std::vector<Eigen::Index> in_window;
            for (Eigen::Index i = 0; i < dim; ++i)
                if (std::abs(d.values(i) - tg.lambda[m]) < eps_prime) in_window.push_back(i);
            const Eigen::Index span = static_cast<Eigen::Index>(in_window.size());
            const Eigen::Index ncon = 3 * chosen.cols();
            if (span == 0)
                throw ConstructionError("gadget_vectors: spectral window around " +
                                        std::to_string(tg.lambda[m]) + " is empty");
            Matrix E(dim, span);
            for (Eigen::Index c = 0; c < span; ++c) E.col(c) = d.vectors.col(in_window[c]);
            Vector coef;
            if (ncon == 0) {
                coef = Vector::Zero(span);
                coef(0) = 1.0;
            } else {
                Matrix C(dim, ncon);
                C.leftCols(chosen.cols()) = chosen;
                C.middleCols(chosen.cols(), chosen.cols()) = T.mat() * chosen;
                C.rightCols(chosen.cols()) = T.mat() * (T.mat() * chosen);
                Matrix G = C.adjoint() * E;
                Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeFullV);
                const Eigen::Index last = span - 1;
                const double smin =
                    svd.singularValues().size() >= span ? svd.singularValues()(last) : 0.0;
                if (smin > 1e-8)
                    throw ConstructionError(
                        "gadget_vectors: window span around " + std::to_string(tg.lambda[m]) +
                        " exhausted by constraints (span " + std::to_string(span) +
                        ", constraints " + std::to_string(ncon) + ")");
                coef = svd.matrixV().col(last);
            }
            Vector u = E * coef;
            u /= u.norm();
            idx[m] = static_cast<int>(u_cols.size());
            u_cols.push_back(u);
            chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
            chosen.col(chosen.cols() - 1) = u;
        }
        bundle.u_index.push_back(idx);
    }

    bundle.u.resize(dim, static_cast<Eigen::Index>(u_cols.size()));
    for (std::size_t c = 0; c < u_cols.size(); ++c)
        bundle.u.col(static_cast<Eigen::Index>(c)) = u_cols[c];

    bundle.v.resize(dim, static_cast<Eigen::Index>(targets.size()));
    for (std::size_t k = 0; k < targets.size(); ++k) {
        Vector v = Vector::Zero(dim);
        for (int m = 0; m < 3; ++m)
            if (bundle.u_index[k][m] >= 0)
                v += std::sqrt(targets[k].t[m]) * bundle.u.col(bundle.u_index[k][m]);
        bundle.v.col(static_cast<Eigen::Index>(k)) = v / v.norm();
    }

    // max |(T^q x, y)| over distinct constraint pairs (gadget columns against
    // everything else)
    const Eigen::Index nL0 = L0.rank();
    Matrix all(dim, nL0 + bundle.u.cols());
    if (nL0 > 0) all.leftCols(nL0) = L0.basis();
    all.rightCols(bundle.u.cols()) = bundle.u;
    double resid = 0.0;
    Matrix Tq = Matrix::Identity(dim, dim);
    for (int q = 0; q <= 2; ++q) {
        if (q > 0) Tq = T.mat() * Tq;
        Matrix G = all.adjoint() * Tq * all;
        for (Eigen::Index i = 0; i < G.rows(); ++i)
            for (Eigen::Index j = 0; j < G.cols(); ++j)
                if (i != j && (i >= nL0 || j >= nL0))
                    resid = std::max(resid, std::abs(G(i, j)));
    }
    bundle.orthogonality_residual = resid;
    return bundle;
}

PlantReport plant(const HermitianMatrix& T, const GadgetBundle& bundle,
                  const Subspace& L0) {
    const Eigen::Index dim = T.dim();
    const Eigen::Index nL0 = L0.rank();
    const Eigen::Index nk = bundle.v.cols();
    Matrix basis(dim, nL0 + nk);
    if (nL0 > 0) basis.leftCols(nL0) = L0.basis();
    basis.rightCols(nk) = bundle.v;

    PlantReport rep;
    rep.L_prime = Subspace(dim, basis);
    QuadraticPencil p = compress(T, rep.L_prime);
    rep.spectrum = spec2(p);

    const double normT = T.norm2();
    rep.coeff_bound = 2.0 * std::max(1.0, normT) * bundle.eps_prime;

    double block_res = 0.0;
    for (Eigen::Index i = 0; i < p.dim(); ++i)
        for (Eigen::Index j = 0; j < p.dim(); ++j)
            if (i != j && (i >= nL0 || j >= nL0))
                block_res = std::max(block_res,
                                     std::max(std::abs(p.B.mat()(i, j)),
                                              std::abs(p.M.mat()(i, j))));
    rep.block_diag_residual = block_res;
    const double scale = std::max(1.0, normT * normT);
    if (block_res > 1e-8 * scale)
        throw ConstructionError("plant: compressed pencil not block diagonal, residual " +
                                std::to_string(block_res));

    for (Eigen::Index k = 0; k < nk; ++k) {
        const double b = p.B.mat()(nL0 + k, nL0 + k).real();
        const double m = p.M.mat()(nL0 + k, nL0 + k).real();
        const cplx disc = std::sqrt(cplx(b * b - m, 0.0));
        rep.planted_roots.push_back({cplx(b, 0.0) + disc, cplx(b, 0.0) - disc});
        const PlantTarget& tg = bundle.targets[static_cast<std::size_t>(k)];
        double qb = 0.0, qm = 0.0;
        for (int mm = 0; mm < 3; ++mm) {
            qb += tg.t[mm] * tg.lambda[mm];
            qm += tg.t[mm] * tg.lambda[mm] * tg.lambda[mm];
        }
        rep.coeff_deviation.push_back({std::abs(b - qb), std::abs(m - qm)});
    }
    return rep;
}

namespace {

// one planting level on a fixed operator: sample, solve weights on the
// eigenvalue grid (avoiding reuse so windows stay one-dimensional), build
// gadgets, plant, and measure
LevelReport run_level(const TargetSet& target, const HermitianMatrix& T,
                      const std::vector<double>& spec_T, const Subspace& L0,
                      const std::vector<double>& base_r, int level,
                      const std::vector<cplx>& reference) {
    LevelSample sample = sample_target(target, level);

    const double normT = [&] {
        double m = 1.0;
        for (double x : spec_T) m = std::max(m, std::abs(x));
        return m;
    }();
    const double C = 2.0 * std::max(1.0, normT);
    double mu_max = 0.0;
    for (cplx z : sample.upper_half) mu_max = std::max(mu_max, std::abs(z));
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < spec_T.size(); ++i) {
        const double g = spec_T[i] - spec_T[i - 1];
        if (g > 1e-12) min_gap = std::min(min_gap, g);
    }
    const double eps_prime = std::max(
        1e-13, std::min(std::pow(2.0, -level - 1) / (4.0 * C * (1.0 + mu_max)),
                        0.45 * min_gap));

    std::set<std::size_t> used;
    auto nearest_unused = [&](double x) {
        std::size_t best = spec_T.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < spec_T.size(); ++i) {
            if (used.count(i)) continue;
            const double dd = std::abs(spec_T[i] - x);
            if (dd < bd) { bd = dd; best = i; }
        }
        if (best == spec_T.size())
            throw ConstructionError("planting: eigenvalue grid exhausted");
        return best;
    };

    std::vector<PlantTarget> targets;
    for (cplx mu : sample.upper_half) {
        if (std::abs(mu.imag()) < kRealTol) {
            bool covered = false;
            for (double r : base_r)
                if (std::abs(mu.real() - r) < 1e-9) { covered = true; break; }
            if (covered) continue;  // the base window already produces this point
            PlantTarget tg;
            tg.mu = mu;
            const std::size_t i = nearest_unused(mu.real());
            used.insert(i);
            tg.lambda = {spec_T[i], spec_T[i], spec_T[i]};
            tg.t = {1.0, 0.0, 0.0};
            targets.push_back(tg);
        } else {
            std::vector<double> avail;
            std::vector<std::size_t> avail_idx;
            for (std::size_t i = 0; i < spec_T.size(); ++i)
                if (!used.count(i)) {
                    avail.push_back(spec_T[i]);
                    avail_idx.push_back(i);
                }
            PlantTarget tg = solve_weights(mu, target.sigma, avail);
            for (int m = 0; m < 3; ++m) {
                if (tg.t[m] <= 1e-14) continue;
                for (std::size_t a = 0; a < avail.size(); ++a)
                    if (avail[a] == tg.lambda[m]) { used.insert(avail_idx[a]); break; }
            }
            targets.push_back(tg);
        }
    }

    GadgetBundle bundle = gadget_vectors(T, targets, L0, eps_prime);
    PlantReport rep = plant(T, bundle, L0);

    LevelReport out;
    out.level = level;
    out.F_l = sample.F_l;
    out.spectrum = rep.spectrum;
    out.dH_to_F_l = hausdorff(rep.spectrum.points, sample.F_l);
    out.dH_to_F = hausdorff(rep.spectrum.points, reference);
    out.enclosure_ok = enclosure_all_pass(rep.spectrum, spec_T, std::max(1.0, normT));
    const QRegion q = q_region(target.sigma);
    out.q_region_ok = true;
    for (cplx z : rep.spectrum.points)
        if (!q.contains(z, 1e-6)) out.q_region_ok = false;
    out.subspace_dim = rep.L_prime.rank();
    return out;
}

std::vector<double> real_targets_in_band(const TargetSet& target, const Interval& band) {
    std::vector<double> rs;
    for (cplx z : sample_geometry(target.F, (band.hi - band.lo) / 64.0))
        if (std::abs(z.imag()) < kRealTol && band.lo < z.real() && z.real() < band.hi)
            rs.push_back(z.real());
    return rs;
}

HermitianMatrix diagonal_model(const TargetSet& target, int per_band,
                               std::vector<double>* eigs_out) {
    std::vector<double> eigs;
    for (const Interval& band : target.sigma.intervals()) {
        for (int i = 0; i < per_band; ++i)
            eigs.push_back(band.lo + (band.hi - band.lo) * i / double(per_band - 1));
        // make the real targets exact eigenvalues so their planted roots are exact
        for (double r : real_targets_in_band(target, band)) eigs.push_back(r);
    }
    std::sort(eigs.begin(), eigs.end());
    eigs.erase(std::unique(eigs.begin(), eigs.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               eigs.end());
    const Eigen::Index n = static_cast<Eigen::Index>(eigs.size());
    Matrix D = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) D(i, i) = eigs[static_cast<std::size_t>(i)];
    *eigs_out = std::move(eigs);
    return HermitianMatrix(std::move(D));
}

}  // namespace

Theorem11Run theorem11_run(const TargetSet& target, const Theorem11Options& opts) {
    validate_target(target);
    const std::vector<cplx> reference = sample_target(target, 10).F_l;

    Theorem11Run run;
    Subspace L0(1, Matrix::Identity(1, 1));  // replaced below
    std::vector<double> base_r;

    if (opts.mode == PlantMode::mechanism) {
        std::vector<double> eigs;
        run.T = diagonal_model(target, opts.eigenvalues_per_band, &eigs);
        run.spec_T = std::move(eigs);
        L0 = Subspace(run.T.dim(), Matrix(run.T.dim(), 0));
    } else {
        // full mode: one nested operator per band, bases on the collapsing
        // first windows
        std::vector<HermitianMatrix> blocks;
        std::vector<Eigen::Index> window;
        for (const Interval& band : target.sigma.intervals()) {
            std::vector<double> rs = real_targets_in_band(target, band);
            if (rs.empty())
                throw ConstructionError("theorem11: no real target inside a band");
            NestSchedule sch;
            sch.stages = opts.nest_stages;
            sch.rho_minus = band.lo;
            sch.rho_plus = band.hi;
            sch.r = rs.front();
            sch.N_max = opts.nest_N_max;
            sch.alpha.clear();
            double a = 0.5;
            for (int i = 0; i < sch.stages; ++i) {
                sch.alpha.push_back(a);
                a *= 0.8;
            }
            NestState st = nest_run(sch);
            blocks.push_back(st.final_T());
            window.push_back(st.last().N);
            base_r.push_back(rs.front());
        }
        Eigen::Index total = 0;
        for (const auto& b : blocks) total += b.dim();
        Matrix T = Matrix::Zero(total, total);
        Matrix basis(total, 0);
        Eigen::Index off = 0, wcols = 0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const Eigen::Index n = blocks[j].dim();
            T.block(off, off, n, n) = blocks[j].mat();
            basis.conservativeResize(total, wcols + window[j]);
            basis.rightCols(window[j]).setZero();
            for (Eigen::Index i = 0; i < window[j]; ++i) basis(off + i, wcols + i) = 1.0;
            wcols += window[j];
            off += n;
        }
        run.T = HermitianMatrix(std::move(T));
        EigenDecomposition d = hermitian_eig(run.T);
        run.spec_T.assign(d.values.data(), d.values.data() + d.values.size());
        L0 = Subspace(total, std::move(basis));
    }

    for (int l = 0; l < opts.levels; ++l)
        run.levels.push_back(run_level(target, run.T, run.spec_T, L0, base_r, l, reference));
    return run;
}

InterleavedRun interleaved_run(const TargetSet& F, const TargetSet& F0,
                               const Theorem11Options& opts) {
    const auto& a = F.sigma.intervals();
    const auto& b = F0.sigma.intervals();
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
        same = std::abs(a[i].lo - b[i].lo) < 1e-12 && std::abs(a[i].hi - b[i].hi) < 1e-12;
    if (!same) throw ConstructionError("interleaved_run: the two targets must share sigma");
    validate_target(F);
    validate_target(F0);
    if (opts.mode != PlantMode::mechanism)
        throw ConstructionError("interleaved_run: only mechanism mode is supported");

    // one shared diagonal model carrying the real targets of both sets
    TargetSet merged = F;
    for (cplx z : sample_geometry(F0.F, 1.0))
        if (std::abs(z.imag()) < kRealTol) merged.F.points.push_back(z);
    std::vector<double> eigs;
    HermitianMatrix T = diagonal_model(merged, opts.eigenvalues_per_band, &eigs);
    Subspace L0(T.dim(), Matrix(T.dim(), 0));
    const std::vector<cplx> refF = sample_target(F, 10).F_l;
    const std::vector<cplx> refF0 = sample_target(F0, 10).F_l;

    InterleavedRun out;
    out.even.T = T;
    out.even.spec_T = eigs;
    out.odd.T = T;
    out.odd.spec_T = eigs;
    for (int l = 0; l < opts.levels; ++l) {
        const bool even = l % 2 == 0;
        LevelReport rep = run_level(even ? F : F0, T, eigs, L0, {}, l,
                                    even ? refF : refF0);
        (even ? out.even : out.odd).levels.push_back(std::move(rep));
    }
    return out;
}

}  // namespace relspec
