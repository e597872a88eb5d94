#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "relspec/collapse.hpp"
#include "relspec/linalg.hpp"
#include "relspec/nesting.hpp"
#include "relspec/planting.hpp"
#include "relspec/rotation.hpp"
#include "relspec/serialize.hpp"
#include "relspec/spec2.hpp"
#include "relspec/svg.hpp"

namespace {

using namespace relspec;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
    std::string out_dir = ".";
    unsigned seed = 0;
    bool plot = true;
};

json tolerance_block() {
    return json{{"floor_abs", tol::floor_abs},
                {"hermitian", tol::hermitian},
                {"eig", tol::eig},
                {"orthonormal", tol::orthonormal},
                {"point_match", tol::point_match}};
}

json wrap_report(const std::string& kind, const GlobalOpts& g, json config, json payload) {
    return json{{"kind", kind},
                {"seed", g.seed},
                {"config", std::move(config)},
                {"tolerances", tolerance_block()},
                {"payload", std::move(payload)}};
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
    return g.out_dir + "/" + name;
}

HermitianMatrix load_hermitian(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("--matrix", "cannot open " + path);
        return hermitian_from_csv(in);
    }
    return hermitian_from_json(read_json_file(path));
}

Subspace load_subspace(const std::string& path, Eigen::Index ambient, long leading) {
    if (!path.empty()) return subspace_from_json(read_json_file(path));
    if (leading <= 0)
        throw CLI::ValidationError("--subspace", "need --subspace or --leading");
    return Subspace::leading_coordinates(ambient, leading);
}

std::vector<cplx> real_points(const std::vector<double>& xs) {
    std::vector<cplx> out;
    out.reserve(xs.size());
    for (double x : xs) out.emplace_back(x, 0.0);
    return out;
}

json spectrum_with_verdicts(const SpectrumSet& s, const std::vector<double>& spec_T) {
    auto verdicts = enclosure_check(s, spec_T);
    json enc = json::array();
    bool all = true;
    for (const auto& v : verdicts) {
        all = all && v.pass;
        enc.push_back(json{{"point", {{"re", v.point.real()}, {"im", v.point.imag()}}},
                           {"interval", {v.interval_lo, v.interval_hi}},
                           {"nearest", v.nearest_spectrum_point},
                           {"pass", v.pass}});
    }
    return json{{"spectrum", to_json(s)}, {"enclosure", enc}, {"enclosure_all_pass", all}};
}

int cmd_spec2(const GlobalOpts& g, const std::string& matrix_path,
              const std::string& subspace_path, long leading, bool galerkin_only) {
    HermitianMatrix T = load_hermitian(matrix_path);
    Subspace L = load_subspace(subspace_path, T.dim(), leading);
    EigenDecomposition d = hermitian_eig(T);
    std::vector<double> spec_T(d.values.data(), d.values.data() + d.values.size());

    json config{{"matrix", matrix_path},
                {"subspace", subspace_path},
                {"leading", leading}};
    if (galerkin_only) {
        std::vector<double> vals = galerkin_spectrum(T, L);
        json payload{{"eigenvalues", vals}, {"dim", T.dim()}, {"rank", L.rank()}};
        write_json_file(out_path(g, "galerkin.json"),
                        wrap_report("galerkin", g, config, payload));
        if (g.plot)
            write_points_svg(out_path(g, "galerkin.svg"),
                             {{real_points(spec_T), "#888888", 2.0, "Spec(T)"},
                              {real_points(vals), "#1f6fb2", 3.0, "Galerkin"}});
        return kExitPass;
    }
    SpectrumSet s = spec2(T, L);
    json payload = spectrum_with_verdicts(s, spec_T);
    payload["dim"] = T.dim();
    payload["rank"] = L.rank();
    write_json_file(out_path(g, "spec2.json"), wrap_report("spec2", g, config, payload));
    if (g.plot)
        write_points_svg(out_path(g, "spec2.svg"),
                         {{real_points(spec_T), "#888888", 2.0, "Spec(T)"},
                          {s.points, "#1f6fb2", 3.0, "Spec2"}});
    return payload["enclosure_all_pass"].get<bool>() ? kExitPass : kExitCheckFailure;
}

int cmd_qregion(const GlobalOpts& g, const std::vector<double>& bands) {
    if (bands.empty() || bands.size() % 2 != 0)
        throw CLI::ValidationError("--band", "need an even number of band endpoints");
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < bands.size(); i += 2) iv.push_back({bands[i], bands[i + 1]});
    IntervalUnion sigma(std::move(iv));
    QRegion q = q_region(sigma);
    json config{{"bands", bands}};
    json payload{{"sigma", to_json(sigma)}, {"q_region", to_json(q)}};
    write_json_file(out_path(g, "qregion.json"), wrap_report("qregion", g, config, payload));
    if (g.plot) write_spectrum_svg(out_path(g, "qregion.svg"), q, sigma, {});
    return kExitPass;
}

int cmd_lemma22(const GlobalOpts& g, double lo, double hi, double r, double delta,
                double eps, long n_max, long fixed_n, int degree,
                bool allow_density_failure) {
    CollapseOptions opts;
    opts.N_max = n_max;
    opts.degree = degree;
    opts.allow_density_failure = allow_density_failure;
    if (fixed_n > 0) opts.fixed_N = fixed_n;
    CollapseCertificate cert = collapse_construct(lo, hi, r, delta, eps, opts);
    json config{{"interval", {lo, hi}}, {"r", r},     {"delta", delta},
                {"eps", eps},           {"N_max", n_max}, {"fixed_N", fixed_n},
                {"degree", degree},     {"allow_density_failure", allow_density_failure}};
    write_json_file(out_path(g, "lemma22.json"),
                    wrap_report("lemma22", g, config, to_json(cert)));
    if (g.plot) {
        EigenDecomposition d = hermitian_eig(cert.B);
        std::vector<double> eigs(d.values.data(), d.values.data() + d.values.size());
        write_points_svg(out_path(g, "lemma22.svg"),
                         {{real_points(eigs), "#888888", 2.0, "Spec(B)"},
                          {{cert.z0, std::conj(cert.z0)}, "#c03020", 4.0, "z0"}});
    }
    if (!cert.checks.all_pass()) {
        std::fprintf(stderr, "lemma22: certificate checks failed (see lemma22.json)\n");
        return kExitCheckFailure;
    }
    return kExitPass;
}

int cmd_dilate(const GlobalOpts& g, const std::string& b_path, const std::string& m_path) {
    HermitianMatrix B = load_hermitian(b_path);
    HermitianMatrix M = load_hermitian(m_path);
    HermitianMatrix T = dilate(B, M);
    // roundtrip: the compression of the dilation reproduces the pencil
    Subspace L = Subspace::leading_coordinates(T.dim(), B.dim());
    QuadraticPencil p = compress(T, L);
    const double res_B = (p.B.mat() - B.mat()).norm();
    const double res_M = (p.M.mat() - M.mat()).norm();
    json config{{"b", b_path}, {"m", m_path}};
    json payload{{"T", to_json(T)},
                 {"subspace_rank", B.dim()},
                 {"compression_residual_B", res_B},
                 {"compression_residual_M", res_M}};
    write_json_file(out_path(g, "dilation.json"),
                    wrap_report("dilate", g, config, payload));
    const double scale = std::max(1.0, M.norm2());
    return (res_B <= tol::rel(1e-9, scale) && res_M <= tol::rel(1e-9, scale))
               ? kExitPass
               : kExitCheckFailure;
}

int cmd_rotate(const GlobalOpts& g, const std::string& target_path,
               const std::string& cert_path, double delta) {
    HermitianMatrix T = load_hermitian(target_path);
    json cj = read_json_file(cert_path);
    if (cj.contains("payload")) cj = cj.at("payload");
    CollapseCertificate cert = collapse_from_json(cj);
    RotationResult rot = rotate_embedding(T, cert.B, cert.R, delta);
    json config{{"target", target_path}, {"cert", cert_path}, {"delta", delta}};
    write_json_file(out_path(g, "rotation.json"),
                    wrap_report("rotate", g, config, to_json(rot)));
    const double scale = std::max(1.0, T.norm2());
    const bool ok = rot.norm_S < delta && rot.block_residual <= tol::rel(1e-9, scale);
    return ok ? kExitPass : kExitCheckFailure;
}

json nest_report_json(const NestReport& rep) {
    json stages = json::array();
    for (const auto& r : rep.stages)
        stages.push_back(json{
            {"l", r.l},
            {"telescoping_residual", r.telescoping_residual},
            {"telescoping_ok", r.telescoping_ok},
            {"square_compression_norm", r.square_compression_norm},
            {"square_compression_bound", r.square_compression_bound},
            {"square_compression_ok", r.square_compression_ok},
            {"collapse_max_dist", r.collapse_max_dist},
            {"collapse_bound", r.collapse_bound},
            {"collapse_ok", r.collapse_ok},
            {"window_interval_dH", r.window_interval_dH},
            {"window_interval_bound", r.window_interval_bound},
            {"window_recovery_ok", r.window_recovery_ok},
            {"norm_T", r.norm_T},
            {"norm_bound", r.norm_bound},
            {"norm_ok", r.norm_ok},
            {"enclosure_ok", r.enclosure_ok}});
    return json{{"stages", std::move(stages)}, {"all_pass", rep.all_pass()}};
}

int report_nest(const GlobalOpts& g, const NestState& st, const json& config) {
    NestReport rep = verify_nest(st, st.final_T_centered());
    write_json_file(out_path(g, "nest_state.json"),
                    wrap_report("nest", g, config, to_json(st)));
    write_json_file(out_path(g, "nest_report.json"),
                    wrap_report("nest_report", g, config, nest_report_json(rep)));
    if (g.plot) {
        const NestStage& last = st.last();
        SpectrumSet narrow = spec2(st.final_T_centered(),
                                   Subspace::leading_coordinates(last.T.dim(), last.N));
        EigenDecomposition d = hermitian_eig(st.final_T_centered());
        std::vector<double> eigs(d.values.data(), d.values.data() + d.values.size());
        write_points_svg(out_path(g, "nest.svg"),
                         {{real_points(eigs), "#888888", 2.0, "Spec(T_L)"},
                          {narrow.points, "#1f6fb2", 3.0, "Spec2 narrow window"}});
    }
    for (const auto& r : rep.stages)
        std::printf("stage %d: telescoping %s, square %s, collapse %s, window %s, "
                    "norm %s, enclosure %s\n",
                    r.l, r.telescoping_ok ? "ok" : "FAIL",
                    r.square_compression_ok ? "ok" : "FAIL",
                    r.collapse_ok ? "ok" : "FAIL", r.window_recovery_ok ? "ok" : "FAIL",
                    r.norm_ok ? "ok" : "FAIL", r.enclosure_ok ? "ok" : "FAIL");
    return rep.all_pass() ? kExitPass : kExitCheckFailure;
}

int cmd_nest(const GlobalOpts& g, int stages, double lo, double hi, double r,
             const std::vector<double>& alpha, long n_max, bool strict) {
    NestSchedule sch;
    sch.stages = stages;
    sch.rho_minus = lo;
    sch.rho_plus = hi;
    sch.r = r;
    sch.alpha = alpha;
    sch.N_max = n_max;
    sch.loose_mode = !strict;
    NestState st = nest_run(sch);
    json config{{"stages", stages}, {"interval", {lo, hi}}, {"r", r},
                {"alpha", alpha},   {"N_max", n_max},       {"strict", strict}};
    for (const auto& s : st.stage)
        std::printf("built stage %d: N=%lld eps=%g%s\n", s.l,
                    static_cast<long long>(s.N), s.eps, s.relaxed ? " (relaxed)" : "");
    return report_nest(g, st, config);
}

json level_report_json(const LevelReport& lr) {
    json fl = json::array();
    for (cplx z : lr.F_l) fl.push_back(json{{"re", z.real()}, {"im", z.imag()}});
    return json{{"level", lr.level},
                {"F_l", std::move(fl)},
                {"spectrum", to_json(lr.spectrum)},
                {"dH_to_F_l", lr.dH_to_F_l},
                {"dH_to_F", lr.dH_to_F},
                {"enclosure_ok", lr.enclosure_ok},
                {"q_region_ok", lr.q_region_ok},
                {"subspace_dim", lr.subspace_dim}};
}

json run_to_json(const Theorem11Run& run) {
    json levels = json::array();
    for (const auto& lr : run.levels) levels.push_back(level_report_json(lr));
    return json{{"levels", std::move(levels)},
                {"dim", run.T.dim()},
                {"spec_T", run.spec_T}};
}

bool run_all_ok(const Theorem11Run& run) {
    for (const auto& lr : run.levels)
        if (!lr.enclosure_ok || !lr.q_region_ok) return false;
    return true;
}

int cmd_plant(const GlobalOpts& g, const std::string& target_path,
              const std::string& interleave_path, int levels, const std::string& mode,
              int per_band, int nest_stages, long nest_n_max) {
    TargetSet target = target_from_json(read_json_file(target_path));
    validate_target(target);
    Theorem11Options opts;
    opts.levels = levels;
    opts.mode = mode == "full" ? PlantMode::full : PlantMode::mechanism;
    opts.eigenvalues_per_band = per_band;
    opts.nest_stages = nest_stages;
    opts.nest_N_max = nest_n_max;
    json config{{"target", target_path},   {"interleave", interleave_path},
                {"levels", levels},        {"mode", mode},
                {"per_band", per_band},    {"nest_stages", nest_stages},
                {"nest_N_max", nest_n_max}};

    QRegion q = q_region(target.sigma);
    if (interleave_path.empty()) {
        Theorem11Run run = theorem11_run(target, opts);
        json payload = run_to_json(run);
        payload["target"] = to_json(target);
        write_json_file(out_path(g, "plant.json"),
                        wrap_report("plant", g, config, payload));
        if (g.plot && !run.levels.empty()) {
            const LevelReport& last = run.levels.back();
            write_spectrum_svg(out_path(g, "plant.svg"), q, target.sigma,
                               {{last.F_l, "#2a9d3a", 3.5, "F sample"},
                                {last.spectrum.points, "#1f6fb2", 2.5, "Spec2"}});
        }
        for (const auto& lr : run.levels)
            std::printf("level %d: dH(Spec2, F) = %.6g%s%s\n", lr.level, lr.dH_to_F,
                        lr.enclosure_ok ? "" : " [enclosure FAIL]",
                        lr.q_region_ok ? "" : " [Q-region FAIL]");
        return run_all_ok(run) ? kExitPass : kExitCheckFailure;
    }

    TargetSet second = target_from_json(read_json_file(interleave_path));
    validate_target(second);
    InterleavedRun ir = interleaved_run(target, second, opts);
    json payload{{"even", run_to_json(ir.even)},
                 {"odd", run_to_json(ir.odd)},
                 {"target", to_json(target)},
                 {"interleave_target", to_json(second)}};
    write_json_file(out_path(g, "plant_interleaved.json"),
                    wrap_report("plant_interleaved", g, config, payload));
    if (g.plot && !ir.even.levels.empty()) {
        const LevelReport& last = ir.even.levels.back();
        write_spectrum_svg(out_path(g, "plant.svg"), q, target.sigma,
                           {{last.F_l, "#2a9d3a", 3.5, "F sample"},
                            {last.spectrum.points, "#1f6fb2", 2.5, "Spec2"}});
    }
    for (const auto& lr : ir.even.levels)
        std::printf("even level %d: dH(Spec2, F) = %.6g\n", lr.level, lr.dH_to_F);
    for (const auto& lr : ir.odd.levels)
        std::printf("odd level %d: dH(Spec2, F0) = %.6g\n", lr.level, lr.dH_to_F);
    return (run_all_ok(ir.even) && run_all_ok(ir.odd)) ? kExitPass : kExitCheckFailure;
}

int cmd_delta(const GlobalOpts& g, const std::string& b_path, const std::string& m_path,
              double eps) {
    HermitianMatrix B = load_hermitian(b_path);
    HermitianMatrix M = load_hermitian(m_path);
    QuadraticPencil p(B, M);
    DeltaBound d = delta_bound(p, eps);
    json config{{"b", b_path}, {"m", m_path}, {"eps", eps}};
    json payload{{"value", d.value},
                 {"sampled_min", d.sampled_min},
                 {"lipschitz_slack", d.lipschitz_slack},
                 {"samples", d.samples},
                 {"degenerate", d.degenerate}};
    write_json_file(out_path(g, "delta.json"), wrap_report("delta", g, config, payload));
    std::printf("Delta = %.12g%s\n", d.value, d.degenerate ? " (degenerate)" : "");
    return kExitPass;
}

int cmd_verify(const GlobalOpts& g, const std::string& report_path) {
    json rj = read_json_file(report_path);
    const std::string kind = rj.contains("kind") ? rj.at("kind").get<std::string>() : "";
    const json& payload = rj.contains("payload") ? rj.at("payload") : rj;
    if (kind == "lemma22" || (kind.empty() && payload.contains("z0"))) {
        CollapseCertificate cert = collapse_from_json(payload);
        CollapseChecks k = verify_collapse(cert);
        json out = wrap_report("lemma22_verify", g, json{{"report", report_path}},
                               json{{"all_pass", k.all_pass()}});
        write_json_file(out_path(g, "verify.json"), out);
        std::printf("lemma22 certificate: %s\n", k.all_pass() ? "pass" : "FAIL");
        return k.all_pass() ? kExitPass : kExitCheckFailure;
    }
    if (kind == "nest" || (kind.empty() && payload.contains("stage"))) {
        NestState st = nest_state_from_json(payload);
        return report_nest(g, st, json{{"report", report_path}});
    }
    throw CLI::ValidationError("--report", "unrecognized report kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("RELSPEC_THREADS"))
        Eigen::setNbThreads(std::atoi(threads));

    CLI::App app{"relative-spectra laboratory: quadratic pencils, collapse "
                 "constructions, nested embeddings, and spectral planting"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("-o,--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "seed recorded in reports")->capture_default_str();
    app.add_flag("!--no-plot", g.plot, "skip SVG output");

    // spec2 / galerkin
    std::string matrix_path, subspace_path;
    long leading = 0;
    auto* sc_spec2 = app.add_subcommand("spec2", "second-order spectrum of (T, L)");
    sc_spec2->add_option("--matrix", matrix_path, "T as JSON or CSV")->required();
    sc_spec2->add_option("--subspace", subspace_path, "L basis as JSON");
    sc_spec2->add_option("--leading", leading, "use the leading k coordinates");
    auto* sc_gal = app.add_subcommand("galerkin", "eigenvalues of the compression Q*TQ");
    sc_gal->add_option("--matrix", matrix_path, "T as JSON or CSV")->required();
    sc_gal->add_option("--subspace", subspace_path, "L basis as JSON");
    sc_gal->add_option("--leading", leading, "use the leading k coordinates");

    // qregion
    std::vector<double> bands;
    auto* sc_q = app.add_subcommand("qregion", "region Q(Sigma) for banded spectra");
    sc_q->add_option("--band", bands, "band endpoints lo hi (repeatable)")->expected(-2);

    // lemma22
    std::vector<double> interval{-2.0, 2.0};
    double r = 0.5, delta = 0.2, eps = 0.4;
    long n_max = 4096, fixed_n = 0;
    int degree = 384;
    bool allow_density_failure = false;
    auto* sc_l22 = app.add_subcommand(
        "lemma22", "collapse construction: dense Spec(B), pencil roots at one point");
    sc_l22->add_option("--interval", interval, "interval endpoints")->expected(2);
    sc_l22->add_option("--r", r, "collapse abscissa");
    sc_l22->add_option("--delta", delta, "density target");
    sc_l22->add_option("--eps", eps, "norm budget for R");
    sc_l22->add_option("--nmax", n_max, "size cap");
    sc_l22->add_option("--fixed-n", fixed_n, "build at exactly this N");
    sc_l22->add_option("--degree", degree, "symbol truncation degree");
    sc_l22->add_flag("--allow-density-failure", allow_density_failure,
                     "record density failures instead of erroring");

    // dilate, delta
    std::string b_path, m_path;
    auto* sc_dil = app.add_subcommand("dilate", "dilation [[B, R],[R, 0]] with R = sqrt(M - B^2)");
    sc_dil->add_option("--b", b_path, "B as JSON or CSV")->required();
    sc_dil->add_option("--m", m_path, "M as JSON or CSV")->required();
    double delta_eps = 0.1;
    auto* sc_del = app.add_subcommand("delta", "certified root-stability radius of a pencil");
    sc_del->add_option("--b", b_path, "B as JSON or CSV")->required();
    sc_del->add_option("--m", m_path, "M as JSON or CSV")->required();
    sc_del->add_option("--eps", delta_eps, "disk radius")->capture_default_str();

    // rotate
    std::string target_path, cert_path;
    double rot_delta = 0.1;
    auto* sc_rot = app.add_subcommand("rotate", "embed a target as the exact leading block");
    sc_rot->add_option("--target", target_path, "target T as JSON or CSV")->required();
    sc_rot->add_option("--cert", cert_path, "collapse certificate JSON")->required();
    sc_rot->add_option("--delta", rot_delta, "pairing width / coupling bound");

    // nest
    int stages = 2;
    std::vector<double> alpha{0.5, 0.4};
    long nest_n_max = 2048;
    bool strict = false;
    auto* sc_nest = app.add_subcommand("nest", "nested collapse-and-rotate stages");
    sc_nest->add_option("--stages", stages, "number of stages")->capture_default_str();
    sc_nest->add_option("--interval", interval, "interval endpoints")->expected(2);
    sc_nest->add_option("--r", r, "collapse abscissa");
    sc_nest->add_option("--alpha", alpha, "per-stage radii, decreasing in (0,1)");
    sc_nest->add_option("--nmax", nest_n_max, "per-stage size cap");
    sc_nest->add_flag("--strict", strict, "fail instead of relaxing unattainable budgets");

    // plant
    std::string plant_target, interleave_path, plant_mode = "mechanism";
    int levels = 4, per_band = 200, plant_nest_stages = 1;
    long plant_nest_n_max = 1024;
    auto* sc_plant = app.add_subcommand("plant", "drive Spec2 onto a target set F");
    sc_plant->add_option("--target", plant_target, "target set JSON {sigma, F}")->required();
    sc_plant->add_option("--interleave", interleave_path, "second target for interleaving");
    sc_plant->add_option("--levels", levels, "number of levels")->capture_default_str();
    sc_plant->add_option("--mode", plant_mode, "mechanism | full")
        ->check(CLI::IsMember({"mechanism", "full"}))
        ->capture_default_str();
    sc_plant->add_option("--per-band", per_band, "model eigenvalues per band")
        ->capture_default_str();
    sc_plant->add_option("--nest-stages", plant_nest_stages, "full mode: stages per band");
    sc_plant->add_option("--nest-nmax", plant_nest_n_max, "full mode: per-stage size cap");

    // verify / replay
    std::string report_path;
    auto* sc_ver = app.add_subcommand("verify", "re-check a serialized certificate");
    sc_ver->add_option("--report", report_path, "report or certificate JSON")->required();
    auto* sc_rep = app.add_subcommand("replay", "re-verify a serialized nest state");
    sc_rep->add_option("--state", report_path, "nest state or report JSON")->required();

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (sc_spec2->parsed())
            return cmd_spec2(g, matrix_path, subspace_path, leading, false);
        if (sc_gal->parsed())
            return cmd_spec2(g, matrix_path, subspace_path, leading, true);
        if (sc_q->parsed()) return cmd_qregion(g, bands);
        if (sc_l22->parsed())
            return cmd_lemma22(g, interval[0], interval[1], r, delta, eps, n_max,
                               fixed_n, degree, allow_density_failure);
        if (sc_dil->parsed()) return cmd_dilate(g, b_path, m_path);
        if (sc_rot->parsed()) return cmd_rotate(g, target_path, cert_path, rot_delta);
        if (sc_nest->parsed())
            return cmd_nest(g, stages, interval[0], interval[1], r, alpha, nest_n_max,
                            strict);
        if (sc_plant->parsed())
            return cmd_plant(g, plant_target, interleave_path, levels, plant_mode,
                             per_band, plant_nest_stages, plant_nest_n_max);
        if (sc_del->parsed()) return cmd_delta(g, b_path, m_path, delta_eps);
        if (sc_ver->parsed() || sc_rep->parsed()) return cmd_verify(g, report_path);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const NotDilatable& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return kExitCheckFailure;
    } catch (const ConstructionError& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return kExitCheckFailure;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
