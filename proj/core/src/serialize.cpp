#include "relspec/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace relspec {

namespace {

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
    return cplx(j.at("re").get<double>(), j.at("im").get<double>());
}

json points_to_json(const std::vector<cplx>& pts) {
    json arr = json::array();
    for (cplx z : pts) arr.push_back(complex_to_json(z));
    return arr;
}

std::vector<cplx> points_from_json(const json& j) {
    std::vector<cplx> pts;
    for (const auto& e : j) pts.push_back(complex_from_json(e));
    return pts;
}

json checks_to_json(const CollapseChecks& k) {
    return json{{"triangular_residual", k.triangular_residual},
                {"diagonal_residual", k.diagonal_residual},
                {"commutator_min_eigenvalue", k.commutator_min_eigenvalue},
                {"norm_R", k.norm_R},
                {"norm_R_bound", k.norm_R_bound},
                {"density_gap", k.density_gap},
                {"spec_lo", k.spec_lo},
                {"spec_hi", k.spec_hi},
                {"factorization_residual", k.factorization_residual},
                {"triangular_ok", k.triangular_ok},
                {"commutator_ok", k.commutator_ok},
                {"norm_ok", k.norm_ok},
                {"density_ok", k.density_ok},
                {"spec_in_interval_ok", k.spec_in_interval_ok},
                {"root_location_ok", k.root_location_ok}};
}

CollapseChecks checks_from_json(const json& j) {
    CollapseChecks k;
    k.triangular_residual = j.at("triangular_residual").get<double>();
    k.diagonal_residual = j.at("diagonal_residual").get<double>();
    k.commutator_min_eigenvalue = j.at("commutator_min_eigenvalue").get<double>();
    k.norm_R = j.at("norm_R").get<double>();
    k.norm_R_bound = j.at("norm_R_bound").get<double>();
    k.density_gap = j.at("density_gap").get<double>();
    k.spec_lo = j.at("spec_lo").get<double>();
    k.spec_hi = j.at("spec_hi").get<double>();
    k.factorization_residual = j.at("factorization_residual").get<double>();
    k.triangular_ok = j.at("triangular_ok").get<bool>();
    k.commutator_ok = j.at("commutator_ok").get<bool>();
    k.norm_ok = j.at("norm_ok").get<bool>();
    k.density_ok = j.at("density_ok").get<bool>();
    k.spec_in_interval_ok = j.at("spec_in_interval_ok").get<bool>();
    k.root_location_ok = j.at("root_location_ok").get<bool>();
    return k;
}

json vector_to_json(const Vector& v) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return json{{"dim", v.size()}, {"re", re}, {"im", im}};
}

Vector vector_from_json(const json& j) {
    const auto n = j.at("dim").get<Eigen::Index>();
    Vector v(n);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cplx(re.at(i).get<double>(), im.at(i).get<double>());
    return v;
}

}  // namespace

json to_json(const Matrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    json j{{"re", std::move(re)}, {"im", std::move(im)}};
    if (m.rows() == m.cols()) {
        j["dim"] = m.rows();
    } else {
        j["rows"] = m.rows();
        j["cols"] = m.cols();
    }
    return j;
}

Matrix matrix_from_json(const json& j) {
    Eigen::Index rows, cols;
    if (j.contains("dim")) {
        rows = cols = j.at("dim").get<Eigen::Index>();
    } else {
        rows = j.at("rows").get<Eigen::Index>();
        cols = j.at("cols").get<Eigen::Index>();
    }
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<Eigen::Index>(re.size()) != rows * cols ||
        static_cast<Eigen::Index>(im.size()) != rows * cols)
        throw Error("matrix_from_json: entry count does not match shape");
    Matrix m(rows, cols);
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k, ++p)
            m(i, k) = cplx(re.at(p).get<double>(), im.at(p).get<double>());
    return m;
}

json to_json(const HermitianMatrix& h) { return to_json(h.mat()); }

HermitianMatrix hermitian_from_json(const json& j) {
    return HermitianMatrix(matrix_from_json(j));
}

json to_json(const Subspace& s) {
    return json{{"ambient_dim", s.ambient_dim()}, {"basis", to_json(s.basis())}};
}

Subspace subspace_from_json(const json& j) {
    return Subspace(j.at("ambient_dim").get<Eigen::Index>(),
                    matrix_from_json(j.at("basis")));
}

json to_json(const SpectrumSet& s) {
    return json{{"points", points_to_json(s.points)},
                {"conjugation_symmetric", s.conjugation_symmetric}};
}

SpectrumSet spectrum_from_json(const json& j) {
    SpectrumSet s;
    s.points = points_from_json(j.at("points"));
    s.conjugation_symmetric = j.value("conjugation_symmetric", false);
    return s;
}

json to_json(const IntervalUnion& iv) {
    json arr = json::array();
    for (const Interval& b : iv.intervals()) arr.push_back(json::array({b.lo, b.hi}));
    return arr;
}

IntervalUnion interval_union_from_json(const json& j) {
    std::vector<Interval> bands;
    for (const auto& e : j)
        bands.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    return IntervalUnion(std::move(bands));
}

json to_json(const QRegion& q) {
    auto disk = [](const Disk& d) {
        return json{{"center", complex_to_json(d.center)}, {"radius", d.radius}};
    };
    json gaps = json::array();
    for (const Disk& g : q.gap_disks()) gaps.push_back(disk(g));
    return json{{"outer", disk(q.outer())}, {"gaps", std::move(gaps)}};
}

json to_json(const CollapseCertificate& c) {
    return json{{"rho_minus", c.rho_minus},
                {"rho_plus", c.rho_plus},
                {"r", c.r},
                {"delta", c.delta},
                {"eps", c.eps},
                {"eps0", c.eps0},
                {"a0", c.a0},
                {"N", c.N},
                {"symbol",
                 json{{"coeffs", vector_to_json(c.symbol.coeffs)},
                      {"rho", c.symbol.rho},
                      {"r", c.symbol.r},
                      {"eps0", c.symbol.eps0},
                      {"re_min", c.symbol.re_min},
                      {"re_max", c.symbol.re_max},
                      {"im_min", c.symbol.im_min},
                      {"im_max", c.symbol.im_max}}},
                {"B", to_json(c.B)},
                {"A", to_json(c.A)},
                {"R", to_json(c.R)},
                {"z0", complex_to_json(c.z0)},
                {"checks", checks_to_json(c.checks)}};
}

CollapseCertificate collapse_from_json(const json& j) {
    CollapseCertificate c;
    c.rho_minus = j.at("rho_minus").get<double>();
    c.rho_plus = j.at("rho_plus").get<double>();
    c.r = j.at("r").get<double>();
    c.delta = j.at("delta").get<double>();
    c.eps = j.at("eps").get<double>();
    c.eps0 = j.at("eps0").get<double>();
    c.a0 = j.at("a0").get<double>();
    c.N = j.at("N").get<Eigen::Index>();
    const json& s = j.at("symbol");
    c.symbol.coeffs = vector_from_json(s.at("coeffs"));
    c.symbol.rho = s.at("rho").get<double>();
    c.symbol.r = s.at("r").get<double>();
    c.symbol.eps0 = s.at("eps0").get<double>();
    c.symbol.re_min = s.at("re_min").get<double>();
    c.symbol.re_max = s.at("re_max").get<double>();
    c.symbol.im_min = s.at("im_min").get<double>();
    c.symbol.im_max = s.at("im_max").get<double>();
    c.B = hermitian_from_json(j.at("B"));
    c.A = hermitian_from_json(j.at("A"));
    c.R = hermitian_from_json(j.at("R"));
    c.z0 = complex_from_json(j.at("z0"));
    c.checks = checks_from_json(j.at("checks"));
    return c;
}

json to_json(const RotationResult& r) {
    json pairs = json::array();
    for (const auto& p : r.pairing.pairs)
        pairs.push_back(json{{"mu", p.mu},
                             {"lo_index", p.lo_index},
                             {"hi_index", p.hi_index},
                             {"lambda_lo", p.lambda_lo},
                             {"lambda_hi", p.lambda_hi},
                             {"t", p.t}});
    return json{{"V", to_json(r.V)},
                {"B", to_json(r.B)},
                {"R", to_json(r.R)},
                {"norm_S", r.norm_S},
                {"block_residual", r.block_residual},
                {"unitary_residual", r.unitary_residual},
                {"pairing", std::move(pairs)}};
}

namespace {

json stage_to_json(const NestStage& s) {
    return json{{"l", s.l},
                {"N", s.N},
                {"rho", s.rho},
                {"rho_used", s.rho_used},
                {"varrho", s.varrho},
                {"eps_budget", s.eps_budget},
                {"eps", s.eps},
                {"delta", s.delta},
                {"relaxed", s.relaxed},
                {"delta_narrow", s.delta_narrow},
                {"delta_wide", s.delta_wide},
                {"norm_R", s.norm_R},
                {"norm_S", s.norm_S},
                {"norm_T", s.norm_T},
                {"density_gap", s.density_gap},
                {"B", to_json(s.B)},
                {"R", to_json(s.R)},
                {"T", to_json(s.T)}};
}

NestStage stage_from_json(const json& j) {
    NestStage s;
    s.l = j.at("l").get<int>();
    s.N = j.at("N").get<Eigen::Index>();
    s.rho = j.at("rho").get<double>();
    s.rho_used = j.at("rho_used").get<double>();
    s.varrho = j.at("varrho").get<double>();
    s.eps_budget = j.at("eps_budget").get<double>();
    s.eps = j.at("eps").get<double>();
    s.delta = j.at("delta").get<double>();
    s.relaxed = j.at("relaxed").get<bool>();
    s.delta_narrow = j.at("delta_narrow").get<double>();
    s.delta_wide = j.at("delta_wide").get<double>();
    s.norm_R = j.at("norm_R").get<double>();
    s.norm_S = j.at("norm_S").get<double>();
    s.norm_T = j.at("norm_T").get<double>();
    s.density_gap = j.at("density_gap").get<double>();
    s.B = hermitian_from_json(j.at("B"));
    s.R = hermitian_from_json(j.at("R"));
    s.T = hermitian_from_json(j.at("T"));
    return s;
}

}  // namespace

json to_json(const NestState& s) {
    json stages = json::array();
    for (const auto& st : s.stage) stages.push_back(stage_to_json(st));
    return json{{"schedule",
                 json{{"stages", s.schedule.stages},
                      {"rho_minus", s.schedule.rho_minus},
                      {"rho_plus", s.schedule.rho_plus},
                      {"r", s.schedule.r},
                      {"alpha", s.schedule.alpha},
                      {"N_max", s.schedule.N_max},
                      {"symbol_degree", s.schedule.symbol_degree},
                      {"loose_mode", s.schedule.loose_mode}}},
                {"stage", std::move(stages)}};
}

NestState nest_state_from_json(const json& j) {
    NestState s;
    const json& sch = j.at("schedule");
    s.schedule.stages = sch.at("stages").get<int>();
    s.schedule.rho_minus = sch.at("rho_minus").get<double>();
    s.schedule.rho_plus = sch.at("rho_plus").get<double>();
    s.schedule.r = sch.at("r").get<double>();
    s.schedule.alpha = sch.at("alpha").get<std::vector<double>>();
    s.schedule.N_max = sch.at("N_max").get<Eigen::Index>();
    s.schedule.symbol_degree = sch.at("symbol_degree").get<int>();
    s.schedule.loose_mode = sch.at("loose_mode").get<bool>();
    for (const auto& e : j.at("stage")) s.stage.push_back(stage_from_json(e));
    return s;
}

json to_json(const NestReport& r) {
    json stages = json::array();
    for (const auto& s : r.stages)
        stages.push_back(json{{"l", s.l},
                              {"telescoping_residual", s.telescoping_residual},
                              {"square_compression_norm", s.square_compression_norm},
                              {"square_compression_bound", s.square_compression_bound},
                              {"collapse_max_dist", s.collapse_max_dist},
                              {"collapse_bound", s.collapse_bound},
                              {"window_interval_dH", s.window_interval_dH},
                              {"window_interval_bound", s.window_interval_bound},
                              {"norm_T", s.norm_T},
                              {"norm_bound", s.norm_bound},
                              {"telescoping_ok", s.telescoping_ok},
                              {"square_compression_ok", s.square_compression_ok},
                              {"collapse_ok", s.collapse_ok},
                              {"window_recovery_ok", s.window_recovery_ok},
                              {"norm_ok", s.norm_ok},
                              {"enclosure_ok", s.enclosure_ok}});
    return json{{"stages", std::move(stages)}, {"all_pass", r.all_pass()}};
}

json to_json(const TargetSet& t) {
    json points = points_to_json(t.F.points);
    json segments = json::array();
    for (const auto& s : t.F.segments)
        segments.push_back(
            json::array({complex_to_json(s.first), complex_to_json(s.second)}));
    json disks = json::array();
    for (const Disk& d : t.F.disks)
        disks.push_back(json{{"center", complex_to_json(d.center)}, {"radius", d.radius}});
    return json{{"sigma", to_json(t.sigma)},
                {"F",
                 json{{"points", std::move(points)},
                      {"segments", std::move(segments)},
                      {"disks", std::move(disks)}}}};
}

TargetSet target_from_json(const json& j) {
    TargetSet t;
    t.sigma = interval_union_from_json(j.at("sigma"));
    const json& f = j.at("F");
    if (f.contains("points")) t.F.points = points_from_json(f.at("points"));
    if (f.contains("segments"))
        for (const auto& e : f.at("segments"))
            t.F.segments.emplace_back(complex_from_json(e.at(0)), complex_from_json(e.at(1)));
    if (f.contains("disks"))
        for (const auto& e : f.at("disks"))
            t.F.disks.push_back(
                Disk{complex_from_json(e.at("center")), e.at("radius").get<double>()});
    return t;
}

json to_json(const Theorem11Run& run) {
    json levels = json::array();
    for (const auto& l : run.levels)
        levels.push_back(json{{"level", l.level},
                              {"F_l", points_to_json(l.F_l)},
                              {"spectrum", to_json(l.spectrum)},
                              {"dH_to_F_l", l.dH_to_F_l},
                              {"dH_to_F", l.dH_to_F},
                              {"enclosure_ok", l.enclosure_ok},
                              {"q_region_ok", l.q_region_ok},
                              {"subspace_dim", l.subspace_dim}});
    return json{{"levels", std::move(levels)},
                {"T", to_json(run.T)},
                {"spec_T", run.spec_T}};
}

HermitianMatrix hermitian_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error("hermitian_from_csv: cannot parse entry '" + cell + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("hermitian_from_csv: no data");
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != n)
            throw Error("hermitian_from_csv: matrix must be square (row " +
                        std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(n) + ")");
        for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    return HermitianMatrix(std::move(m));
}

void write_json_file(const std::string& path, const json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("write_json_file: cannot open " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("write_json_file: cannot move " + tmp + " into place");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_json_file: cannot open " + path);
    return json::parse(in);
}

}  // namespace relspec
