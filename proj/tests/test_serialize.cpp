#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "relspec/collapse.hpp"
#include "relspec/linalg.hpp"
#include "relspec/nesting.hpp"
#include "relspec/serialize.hpp"

using namespace relspec;

TEST_CASE("matrix JSON shape and round trip") {
    Matrix m = random_matrix(3, 3, 5);
    json j = to_json(m);
    CHECK(j.at("dim") == 3);
    CHECK(j.at("re").size() == 9);
    CHECK(j.at("im").size() == 9);
    // row-major layout
    CHECK(j.at("re")[1].get<double>() == doctest::Approx(m(0, 1).real()));
    Matrix back = matrix_from_json(j);
    CHECK((back - m).norm() == 0.0);
    // rectangular matrices carry rows/cols
    Matrix r = random_matrix(2, 4, 6);
    json jr = to_json(r);
    CHECK(jr.at("rows") == 2);
    CHECK(jr.at("cols") == 4);
    CHECK((matrix_from_json(jr) - r).norm() == 0.0);
}

TEST_CASE("hermitian and subspace round trips") {
    HermitianMatrix H = random_hermitian(4, 8);
    CHECK((hermitian_from_json(to_json(H)).mat() - H.mat()).norm() == 0.0);
    Subspace L = Subspace::leading_coordinates(5, 2);
    Subspace back = subspace_from_json(to_json(L));
    CHECK(back.ambient_dim() == 5);
    CHECK(back.rank() == 2);
    CHECK((back.basis() - L.basis()).norm() == 0.0);
}

TEST_CASE("spectrum points serialize as re/im pairs") {
    SpectrumSet s;
    s.points = {cplx(1.5, -0.25)};
    s.conjugation_symmetric = false;
    json j = to_json(s);
    CHECK(j.at("points")[0].at("re").get<double>() == 1.5);
    CHECK(j.at("points")[0].at("im").get<double>() == -0.25);
    SpectrumSet back = spectrum_from_json(j);
    REQUIRE(back.size() == 1);
    CHECK(back.points[0] == s.points[0]);
}

TEST_CASE("interval union and target set round trips") {
    IntervalUnion sigma(std::vector<Interval>{{-1.0, 0.0}, {1.0, 2.0}});
    IntervalUnion back = interval_union_from_json(to_json(sigma));
    REQUIRE(back.size() == 2);
    CHECK(back.intervals()[1].lo == 1.0);
    TargetSet t;
    t.sigma = sigma;
    t.F.points = {cplx(0.5, 0.8)};
    t.F.segments = {{cplx(0.4, 0.6), cplx(0.6, 0.6)}};
    t.F.disks = {Disk{cplx(0.5, 0.7), 0.05}};
    json j = to_json(t);
    CHECK(j.at("sigma").size() == 2);
    TargetSet tb = target_from_json(j);
    CHECK(tb.F.points == t.F.points);
    REQUIRE(tb.F.segments.size() == 1);
    CHECK(tb.F.segments[0].second == cplx(0.6, 0.6));
    REQUIRE(tb.F.disks.size() == 1);
    CHECK(tb.F.disks[0].radius == 0.05);
}

TEST_CASE("collapse certificate round trip preserves verdicts") {
    CollapseOptions opts;
    opts.fixed_N = 16;
    opts.allow_density_failure = true;
    CollapseCertificate cert = collapse_construct(-2.0, 2.0, 0.5, 0.2, 13.0, opts);
    json j = to_json(cert);
    CollapseCertificate back = collapse_from_json(j);
    CHECK(back.N == cert.N);
    CHECK(back.z0 == cert.z0);
    CHECK((back.B.mat() - cert.B.mat()).norm() == 0.0);
    CollapseChecks a = verify_collapse(cert);
    CollapseChecks b = verify_collapse(back);
    CHECK(a.all_pass() == b.all_pass());
    CHECK(a.triangular_ok == b.triangular_ok);
    CHECK(a.density_ok == b.density_ok);
    CHECK(a.norm_ok == b.norm_ok);
}

TEST_CASE("nest state round trip") {
    NestSchedule s;
    s.stages = 1;
    s.alpha = {0.5};
    s.r = 0.5;
    NestState st = nest_run(s);
    json j = to_json(st);
    NestState back = nest_state_from_json(j);
    REQUIRE(back.stage.size() == 1);
    CHECK(back.stage[0].N == st.stage[0].N);
    CHECK(back.stage[0].eps == st.stage[0].eps);
    CHECK(back.stage[0].rho_used == st.stage[0].rho_used);
    CHECK(back.stage[0].relaxed == st.stage[0].relaxed);
    CHECK((back.stage[0].T.mat() - st.stage[0].T.mat()).norm() == 0.0);
    NestReport ra = verify_nest(st, st.final_T_centered());
    NestReport rb = verify_nest(back, back.final_T_centered());
    CHECK(ra.all_pass() == rb.all_pass());
    // serialization is deterministic
    CHECK(to_json(st).dump() == j.dump());
}

TEST_CASE("hermitian_from_csv parses a symmetric real matrix") {
    std::istringstream in("0, 0.1\n0.1, 0\n");
    HermitianMatrix H = hermitian_from_csv(in);
    REQUIRE(H.dim() == 2);
    CHECK(H.mat()(0, 1).real() == doctest::Approx(0.1));
    CHECK(H.mat()(1, 0).real() == doctest::Approx(0.1));
}

TEST_CASE("malformed JSON is rejected") {
    json j;
    j["dim"] = 2;
    j["re"] = {1.0, 2.0, 3.0};  // wrong length
    j["im"] = {0.0, 0.0, 0.0};
    CHECK_THROWS(matrix_from_json(j));
}
