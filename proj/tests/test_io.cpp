#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "frz/io.hpp"

using namespace frz;

TEST_CASE("measure CSV round trip preserves atoms and weights bit-exactly") {
    RngStream rng(13, 0);
    DiscreteMeasure mu;
    mu.n = 3;
    for (int i = 0; i < 40; ++i)
        mu.push_atom(std::vector<double>{rng.normal(), rng.normal() * 1e-7, rng.normal() * 1e9},
                     rng.uniform());
    std::string csv = measure_to_csv(mu);
    CHECK(csv.rfind("x_1,x_2,x_3,weight\n", 0) == 0);  // header row mandatory
    DiscreteMeasure back = measure_from_csv(csv);
    CHECK(back.n == mu.n);
    CHECK(back.atoms == mu.atoms);
    CHECK(back.weights == mu.weights);
}

TEST_CASE("measure CSV rejects malformed input") {
    CHECK_THROWS_AS(measure_from_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(measure_from_csv("x_1,mass\n0,1\n"), std::invalid_argument);
    CHECK_THROWS_AS(measure_from_csv("x_1,weight\n0\n"), std::invalid_argument);
    CHECK_THROWS_AS(measure_from_csv("x_1,weight\n0,-1\n"), std::invalid_argument);
}

TEST_CASE("field CSV round trip with metadata sidecar") {
    SampledField f = sample_fbf({0.6, 1, 2, 33, 5});
    std::string csv = field_to_csv(f);
    CHECK(csv.rfind("t_1,x_1,x_2\n", 0) == 0);
    SampledField back = field_from_csv(csv, f.k, f.n, f.m);
    CHECK(back.values == f.values);
    CHECK(back.origin_pinned);

    nlohmann::json meta = field_metadata(f, 0.6, 5, "circulant-embedding");
    CHECK(meta["k"] == 1);
    CHECK(meta["n"] == 2);
    CHECK(meta["m"] == 33);
    CHECK(meta["H"] == 0.6);
    CHECK(meta["generator_backend"] == "circulant-embedding");

    // k=2 fields serialize one row per grid node
    SampledField f2 = sample_fbf({0.5, 2, 1, 5, 2});
    SampledField back2 = field_from_csv(field_to_csv(f2), 2, 1, 5);
    CHECK(back2.values == f2.values);
}

TEST_CASE("bv grid function round trip") {
    BVGridFunction phi;
    phi.n = 2;
    phi.lo = {-1.0, 0.0};
    phi.hi = {1.0, 2.0};
    phi.cells = {8, 4};
    phi.values.assign(32, 0.0);
    for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] = static_cast<double>(i) * 0.25;
    BVGridFunction back = bv_from_csv(bv_to_csv(phi), bv_metadata(phi));
    CHECK(back.values == phi.values);
    CHECK(back.lo == phi.lo);
    CHECK(back.hi == phi.hi);
    CHECK(back.cells == phi.cells);
}

TEST_CASE("result and report JSON carry the resolved diagnostics") {
    MinimizerResult res;
    res.objective_value = 1.5;
    res.constraint_report.holder_seminorm = 0.99;
    res.constraint_report.potential_sup = 3.0;
    res.trace.push_back({0, 2.0, 0.0});
    res.trace.push_back({1, 1.5, 0.0});
    res.seed = 7;
    nlohmann::json j = minimizer_result_json(res);
    CHECK(j["objective_value"] == 1.5);
    CHECK(j["constraint_report"]["holder_seminorm"] == 0.99);
    CHECK(j["iterations"] == 2);

    std::string trace = trace_to_csv(res.trace);
    CHECK(trace.rfind("iteration,objective,max_violation\n", 0) == 0);

    ConstantReport rep;
    rep.name = "m0_bound";
    rep.value = kInf;
    rep.violated = "eps outside the admissible interval";
    nlohmann::json cj = constant_report_json(rep);
    CHECK(cj["value"] == "inf");
    CHECK(cj["violated"] == "eps outside the admissible interval");
}
