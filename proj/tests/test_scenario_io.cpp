#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "escreg/scenario_io.hpp"

using namespace escreg;

namespace {

std::string scenario_path() {
    return std::string(ESCREG_SCENARIO_DIR) + "/benchmark.json";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_file(const char* name) {
    return std::string("/tmp/escreg_test_") + name;
}

}  // namespace

TEST_CASE("benchmark scenario parses with derived quantities") {
    const Scenario sc = load_scenario(scenario_path());
    CHECK(sc.plant.nz == 2);
    CHECK(sc.exo.sigma == doctest::Approx(M_PI / 12.0));
    CHECK(sc.model.n == 4);
    CHECK(sc.model.Theta == doctest::Approx(10.0));
    CHECK(sc.model.varrho(1) == doctest::Approx(50.0));
    CHECK(sc.model.sat_radius > sc.model.varrho.squaredNorm());
    CHECK(sc.cfg.omega == doctest::Approx(200.0));
    CHECK(sc.cfg.k == doctest::Approx(2.0));
    CHECK(sc.variant == ControllerVariant::A);
    CHECK(sc.T == doctest::Approx(240.0));
    const StateLayout lay = sc.layout();
    CHECK(lay.dim() == 14);
    CHECK(sc.x0(lay.v()) == doctest::Approx(1.0));
    CHECK(sc.x0(lay.eta()) == doctest::Approx(0.1589));
    CHECK(sc.step() == doctest::Approx(2.0 * M_PI / (64.0 * 200.0)));
}

TEST_CASE("scenario validation failures") {
    CHECK_THROWS_AS(parse_scenario("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"plant": "unknown"})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"plant": "example_liu2009", "w": [9, 1]})"),
                    ConfigError);

    std::string text = slurp(scenario_path());
    // rho constant term below one
    auto broken = text;
    broken.replace(broken.find("[20, 0, 1]"), 10, "[0.5, 0, 1]");
    CHECK_THROWS_AS(parse_scenario(broken), ConfigError);

    // dt above the 40-steps-per-period bound
    auto coarse = text;
    coarse.replace(coarse.find("\"T\": 240.0"), 10, "\"T\": 240.0, \"dt\": 0.01");
    CHECK_THROWS_AS(parse_scenario(coarse), ConfigError);
}

TEST_CASE("explicit a and sat_radius are honored") {
    std::string text = slurp(scenario_path());
    text.replace(text.find("\"Theta\": 10,"), 12,
                 "\"Theta\": 10, \"sat_radius\": 9999.0, \"a\": [0.042278248, 0, 0.68538919, 0],");
    const Scenario sc = parse_scenario(text);
    CHECK(sc.model.sat_radius == doctest::Approx(9999.0));
    CHECK(sc.model.a()(2) == doctest::Approx(0.68538919));
}

TEST_CASE("trajectory CSV format") {
    Scenario sc = load_scenario(scenario_path());
    sc.T = 0.5;
    const Trajectory traj = integrate(sc);
    const std::string path = tmp_file("traj.csv");
    write_trajectory_csv(traj, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,e,y,v1,v2,z1,z2,eta1,eta2,eta3,eta4,pi,vt1,vt2,vt3,vt4,u");
    std::string first;
    std::getline(in, first);
    CHECK(first.substr(0, 5) == "0,-1,");  // t = 0, e = y - v1 = -1
    std::remove(path.c_str());
}

TEST_CASE("doubles are printed with nine significant digits") {
    std::vector<DeviationRecord> recs = {{123.456789123, 0.000123456789123, 1.0 / 3.0}};
    const std::string path = tmp_file("dev.csv");
    write_deviation_csv(recs, path);
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "omega,sup_deviation,final_deviation");
    std::getline(in, line);
    CHECK(line == "123.456789,0.000123456789,0.333333333");
    std::remove(path.c_str());
}

TEST_CASE("omega list parsing") {
    const auto omegas = parse_omega_list("50,100,200,400");
    REQUIRE(omegas.size() == 4);
    CHECK(omegas[3] == doctest::Approx(400.0));
    CHECK_THROWS_AS(parse_omega_list(""), ConfigError);
    CHECK_THROWS_AS(parse_omega_list("50,abc"), ConfigError);
}

TEST_CASE("harmonic table dump") {
    const Scenario sc = load_scenario(scenario_path());
    const SteadyState ss = oracle_for(sc);
    const std::string path = tmp_file("harm.csv");
    write_harmonics_csv(ss, path);
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    CHECK(header == "signal,component,frequency,cos_coeff,sin_coeff");
    std::getline(in, first);
    CHECK(first.substr(0, 4) == "u,1,");
    std::remove(path.c_str());
}

TEST_CASE("small sweep produces well-formed records") {
    Scenario sc = load_scenario(scenario_path());
    sc.T = 12.0;
    const auto records = run_sweep(sc, {100.0, 200.0});
    REQUIRE(records.size() == 2);
    for (const auto& r : records) {
        CHECK(r.ultimate_bound_e >= 0.0);
        CHECK(r.sup_dev_vs_averaged >= 0.0);
        CHECK(r.vartheta_err_final >= 0.0);
        CHECK(std::isfinite(r.sup_dev_vs_averaged));
    }
    const std::string path = tmp_file("sweep.csv");
    write_sweep_csv(records, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "omega,ultimate_bound_e,sup_dev_vs_averaged,vartheta_err_final");
    std::remove(path.c_str());
}
