#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qdomains/json_io.hpp"

using namespace qdom;

namespace {

#ifndef QDOMAINS_BIN
#define QDOMAINS_BIN "./qdomains"
#endif

int run_cli(const std::string& args, std::string* out = nullptr) {
    std::string tmp = "cli_out.tmp";
    std::string cmd = std::string(QDOMAINS_BIN) + " " + args + " > " + tmp + " 2> cli_err.tmp";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream f(tmp);
        std::stringstream ss;
        ss << f.rdbuf();
        *out = ss.str();
    }
    std::remove(tmp.c_str());
    std::remove("cli_err.tmp");
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("map JSON round-trip") {
    ConformalMap m;
    m.z1 = GaussRat(Rat(2), Rat(-1, 3));
    m.r = Rat(7, 5);
    m.u = {GaussRat(Rat(1, 10), Rat(0)), GaussRat(Rat(0), Rat(-2, 9))};
    Json j = map_to_json(m);
    ConformalMap back = map_from_json(j);
    CHECK(back.z1 == m.z1);
    CHECK(back.r == m.r);
    REQUIRE(back.u.size() == m.u.size());
    CHECK(back.u[0] == m.u[0]);
    CHECK(back.u[1] == m.u[1]);
    // serialization is byte-deterministic
    CHECK(map_to_json(back).dump() == j.dump());
}

TEST_CASE("map JSON accepts floats with exact rationalization") {
    Json j = Json::parse(R"({"z1":[2.0,0.5],"r":0.25,"u":[[0.1,0]]})");
    ConformalMap m = map_from_json(j);
    CHECK(m.r == Rat(1, 4));
    CHECK(m.z1 == GaussRat(Rat(2), Rat(1, 2)));
    CHECK(m.u[0] == GaussRat(Rat(1, 10)));
    CHECK_THROWS_AS(map_from_json(Json::parse(R"({"z1":["2","0"],"r":"-1"})")), ValidationError);
}

TEST_CASE("flux vector JSON round-trip") {
    FluxVector f;
    f.Q = Rat(9, 4);
    f.Qj = {GaussRat(Rat(1, 8)), GaussRat(Rat(-3), Rat(2, 7))};
    Json j = fluxes_to_json(f);
    CHECK(j["Q"] == "9/4");
    FluxVector back = fluxes_from_json(j);
    CHECK(back.Q == f.Q);
    REQUIRE(back.Qj.size() == 2);
    CHECK(back.Qj[1] == f.Qj[1]);
}

TEST_CASE("polynomial and scenario round-trips") {
    Poly2 p = Poly2::monomial(2, 1, GaussRat(Rat(1, 3), Rat(-2))) + Poly2(GaussRat(5));
    CHECK(poly2_from_json(poly2_to_json(p)) == p);

    Json sj = Json::parse(R"({
        "medium": "dihedral:1,2,1",
        "schedule": {
            "z1": ["2", "1"],
            "pieces": [
                {"t0": "0", "t1": "1/2", "q": "2", "qj": [["1/10", "0"]]},
                {"t0": "1/2", "t1": "1", "q": "1", "qj": []}
            ]
        }
    })");
    Scenario sc = scenario_from_json(sj);
    CHECK(sc.medium.str() == "dihedral:1,2,1");
    CHECK(sc.schedule.pieces.size() == 2);
    CHECK(sc.schedule.cumulative_q(Rat(1)) == Rat(3, 2));
    Json back = scenario_to_json(sc);
    CHECK(scenario_from_json(back).schedule.cumulative_q(Rat(1)) == Rat(3, 2));
    CHECK(scenario_to_json(scenario_from_json(back)).dump() == back.dump());
}

TEST_CASE("cli: disk fluxes in the linear medium") {
    std::string out;
    int rc = run_cli("fluxes --medium axis:1 --map '{\"z1\":[\"2\",\"0\"],\"r\":\"1\"}'", &out);
    CHECK(rc == 0);
    Json j = Json::parse(out);
    CHECK(j["Q"] == "1");
    CHECK(j["Q1"][0] == "1/8");
    CHECK(j["Q1"][1] == "0");
    CHECK(j["residuals_zero"] == true);
}

TEST_CASE("cli: determinism of repeated runs") {
    std::string a, b;
    run_cli("intertwiner --medium dihedral:1,2,0", &a);
    run_cli("intertwiner --medium dihedral:1,2,0", &b);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("fluxes --medium nosuch:1 --map '{\"z1\":[\"2\",\"0\"],\"r\":\"1\"}'") == 2);
    CHECK(run_cli("check-intertwining --medium dihedral:1,2,1 --degree 6") == 0);
    // map with an interior critical point: non-univalent, exit 3
    CHECK(run_cli("fluxes --medium axis:1 --map "
                  "'{\"z1\":[\"2\",\"0\"],\"r\":\"1\",\"u\":[[\"3/5\",\"0\"]]}'") == 3);
    // source on the mirror line: validation, exit 2
    CHECK(run_cli("fluxes --medium axis:1 --map '{\"z1\":[\"0\",\"2\"],\"r\":\"1\"}'") == 2);
}

TEST_CASE("cli: grow emits one frame per line and boundary csv") {
    std::string scen = R"({"medium":"axis:1","schedule":{"z1":["2","0"],)"
                       R"("pieces":[{"t0":"0","t1":"1","q":"1","qj":[]}]}})";
    std::string out;
    int rc = run_cli("grow --scenario '" + scen + "' --times 1/2,1 --emit-boundary 16 --out grow_test.jsonl",
                     &out);
    CHECK(rc == 0);
    std::ifstream f("grow_test.jsonl");
    std::string l1, l2;
    std::getline(f, l1);
    std::getline(f, l2);
    CHECK(Json::parse(l1)["t"] == "1/2");
    CHECK(Json::parse(l2)["t"] == "1");
    std::ifstream csv("grow_test.jsonl.frame0.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,y");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 16);
    std::remove("grow_test.jsonl");
    std::remove("grow_test.jsonl.frame0.csv");
    std::remove("grow_test.jsonl.frame1.csv");
}

TEST_CASE("cli: json artifacts re-parse to equal values") {
    std::string out;
    run_cli("moments --map '{\"z1\":[\"2\",\"0\"],\"r\":\"1\",\"u\":[[\"1/10\",\"0\"]]}' --pmax 2",
            &out);
    Json j = Json::parse(out);
    CHECK(gauss_from_json(j["moments_over_pi"][0]) == GaussRat(Rat(51, 50)));
    CHECK(gauss_from_json(j["moments_over_pi"][1]) == GaussRat(Rat(1, 10)));
}
