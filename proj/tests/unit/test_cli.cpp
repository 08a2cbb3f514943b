#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "singmc/cli.hpp"
#include "singmc/errors.hpp"

using namespace singmc;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("simplex with a constant integrand") {
    const auto r = run({"simplex", "--alpha", "0.5,0.5", "--integrand", "1", "--samples", "1000", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["estimate"].get<double>() - std::numbers::pi) < 1e-12);
    CHECK(j["std_error"].get<double>() == 0.0);
    CHECK(j["n_samples"] == 1000);
    CHECK(j["seed"] == 7);
}

TEST_CASE("constants") {
    const auto r = run({"constants", "--alpha", "0.5,0.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["simplex_constant"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(j["w_n"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(j["n"] == 2);

    const auto b = run({"constants", "--exponents=-0.5,-0.5", "--format", "csv"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("ball_constant,14.83259741841") != std::string::npos);

    const auto w = run({"constants", "--beta", "0.5", "--dim", "3"});
    REQUIRE(w.code == 0);
    CHECK(nlohmann::json::parse(w.out)["w_n"].get<double>() ==
          doctest::Approx(std::pow(std::numbers::pi, 1.5) / std::tgamma(2.5)));
    CHECK(run({"constants", "--beta", "0.5"}).code == 2);
    CHECK(run({"constants"}).code == 2);
}

TEST_CASE("exit codes") {
    const auto dom = run({"simplex", "--alpha", "1.0,0.5", "--integrand", "1", "--seed", "1"});
    CHECK(dom.code == 3);
    CHECK(dom.err.find("alpha_k < 1") != std::string::npos);
    CHECK(dom.out.empty());

    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1"}).code == 2);  // no seed
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1", "--seed", "1", "--bogus"}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5,x", "--integrand", "1", "--seed", "1"}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "s2", "--seed", "1"}).code == 2);
    const auto syn = run({"simplex", "--alpha", "0.5", "--integrand", "exp(s1", "--seed", "1"});
    CHECK(syn.code == 2);
    CHECK(syn.err.find("offset 6") != std::string::npos);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1", "--seed", "1", "--samples", "1"}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1", "--seed", "1", "--confidence", "1.5"}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1", "--seed", "1", "--format", "xml"}).code == 2);
    CHECK(run({"simplex", "--alpha", "0.5", "--integrand", "1", "--seed", "1", "--method", "gibbs"}).code == 2);

    const auto num = run({"simplex", "--alpha", "0", "--integrand", "log(s1 - s1)", "--seed", "1", "--samples", "10"});
    CHECK(num.code == 4);
    CHECK(num.err.find("non-finite") != std::string::npos);
    CHECK(run({"oracle", "--alpha", "0,0,0,0", "--integrand", "1"}).code == 3);
    CHECK(run({"ball", "--exponents=-1,0", "--integrand", "1", "--seed", "1"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("skip-nonfinite flag") {
    const auto r = run({"simplex", "--alpha", "0", "--integrand", "1/(s1 - min(s1, 0.5))", "--seed", "3",
                        "--samples", "1000", "--skip-nonfinite"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n_skipped"].get<int>() > 400);
}

TEST_CASE("ball, direct, oracle, param") {
    const auto b = run({"ball", "--exponents", "0,0", "--integrand", "s1^2", "--seed", "2", "--samples", "20000"});
    REQUIRE(b.code == 0);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(std::abs(jb["estimate"].get<double>() - std::numbers::pi / 4) < 5 * jb["std_error"].get<double>());

    const auto d = run({"direct", "--alpha", "0,0", "--integrand", "1", "--seed", "2", "--samples", "100"});
    REQUIRE(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["estimate"].get<double>() == 0.5);

    const auto o = run({"oracle", "--alpha", "0.5,0.5", "--integrand", "s2", "--nodes", "32"});
    REQUIRE(o.code == 0);
    CHECK(nlohmann::json::parse(o.out)["value"].get<double>() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
    const auto ob = run({"oracle", "--exponents", "0,0", "--integrand", "1", "--scheme", "power_substitution",
                         "--format", "csv"});
    REQUIRE(ob.code == 0);
    CHECK(ob.out.rfind("value,refined,convergence\n3.14159265", 0) == 0);
    CHECK(run({"oracle", "--alpha", "0.5", "--exponents", "0", "--integrand", "1"}).code == 2);

    const auto p = run({"param", "--alpha", "0.5,0.5", "--integrand", "exp(-t1*(s1+s2))", "--grid", "0:1:11",
                        "--seed", "3", "--samples", "5000", "--gaussian-draws", "2000", "--with-covariance"});
    REQUIRE(p.code == 0);
    const auto jp = nlohmann::json::parse(p.out);
    CHECK(jp["q_hat"].size() == 11);
    CHECK(jp["covariance"].size() == 11);
    CHECK(jp["grid"][10][0].get<double>() == 1.0);
    CHECK(jp["band_halfwidth"].get<double>() > 0.0);

    const auto pc = run({"param", "--alpha", "0.5,0.5", "--integrand", "t1*t2*s1", "--grid", "0:1:2", "--grid",
                         "1:2:3", "--seed", "3", "--samples", "2000", "--format", "csv"});
    REQUIRE(pc.code == 0);
    CHECK(pc.out.rfind("t1,t2,q_hat,lower,upper\n", 0) == 0);
    CHECK(std::count(pc.out.begin(), pc.out.end(), '\n') == 7);
    CHECK(run({"param", "--alpha", "0.5,0.5", "--integrand", "t2*s1", "--grid", "0:1:2", "--seed", "3"}).code == 2);
    CHECK(run({"param", "--alpha", "0.5,0.5", "--integrand", "t1", "--grid", "0:1", "--seed", "3"}).code == 2);
    CHECK(run({"param", "--alpha", "0.5,0.5", "--integrand", "t1", "--grid", "0:1:0", "--seed", "3"}).code == 2);
}

TEST_CASE("sample subcommand") {
    const auto c = run({"sample", "--alpha", "0.2,0.4,0.1", "--samples", "50", "--seed", "4", "--format", "csv"});
    REQUIRE(c.code == 0);
    std::istringstream in(c.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "s1,s2,s3");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<double> v;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 3);
        CHECK(0 < v[0]);
        CHECK(v[0] < v[1]);
        CHECK(v[1] < v[2]);
        CHECK(v[2] < 1);
    }
    CHECK(rows == 50);

    const auto j = run({"sample", "--exponents", "0,0", "--samples", "20", "--seed", "4", "--workers", "3"});
    REQUIRE(j.code == 0);
    const auto pts = nlohmann::json::parse(j.out);
    CHECK(pts.size() == 20);
    for (const auto& p : pts) CHECK(p[0].get<double>() * p[0].get<double>() + p[1].get<double>() * p[1].get<double>() <= 1.0);
    CHECK(run({"sample", "--samples", "5", "--seed", "1"}).code == 2);
    CHECK(nlohmann::json::parse(run({"sample", "--alpha", "0", "--samples", "0", "--seed", "1"}).out).empty());
}

TEST_CASE("identical argv gives identical bytes") {
    const std::vector<std::string> argv{"simplex", "--alpha", "0.3,0.6", "--integrand", "exp(s1)*s2", "--seed", "9",
                                        "--samples", "20000", "--workers", "4"};
    CHECK(run(argv).out == run(argv).out);
    auto serial = argv;
    serial.insert(serial.end(), {"--execution", "serial"});
    CHECK(run(serial).out == run(argv).out);
}

TEST_CASE("real lists") {
    CHECK(cli::parse_real_list("0.5, -0.25,+1e-3") == std::vector<double>{0.5, -0.25, 1e-3});
    CHECK_THROWS_AS(cli::parse_real_list(""), UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("1,,2"), UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("nan"), UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("1;2"), UsageError);
}
