#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "oamix/cli.hpp"
#include "oamix/io.hpp"
#include "support.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "oamix");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = oamix::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("catalog then eval reproduces the Table 3 summary") {
    testing::TempDir dir;
    const auto t3 = (dir / "t3.csv").string();
    REQUIRE(run({"catalog", "czitrom-d-oofa", "-o", t3}).code == 0);
    const auto r = run({"eval", "-i", t3, "--model", "scheffe-q", "--pwo", "--block", "--interactions", "default"});
    CHECK(r.code == 0);
    CHECK(r.out.find("avg PV       0.5417") != std::string::npos);
    CHECK(r.out.find("G-efficiency 58.8%") != std::string::npos);

    const auto j = run({"eval", "-i", t3, "--model", "scheffe-q", "--interactions", "default", "--json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["avg_pv"].get<double>() == doctest::Approx(13.0 / 24.0));
    CHECK(doc["p"] == 13);
    CHECK(doc["blocking"]["pass"] == true);
}

TEST_CASE("check-blocks exit codes") {
    testing::TempDir dir;
    const auto t3 = (dir / "t3.csv").string();
    const auto t8 = (dir / "t8.csv").string();
    run({"catalog", "czitrom-d-oofa", "-o", t3});
    run({"catalog", "ca-projection", "--a-max", "100", "-o", t8});
    CHECK(run({"check-blocks", "-i", t3, "--model", "scheffe-q", "--interactions", "default"}).code == 0);
    const auto r = run({"check-blocks", "-i", t8, "--model", "ca-q"});
    CHECK(r.code == 3);
    CHECK(r.out.find("NOT orthogonally blocked") != std::string::npos);
}

TEST_CASE("rank-deficient specs exit 4 and name the columns") {
    testing::TempDir dir;
    const auto t1 = (dir / "t1.csv").string();
    run({"catalog", "czitrom-d", "-o", t1});
    const auto r = run({"eval", "-i", t1, "--model", "scheffe-q", "--pwo", "--interactions", "full"});
    CHECK(r.code == 4);
    CHECK(r.err.find("z12") != std::string::npos);
    CHECK(r.err.find("x1*z12") != std::string::npos);
}

TEST_CASE("usage and data errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"eval"}).code == 2);
    CHECK(run({"eval", "-i", "x.csv", "--model", "nope"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"eval", "-i", "/nonexistent/x.csv", "--model", "scheffe-q"}).code == 3);

    testing::TempDir dir;
    const auto t3 = (dir / "t3.csv").string();
    run({"catalog", "czitrom-d-oofa", "-o", t3});
    CHECK(run({"eval", "-i", t3, "--model", "ca-q"}).code == 2);
    CHECK(run({"eval", "-i", t3, "--model", "scheffe-q", "--interactions", "x3*z12"}).code == 2);
    CHECK(run({"eval", "-i", t3, "--model", "scheffe-q", "--interactions", "bogus"}).code == 2);

    const auto bad = (dir / "bad.csv").string();
    oamix::io::write_text_file(bad, "run,x1,x2,z12,block\n1,0.5,0.6,1,1\n");
    CHECK(run({"validate", "-i", bad}).code == 3);
    CHECK(run({"eval", "-i", bad, "--model", "scheffe-l"}).code == 3);
    CHECK(run({"validate", "-i", t3}).code == 0);
}

TEST_CASE("catalog writes to stdout and lists names") {
    const auto r = run({"catalog", "czitrom-d"});
    CHECK(r.code == 0);
    CHECK(r.out == oamix::io::read_text_file(testing::golden("table1.csv")));
    CHECK(run({"catalog", "--list"}).out.find("ca-projection") != std::string::npos);
    CHECK(run({"catalog", "nope"}).code == 2);
}

TEST_CASE("expand") {
    testing::TempDir dir;
    const auto t1 = (dir / "t1.csv").string();
    const auto out = (dir / "t1x.csv").string();
    run({"catalog", "czitrom-d", "-o", t1});
    CHECK(run({"expand", "-i", t1, "-o", out}).code == 0);
    CHECK(oamix::io::read_design_file(out).size() == 24);
    CHECK(run({"expand", "-i", out}).code == 3);
}

TEST_CASE("fds is seeded from the flag, then the environment, then zero") {
    testing::TempDir dir;
    const auto t8 = (dir / "t8.csv").string();
    run({"catalog", "ca-projection", "--a-max", "100", "-o", t8});
    const auto a = (dir / "a").string();
    const auto b = (dir / "b").string();
    const auto c = (dir / "c").string();
    REQUIRE(run({"fds", "-i", t8, "--model", "ca-q", "--interactions", "default", "--samples", "500", "--seed", "42",
                 "-o", a})
                .code == 0);
    ::setenv("OAMIX_SEED", "42", 1);
    REQUIRE(run({"fds", "-i", t8, "--model", "ca-q", "--interactions", "default", "--samples", "500", "-o", b}).code ==
            0);
    ::unsetenv("OAMIX_SEED");
    REQUIRE(run({"fds", "-i", t8, "--model", "ca-q", "--interactions", "default", "--samples", "500", "-o", c}).code ==
            0);
    const auto ta = oamix::io::read_text_file(a + ".csv");
    CHECK(ta == oamix::io::read_text_file(b + ".csv"));
    CHECK(ta != oamix::io::read_text_file(c + ".csv"));
    CHECK(oamix::io::read_text_file(a + ".svg").find("<svg") == 0);
    ::setenv("OAMIX_SEED", "banana", 1);
    CHECK(run({"fds", "-i", t8, "--model", "ca-q", "--samples", "10", "-o", c}).code == 2);
    ::unsetenv("OAMIX_SEED");
}

TEST_CASE("power and fit") {
    testing::TempDir dir;
    const auto t3 = (dir / "t3.csv").string();
    run({"catalog", "czitrom-d-oofa", "-o", t3});
    const auto p = run({"power", "-i", t3, "--model", "scheffe-q", "--interactions", "default", "--json"});
    REQUIRE(p.code == 0);
    const auto doc = nlohmann::json::parse(p.out);
    CHECK(doc["df"] == 11);
    CHECK(doc["terms"].size() == 13);

    std::string resp = "y\n";
    for (int i = 0; i < 24; ++i) resp += std::to_string(10 + (i % 5)) + "\n";
    const auto y = (dir / "y.csv").string();
    oamix::io::write_text_file(y, resp);
    const auto coef = (dir / "coef.csv").string();
    const auto f = run({"fit", "-i", t3, "--model", "scheffe-q", "--response", y, "-o", coef});
    CHECK(f.code == 0);
    CHECK(oamix::io::read_text_file(coef).rfind("term,estimate,se\nx1,", 0) == 0);

    oamix::io::write_text_file(y, "y\n1\n2\n");
    CHECK(run({"fit", "-i", t3, "--model", "scheffe-q", "--response", y}).code == 3);
}
