#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oamix/catalog.hpp"
#include "oamix/error.hpp"
#include "oamix/evaluate.hpp"
#include "oamix/io.hpp"
#include "support.hpp"

using namespace oamix;

namespace {

ErrorKind kind_of(const std::string& text) {
    try {
        io::parse_design_csv(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IOError;
}

std::string message_of(const std::string& text) {
    try {
        io::parse_design_csv(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(io::format_number(0.0) == "0");
    CHECK(io::format_number(0.168) == "0.168");
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(100.0) == "100");
    CHECK(io::format_number(0.1234567) == "0.123457");
    CHECK(io::format_number(-2.5) == "-2.5");
}

TEST_CASE("catalog designs round trip through CSV") {
    for (const auto& name : catalog::names()) {
        for (double a_max : {1.0, 100.0}) {
            const auto d = catalog::by_name(name, a_max);
            const auto text = io::write_design_csv(d);
            const auto back = io::parse_design_csv(text);
            CHECK(back == d);
            CHECK(io::write_design_csv(back) == text);
        }
    }
}

TEST_CASE("golden files are in canonical form") {
    for (const char* name : {"table1.csv", "table2.csv", "table3.csv", "table4.csv", "table7.csv", "table8.csv"}) {
        const auto text = io::read_text_file(testing::golden(name));
        CHECK(io::write_design_csv(io::parse_design_csv(text)) == text);
    }
}

TEST_CASE("schema errors name the column") {
    CHECK(kind_of("") == ErrorKind::SchemaError);
    CHECK(kind_of("run,x1,x2,z12,block\n") == ErrorKind::EmptyDesign);
    CHECK(kind_of("run,a1,a2,z12,block\n1,1,2,1,1\n") == ErrorKind::SchemaError);
    CHECK(message_of("run,a1,a2,z12,block\n1,1,2,1,1\n").find("'A'") != std::string::npos);
    CHECK(message_of("id,x1,x2,z12,block\n").find("'id'") != std::string::npos);
    CHECK(message_of("run,x1,x2,z21,block\n1,0.5,0.5,1,1\n").find("'z21'") != std::string::npos);
    CHECK(message_of("run,x1,x2,z12,blk\n1,0.5,0.5,1,1\n").find("'blk'") != std::string::npos);
    CHECK(message_of("run,x1,x2,z12,block,extra\n1,0.5,0.5,1,1,0\n").find("'extra'") != std::string::npos);
    CHECK(message_of("run,x1,x2,z12,block\n1,0.5,abc,1,1\n").find("'x2'") != std::string::npos);
    CHECK(message_of("run,x1,x2,z12,block\n1,0.5,0.5,2,1\n").find("'z12'") != std::string::npos);
    CHECK(kind_of("run,x1,x2,z12,block\n1,0.5,0.5,1\n") == ErrorKind::SchemaError);
    CHECK(kind_of("run,x1,x2,z12,block\n1,0.5,0.6,1,1\n") == ErrorKind::ValidationError);
}

TEST_CASE("proportion designs may carry totals") {
    const auto d = io::parse_design_csv("run,x1,x2,z12,block,A\n1,0.5,0.5,1,1,0.75\n2,1,0,0,1,1\n");
    CHECK(d.kind == DesignKind::Proportion);
    CHECK(d.runs[0].amount == 0.75);
    CHECK(io::write_design_csv(d).find(",A\n") != std::string::npos);
}

TEST_CASE("CRLF and blank lines are tolerated") {
    const auto d = io::parse_design_csv("run,x1,x2,z12,block\r\n1,0.5,0.5,1,1\r\n\r\n2,0.5,0.5,-1,1\r\n");
    CHECK(d.size() == 2);
}

TEST_CASE("response files") {
    CHECK(io::parse_response_csv("y\n1\n2.5\n") == std::vector<double>{1, 2.5});
    CHECK(io::parse_response_csv("run,y\n1,3\n2,4\n") == std::vector<double>{3, 4});
    CHECK(io::parse_response_csv("1\n2\n") == std::vector<double>{1, 2});
    CHECK_THROWS_AS(io::parse_response_csv("run,z\n1,2\n"), Error);
    CHECK_THROWS_AS(io::parse_response_csv(""), Error);
}

TEST_CASE("FDS outputs") {
    testing::TempDir dir;
    evaluate::FdsCurve one;
    one.points = {{0.5, 0.25}};
    one.samples = 1;
    io::write_fds_outputs(one, dir / "one");
    CHECK(io::read_text_file(dir / "one.csv") == "fraction,variance\n0.5,0.25\n");
    const auto svg = io::read_text_file(dir / "one.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    for (const char* tick : {">0<", ">0.25<", ">0.5<", ">0.75<", ">1<"}) CHECK(svg.find(tick) != std::string::npos);

    const auto d = catalog::component_amount_projection_design(100.0);
    const auto curve = evaluate::fds_curve(d, testing::table8_spec(), 10000, 42, 1);
    io::write_fds_outputs(curve, dir / "t8");
    const auto csv = io::read_text_file(dir / "t8.csv");
    std::istringstream in(csv);
    std::string line, last;
    std::size_t rows = 0;
    std::getline(in, line);
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 10000);
    CHECK(std::stod(last.substr(last.find(',') + 1)) == curve.points.back().variance);

    const auto again = evaluate::fds_curve(d, testing::table8_spec(), 10000, 42, 3);
    CHECK(io::fds_csv(again) == csv);

    evaluate::FdsCurve empty;
    CHECK_THROWS_AS(io::write_fds_outputs(empty, dir / "empty"), Error);
    CHECK_THROWS_AS(io::write_fds_outputs(one, dir / "missing" / "sub" / "x"), Error);
}

TEST_CASE("JSON carries every report field") {
    const auto x = modelmat::build_model_matrix(catalog::czitrom_d_oofa(), testing::table3_spec());
    const auto j = io::to_json(evaluate::criteria_report(x));
    for (const char* key : {"n", "p", "det_xtx", "log_det_xtx", "d_criterion", "a_criterion", "max_pv", "max_pv_run",
                            "avg_pv", "g_efficiency", "power_options", "columns", "notes"})
        CHECK(j.contains(key));
    CHECK(j["columns"].size() == 13);
    CHECK(j["columns"][0].contains("r_squared"));
    CHECK(nlohmann::json::parse(j.dump()) == j);
}
