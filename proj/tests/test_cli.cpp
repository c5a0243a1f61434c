#include "gle/cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstring>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace gle::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string base = R"({"m":1,"lambda":1,"beta":1,"gamma":2,"kbt":1,"kernel":"powerlaw:0.5"})";

struct Result {
    int rc;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "gle_spectra");
    std::ostringstream out, err;
    const int rc = run(args, out, err);
    return {rc, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const auto p = fs::temp_directory_path() / ("gle_cli_" + name);
    std::ofstream(p) << text;
    return p;
}

std::string with(const std::string& key, const std::string& value) {
    auto j = json::parse(base);
    j[key] = json::parse(value);
    return j.dump();
}

std::string field_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

json envelope(const std::string& err) {
    const auto line = err.substr(err.rfind("{\"error\""));
    return json::parse(line).at("error");
}

}  // namespace

TEST_CASE("the schema example parses") {
    const auto c = parse_config(base);
    CHECK(c.params.m == 1.0);
    CHECK(c.params.gamma == 2.0);
    CHECK(c.kernel == "powerlaw:0.5");
    CHECK(c.output.format == OutputFormat::csv);
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 50; ++i) {
        RunConfig c;
        c.params.m = u(rng);
        c.params.lambda = u(rng);
        c.params.beta = u(rng);
        c.params.gamma = i % 5 == 0 ? 0.0 : u(rng);
        c.params.kbt = u(rng);
        c.kernel = i % 2 ? "rouse:1,2.5,4" : "cauchy:0.75,3";
        c.quad.rel_tol = 1e-9;
        c.quad.abs_tol = 1e-14;
        c.quad.max_subdivisions = 300 + i;
        c.output.path = "out_" + std::to_string(i) + ".csv";
        c.output.format = i % 3 ? OutputFormat::csv : OutputFormat::json;
        const auto text = serialize_config(c);
        const auto back = parse_config(text);
        CHECK(back.params.m == c.params.m);
        CHECK(back.params.lambda == c.params.lambda);
        CHECK(back.params.beta == c.params.beta);
        CHECK(back.params.gamma == c.params.gamma);
        CHECK(back.params.kbt == c.params.kbt);
        CHECK(back.kernel == c.kernel);
        CHECK(back.quad.rel_tol == c.quad.rel_tol);
        CHECK(back.quad.abs_tol == c.quad.abs_tol);
        CHECK(back.quad.max_subdivisions == c.quad.max_subdivisions);
        CHECK(back.output.path == c.output.path);
        CHECK(back.output.format == c.output.format);
        CHECK(serialize_config(back) == text);
    }
}

TEST_CASE("field-level config errors") {
    CHECK(field_of(with("m", "-1")) == "m");
    CHECK(field_of(with("lambda", "-0.5")) == "lambda");
    CHECK(field_of(with("kbt", "\"hot\"")) == "kbt");
    CHECK(field_of(with("kernel", "\"powerlaw:1.5\"")) == "kernel");
    CHECK(field_of(with("kernel", "\"nonsense\"")) == "kernel");
    CHECK(field_of(with("colour", "1")) == "colour");
    CHECK(field_of(with("quad", R"({"rel_tol":-1})")) == "quad");
    CHECK(field_of(with("quad", R"({"depth":3})")) == "quad.depth");
    CHECK(field_of(with("output", R"({"format":"xml"})")) == "output.format");
    CHECK(field_of(R"({"m":1,"lambda":1,"beta":1,"kbt":1,"kernel":"rouse:1"})") == "gamma");
    CHECK(field_of("{not json") == "");
    CHECK(field_of(with("gamma", "0")) == "<accepted>");
}

TEST_CASE("grids and number formatting") {
    CHECK(parse_grid("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    const auto lin = parse_grid("lin:0:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[2] == 0.5);
    const auto lg = parse_grid("log:1e-2:1e2:5");
    REQUIRE(lg.size() == 5);
    CHECK(lg[2] == Catch::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(parse_grid("log:1:0.5:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("lin:0:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1,x"), std::invalid_argument);

    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    char printf_buf[64];
    for (double v : {-2.5e-300, 1.0 / 3.0, 6.02214076e23, 5e-324}) {
        std::snprintf(printf_buf, sizeof printf_buf, "%.17g", v);
        CHECK(format_number(v) == printf_buf);
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        double v = 0.0;
        do {
            const auto bits = rng();
            std::memcpy(&v, &bits, sizeof v);
        } while (!std::isfinite(v));
        const auto s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("free particle position msd is rejected") {
    const auto cfg = write_temp("free.json", with("gamma", "0"));
    const auto r = invoke({"msd", "--config", cfg.string(), "--quantity", "x", "--t-grid", "1,2"});
    CHECK(r.rc == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("free particle has no stationary position") != std::string::npos);
    const auto e = envelope(r.err);
    CHECK(e.at("field") == "gamma");
    CHECK(e.at("exit_code") == 2);
}

TEST_CASE("exit codes and usage") {
    const auto unknown = invoke({"frobnicate"});
    CHECK(unknown.rc == 2);
    CHECK(unknown.err.find("Usage:") != std::string::npos);
    CHECK(envelope(unknown.err).at("kind") == "usage");

    CHECK(invoke({}).rc == 2);
    const auto help = invoke({"--help"});
    CHECK(help.rc == 0);
    CHECK(help.out.find("equipartition") != std::string::npos);

    const auto cfg = write_temp("base.json", base);
    CHECK(invoke({"simulate", "--config", cfg.string(), "--n-paths", "4"}).rc == 2);
    CHECK(invoke({"msd", "--config", cfg.string(), "--t-grid", "log:1:0:3"}).rc == 2);
    CHECK(invoke({"equipartition", "--config", "/nonexistent/config.json"}).rc == 2);

    const auto curve = write_temp("short.csv", "t,msd\n1,1\n2,4\n3,9\n");
    const auto rejected = invoke({"fit-exponent", "--input", curve.string(), "--window", "1:3"});
    CHECK(rejected.rc == 1);
    CHECK(envelope(rejected.err).at("kind") == "computation");
}

TEST_CASE("csv output has a single header row") {
    const auto r = invoke({"transform", "--kernel", "rouse:1,2", "--omega", "log:1e-2:1e2:5"});
    REQUIRE(r.rc == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "omega,kcos,ksin,route");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::isdigit(static_cast<unsigned char>(line[0])));
    }
    CHECK(rows == 5);
}

TEST_CASE("equipartition on the trapped config reports unit ratios") {
    const auto cfg = write_temp("base.json", base);
    const auto r = invoke({"equipartition", "--config", cfg.string()});
    REQUIRE(r.rc == 0);
    const auto j = json::parse(r.out);
    CHECK(std::abs(j.at("gamma_x_ratio").get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(j.at("m_v_ratio").get<double>() - 1.0) < 1e-6);
    CHECK(j.at("failures").empty());
}

TEST_CASE("fit-exponent on powerlaw 0.5 msd output") {
    const auto cfg = write_temp("base.json", base);
    const auto csv = fs::temp_directory_path() / "gle_cli_msd.csv";
    const auto m = invoke({"msd", "--config", cfg.string(), "--quantity", "x", "--t-grid", "log:1e2:1e4:41", "-o", csv.string()});
    REQUIRE(m.rc == 0);
    const auto f = invoke({"fit-exponent", "--input", csv.string(), "--window", "1e2:1e4", "--model", "power"});
    REQUIRE(f.rc == 0);
    const auto j = json::parse(f.out);
    CHECK(std::abs(j.at("exponent").get<double>() - 1.5) <= 0.05);
}

TEST_CASE("simulate is reproducible from the seed") {
    const auto cfg = write_temp("rouse1.json", with("kernel", "\"rouse:1\""));
    const std::vector<std::string> args{"simulate", "--config", cfg.string(), "--n-paths", "32", "--dt", "0.05",
                                        "--t-max", "2", "--seed", "3"};
    const auto a = invoke(args), b = invoke(args);
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
    auto other = args;
    other.back() = "4";
    CHECK(invoke(other).out != a.out);
    const auto summary = json::parse(a.err);
    CHECK(summary.contains("var_v"));
    CHECK(summary.contains("var_x"));
    CHECK(summary.contains("equipartition_ratios"));
}
