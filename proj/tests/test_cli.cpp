#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using casimir::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// key = value lines of the compute report (first occurrence wins)
std::map<std::string, std::string> report(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv.emplace(line.substr(0, eq), line.substr(eq + 3));
    }
    return kv;
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "casimir_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("compute from lengths") {
    const auto r = invoke({"compute", "--L", "1", "--R1", "1", "--R2", "1", "--model", "scalar"});
    REQUIRE(r.code == 0);
    const auto kv = report(r.out);
    CHECK(std::stod(kv.at("y")) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(std::stod(kv.at("f1")) == doctest::Approx(3.5 / 45.0).epsilon(1e-10));
}

TEST_CASE("compute sphere and plane") {
    const auto r = invoke({"compute", "--L", "1", "--R1", "1", "--plane", "--model", "dvd"});
    REQUIRE(r.code == 0);
    const auto kv = report(r.out);
    CHECK(std::stod(kv.at("y")) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::stod(kv.at("f1")) == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
}

TEST_CASE("compute from invariants with temperature") {
    const auto r = invoke({"compute", "--y", "2", "--u", "0.25", "--model", "ded", "--T", "296"});
    REQUIRE(r.code == 0);
    const auto kv = report(r.out);
    CHECK(std::stod(kv.at("f1")) == doctest::Approx(0.0199981).epsilon(1e-5));
    const double f = std::stod(kv.at("f"));
    CHECK(std::stod(kv.at("F_T_kbt")) == doctest::Approx(-f).epsilon(1e-10));
    CHECK(std::stod(kv.at("entropy_kb")) == doctest::Approx(f).epsilon(1e-10));
}

TEST_CASE("invalid input exits with code 2") {
    CHECK(invoke({"compute", "--y", "0.5", "--u", "0.1"}).code == 2);
    CHECK(invoke({"compute", "--y", "2", "--u", "0.3"}).code == 2);
    CHECK(invoke({"compute", "--L", "-1", "--R1", "1", "--R2", "1"}).code == 2);
    CHECK(invoke({"compute", "--y", "2", "--u", "0.1", "--L", "1"}).code == 2);
    CHECK(invoke({"compute", "--y", "2", "--u", "0.1", "--model", "vector"}).code == 2);
    CHECK(invoke({"curve", "--ymin", "1", "--ymax", "3"}).code == 2);
    CHECK(invoke({"curve", "--ymin", "1.1", "--ymax", "3", "--points", "1"}).code == 2);
    CHECK(invoke({"fit", "--model", "ded", "--n", "0"}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
}

TEST_CASE("curve on a two-point grid") {
    const auto r = invoke({"curve", "--model", "dvd", "--u", "0.25", "--ymin", "2", "--ymax", "3", "--points", "2",
                           "--quantity", "f1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# casimir 1.0.0\n", 0) == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "y_minus_1,u,model,quantity,value,error_estimate");
    CHECK(rows[1].rfind("1,0.25,dvd,f1,0.05,", 0) == 0);
}

TEST_CASE("curve is deterministic") {
    const std::vector<std::string> args{"curve", "--model", "all", "--u", "0,0.1", "--ymin", "1.05", "--ymax",
                                        "4", "--points", "4", "--log", "--seed", "5"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(data_rows(a.out).size() == 1 + 2 * 3 * 4);

    const auto file = scratch("curve.csv");
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", file.string()});
    REQUIRE(invoke(with_out).code == 0);
    std::ifstream in(file, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(data_rows(content.str()) == data_rows(a.out));
}

TEST_CASE("config file supplies defaults, flags take precedence") {
    const auto cfg = scratch("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"model": "scalar", "ymin": 2, "ymax": 3, "points": 2, "quantity": "f1"})";
    }
    const auto from_file = invoke({"curve", "--config", cfg.string(), "--u", "0.25"});
    REQUIRE(from_file.code == 0);
    const auto rows = data_rows(from_file.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].find(",scalar,f1,") != std::string::npos);

    const auto override = invoke({"curve", "--config", cfg.string(), "--u", "0.25", "--model", "dvd"});
    REQUIRE(override.code == 0);
    CHECK(data_rows(override.out)[1].find(",dvd,f1,") != std::string::npos);

    const auto bad = scratch("bad.json");
    {
        std::ofstream f(bad);
        f << R"({"colour": "red"})";
    }
    CHECK(invoke({"curve", "--config", bad.string()}).code == 2);
    CHECK(invoke({"curve", "--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("fit writes parameters") {
    const auto file = scratch("fit.json");
    const auto r = invoke({"fit", "--model", "dvd", "--uref", "0.1", "--n", "1", "--points", "50", "--starts", "2",
                           "--out", file.string()});
    REQUIRE(r.code == 0);
    CHECK(report(r.out).count("epsilon") == 1);
    CHECK(fs::exists(file));
    const auto reuse = invoke({"curve", "--model", "dvd", "--u", "0.1", "--ymin", "2", "--ymax", "3", "--points", "2",
                               "--quantity", "f_approx", "--params", file.string()});
    CHECK(reuse.code == 0);
}

TEST_CASE("version and validate") {
    const auto v = invoke({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("1.0.0") != std::string::npos);
    CHECK(invoke({"validate"}).code == 0);
}
