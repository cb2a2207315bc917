#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pptbounds/cli.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/statefile.hpp"
#include "test_util.hpp"

using namespace pptbounds;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path d = fs::temp_directory_path() / "pptbounds_test";
    fs::create_directories(d);
    return d;
}

int cli(std::initializer_list<const char *> args, std::string *out_text = nullptr) {
    std::vector<const char *> argv{"pptbounds"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str() + err.str();
    return rc;
}

} // namespace

TEST_CASE("state spec grammar resolves every contract name") {
    CHECK(resolve_state_spec("rho_v").name == "rho_v");
    CHECK(resolve_state_spec("rho_alpha:0.45").params[0] == doctest::Approx(0.45));
    const auto rt = resolve_state_spec("ranktwo:0.3,0.785398");
    CHECK(rt.params.size() == 2);
    CHECK(resolve_state_spec("antisym3").projector.rank() == 3);
    CHECK(resolve_state_spec("maxent:2").state.dim() == 4);
    CHECK(resolve_state_spec("ground:2").projector.rank() == 1);

    CHECK_THROWS_AS(resolve_state_spec("rho_alpha"), ParseError);
    CHECK_THROWS_AS(resolve_state_spec("rho_alpha:0.4,0.5"), ParseError);
    CHECK_THROWS_AS(resolve_state_spec("rho_alpha:xyz"), ParseError);
    CHECK_THROWS_AS(resolve_state_spec("no_such_state"), ParseError);
    CHECK_THROWS_AS(resolve_state_spec("rho_alpha:2.0"), BadParameterError);
}

TEST_CASE("state file: write then read is bit-exact") {
    auto gen = testutil::rng(321);
    const auto rho = testutil::random_density(2, 3, 2, gen); // complex entries
    const std::string text = serialize_state(rho.op());
    const StateFile f = parse_state(text);
    CHECK(f.dim_a == 2);
    CHECK(f.dim_b == 3);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(f.matrix(i, j).real() == rho.matrix()(i, j).real());
            CHECK(f.matrix(i, j).imag() == rho.matrix()(i, j).imag());
        }
    // and the file round trip through disk
    const fs::path p = temp_dir() / "roundtrip.json";
    write_state(p.string(), rho.op());
    const StateFile g = read_state(p.string());
    CHECK(g.matrix.max_abs_diff(rho.matrix()) == 0.0);
    CHECK(to_density(g).dim_a() == 2);
}

TEST_CASE("state file serialization is deterministic") {
    const auto rv = make_rho_v();
    CHECK(serialize_state(rv.state.op()) == serialize_state(rv.state.op()));
}

TEST_CASE("state file validation diagnostics name the offending field") {
    const auto rv = make_rho_v();
    // trace 0.9
    BipartiteOperator bad = rv.state.op();
    bad.matrix *= 0.9;
    const StateFile f1 = parse_state(serialize_state(bad));
    try {
        to_density(f1);
        FAIL("expected ValidationError");
    } catch (const ValidationError &e) {
        CHECK(e.field == "trace");
    }
    // broken hermiticity
    BipartiteOperator herm = rv.state.op();
    herm.matrix(0, 1) += cdouble(1e-3, 0.0);
    const StateFile f2 = parse_state(serialize_state(herm));
    try {
        to_density(f2);
        FAIL("expected ValidationError");
    } catch (const ValidationError &e) {
        CHECK(e.field == "hermitian");
    }
    // wrong row count
    std::string text = serialize_state(rv.state.op());
    nlohmann::json j = nlohmann::json::parse(text);
    j["matrix"].erase(0);
    try {
        parse_state(j.dump());
        FAIL("expected ValidationError");
    } catch (const ValidationError &e) {
        CHECK(e.field == "square");
    }
    // outright parse garbage
    CHECK_THROWS_AS(parse_state("{not json"), ParseError);
    CHECK_THROWS_AS(parse_state("{\"format_version\": 1}"), ParseError);
}

TEST_CASE("state file rejects entries that overflow double") {
    const auto rv = make_rho_v();
    std::string text = serialize_state(rv.state.op());
    const std::string first_entry = "0.24999999999999994"; // 1/2 * |1/sqrt2|^2
    const auto pos = text.find(first_entry);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, first_entry.size(), "1e999");
    CHECK_THROWS_AS(parse_state(text), ParseError);
}

TEST_CASE("support cutoff is honored when loading states from files") {
    // Rank-two diagonal state with split spectrum 0.7 / 0.3.
    ComplexMatrix m(4, 4);
    m(0, 0) = 0.7;
    m(1, 1) = 0.3;
    const BipartiteOperator op{2, 2, std::move(m)};
    const fs::path p = temp_dir() / "split.json";
    write_state(p.string(), op);
    CHECK(resolve_state_spec(p.string()).projector.rank() == 2);
    // A 0.5 relative cutoff keeps only eigenvalues above 0.35.
    CHECK(resolve_state_spec(p.string(), 0.5).projector.rank() == 1);
}

TEST_CASE("scan csv: deterministic bytes, exact header, row invariants") {
    SolveOptions opts;
    bool fail1 = false, fail2 = false;
    const std::string csv1 = scan_alpha_csv(0.42, 0.50, 5, opts, fail1);
    const std::string csv2 = scan_alpha_csv(0.42, 0.50, 5, opts, fail2);
    CHECK(csv1 == csv2);
    CHECK(!fail1);
    std::istringstream is(csv1);
    std::string header;
    std::getline(is, header);
    CHECK(header == "alpha,e_n,e_w,e_eta,eta_lower,gap,irreversible");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        ++rows;
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        REQUIRE(cells.size() == 7);
        const double e_n = std::stod(cells[1]);
        const double e_w = std::stod(cells[2]);
        const double e_eta = std::stod(cells[3]);
        const double lower = std::stod(cells[4]);
        CHECK(e_w <= e_n + 1e-6);
        CHECK(e_eta >= lower - 1e-6);
        CHECK(cells[6] == "true");
    }
    CHECK(rows == 5);
}

TEST_CASE("bounds json renders deterministically and parses") {
    const auto rep = full_report(make_max_entangled(2));
    const std::string js = bounds_json(rep);
    CHECK(js == bounds_json(full_report(make_max_entangled(2))));
    const auto parsed = nlohmann::json::parse(js);
    CHECK(parsed["state"] == "maxent");
    CHECK(parsed["bounds"].contains("e_eta_primal"));
    CHECK(parsed["irreversible"].is_boolean());
    // maxent: all three distillation bounds equal 1, verdict not established
    CHECK(std::abs(parsed["bounds"]["e_n"].get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(parsed["bounds"]["e_eta_primal"].get<double>() - 1.0) < 1e-6);
    CHECK(!parsed["irreversible"].get<bool>());
}

TEST_CASE("cli: bounds on rho_v exits 0 and prints the verdict") {
    std::string text;
    const int rc = cli({"bounds", "rho_v"}, &text);
    CHECK(rc == 0);
    CHECK(text.find("IRREVERSIBLE") != std::string::npos);
    CHECK(text.find("E_eta (primal)   1.000000") != std::string::npos);
    CHECK(text.find("E_N              0.771553") != std::string::npos);
}

TEST_CASE("cli: bounds writes a json report next to the table") {
    const fs::path p = temp_dir() / "rho_v.json";
    std::string text;
    const int rc = cli({"bounds", "rho_v", "--json", p.string().c_str()}, &text);
    CHECK(rc == 0);
    const auto parsed = nlohmann::json::parse(std::ifstream(p));
    CHECK(parsed["irreversible"].get<bool>());
}

TEST_CASE("cli: input errors exit 2") {
    std::string text;
    CHECK(cli({"bounds", "no_such_state"}, &text) == 2);
    CHECK(cli({"bounds", "rho_alpha:2.0"}, &text) == 2);
    CHECK(cli({"scan-alpha", "--from", "0.9", "--to", "0.1"}, &text) == 2);
    CHECK(cli({"additivity", "maxent:4", "maxent:4"}, &text) == 2); // guard > 100
    CHECK(cli({}, &text) == 2);
}

TEST_CASE("cli: scan writes the csv file") {
    const fs::path p = temp_dir() / "scan.csv";
    std::string text;
    const int rc = cli({"scan-alpha", "--from", "0.42", "--to", "0.5", "--steps", "3",
                        "--out", p.string().c_str()},
                       &text);
    CHECK(rc == 0);
    std::ifstream is(p);
    std::string line;
    int lines = 0;
    while (std::getline(is, line))
        ++lines;
    CHECK(lines == 4); // header + 3 rows
}

TEST_CASE("cli: state emit then check round trip") {
    const fs::path p = temp_dir() / "emitted.json";
    std::string text;
    CHECK(cli({"state", "emit", "rho_alpha:0.45", "--out", p.string().c_str()},
              &text) == 0);
    CHECK(cli({"state", "check", p.string().c_str()}, &text) == 0);
    CHECK(text.find("OK 3x3") != std::string::npos);
    // bounds accepts the file as a state spec
    std::string btext;
    CHECK(cli({"bounds", p.string().c_str()}, &btext) == 0);
    CHECK(btext.find("IRREVERSIBLE") != std::string::npos);
}

TEST_CASE("cli: additivity on rho_v and maxent:2") {
    std::string text;
    CHECK(cli({"additivity", "rho_v", "maxent:2"}, &text) == 0);
    CHECK(text.find("E_eta(product)  2.000000") != std::string::npos);
}

TEST_CASE("cli: unattainable solver tolerance exits 3 with a partial report") {
    const fs::path p = temp_dir() / "partial.json";
    std::string text;
    const int rc =
        cli({"bounds", "rho_v", "--gap-tol", "1e-30", "--json", p.string().c_str()},
            &text);
    CHECK(rc == 3);
    // partial report still emitted: closed-form E_N survives
    const auto parsed = nlohmann::json::parse(std::ifstream(p));
    CHECK(std::abs(parsed["bounds"]["e_n"].get<double>() - 0.771553303) < 1e-6);
    CHECK(!parsed["errors"].empty());
}

TEST_CASE("cli: scan rows mark solver failures and exit 3") {
    std::string text;
    const int rc = cli({"scan-alpha", "--from", "0.42", "--to", "0.43", "--steps",
                        "2", "--gap-tol", "1e-30"},
                       &text);
    CHECK(rc == 3);
    CHECK(text.find(",error") != std::string::npos);
}

TEST_CASE("cli: verify at an impossible tolerance reports rounding failures") {
    std::string text;
    const int rc = cli({"verify", "--tolerance", "0"}, &text);
    CHECK(rc == 4);
    CHECK(text.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: corrupted witness makes verify exit 4") {
    std::string text;
    const int rc = cli({"verify", "--corrupt"}, &text);
    CHECK(rc == 4);
    CHECK(text.find("cost_witness_rho_v (corrupted): FAIL") != std::string::npos);
    CHECK(text.find("FAILURES: 1") != std::string::npos);
}

TEST_CASE("every pptbounds command in the README runs clean") {
    const fs::path readme = fs::path(PPTBOUNDS_SOURCE_DIR) / "README.md";
    std::ifstream is(readme);
    REQUIRE(is.good());
    const fs::path dir = temp_dir() / "readme";
    fs::create_directories(dir);
    std::string line;
    bool in_fence = false;
    int commands = 0;
    while (std::getline(is, line)) {
        if (line.rfind("```", 0) == 0) {
            in_fence = !in_fence;
            continue;
        }
        if (!in_fence)
            continue;
        std::string cmd = line;
        if (cmd.rfind("$ ", 0) == 0)
            cmd = cmd.substr(2);
        if (cmd.rfind("pptbounds ", 0) != 0)
            continue;
        ++commands;
        const std::string full = "cd '" + dir.string() + "' && '" + PPTBOUNDS_CLI_PATH +
                                 "' " + cmd.substr(10) + " > /dev/null 2>&1";
        const int rc = std::system(full.c_str());
        INFO("README command failed: " << cmd);
        CHECK(rc == 0);
    }
    CHECK(commands >= 5);
}
