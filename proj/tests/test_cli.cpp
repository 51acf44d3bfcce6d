#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "dwork/modular.hpp"

using namespace dwork;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "dwork");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = app::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("modular field as JSON at n = 1") {
    auto r = call({"ra", "--n", "1", "--format", "json"});
    REQUIRE(r.code == app::kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 1);
    CHECK(j["dim"] == 3);
    CHECK(j["relation"].is_null());
    CHECK(j["meta"]["c_mode"] == "matched");
    CHECK(j["meta"]["rule_extrapolated"] == false);
    const auto& comps = j["object"]["components"];
    CHECK(comps["t1"] == "-9*t1^3 - t1*t2 + 9*t3");
    CHECK(comps["t2"] == "81*t1^4 - 81*t1*t3 - t2^2");
    CHECK(comps["t3"] == "-3*t2*t3");
}

TEST_CASE("JSON output parses back to the same field") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        auto r = call({"ra", "--n", std::to_string(n), "--format", "json"});
        REQUIRE(r.code == app::kExitOk);
        auto j = nlohmann::json::parse(r.out);
        auto m = modular::build_default_model(n);
        auto mf = modular::modular_vf(m);
        CHECK(j["dim"] == m.spec.params.d);
        CHECK(j["ambient_vars"].size() == static_cast<std::size_t>(m.spec.params.D));
        CHECK(j["relation"].is_null() == (n % 2 == 1));
        const auto& comps = j["object"]["components"];
        CHECK(comps.size() == mf.R.comp.size());
        for (const auto& [name, text] : comps.items()) {
            CAPTURE(name);
            sym::Var v;
            REQUIRE(sym::parse_var(name, v));
            const auto f = sym::parse_ratfn(text.get<std::string>(), m.spec.relation);
            CHECK(f == mf.R[v]);
            CHECK(f.to_string() == text.get<std::string>());
        }
    }
}

TEST_CASE("output is deterministic") {
    for (const auto& cmd : std::vector<std::vector<std::string>>{{"ra", "--n", "3", "--format", "json"},
                                                                  {"basis", "--n", "2"},
                                                                  {"verify", "--n", "2"},
                                                                  {"cy3", "--h", "1", "--format", "json"}}) {
        auto a = call(cmd);
        auto b = call(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("verify passes for the published cases") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        auto r = call({"verify", "--n", std::to_string(n)});
        CHECK(r.code == app::kExitOk);
        CHECK(r.out.find("verify n = " + std::to_string(n) + ": PASS") != std::string::npos);
    }
    auto one = call({"verify", "--n", "3", "--suite", "omega,solver"});
    CHECK(one.code == app::kExitOk);
    CHECK(one.out.find("== omega: PASS") != std::string::npos);
    CHECK(one.out.find("== theorem2") == std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(call({"ra", "--n", "0"}).code == app::kExitUsage);
    CHECK(call({"ra", "--n", "9"}).code == app::kExitUsage);
    CHECK(call({"ra"}).code == app::kExitUsage);
    CHECK(call({}).code == app::kExitUsage);
    CHECK(call({"nosuch"}).code == app::kExitUsage);
    CHECK(call({"ra", "--n", "1", "--cn", "zero"}).code == app::kExitUsage);
    CHECK(call({"ra", "--n", "1", "--cn", "0"}).code == app::kExitUsage);
    CHECK(call({"ra", "--n", "1", "--format", "xml"}).code == app::kExitUsage);
    CHECK(call({"verify", "--n", "1", "--suite", "nosuch"}).code == app::kExitUsage);
    CHECK(call({"cy3", "--h", "4"}).code == app::kExitUsage);
    CHECK(call({"ra", "--help"}).code == app::kExitOk);
}

TEST_CASE("explicit and symbolic constants") {
    auto sym = call({"ra", "--n", "1", "--cn", "symbolic", "--format", "json"});
    REQUIRE(sym.code == app::kExitOk);
    CHECK(nlohmann::json::parse(sym.out)["meta"]["c_mode"] == "symbolic");
    CHECK(sym.out.find("c") != std::string::npos);
    auto expl = call({"ra", "--n", "1", "--cn", "1/27", "--format", "json"});
    REQUIRE(expl.code == app::kExitOk);
    auto je = nlohmann::json::parse(expl.out);
    CHECK(je["meta"]["c_mode"] == "explicit");
    CHECK(je["object"] == nlohmann::json::parse(call({"ra", "--n", "1", "--format", "json"}).out)["object"]);
    // no published value beyond n = 4
    auto five = call({"ra", "--n", "5", "--format", "json"});
    REQUIRE(five.code == app::kExitOk);
    CHECK(nlohmann::json::parse(five.out)["meta"]["c_mode"] == "symbolic");
}

TEST_CASE("report commands") {
    CHECK(call({"brackets", "--n", "3"}).code == app::kExitOk);
    // the first bracket row fails at n = 1
    CHECK(call({"brackets", "--n", "1"}).code == app::kExitMismatch);
    CHECK(call({"weights", "--n", "4"}).code == app::kExitOk);
    CHECK(call({"cy3", "--h", "1"}).code == app::kExitOk);
    CHECK(call({"cy3", "--h", "2"}).code == app::kExitMismatch);
}

TEST_CASE("decomposition command") {
    auto r3 = call({"decompose", "--n", "3", "--format", "json"});
    REQUIRE(r3.code == app::kExitOk);
    auto j = nlohmann::json::parse(r3.out)["object"];
    CHECK(j["member"] == true);
    CHECK(j["coeffs"].contains("g22"));
    CHECK(!j["coeffs"].contains("g11"));
    auto r4 = call({"decompose", "--n", "4"});
    CHECK(r4.code == app::kExitOk);
    CHECK(r4.out.find("not a member") != std::string::npos);
    CHECK(r4.out.find("(3,3)") != std::string::npos);
    auto rr = call({"decompose", "--n", "2", "--field", "R", "--format", "json"});
    REQUIRE(rr.code == app::kExitOk);
    CHECK(nlohmann::json::parse(rr.out)["object"]["f0"] == "1");
}

TEST_CASE("latex output") {
    auto r = call({"ra", "--n", "1", "--format", "latex"});
    REQUIRE(r.code == app::kExitOk);
    CHECK(r.out.find("\\frac{\\partial}{\\partial t_{1}}") != std::string::npos);
    CHECK(r.out.rfind("R &= \\left(-9 t_{1}^{3} - t_{1} t_{2} + 9 t_{3}\\right)", 0) == 0);
}

TEST_CASE("canonical fixture section is current") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        auto r = call({"fixtures", "--n", std::to_string(n)});
        REQUIRE(r.code == app::kExitOk);
        std::ifstream in(std::string(DWORK_SOURCE_FIXTURES) + "/n" + std::to_string(n) + ".json");
        CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(in)["canonical"]);
    }
}
