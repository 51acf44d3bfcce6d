#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwork/cy3.hpp"
#include "dwork/liealg.hpp"

namespace dwork::app {

using json = nlohmann::ordered_json;
using conn::VecField;
using modular::Model;
using sym::MatF;
using sym::RatFn;

// ---- c selection

struct CChoice {
    std::string mode = "matched";  // matched | symbolic | explicit
    std::optional<sym::Rat> value;
};

/// "matched", "symbolic" or an exact nonzero rational. Throws ParseError.
CChoice parse_c(const std::string& text, int n);
Model make_model(int n, const CChoice& c);

// ---- fixtures

struct Fixture {
    int n = 0;
    json raw;
    sym::Rat c;
    sym::RelationPtr relation;

    const json& displays() const { return raw.at("displays"); }
    bool has(const std::string& key) const { return displays().contains(key); }
    /// The erratum recorded for a row of a report, if any.
    const json* erratum(const std::string& report, const std::string& row) const;
};

/// The flag, else $DWORK_FIXTURES, else the source tree copy.
std::filesystem::path fixture_dir(const std::string& flag);
std::optional<Fixture> load_fixture(const std::filesystem::path& dir, int n);

/// Canonical string of a transcribed expression.
std::string canon(const std::string& text, const sym::RelationPtr& rel);
VecField field_from_json(const json& j, const sym::RelationPtr& rel);
MatF matrix_from_json(const json& j, const sym::RelationPtr& rel);
group::GenIndex gen_from_name(const std::string& name);
std::string gen_name(const group::GenIndex& ab);

/// The displays of a fixture with every expression in canonical form.
json canonical_section(const Fixture& f);

// ---- suites

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what);
    void note(const std::string& what) { lines.push_back("note " + what); }
};

const std::vector<std::string>& suite_names();

/// Runs the named suites ("all" expands to every suite) sharing the computed
/// objects. Structural errors propagate; other library errors fail the suite.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Model& model,
                                    const std::optional<Fixture>& fx);

// ---- rendering

std::string relation_string(const sym::RelationPtr& rel);

std::string latex(const RatFn& f);
std::string latex(const VecField& v, const std::string& name);
std::string latex(const MatF& m);
/// t12 -> t_{12}, also for g, u and C symbols.
std::string subscripts(const std::string& s);

json to_json(const VecField& v);
json to_json(const MatF& m);
json to_json(const lie::BracketReport& r);

/// {"n", "dim", "ambient_vars", "relation", "object", "meta"}
json envelope(const Model& model, json object);

}  // namespace dwork::app
