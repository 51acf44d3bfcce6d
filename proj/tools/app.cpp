#include "app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <stdexcept>

#include "dwork/errors.hpp"

#ifndef DWORK_SOURCE_FIXTURES
#define DWORK_SOURCE_FIXTURES "fixtures"
#endif

namespace dwork::app {

using group::GenIndex;
using sym::Rat;
using sym::RelationPtr;
using sym::Var;

// ---- c selection

CChoice parse_c(const std::string& text, int n) {
    CChoice c;
    if (text == "matched") {
        c.value = modular::matched_c(n);
        if (!c.value) c.mode = "symbolic";
        return c;
    }
    if (text == "symbolic") {
        c.mode = "symbolic";
        return c;
    }
    c.mode = "explicit";
    try {
        c.value = Rat::parse(text);
    } catch (const std::invalid_argument&) {
        throw ParseError("c must be matched, symbolic or a rational number, got '" + text + "'");
    }
    if (c.value->is_zero()) throw ParseError("c must be nonzero");
    return c;
}

Model make_model(int n, const CChoice& c) { return modular::build_model(n, c.value, c.mode); }

// ---- fixtures

const json* Fixture::erratum(const std::string& report, const std::string& row) const {
    if (!raw.contains("errata")) return nullptr;
    for (const auto& e : raw.at("errata"))
        if (e.value("report", "") == report && e.value("row", "") == row) return &e;
    return nullptr;
}

std::filesystem::path fixture_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("DWORK_FIXTURES"); env && *env) return env;
    return DWORK_SOURCE_FIXTURES;
}

std::optional<Fixture> load_fixture(const std::filesystem::path& dir, int n) {
    std::ifstream in(dir / ("n" + std::to_string(n) + ".json"));
    if (!in) return std::nullopt;
    Fixture f;
    f.n = n;
    f.raw = json::parse(in);
    f.c = Rat::parse(f.raw.at("c").get<std::string>());
    const auto& r = f.raw.at("relation");
    if (!r.is_null()) {
        auto rel = std::make_shared<sym::Relation>();
        if (!sym::parse_var(r.at("pivot").get<std::string>(), rel->pivot))
            throw ParseError("fixture relation pivot is not a variable");
        RatFn v = sym::parse_ratfn(r.at("value").get<std::string>());
        rel->num = v.num();
        rel->den = v.den();
        f.relation = rel;
    }
    return f;
}

std::string canon(const std::string& text, const RelationPtr& rel) { return sym::parse_ratfn(text, rel).to_string(); }

VecField field_from_json(const json& j, const RelationPtr& rel) {
    const json& comps = j.contains("components") ? j.at("components") : j;
    VecField v;
    for (const auto& [name, text] : comps.items()) {
        Var x;
        if (!sym::parse_var(name, x)) throw ParseError("not a variable: " + name);
        v.set(x, sym::parse_ratfn(text.get<std::string>(), rel));
    }
    return v;
}

MatF matrix_from_json(const json& j, const RelationPtr& rel) {
    MatF m(j.size(), j.empty() ? 0 : j.at(0).size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = sym::parse_ratfn(j.at(i).at(k).get<std::string>(), rel);
    return m;
}

GenIndex gen_from_name(const std::string& name) {
    // g<a><b> with single digits, enough for every fixture
    if (name.size() != 3 || name[0] != 'g' || !std::isdigit(name[1]) || !std::isdigit(name[2]))
        throw ParseError("not a generator name: " + name);
    return {name[1] - '0', name[2] - '0'};
}

std::string gen_name(const GenIndex& ab) { return "g" + std::to_string(ab.first) + std::to_string(ab.second); }

namespace {

json canonicalize(const json& j, const RelationPtr& rel) {
    if (j.is_string()) return canon(j.get<std::string>(), rel);
    if (j.is_array()) {
        json out = json::array();
        for (const auto& x : j) out.push_back(canonicalize(x, rel));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (const auto& [k, x] : j.items()) out[k] = canonicalize(x, rel);
        return out;
    }
    return j;
}

bool same_relation(const RelationPtr& a, const RelationPtr& b) {
    if (!a || !b) return !a && !b;
    return a->pivot == b->pivot && a->num * b->den == b->num * a->den;
}

VecField reduced(const VecField& v, const RelationPtr& rel) {
    VecField r;
    for (const auto& [k, f] : v.comp) r.set(k, f.with_relation(rel));
    return r;
}

}  // namespace

json canonical_section(const Fixture& f) { return canonicalize(f.displays(), f.relation); }

// ---- suites

void SuiteResult::check(bool ok, const std::string& what) {
    lines.push_back((ok ? "ok   " : "FAIL ") + what);
    passed = passed && ok;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"omega", "solver",  "display",  "theorem2",  "sl2",
                                                "weights", "flatness", "action", "membership"};
    return names;
}

namespace {

constexpr unsigned kSeed = 20240611;

class Ctx {
public:
    Ctx(const Model& m, const std::optional<Fixture>& fx) : m(m), fx(fx) {}

    const Model& m;
    const std::optional<Fixture>& fx;

    int n() const { return m.n(); }
    const RelationPtr& rel() const { return m.spec.relation; }

    const modular::ModularField& mf() {
        if (!mf_) mf_ = modular::modular_vf(m);
        return *mf_;
    }
    const modular::Basis& basis() {
        if (!basis_) basis_ = modular::basis_vf(m);
        return *basis_;
    }
    const modular::Sl2Triple& triple() {
        if (!triple_) triple_ = modular::sl2_triple(m, mf().R, basis());
        return *triple_;
    }
    /// The model uses the fixture's value of c.
    bool c_matches() const {
        return fx && m.spec.c.is_constant() && m.spec.c.constant_value() == fx->c;
    }
    std::vector<RatFn> random_params(std::mt19937& rng) const {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
        std::vector<RatFn> p;
        for (int i = 1; i < m.spec.params.d; ++i) {
            int a = 0;
            while (a == 0) a = num(rng);
            p.emplace_back(Rat(a, den(rng)));
        }
        return p;
    }

private:
    std::optional<modular::ModularField> mf_;
    std::optional<modular::Basis> basis_;
    std::optional<modular::Sl2Triple> triple_;
};

std::string vname(Var v) { return sym::var_name(v); }

// One line per mismatching component, below the failing check.
void compare_fields(SuiteResult& r, const std::string& what, const VecField& computed, const VecField& expected) {
    r.check(computed == expected, what);
    if (computed == expected) return;
    std::set<Var> vars;
    for (const auto& [v, f] : computed.comp) vars.insert(v);
    for (const auto& [v, f] : expected.comp) vars.insert(v);
    for (Var v : vars)
        if (!(computed[v] == expected[v]))
            r.lines.push_back("       " + vname(v) + ": computed " + computed[v].to_string() + ", expected " +
                              expected[v].to_string());
}

void compare_values(SuiteResult& r, const std::string& what, const RatFn& computed, const RatFn& expected) {
    r.check(computed == expected, what);
    if (!(computed == expected))
        r.lines.push_back("       computed " + computed.to_string() + ", expected " + expected.to_string());
}

void report_rows(SuiteResult& r, const lie::BracketReport& rep, const std::string& label) {
    std::size_t ok = 0;
    for (const auto& row : rep.rows) ok += row.equal;
    r.check(rep.all_equal(), label + ": " + std::to_string(ok) + "/" + std::to_string(rep.rows.size()) + " rows");
    for (const auto& row : rep.rows)
        if (!row.equal) r.lines.push_back("       " + row.name + "\n         lhs " + row.lhs + "\n         rhs " + row.rhs);
}

void suite_omega(Ctx& ctx, SuiteResult& r) {
    const auto& spec = ctx.m.spec;
    const int n = ctx.n();
    const MatF omega = geo::intersection_matrix(n, spec.c);
    r.check(geo::omega_identity_holds(geo::base_connection(n), omega), "base connection preserves the intersection form");
    r.check(spec.solved && spec.dependent_exprs.size() == spec.dependent_slots.size(),
            "all " + std::to_string(spec.dependent_slots.size()) + " dependent entries eliminated");
    r.check(spec.S.is_lower_triangular() && spec.S(0, 0).is_one(), "period matrix is lower triangular with S_11 = 1");
    MatF diff = (spec.S * omega * spec.S.transpose() - ctx.m.phi).map([&](const RatFn& x) { return ctx.m.reduce(x); });
    r.check(diff.is_zero(), "S Omega S^T = Phi");
    const std::size_t k = spec.S.rows();
    bool diag = true;
    for (std::size_t i = 1; i <= (k + 1) / 2; ++i)
        diag = diag && ctx.m.reduce(chart::diagonal_closed_form(spec, i)) == ctx.m.reduce(spec.S(k - i, k - i));
    r.check(diag, "mirrored diagonal entries follow the closed form");
    if (spec.relation)
        r.note("relation " + relation_string(spec.relation));
}

void suite_solver(Ctx& ctx, SuiteResult& r) {
    const auto& m = ctx.m;
    const int n = ctx.n();
    auto red = [&](const RatFn& x) { return m.reduce(x); };
    const auto& mf = ctx.mf();
    const MatF y = mf.Y.matrix();
    r.check(conn::contract(m.A, mf.R).map(red) == y.map(red), "contract(A, R) is the Yukawa band");
    r.check((y * m.phi + m.phi * y.transpose()).map(red).is_zero(), "Y Phi + Phi Y^T = 0");
    bool anti = mf.Y.at(0).is_one();
    // the odd-n middle value pairs with itself and is exempt
    for (int i = 0; i < n; ++i)
        if (i != n - 1 - i) anti = anti && red(mf.Y.at(i) + mf.Y.at(n - 1 - i)).is_zero();
    r.check(anti, "Y_0 = 1 and Y_i = -Y_{n-1-i} off the middle");
    r.check(conn::tangent_to_relation(m.spec, mf.R), "R is tangent to the relation");
    for (const auto& [ab, v] : ctx.basis()) {
        const MatF gt = group::lie_gen(n, ab.first, ab.second).g.transpose();
        bool ok = conn::contract(m.A, v).map(red) == gt.map(red) && conn::tangent_to_relation(m.spec, v);
        r.check(ok, "R_" + gen_name(ab) + ": contract(A, R_g) = g^T, tangent");
    }
}

void suite_display(Ctx& ctx, SuiteResult& r) {
    if (!ctx.fx) {
        r.note("no fixture for n = " + std::to_string(ctx.n()));
        return;
    }
    if (!ctx.c_matches()) {
        r.note("c differs from the fixture value " + ctx.fx->c.to_string() + "; displays not compared");
        return;
    }
    const Fixture& fx = *ctx.fx;
    const auto& rel = ctx.rel();
    r.check(same_relation(fx.relation, rel), "relation " + (rel ? relation_string(rel) : std::string("none")));
    compare_fields(r, "R", ctx.mf().R, field_from_json(fx.displays().at("R"), rel));
    if (fx.raw.contains("derived_from_definitions"))
        r.note("H and F displays derived from the sl2 definitions, not transcribed");
    compare_fields(r, "H", ctx.triple().H, field_from_json(fx.displays().at("H"), rel));
    compare_fields(r, "F", ctx.triple().F, field_from_json(fx.displays().at("F"), rel));
    if (fx.has("basis"))
        for (const auto& [name, disp] : fx.displays().at("basis").items()) {
            auto ab = gen_from_name(name);
            auto it = ctx.basis().find(ab);
            r.check(it != ctx.basis().end(), "R_" + name + " exists");
            if (it != ctx.basis().end()) compare_fields(r, "R_" + name, it->second, field_from_json(disp, rel));
        }
    if (fx.has("yukawa_matrix"))
        r.check(ctx.mf().Y.matrix() == matrix_from_json(fx.displays().at("yukawa_matrix"), rel), "Yukawa matrix");
    if (fx.has("yukawa"))
        for (const auto& [name, text] : fx.displays().at("yukawa").items()) {
            int i = std::stoi(name.substr(1));
            compare_values(r, name, ctx.mf().Y.at(i), sym::parse_ratfn(text.get<std::string>(), rel));
        }
}

void suite_theorem2(Ctx& ctx, SuiteResult& r) {
    auto rep = lie::verify_theorem2(ctx.m, ctx.mf(), ctx.basis());
    for (const auto& row : rep.rows) {
        if (row.equal) {
            r.check(true, row.name);
            continue;
        }
        const json* e = ctx.c_matches() ? ctx.fx->erratum("theorem2", row.name) : nullptr;
        if (e && e->contains("computed") && field_from_json(e->at("computed"), ctx.rel()).to_string() == row.lhs) {
            r.check(true, row.name + " [recorded erratum: " + e->value("note", "") + "]");
            continue;
        }
        r.check(false, row.name);
        r.lines.push_back("       lhs " + row.lhs + "\n       rhs " + row.rhs);
    }
}

void suite_sl2(Ctx& ctx, SuiteResult& r) {
    const int n = ctx.n();
    r.note(n == 1 ? "case n = 1: F = R_g12, H = -R_g11"
                  : n == 2 ? "case n = 2: F = 2 R_g12, H = -2 R_g11" : "case n >= 3: F = R_g12, H = R_g22 - R_g11");
    const auto& t = ctx.triple();
    const auto& rel = ctx.rel();
    r.check(t.E == ctx.mf().R, "E = R");
    compare_fields(r, "[R,F] = H", conn::bracket(t.E, t.F, rel), t.H);
    compare_fields(r, "[H,R] = 2R", conn::bracket(t.H, t.E, rel), reduced(RatFn(2) * t.E, rel));
    compare_fields(r, "[H,F] = -2F", conn::bracket(t.H, t.F, rel), reduced(RatFn(-2) * t.F, rel));
}

void suite_weights(Ctx& ctx, SuiteResult& r) {
    const auto& t = ctx.triple();
    auto rep = modular::degree_report(ctx.m, ctx.mf().R, t);
    std::string w;
    for (const auto& [v, k] : rep.w) w += (w.empty() ? "" : ",") + std::to_string(k);
    r.note("w = (" + w + ")");
    auto deg = [](const modular::DegreeRow& row) {
        return row.degree ? std::to_string(*row.degree) : std::string(row.ok ? "zero" : "none");
    };
    for (const auto& row : rep.r_rows)
        r.check(row.ok, "deg R_" + vname(row.var) + " = " + deg(row) + ", expected " + std::to_string(row.expected));
    for (const auto& row : rep.f_rows)
        r.check(row.ok, "deg F_" + vname(row.var) + " = " + deg(row) + ", expected " + std::to_string(row.expected));
    if (ctx.fx && ctx.fx->has("weights")) {
        modular::Weights want;
        for (const auto& [name, k] : ctx.fx->displays().at("weights").items()) {
            Var v;
            if (!sym::parse_var(name, v)) throw ParseError("not a variable: " + name);
            want[v] = k.get<int>();
        }
        r.check(want == rep.w, "weights match the display");
    }
    const auto& rel = ctx.rel();
    auto fr = lie::fR_identities(ctx.m, ctx.mf(), t);
    for (const auto& row : fr.rows) {
        if (row.equal) {
            r.check(true, row.name);
            continue;
        }
        const json* e = ctx.fx ? ctx.fx->erratum("fR", row.name) : nullptr;
        if (e && e->contains("computed_factor")) {
            const VecField f_r = reduced(ctx.m.reduce(geo::discriminant(ctx.n())) * ctx.mf().R, rel);
            const RatFn k(static_cast<std::int64_t>(e->at("computed_factor").get<int>()));
            if (conn::bracket(t.H, f_r, rel) == reduced(k * f_r, rel)) {
                r.check(true, row.name + " [recorded erratum: " + e->value("note", "") + "]");
                continue;
            }
        }
        r.check(false, row.name);
        r.lines.push_back("       lhs " + row.lhs + "\n       rhs " + row.rhs);
    }
}

void suite_flatness(Ctx& ctx, SuiteResult& r) {
    std::vector<std::pair<std::string, const VecField*>> gens{{"R", &ctx.mf().R}};
    for (const auto& [ab, v] : ctx.basis()) gens.emplace_back("R_" + gen_name(ab), &v);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (ctx.n() <= 3) {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j) pairs.emplace_back(i, j);
    } else {
        std::mt19937 rng(kSeed);
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        while (pairs.size() < 5) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            if (std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) == pairs.end()) pairs.emplace_back(i, j);
        }
    }
    for (auto [i, j] : pairs)
        r.check(lie::verify_flatness(ctx.m, *gens[i].second, *gens[j].second),
                "flatness on (" + gens[i].first + ", " + gens[j].first + ")");
    report_rows(r, lie::verify_structure(ctx.m, ctx.basis()), "[R_g1, R_g2] = R_[g1,g2]");
    if (ctx.n() <= 4)
        report_rows(r, lie::verify_jacobi(ctx.m, ctx.mf(), ctx.basis()), "Jacobi");
    else
        r.note("Jacobi checked for n <= 4 only");
}

bool same_point(const Model& m, const group::Point& a, const group::Point& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [v, f] : a) {
        auto it = b.find(v);
        if (it == b.end() || !(m.reduce(f) == m.reduce(it->second))) return false;
    }
    return true;
}

void suite_action(Ctx& ctx, SuiteResult& r) {
    const auto& spec = ctx.m.spec;
    const int n = ctx.n();
    const int d = spec.params.d;
    std::mt19937 rng(kSeed);
    const group::Point gp = group::generic_point(spec);

    std::optional<group::GroupElem> sym_elem;
    if (d - 1 <= sym::kMaxG) sym_elem = group::symbolic_elem(n);
    if (sym_elem) {
        r.check(group::in_group(n, sym_elem->mat), "g^T Phi g = Phi for symbolic parameters");
        const group::Point pt = group::act(spec, gp, *sym_elem);
        if (ctx.fx && ctx.fx->has("action")) {
            for (const auto& [name, text] : ctx.fx->displays().at("action").items()) {
                Var v;
                if (!sym::parse_var(name, v)) throw ParseError("not a variable: " + name);
                compare_values(r, name + ".g", ctx.m.reduce(pt.at(v)),
                               sym::parse_ratfn(text.get<std::string>(), ctx.rel()));
            }
        }
    } else {
        r.note("more parameters than symbols; symbolic action skipped");
    }

    const group::GroupElem a = sym_elem ? *sym_elem : group::group_elem(n, ctx.random_params(rng));
    const group::GroupElem b = group::group_elem(n, ctx.random_params(rng));
    const group::Point lhs = group::act(spec, group::act(spec, gp, a), b);
    const group::Point rhs = group::act(spec, gp, group::compose(a, b));
    r.check(same_point(ctx.m, lhs, rhs), "(t.a).b = t.(ab)");

    for (int i = 1; i < d; ++i) {
        const VecField h = group::infinitesimal(spec, i);
        std::vector<std::string> hits;
        for (const auto& [ab, v] : ctx.basis()) {
            if (v == h) hits.push_back("+R_" + gen_name(ab));
            if (v == -h) hits.push_back("-R_" + gen_name(ab));
        }
        std::string what = "G" + std::to_string(i) + ": derivative = ";
        for (const auto& s : hits) what += s + " ";
        r.check(hits.size() == 1, hits.empty() ? what + "none" : what.substr(0, what.size() - 1));
    }

    const int draws = 10;
    int ok = 0;
    for (int k = 0; k < draws; ++k) {
        auto p = ctx.random_params(rng);
        ok += group::decompose(n, group::group_elem(n, p).mat) == p;
    }
    r.check(ok == draws, "parameter recovery " + std::to_string(ok) + "/" + std::to_string(draws));
}

void suite_membership(Ctx& ctx, SuiteResult& r) {
    const auto& mf = ctx.mf();
    const auto& rel = ctx.rel();
    auto only = [](const lie::Decomposition& d, const std::optional<GenIndex>& g) {
        for (const auto& [ab, f] : d.coeffs)
            if (!(f == RatFn(g && *g == ab ? 1 : 0))) return false;
        return d.member && d.f0 == RatFn(g ? 0 : 1);
    };
    r.check(only(lie::amsy_decompose(ctx.m, mf, mf.R), std::nullopt), "R decomposes as 1*R");
    for (const auto& [ab, v] : ctx.basis())
        r.check(only(lie::amsy_decompose(ctx.m, mf, v), ab), "R_" + gen_name(ab) + " decomposes as itself");

    const VecField tr = modular::truncate_poly(mf.R);
    const lie::Decomposition dt = lie::amsy_decompose(ctx.m, mf, tr);
    auto describe = [&]() {
        if (dt.member) {
            std::string s = "truncated R is a member: f0 = " + dt.f0.to_string();
            for (const auto& [ab, f] : dt.coeffs)
                if (!f.is_zero()) s += ", " + gen_name(ab) + " = " + f.to_string();
            return s;
        }
        std::string s = "truncated R is not a member: " + dt.reason;
        if (dt.obstruction)
            s += " at (" + std::to_string(dt.obstruction->first + 1) + "," + std::to_string(dt.obstruction->second + 1) +
                 ") = " + dt.obstruction_value.to_string();
        return s;
    };
    if (!ctx.c_matches()) {
        r.note(describe());
        return;
    }
    const Fixture& fx = *ctx.fx;
    const auto& disp = fx.displays();
    if (fx.has("truncated")) compare_fields(r, "truncated R", tr, field_from_json(disp.at("truncated"), rel));
    if (fx.has("truncated_connection"))
        r.check(conn::contract(ctx.m.A, tr).map([&](const RatFn& x) { return ctx.m.reduce(x); }) ==
                    matrix_from_json(disp.at("truncated_connection"), rel),
                "contract(A, truncated R)");
    if (fx.has("decomposition")) {
        r.check(dt.member, "truncated R is a member");
        std::set<GenIndex> seen;
        for (const auto& [key, text] : disp.at("decomposition").items()) {
            const RatFn want = sym::parse_ratfn(text.get<std::string>(), rel);
            if (key == "f0") {
                compare_values(r, "f0", dt.f0, want);
                continue;
            }
            const json* e = fx.erratum("decomposition", key);
            const std::string label = e ? e->at("label").get<std::string>() : key;
            const GenIndex ab = gen_from_name(label);
            seen.insert(ab);
            auto it = dt.coeffs.find(ab);
            const RatFn got = it == dt.coeffs.end() ? RatFn() : it->second;
            compare_values(r, "coefficient of " + label + (e ? " [displayed as " + key + ", recorded erratum]" : ""), got,
                           want);
        }
        bool extra = false;
        for (const auto& [ab, f] : dt.coeffs) extra = extra || (!f.is_zero() && !seen.count(ab));
        r.check(!extra, "no coefficients beyond the displayed ones");
    }
    if (fx.has("obstruction")) {
        const auto& ob = disp.at("obstruction");
        const chart::Pos want{ob.at("entry").at(0).get<std::size_t>() - 1, ob.at("entry").at(1).get<std::size_t>() - 1};
        r.check(!dt.member && dt.obstruction == want, "truncated R is not a member, obstruction at (" +
                                                          std::to_string(want.first + 1) + "," +
                                                          std::to_string(want.second + 1) + ")");
        compare_values(r, "obstruction value", ctx.m.reduce(dt.obstruction_value),
                       sym::parse_ratfn(ob.at("value").get<std::string>(), rel));
    }
    if (!fx.has("decomposition") && !fx.has("obstruction")) r.note(describe());
}

const std::map<std::string, std::function<void(Ctx&, SuiteResult&)>>& suites() {
    static const std::map<std::string, std::function<void(Ctx&, SuiteResult&)>> s{
        {"omega", suite_omega},       {"solver", suite_solver},     {"display", suite_display},
        {"theorem2", suite_theorem2}, {"sl2", suite_sl2},           {"weights", suite_weights},
        {"flatness", suite_flatness}, {"action", suite_action},     {"membership", suite_membership},
    };
    return s;
}

}  // namespace

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Model& model,
                                    const std::optional<Fixture>& fx) {
    std::vector<std::string> todo;
    for (const auto& n : names) {
        if (n == "all")
            todo.insert(todo.end(), suite_names().begin(), suite_names().end());
        else
            todo.push_back(n);
    }
    Ctx ctx(model, fx);
    std::vector<SuiteResult> out;
    for (const auto& name : todo) {
        SuiteResult r;
        r.name = name;
        auto it = suites().find(name);
        if (it == suites().end()) throw ParseError("unknown suite " + name);
        try {
            it->second(ctx, r);
        } catch (const Error& e) {
            if (e.structural()) throw;
            r.check(false, e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---- rendering

std::string relation_string(const RelationPtr& rel) {
    return vname(rel->pivot) + "^2 = " + RatFn::make(rel->num, rel->den).to_string();
}

namespace {

std::string latex_rat(const Rat& a) {
    if (a.is_integer()) return a.to_string();
    return "\\frac{" + a.numerator().get_str() + "}{" + a.denominator().get_str() + "}";
}

std::string latex_poly(const sym::Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        const bool neg = t.coef.sign() < 0;
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int v = 0; v < sym::kSlots; ++v) {
            const unsigned e = t.mono.exp(static_cast<Var>(v));
            if (!e) continue;
            if (!mono.empty()) mono += " ";
            mono += vname(static_cast<Var>(v));
            if (e > 1) mono += "^{" + std::to_string(e) + "}";
        }
        const Rat a = t.coef.abs();
        if (!a.is_one() || mono.empty()) s += latex_rat(a) + (mono.empty() ? "" : " ");
        s += mono;
    }
    return s;
}

std::string latex_plain(const RatFn& f) {
    if (f.den().is_one()) return latex_poly(f.num());
    return "\\frac{" + latex_poly(f.num()) + "}{" + latex_poly(f.den()) + "}";
}

}  // namespace

std::string subscripts(const std::string& s) {
    static const std::regex re("([tguC])([0-9]+)");
    return std::regex_replace(s, re, "$1_{$2}");
}

std::string latex(const RatFn& f) { return subscripts(latex_plain(f)); }

std::string latex(const VecField& v, const std::string& name) {
    std::string s = name + " &= ";
    if (v.is_zero()) return s + "0";
    bool first = true;
    for (const auto& [x, f] : v.comp) {
        if (!first) s += " \\\\\n  & + ";
        first = false;
        const std::string d = "\\frac{\\partial}{\\partial " + subscripts(vname(x)) + "}";
        s += f.is_one() ? d : "\\left(" + latex(f) + "\\right)" + d;
    }
    return s;
}

std::string latex(const MatF& m) {
    std::string s = "\\begin{pmatrix}\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += "  ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " & " : "") + latex(m(i, j));
        s += i + 1 < m.rows() ? " \\\\\n" : "\n";
    }
    return s + "\\end{pmatrix}";
}

json to_json(const VecField& v) {
    json c = json::object();
    for (const auto& [x, f] : v.comp) c[vname(x)] = f.to_string();
    return json{{"components", c}};
}

json to_json(const MatF& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

json to_json(const lie::BracketReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"name", row.name}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"equal", row.equal}});
    return json{{"all_equal", r.all_equal()}, {"rows", rows}};
}

json envelope(const Model& model, json object) {
    const auto& spec = model.spec;
    json vars = json::array();
    for (Var v : spec.ambient_vars()) vars.push_back(vname(v));
    json out;
    out["n"] = model.n();
    out["dim"] = spec.params.d;
    out["ambient_vars"] = vars;
    out["relation"] = spec.relation ? json(relation_string(spec.relation)) : json(nullptr);
    out["object"] = std::move(object);
    out["meta"] = json{{"c_mode", model.c_mode}, {"rule_extrapolated", spec.rule_extrapolated}};
    return out;
}

}  // namespace dwork::app
