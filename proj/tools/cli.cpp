#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "app.hpp"
#include "dwork/errors.hpp"

namespace dwork::app {

namespace {

// D = number of chart variables stays within the 24 available slots up to n = 8.
constexpr int kMaxN = 8;
constexpr int kMaxH = 3;

struct Config {
    int n = 0;
    int h = 0;
    std::string cn = "matched";
    std::string format = "text";
    std::vector<std::string> suites{"all"};
    std::string fixtures;
    std::string field = "truncated";
    bool write = false;
};

std::string pos_string(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void text_field(std::ostream& out, const std::string& name, const VecField& v) {
    out << name << ":\n";
    if (v.is_zero()) out << "  0\n";
    for (const auto& [x, f] : v.comp) out << "  " << sym::var_name(x) << ": " << f.to_string() << "\n";
}

void text_report(std::ostream& out, const std::string& title, const lie::BracketReport& r) {
    out << title << ":\n";
    for (const auto& row : r.rows) {
        out << (row.equal ? "  ok   " : "  FAIL ") << row.name << "\n";
        if (!row.equal) out << "         lhs " << row.lhs << "\n         rhs " << row.rhs << "\n";
    }
}

std::string latex_report(const std::string& title, const lie::BracketReport& r) {
    std::string s = "% " + title + "\n\\begin{tabular}{ll}\n";
    for (const auto& row : r.rows) s += "  \\verb|" + row.name + "| & " + (row.equal ? "\\checkmark" : "$\\times$") + " \\\\\n";
    return s + "\\end{tabular}\n";
}

int emit(std::ostream& out, const Config& cfg, const Model& m, json object, const std::string& text,
         const std::string& tex) {
    if (cfg.format == "json")
        out << envelope(m, std::move(object)).dump(2) << "\n";
    else if (cfg.format == "latex")
        out << tex;
    else
        out << text;
    return kExitOk;
}

int cmd_build(const Config& cfg, const Model& m, std::ostream& out) {
    const auto& spec = m.spec;
    std::ostringstream t;
    t << "n = " << m.n() << ", moduli dimension " << spec.params.d << ", chart variables " << spec.params.D << "\n";
    if (spec.relation) t << "relation " << relation_string(spec.relation) << "\n";
    json slots = json::object();
    t << "independent entries:\n";
    for (const auto& [v, p] : spec.slot_map) {
        slots[sym::var_name(v)] = json::array({p.first + 1, p.second + 1});
        t << "  " << sym::var_name(v) << " at " << pos_string(p.first, p.second) << "\n";
    }
    json deps = json::array();
    t << "dependent entries:\n";
    std::string tex = "S = " + latex(spec.S) + "\n";
    for (const auto& p : spec.dependent_slots) {
        const RatFn& e = spec.dependent_exprs.at(p);
        deps.push_back(json{{"entry", json::array({p.first + 1, p.second + 1})}, {"value", e.to_string()}});
        t << "  S" << pos_string(p.first, p.second) << " = " << e.to_string() << "\n";
    }
    json obj{{"slots", slots}, {"dependents", deps}, {"S", to_json(spec.S)}};
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_ra(const Config& cfg, const Model& m, std::ostream& out) {
    const auto mf = modular::modular_vf(m);
    std::ostringstream t;
    text_field(t, "R", mf.R);
    std::string tex = latex(mf.R, "R") + "\n";
    json ys = json::array();
    for (int i = 0; i < m.n(); ++i) {
        ys.push_back(mf.Y.at(i).to_string());
        t << "Y" << i << " = " << mf.Y.at(i).to_string() << "\n";
        tex += "Y_{" + std::to_string(i) + "} = " + latex(mf.Y.at(i)) + "\n";
    }
    json obj = to_json(mf.R);
    obj["yukawa"] = ys;
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_basis(const Config& cfg, const Model& m, std::ostream& out) {
    const auto basis = modular::basis_vf(m);
    std::ostringstream t;
    std::string tex;
    json obj = json::object();
    for (const auto& [ab, v] : basis) {
        const std::string name = gen_name(ab);
        obj[name] = to_json(v);
        text_field(t, "R_" + name, v);
        tex += latex(v, "R_{g_{" + std::to_string(ab.first) + std::to_string(ab.second) + "}}") + "\n";
    }
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_sl2(const Config& cfg, const Model& m, std::ostream& out) {
    const auto mf = modular::modular_vf(m);
    const auto tr = modular::sl2_triple(m, mf.R, modular::basis_vf(m));
    std::ostringstream t;
    text_field(t, "E", tr.E);
    text_field(t, "F", tr.F);
    text_field(t, "H", tr.H);
    std::string tex = latex(tr.E, "E") + "\n" + latex(tr.F, "F") + "\n" + latex(tr.H, "H") + "\n";
    json obj{{"E", to_json(tr.E)}, {"F", to_json(tr.F)}, {"H", to_json(tr.H)}};
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_weights(const Config& cfg, const Model& m, std::ostream& out) {
    const auto mf = modular::modular_vf(m);
    const auto tr = modular::sl2_triple(m, mf.R, modular::basis_vf(m));
    const auto rep = modular::degree_report(m, mf.R, tr);
    std::ostringstream t;
    std::string tex = "w = (";
    json w = json::object();
    t << "weights:";
    bool first = true;
    for (const auto& [v, k] : rep.w) {
        w[sym::var_name(v)] = k;
        t << " " << sym::var_name(v) << "=" << k;
        tex += (first ? "" : ", ") + std::to_string(k);
        first = false;
    }
    t << "\n";
    tex += ")\n";
    auto rows = [&](const std::vector<modular::DegreeRow>& rs, const std::string& label) {
        json a = json::array();
        for (const auto& r : rs) {
            a.push_back(json{{"var", sym::var_name(r.var)},
                             {"degree", r.degree ? json(*r.degree) : json(nullptr)},
                             {"expected", r.expected},
                             {"ok", r.ok}});
            t << (r.ok ? "  ok   " : "  FAIL ") << "deg " << label << "_" << sym::var_name(r.var) << " = "
              << (r.degree ? std::to_string(*r.degree) : r.ok ? "zero" : "none") << ", expected " << r.expected << "\n";
        }
        return a;
    };
    json obj{{"w", w}, {"R", rows(rep.r_rows, "R")}, {"F", rows(rep.f_rows, "F")}, {"all_ok", rep.all_ok()}};
    emit(out, cfg, m, std::move(obj), t.str(), tex);
    return rep.all_ok() ? kExitOk : kExitMismatch;
}

int cmd_brackets(const Config& cfg, const Model& m, std::ostream& out) {
    const auto mf = modular::modular_vf(m);
    const auto basis = modular::basis_vf(m);
    const auto tr = modular::sl2_triple(m, mf.R, basis);
    const std::vector<std::pair<std::string, lie::BracketReport>> reps{
        {"theorem2", lie::verify_theorem2(m, mf, basis)},
        {"fR", lie::fR_identities(m, mf, tr)},
        {"structure", lie::verify_structure(m, basis)},
    };
    std::ostringstream t;
    std::string tex;
    json obj = json::object();
    bool ok = true;
    for (const auto& [name, r] : reps) {
        obj[name] = to_json(r);
        text_report(t, name, r);
        tex += latex_report(name, r);
        ok = ok && r.all_equal();
    }
    emit(out, cfg, m, std::move(obj), t.str(), tex);
    return ok ? kExitOk : kExitMismatch;
}

int cmd_action(const Config& cfg, const Model& m, std::ostream& out) {
    const auto& spec = m.spec;
    const int n = m.n();
    const auto pt = group::act(spec, group::generic_point(spec), group::symbolic_elem(n));
    const auto basis = modular::basis_vf(m);
    std::ostringstream t;
    std::string tex;
    json act = json::object();
    for (const auto& [v, f] : pt) {
        const RatFn g = m.reduce(f);
        act[sym::var_name(v)] = g.to_string();
        t << sym::var_name(v) << ".g = " << g.to_string() << "\n";
        tex += subscripts(sym::var_name(v)) + " \\bullet g = " + latex(g) + "\n";
    }
    json subs = json::array();
    for (const auto& s : group::subgroups(n)) {
        const VecField h = group::infinitesimal(spec, s.index);
        std::string d = "none";
        for (const auto& [ab, v] : basis) {
            if (v == h) d = "+R_" + gen_name(ab);
            if (v == -h) d = "-R_" + gen_name(ab);
        }
        subs.push_back(json{{"index", s.index},
                            {"kind", s.multiplicative ? "multiplicative" : "additive"},
                            {"generator", gen_name(s.ab)},
                            {"derivative", d}});
        t << "G" << s.index << " (" << (s.multiplicative ? "multiplicative" : "additive") << ", " << gen_name(s.ab)
          << "): derivative " << d << "\n";
    }
    json obj{{"action", act}, {"subgroups", subs}};
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_decompose(const Config& cfg, const Model& m, std::ostream& out) {
    const auto mf = modular::modular_vf(m);
    const VecField v = cfg.field == "R" ? mf.R : modular::truncate_poly(mf.R);
    const auto d = lie::amsy_decompose(m, mf, v);
    std::ostringstream t;
    std::string tex;
    json coeffs = json::object();
    t << "field: " << (cfg.field == "R" ? "R" : "truncated R") << "\n";
    t << (d.member ? "member" : "not a member") << "\n";
    if (d.member) {
        t << "  f0 = " << d.f0.to_string() << "\n";
        tex += "f_0 = " + latex(d.f0) + "\n";
        for (const auto& [ab, f] : d.coeffs) {
            if (f.is_zero()) continue;
            coeffs[gen_name(ab)] = f.to_string();
            t << "  " << gen_name(ab) << " = " << f.to_string() << "\n";
            tex += "f_{" + gen_name(ab) + "} = " + latex(f) + "\n";
        }
    } else {
        t << "  " << d.reason << "\n";
        tex += "% " + d.reason + "\n";
    }
    json obj{{"field", cfg.field}, {"member", d.member}, {"f0", d.member ? json(d.f0.to_string()) : json(nullptr)},
             {"coeffs", coeffs}, {"reason", d.reason}};
    if (d.obstruction) {
        const RatFn val = m.reduce(d.obstruction_value);
        obj["obstruction"] = json{{"entry", json::array({d.obstruction->first + 1, d.obstruction->second + 1})},
                                  {"value", val.to_string()}};
        t << "  obstruction at " << pos_string(d.obstruction->first, d.obstruction->second) << " = " << val.to_string()
          << "\n";
        tex += "\\text{obstruction} = " + latex(val) + "\n";
    }
    return emit(out, cfg, m, std::move(obj), t.str(), tex);
}

int cmd_cy3(const Config& cfg, std::ostream& out) {
    const auto dims = cy3::cy3_dims(cfg.h);
    const auto basis = cy3::cy3_basis(cfg.h);
    auto show = [&](const std::string& s) { return cy3::render(basis, s); };
    auto tex_of = [&](const MatF& mat) {
        std::string s = "\\begin{pmatrix}\n";
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            s += "  ";
            for (std::size_t j = 0; j < mat.cols(); ++j) {
                std::string e = show(mat(i, j).to_string());
                s += (j ? " & " : "") + subscripts(e);
            }
            s += i + 1 < mat.rows() ? " \\\\\n" : "\n";
        }
        return s + "\\end{pmatrix}";
    };
    auto json_of = [&](const MatF& mat) {
        json rows = to_json(mat);
        for (auto& row : rows)
            for (auto& e : row) e = show(e.get<std::string>());
        return rows;
    };
    const std::vector<std::pair<std::string, cy3::BracketReport>> reps{
        {"brackets", cy3::cy3_matrix_brackets(basis)},
        {"closure", cy3::cy3_closure(basis)},
        {"sl2", cy3::cy3_sl2(basis)},
    };
    std::ostringstream t;
    std::string tex;
    t << "h = " << cfg.h << ", size " << dims.size << ", group dimension " << dims.group_dim << ", moduli dimension "
      << dims.moduli_dim << "\n";
    json gens = json::object();
    for (const auto& g : basis.gens) {
        gens[g.name()] = json_of(basis.conn.at(g));
        t << g.name() << " =\n" << show(basis.conn.at(g).to_string()) << "\n";
        tex += g.name() + " = " + tex_of(basis.conn.at(g)) + "\n";
    }
    json mods = json::object();
    for (const auto& [k, mat] : basis.modular) {
        const std::string name = "R_" + std::to_string(k);
        mods[name] = json_of(mat);
        t << name << " =\n" << show(mat.to_string()) << "\n";
        tex += name + " = " + tex_of(mat) + "\n";
    }
    json reports = json::object();
    bool ok = true;
    for (const auto& [name, r] : reps) {
        json jr = to_json(r);
        for (auto& row : jr["rows"]) {
            row["lhs"] = show(row["lhs"].get<std::string>());
            row["rhs"] = show(row["rhs"].get<std::string>());
        }
        reports[name] = jr;
        lie::BracketReport shown = r;
        for (auto& row : shown.rows) {
            row.lhs = show(row.lhs);
            row.rhs = show(row.rhs);
        }
        text_report(t, name, shown);
        tex += latex_report(name, r);
        ok = ok && r.all_equal();
    }
    if (cfg.format == "json") {
        json env;
        env["h"] = cfg.h;
        env["dim"] = dims.size;
        env["dims"] = json{{"size", dims.size}, {"group_dim", dims.group_dim}, {"moduli_dim", dims.moduli_dim}};
        env["object"] = json{{"generators", gens}, {"modular", mods}, {"reports", reports}};
        out << env.dump(2) << "\n";
    } else {
        out << (cfg.format == "latex" ? tex : t.str());
    }
    return ok ? kExitOk : kExitMismatch;
}

int cmd_verify(const Config& cfg, const Model& m, std::ostream& out) {
    const auto fx = load_fixture(fixture_dir(cfg.fixtures), m.n());
    std::vector<std::string> names;
    for (const auto& s : cfg.suites) {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ',')) names.push_back(part);
    }
    const auto results = run_suites(names, m, fx);
    bool ok = true;
    json suites = json::array();
    std::ostringstream t;
    for (const auto& r : results) {
        ok = ok && r.passed;
        suites.push_back(json{{"name", r.name}, {"passed", r.passed}, {"lines", r.lines}});
        t << "== " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
        for (const auto& l : r.lines) t << "  " << l << "\n";
    }
    t << "verify n = " << m.n() << ": " << (ok ? "PASS" : "FAIL") << "\n";
    std::string tex = "% verify\n\\begin{tabular}{ll}\n";
    for (const auto& r : results) tex += "  " + r.name + " & " + (r.passed ? "\\checkmark" : "$\\times$") + " \\\\\n";
    tex += "\\end{tabular}\n";
    emit(out, cfg, m, json{{"passed", ok}, {"suites", suites}}, t.str(), tex);
    return ok ? kExitOk : kExitMismatch;
}

int cmd_fixtures(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto dir = fixture_dir(cfg.fixtures);
    auto fx = load_fixture(dir, cfg.n);
    if (!fx) {
        err << "no fixture n" << cfg.n << ".json in " << dir.string() << "\n";
        return kExitMismatch;
    }
    json section = canonical_section(*fx);
    if (cfg.write) {
        fx->raw["canonical"] = section;
        const auto path = dir / ("n" + std::to_string(cfg.n) + ".json");
        std::ofstream f(path);
        f << fx->raw.dump(2) << "\n";
        if (!f) {
            err << "cannot write " << path.string() << "\n";
            return kExitMismatch;
        }
    }
    out << section.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations on the Dwork moduli: the vector field R, its brackets and the group action"};
    app.require_subcommand(1);
    Config cfg;
    const std::vector<std::string> formats{"text", "json", "latex"};

    auto with_n = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "dimension of the Calabi-Yau fibres")->required()->check(CLI::Range(1, kMaxN));
        sub->add_option("--cn", cfg.cn, "matched, symbolic or an exact rational")->capture_default_str();
        sub->add_option("--format", cfg.format)->check(CLI::IsMember(formats))->capture_default_str();
        sub->add_option("--fixtures", cfg.fixtures, "fixture directory (default $DWORK_FIXTURES)");
        return sub;
    };

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"build", "chart layout and eliminated period matrix"},
             {"ra", "modular vector field and Yukawa couplings"},
             {"basis", "vector fields of the Lie algebra generators"},
             {"sl2", "the sl2 triple"},
             {"weights", "weights and weighted degrees"},
             {"brackets", "bracket reports"},
             {"action", "symbolic group action"},
             {"decompose", "decomposition of a field over the generators"},
             {"verify", "run verification suites"},
             {"fixtures", "canonical form of the fixture displays"}})
        subs[name] = with_n(app.add_subcommand(name, help));
    subs["decompose"]->add_option("--field", cfg.field)->check(CLI::IsMember({"truncated", "R"}))->capture_default_str();
    auto all_suites = suite_names();
    all_suites.insert(all_suites.begin(), "all");
    subs["verify"]
        ->add_option("--suite", cfg.suites, "suites to run")
        ->delimiter(',')
        ->check(CLI::IsMember(all_suites))
        ->capture_default_str();
    subs["fixtures"]->add_flag("--write", cfg.write, "store the canonical section in the fixture file");

    CLI::App* cy3 = app.add_subcommand("cy3", "CY3 constant generators and bracket table");
    cy3->set_help_flag("--help", "Print this help message and exit");
    cy3->add_option("--h", cfg.h, "number of moduli")->required()->check(CLI::Range(1, kMaxH));
    cy3->add_option("--format", cfg.format)->check(CLI::IsMember(formats))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        app.exit(e, out, err);
        err << app.help();
        return kExitUsage;
    }

    CChoice c;
    try {
        c = parse_c(cfg.cn, cfg.n);
    } catch (const Error& e) {
        err << "--cn: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (cy3->parsed()) return cmd_cy3(cfg, out);
        if (subs["fixtures"]->parsed()) return cmd_fixtures(cfg, out, err);
        const Model m = make_model(cfg.n, c);
        if (subs["build"]->parsed()) return cmd_build(cfg, m, out);
        if (subs["ra"]->parsed()) return cmd_ra(cfg, m, out);
        if (subs["basis"]->parsed()) return cmd_basis(cfg, m, out);
        if (subs["sl2"]->parsed()) return cmd_sl2(cfg, m, out);
        if (subs["weights"]->parsed()) return cmd_weights(cfg, m, out);
        if (subs["brackets"]->parsed()) return cmd_brackets(cfg, m, out);
        if (subs["action"]->parsed()) return cmd_action(cfg, m, out);
        if (subs["decompose"]->parsed()) return cmd_decompose(cfg, m, out);
        if (subs["verify"]->parsed()) return cmd_verify(cfg, m, out);
    } catch (const Error& e) {
        err << (e.structural() ? "structural error: " : "error: ") << e.what() << "\n";
        return e.structural() ? kExitStructural : kExitMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitUsage;
}

}  // namespace dwork::app
