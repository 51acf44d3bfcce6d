#include "dwork/modular.hpp"

#include "dwork/errors.hpp"

namespace dwork::modular {

using sym::tvar;

std::optional<Rat> matched_c(int n) {
    switch (n) {
        case 1: return Rat(1, 27);
        case 2: return Rat(-1, 64);
        case 3: return Rat(1, 78125);
        case 4: return Rat(1, 46656);
        default: return std::nullopt;
    }
}

Model build_model(int n, const std::optional<Rat>& c, const std::string& c_mode) {
    Model m;
    m.spec = chart::solve_dependents(n, geo::c_value(c));
    m.A = conn::full_connection(m.spec);
    m.phi = geo::phi_matrix(n);
    m.c_mode = c_mode;
    return m;
}

Model build_default_model(int n) {
    auto c = matched_c(n);
    return build_model(n, c, c ? "matched" : "symbolic");
}

const RatFn& YukawaSet::at(int i) const {
    if (i < 0 || i >= static_cast<int>(vals.size())) throw IndexOutOfRange("Yukawa index " + std::to_string(i));
    return vals[static_cast<std::size_t>(i)];
}

MatF YukawaSet::matrix() const {
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    MatF y(k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) y(i, i + 1) = vals[i];
    return y;
}

YukawaSet yukawa(const Model& model) {
    const auto& p = model.spec.params;
    const int n = p.n;
    const MatF& s = model.spec.S;
    auto diag = [&](int i) { return s(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)); };
    YukawaSet y;
    y.n = n;
    y.vals.assign(static_cast<std::size_t>(n), RatFn());
    y.vals[0] = RatFn(1);
    if (n >= 2) y.vals[static_cast<std::size_t>(n - 1)] = RatFn(-1);
    const int last_ratio = p.odd() ? (n - 3) / 2 : (n - 2) / 2;
    for (int i = 1; i <= last_ratio; ++i) {
        RatFn v = model.reduce(diag(2) * diag(i + 1) / diag(i + 2));
        y.vals[static_cast<std::size_t>(i)] = v;
        y.vals[static_cast<std::size_t>(n - i - 1)] = -v;
    }
    if (p.odd() && n >= 3) {
        const int mid = (n - 1) / 2;
        const int sign = ((3 * n + 3) / 2) % 2 == 0 ? 1 : -1;
        const RatFn smm = diag((n + 1) / 2);
        RatFn v = RatFn(sign) * model.spec.c * RatFn(Rat(n + 2).pow(static_cast<unsigned>(n))) * diag(2) * smm * smm /
                  geo::discriminant(n);
        y.vals[static_cast<std::size_t>(mid)] = model.reduce(v);
    }
    return y;
}

ModularField modular_vf(const Model& model) {
    ModularField out;
    out.Y = yukawa(model);
    const MatF y = out.Y.matrix();
    if (!(y * model.phi + model.phi * y.transpose()).map([&](const RatFn& f) { return model.reduce(f); }).is_zero())
        throw NoSuchField("the Yukawa matrix is not compatible with the intersection form");
    out.R = conn::solve_vf(model.spec, model.A, y);
    return out;
}

Basis basis_vf(const Model& model) {
    Basis b;
    for (const auto& ab : group::gen_indices(model.n()))
        b[ab] = conn::solve_vf(model.spec, model.A, group::lie_gen(model.n(), ab.first, ab.second).g.transpose());
    return b;
}

Sl2Triple sl2_triple(const Model& model, const VecField& r, const Basis& basis) {
    const int n = model.n();
    Sl2Triple t;
    t.E = r;
    const VecField& g11 = basis.at({1, 1});
    const VecField& g12 = basis.at({1, 2});
    if (n == 1) {
        t.F = g12;
        t.H = -g11;
    } else if (n == 2) {
        t.F = RatFn(2) * g12;
        t.H = RatFn(-2) * g11;
    } else {
        t.F = g12;
        t.H = basis.at({2, 2}) - g11;
    }
    const auto& rel = model.spec.relation;
    if (!(conn::bracket(t.E, t.F, rel) == t.H)) throw Sl2Violation("[E,F] differs from H");
    if (!(conn::bracket(t.H, t.E, rel) == RatFn(2) * t.E)) throw Sl2Violation("[H,E] differs from 2E");
    if (!(conn::bracket(t.H, t.F, rel) == RatFn(-2) * t.F)) throw Sl2Violation("[H,F] differs from -2F");
    return t;
}

std::optional<Weights> weights_of(const Model& model, const VecField& h) {
    Weights w;
    for (Var v : model.spec.ambient_vars()) {
        RatFn q = model.reduce(h[v] / RatFn::var(v, model.spec.relation));
        if (!q.is_constant() || !q.constant_value().is_integer()) return std::nullopt;
        w[v] = static_cast<int>(q.constant_value().to_double());
    }
    for (const auto& [v, f] : h.comp)
        if (!w.count(v)) return std::nullopt;
    return w;
}

std::optional<int> weighted_degree(const Poly& p, const Weights& w) {
    if (p.is_zero()) return std::nullopt;
    std::optional<int> deg;
    for (const auto& t : p.terms()) {
        int d = 0;
        for (const auto& [v, wt] : w) d += wt * t.mono.exp(v);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::optional<int> weighted_degree(const RatFn& f, const Weights& w) {
    auto a = weighted_degree(f.num(), w), b = weighted_degree(f.den(), w);
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

bool DegreeReport::all_ok() const {
    for (const auto& r : r_rows)
        if (!r.ok) return false;
    for (const auto& r : f_rows)
        if (!r.ok) return false;
    return true;
}

DegreeReport degree_report(const Model& model, const VecField& r, const Sl2Triple& triple) {
    DegreeReport rep;
    auto w = weights_of(model, triple.H);
    if (!w) throw Sl2Violation("H is not a weighted Euler field");
    rep.w = *w;
    auto row = [&](Var v, const RatFn& f, int expected) {
        DegreeRow out{v, weighted_degree(f, rep.w), expected, false};
        out.ok = f.is_zero() || (out.degree && *out.degree == expected);
        return out;
    };
    for (Var v : model.spec.ambient_vars()) {
        rep.r_rows.push_back(row(v, r[v], rep.w[v] + 2));
        rep.f_rows.push_back(row(v, triple.F[v], rep.w[v] - 2));
    }
    return rep;
}

VecField truncate_poly(const VecField& v) {
    VecField out;
    for (const auto& [k, f] : v.comp) {
        // powers of the constant c in the denominator are units, not poles
        Poly den = f.den();
        Poly cpow(1);
        for (unsigned e = den.mono_content().exp(sym::kC); e > 0; --e) cpow = cpow * Poly::var(sym::kC);
        den = *den.divide_exact(cpow);
        auto [q, rem] = f.num().divmod(den);
        (void)rem;
        out.set(k, RatFn::make(q, cpow, f.relation()));
    }
    return out;
}

}  // namespace dwork::modular
