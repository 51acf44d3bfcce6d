#include "dwork/group.hpp"

#include "dwork/errors.hpp"

namespace dwork::group {

std::vector<GenIndex> gen_indices(int n) {
    const auto p = geo::moduli_dim(n);
    std::vector<GenIndex> out;
    for (int a = 1; a <= p.m; ++a)
        for (int b = a; b <= 2 * p.m + 1 - a; ++b) out.emplace_back(a, b);
    return out;
}

bool in_lie_algebra(int n, const MatF& g) {
    const MatF phi = geo::phi_matrix(n);
    return (g.transpose() * phi + phi * g).is_zero();
}

LieGen lie_gen(int n, int a, int b) {
    const auto p = geo::moduli_dim(n);
    if (a < 1 || a > p.m || b < a || b > 2 * p.m + 1 - a)
        throw IndexOutOfRange("no generator g_" + std::to_string(a) + "," + std::to_string(b) + " for n=" +
                              std::to_string(n));
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    LieGen out{{a, b}, MatF(k, k)};
    const std::size_t r = static_cast<std::size_t>(n + 2 - b), c = static_cast<std::size_t>(n + 2 - a);
    const int partner = (p.odd() && b >= p.m + 1) ? 1 : -1;
    out.g(a - 1, b - 1) = RatFn(1);
    if (r != static_cast<std::size_t>(a) || c != static_cast<std::size_t>(b)) out.g(r - 1, c - 1) = RatFn(partner);
    if (!in_lie_algebra(n, out.g)) throw std::logic_error("generator fails the defining identity");
    return out;
}

}  // namespace dwork::group

namespace dwork::group {

namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i - 1); }

}  // namespace

std::vector<Subgroup> subgroups(int n) {
    const auto p = geo::moduli_dim(n);
    std::vector<Subgroup> out;
    int idx = 1;
    for (int i = 1; i <= p.m; ++i) out.push_back({idx++, true, {i, i}});
    for (const auto& ab : gen_indices(n))
        if (ab.first != ab.second) out.push_back({idx++, false, ab});
    if (static_cast<int>(out.size()) != p.d - 1) throw std::logic_error("subgroup count differs from d-1");
    return out;
}

MatF subgroup_matrix(int n, int i, const RatFn& p) {
    const auto params = geo::moduli_dim(n);
    if (i < 1 || i > params.d - 1) throw IndexOutOfRange("no subgroup G_" + std::to_string(i));
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    MatF g = MatF::identity(k);
    const Subgroup sg = subgroups(n)[z(i)];
    const auto [a, b] = sg.ab;
    if (sg.multiplicative) {
        if (p.is_zero()) throw ZeroScalar("multiplicative parameter g" + std::to_string(i) + " vanishes");
        g(z(a), z(a)) = p.inverse();
        g(z(n + 2 - a), z(n + 2 - a)) = p;
        return g;
    }
    // parameter sits at (n+2-b, n+2-a); the mirrored entry carries the generator's sign
    const bool same_sign = params.odd() && b >= params.m + 1;
    g(z(n + 2 - b), z(n + 2 - a)) = p;
    if (n + 2 - b != a) g(z(a), z(b)) = same_sign ? p : -p;
    if (!params.odd() && 2 * b == n + 2) g(z(a), z(n + 2 - a)) = RatFn(Rat(-1, 2)) * p * p;
    return g;
}

bool in_group(int n, const MatF& g) {
    const MatF phi = geo::phi_matrix(n);
    return g.is_upper_triangular() && g.transpose() * phi * g == phi;
}

GroupElem group_elem(int n, std::vector<RatFn> params) {
    const auto p = geo::moduli_dim(n);
    if (static_cast<int>(params.size()) != p.d - 1)
        throw IndexOutOfRange("expected " + std::to_string(p.d - 1) + " group parameters");
    GroupElem e{n, std::move(params), MatF::identity(static_cast<std::size_t>(n) + 1)};
    for (int i = 1; i <= p.d - 1; ++i) e.mat = e.mat * subgroup_matrix(n, i, e.params[z(i)]);
    if (!in_group(n, e.mat)) throw std::logic_error("group element fails g^T Phi g = Phi");
    return e;
}

GroupElem symbolic_elem(int n) {
    const auto p = geo::moduli_dim(n);
    if (p.d - 1 > sym::kMaxG) throw IndexOutOfRange("too many group parameters for symbolic use");
    std::vector<RatFn> params;
    for (int i = 1; i <= p.d - 1; ++i) params.push_back(RatFn::var(sym::gvar(i)));
    return group_elem(n, std::move(params));
}

GroupElem identity_elem(int n) {
    const auto p = geo::moduli_dim(n);
    std::vector<RatFn> params;
    for (int i = 1; i <= p.d - 1; ++i) params.push_back(RatFn(i <= p.m ? 1 : 0));
    return group_elem(n, std::move(params));
}

}  // namespace dwork::group

namespace dwork::group {

namespace {

RatFn eval_poly(const sym::Poly& p, const Point& t, const sym::RelationPtr& rel) {
    RatFn sum;
    for (const auto& term : p.terms()) {
        RatFn prod(term.coef);
        for (Var v = 0; v < sym::kSlots; ++v) {
            const unsigned e = term.mono.exp(v);
            if (e == 0) continue;
            auto it = t.find(v);
            prod *= (it == t.end() ? RatFn::var(v, rel) : it->second).pow(static_cast<int>(e));
        }
        sum += prod;
    }
    return sum.with_relation(rel);
}

RatFn eval_at(const RatFn& f, const Point& t, const sym::RelationPtr& rel) {
    return (eval_poly(f.num(), t, rel) / eval_poly(f.den(), t, rel)).with_relation(rel);
}

}  // namespace

std::vector<RatFn> decompose(int n, const MatF& g) {
    const auto p = geo::moduli_dim(n);
    const auto sgs = subgroups(n);
    std::vector<RatFn> params(sgs.size());
    MatF u = g;
    for (const auto& sg : sgs) {
        if (!sg.multiplicative) break;
        const auto a = sg.ab.first;
        params[z(sg.index)] = g(z(n + 2 - a), z(n + 2 - a));
        if (params[z(sg.index)].is_zero()) throw Singular("vanishing diagonal entry");
        u = subgroup_matrix(n, sg.index, params[z(sg.index)].inverse()) * u;
    }
    for (const auto& sg : sgs) {
        if (sg.multiplicative) continue;
        const auto [a, b] = sg.ab;
        params[z(sg.index)] = u(z(n + 2 - b), z(n + 2 - a));
        u = subgroup_matrix(n, sg.index, -params[z(sg.index)]) * u;
    }
    if (!(u == MatF::identity(static_cast<std::size_t>(p.n) + 1))) throw Singular("matrix is not in the group");
    return params;
}

GroupElem compose(const GroupElem& a, const GroupElem& b) {
    const MatF prod = a.mat * b.mat;
    GroupElem e{a.n, decompose(a.n, prod), prod};
    return e;
}

Point generic_point(const ChartSpec& spec) {
    Point t;
    for (Var v : spec.ambient_vars()) t[v] = RatFn::var(v, spec.relation);
    return t;
}

Point act(const ChartSpec& spec, const Point& t, const GroupElem& g) {
    const auto& p = spec.params;
    const auto& rel = spec.relation;
    const std::size_t k = spec.S.rows();
    const RatFn& g1 = g.params.at(0);
    const MatF s = spec.S.map([&](const RatFn& f) { return eval_at(f, t, rel); });
    MatF scale(k, k);
    RatFn pw = g1;
    for (std::size_t i = 0; i < k; ++i, pw *= g1) scale(i, i) = pw;
    const MatF sp = (g.mat.transpose() * s * scale).map([&](const RatFn& f) { return f.with_relation(rel); });
    if (!sp(0, 0).is_one()) throw ActionShapeViolation("S'(1,1) = " + sp(0, 0).to_string());
    if (!sp.is_lower_triangular()) throw ActionShapeViolation("S' is not lower triangular");

    Point out;
    out[p.t1()] = (t.at(p.t1()) * g1).with_relation(rel);
    out[p.tbase()] = (t.at(p.tbase()) * g1.pow(p.n + 2)).with_relation(rel);
    for (const auto& [v, pos] : spec.slot_map) out[v] = sp(pos.first, pos.second);
    for (const auto& [pos, expr] : spec.dependent_exprs) {
        if (!(eval_at(expr, out, rel) == sp(pos.first, pos.second)))
            throw ActionShapeViolation("dependent entry (" + std::to_string(pos.first + 1) + "," +
                                       std::to_string(pos.second + 1) + ") does not match at the new point");
    }
    if (rel) {
        RatFn gen = eval_at(RatFn(rel->generator(), rel), out, rel);
        if (!gen.is_zero()) throw ActionShapeViolation("the new point leaves the relation");
    }
    return out;
}

VecField infinitesimal(const ChartSpec& spec, int i) {
    const int n = spec.params.n;
    const auto sgs = subgroups(n);
    if (i < 1 || i > static_cast<int>(sgs.size())) throw IndexOutOfRange("no subgroup G_" + std::to_string(i));
    const Var eps = sym::uvar(1);
    std::vector<RatFn> params = identity_elem(n).params;
    const bool mult = sgs[z(i)].multiplicative;
    params[z(i)] = RatFn::var(eps) + RatFn(mult ? 1 : 0);
    // eps is the offset from the identity parameter, so the derivative is taken at eps = 0
    const Point moved = act(spec, generic_point(spec), group_elem(n, std::move(params)));
    VecField h;
    for (const auto& [v, f] : moved) h.set(v, f.derive(eps).substitute(eps, RatFn(0)).with_relation(spec.relation));
    return h;
}

}  // namespace dwork::group
