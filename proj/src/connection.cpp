#include "dwork/connection.hpp"

#include <set>

#include "dwork/errors.hpp"

namespace dwork::conn {

using sym::Poly;
using sym::Rat;

const RatFn& VecField::operator[](Var v) const {
    static const RatFn zero;
    auto it = comp.find(v);
    return it == comp.end() ? zero : it->second;
}

void VecField::set(Var v, RatFn f) {
    if (f.is_zero())
        comp.erase(v);
    else
        comp[v] = std::move(f);
}

RatFn VecField::apply(const RatFn& f) const {
    RatFn s;
    sym::VarSet sup = f.support();
    for (const auto& [v, c] : comp)
        if (sup & sym::var_bit(v)) s += c * f.derive(v);
    return s.with_relation(f.relation());
}

VecField VecField::operator-() const {
    VecField r;
    for (const auto& [v, c] : comp) r.comp[v] = -c;
    return r;
}

VecField operator+(const VecField& a, const VecField& b) {
    VecField r = a;
    for (const auto& [v, c] : b.comp) r.set(v, r[v] + c);
    return r;
}

VecField operator-(const VecField& a, const VecField& b) { return a + (-b); }

VecField operator*(const RatFn& f, const VecField& v) {
    VecField r;
    for (const auto& [k, c] : v.comp) r.set(k, f * c);
    return r;
}

std::string VecField::to_string() const {
    if (comp.empty()) return "0";
    std::string s;
    for (const auto& [v, c] : comp) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*d/d" + sym::var_name(v);
    }
    return s;
}

VecField bracket(const VecField& v, const VecField& w, const sym::RelationPtr& rel) {
    std::set<Var> vars;
    for (const auto& [k, c] : v.comp) vars.insert(k);
    for (const auto& [k, c] : w.comp) vars.insert(k);
    VecField r;
    for (Var k : vars) r.set(k, (v.apply(w[k]) - w.apply(v[k])).with_relation(rel));
    return r;
}

OneFormMat full_connection(const ChartSpec& spec) {
    const OneFormMat b = geo::base_connection(spec.params.n);
    const MatF& s = spec.S;
    const MatF sinv = sym::mat_inverse(s);
    OneFormMat a;
    a.dim = s.rows();
    for (Var v : spec.ambient_vars()) {
        MatF m = s.derive(v);
        if (b.has(v)) m = m + s * b.at(v);
        if (m.is_zero()) continue;
        a.comp.emplace(v, m * sinv);
    }
    return a;
}

MatF contract(const OneFormMat& a, const VecField& h) {
    MatF r(a.dim, a.dim);
    for (const auto& [v, f] : h.comp) {
        if (!a.has(v)) continue;
        r = r + f * a.at(v);
    }
    return r;
}

bool tangent_to_relation(const ChartSpec& spec, const VecField& h) {
    if (!spec.relation) return true;
    RatFn gen(spec.relation->generator());
    RatFn val = h.apply(gen).with_relation(spec.relation);
    return val.is_zero();
}

VecField solve_vf(const ChartSpec& spec, const OneFormMat& a, const MatF& target) {
    const auto& p = spec.params;
    const std::size_t k = spec.S.rows();
    const MatF& s = spec.S;
    const OneFormMat b = geo::base_connection(p.n);
    const Var t1 = p.t1(), tb = p.tbase();
    auto reduce = [&](const RatFn& x) { return x.with_relation(spec.relation); };

    MatF ms = target * s;
    // row 1 of S is constant, so row 1 of M S - S B(H) must vanish; entries
    // (1,1) and (1,2) give the base velocities
    MatF sys(2, 2);
    std::vector<RatFn> rhs(2);
    for (std::size_t j = 0; j < 2; ++j) {
        sys(j, 0) = b.at(t1)(0, j);
        sys(j, 1) = b.at(tb)(0, j);
        rhs[j] = reduce(ms(0, j));
    }
    auto sol = sym::solve_linear(sys, rhs);
    if (sol.status != sym::SolveStatus::Unique) throw NoSuchField("base velocity system is degenerate");
    VecField h;
    h.set(t1, reduce(sol.x[0]));
    h.set(tb, reduce(sol.x[1]));

    MatF bh = h[t1] * b.at(t1) + h[tb] * b.at(tb);
    MatF sdot = ms - s * bh;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!reduce(sdot(i, j)).is_zero())
                throw NoSuchField("nonzero residue at upper entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  "): " + sdot(i, j).to_string());
    if (!reduce(sdot(0, 0)).is_zero()) throw NoSuchField("nonzero residue at entry (1,1)");

    for (const auto& [v, pos] : spec.slot_map) h.set(v, reduce(sdot(pos.first, pos.second)));

    for (const auto& [pos, expr] : spec.dependent_exprs) {
        RatFn chain = reduce(h.apply(expr));
        if (!(chain == reduce(sdot(pos.first, pos.second))))
            throw NoSuchField("dependent slot (" + std::to_string(pos.first + 1) + "," + std::to_string(pos.second + 1) +
                              ") is not tangent");
    }
    if (!tangent_to_relation(spec, h)) throw NoSuchField("field is not tangent to the relation");
    MatF back = contract(a, h).map(reduce);
    if (!(back == target.map(reduce))) throw NoSuchField("contraction does not reproduce the target");
    return h;
}

}  // namespace dwork::conn
