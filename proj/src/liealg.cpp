#include "dwork/liealg.hpp"

#include "dwork/errors.hpp"

namespace dwork::lie {

namespace {

std::string gname(const GenIndex& ab) { return "R_g" + std::to_string(ab.first) + std::to_string(ab.second); }

MatF reduce_mat(const Model& model, const MatF& m) {
    return m.map([&](const RatFn& f) { return model.reduce(f); });
}

}  // namespace

bool BracketReport::all_equal() const {
    for (const auto& r : rows)
        if (!r.equal) return false;
    return true;
}

void BracketReport::add(std::string name, const VecField& lhs, const VecField& rhs) {
    rows.push_back({std::move(name), lhs.to_string(), rhs.to_string(), lhs == rhs});
}

void BracketReport::add(std::string name, const MatF& lhs, const MatF& rhs) {
    rows.push_back({std::move(name), lhs.to_string(), rhs.to_string(), lhs == rhs});
}

BracketReport verify_theorem2(const Model& model, const ModularField& mf, const Basis& basis) {
    const auto& p = model.spec.params;
    const auto& rel = model.spec.relation;
    const int n = p.n, m = p.m, rho = p.rho;
    const VecField& r = mf.R;
    BracketReport rep;
    auto br = [&](const GenIndex& ab) { return bracket(r, basis.at(ab), rel); };
    auto field = [&](int a, int b) -> VecField {
        auto it = basis.find({a, b});
        return it == basis.end() ? VecField{} : it->second;
    };

    rep.add("[R,R_g11] = R", br({1, 1}), r);
    if (m >= 2) rep.add("[R,R_g22] = -R", br({2, 2}), -r);
    for (int a = 3; a <= m; ++a) rep.add("[R," + gname({a, a}) + "] = 0", br({a, a}), VecField{});
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= 2 * m + 1 - a; ++b) {
            const int k1 = 1 + (a + b == 2 * m ? rho : 0) - (a + b == 2 * m + 1 ? 1 : 0);
            const int k2 = 1 - (b == m + 1 ? 2 * rho : 0);
            VecField rhs;
            if (k1 != 0) rhs = rhs + (RatFn(k1) * mf.Y.at(a - 1)) * field(a + 1, b);
            if (k2 != 0) rhs = rhs + (RatFn(k2) * mf.Y.at(n + 1 - b)) * field(a, b - 1);
            VecField red;
            for (const auto& [v, f] : rhs.comp) red.set(v, model.reduce(f));
            rep.add("[R," + gname({a, b}) + "] = Psi1*" + gname({a + 1, b}) + " + Psi2*" + gname({a, b - 1}),
                    br({a, b}), red);
        }
    return rep;
}

bool verify_flatness(const Model& model, const VecField& v, const VecField& w) {
    const auto& rel = model.spec.relation;
    MatF lhs = reduce_mat(model, conn::contract(model.A, bracket(v, w, rel)));
    MatF av = conn::contract(model.A, v), aw = conn::contract(model.A, w);
    MatF rhs = sym::commutator(aw, av) + aw.map([&](const RatFn& f) { return v.apply(f); }) -
               av.map([&](const RatFn& f) { return w.apply(f); });
    return lhs == reduce_mat(model, rhs);
}

Decomposition amsy_decompose(const Model& model, const ModularField& mf, const VecField& v) {
    const int n = model.n();
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    const MatF target = reduce_mat(model, conn::contract(model.A, v));
    const MatF y = mf.Y.matrix();
    const auto gens = group::gen_indices(n);
    std::vector<MatF> gt;
    for (const auto& ab : gens) gt.push_back(group::lie_gen(n, ab.first, ab.second).g.transpose());

    // each generator has a position no other generator (nor Y) touches: its
    // entry (b, a) of g^T; Y is read at (1, 2)
    Decomposition out;
    out.f0 = target(0, 1);
    std::vector<RatFn> coef(gens.size());
    bool clean = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::size_t r = static_cast<std::size_t>(gens[i].second - 1), c = static_cast<std::size_t>(gens[i].first - 1);
        if (!y(r, c).is_zero()) clean = false;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i && !gt[j](r, c).is_zero()) clean = false;
        coef[i] = target(r, c) / gt[i](r, c);
    }
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (!gt[j](0, 1).is_zero()) clean = false;
    if (!clean) {
        // generic route: one unknown per generator plus f0, one equation per entry
        MatF sys(k * k, gens.size() + 1);
        std::vector<RatFn> rhs(k * k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                sys(r * k + c, 0) = y(r, c);
                for (std::size_t j = 0; j < gens.size(); ++j) sys(r * k + c, j + 1) = gt[j](r, c);
                rhs[r * k + c] = target(r, c);
            }
        try {
            auto sol = sym::solve_linear(sys, rhs);
            out.f0 = sol.x[0];
            for (std::size_t j = 0; j < gens.size(); ++j) coef[j] = sol.x[j + 1];
        } catch (const Inconsistent&) {
        }
    }
    MatF built = out.f0 * y;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        coef[j] = model.reduce(coef[j]);
        built = built + coef[j] * gt[j];
        if (!coef[j].is_zero()) out.coeffs[gens[j]] = coef[j];
    }
    const MatF residual = reduce_mat(model, target - built);
    for (std::size_t r = 0; r < k && !out.obstruction; ++r)
        for (std::size_t c = 0; c < k; ++c)
            if (!residual(r, c).is_zero()) {
                out.obstruction = Pos{r, c};
                out.obstruction_value = target(r, c);
                out.reason = "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") = " +
                             target(r, c).to_string() + " is outside the span";
                break;
            }
    if (out.obstruction) return out;
    if (!model.spec.is_regular(out.f0)) {
        out.reason = "coefficient of Y is not regular: " + out.f0.to_string();
        out.obstruction = Pos{0, 1};
        out.obstruction_value = out.f0;
        return out;
    }
    for (const auto& [ab, f] : out.coeffs)
        if (!model.spec.is_regular(f)) {
            out.reason = "coefficient of " + gname(ab) + " is not regular: " + f.to_string();
            out.obstruction = Pos{static_cast<std::size_t>(ab.second - 1), static_cast<std::size_t>(ab.first - 1)};
            out.obstruction_value = f;
            return out;
        }
    out.member = true;
    return out;
}

VecField assemble(const Model& model, const ModularField& mf, const Basis& basis, const RatFn& f0,
                  const std::map<GenIndex, RatFn>& coeffs) {
    VecField v = f0 * mf.R;
    for (const auto& [ab, f] : coeffs) v = v + f * basis.at(ab);
    VecField out;
    for (const auto& [var, f] : v.comp) out.set(var, model.reduce(f));
    return out;
}

BracketReport fR_identities(const Model& model, const ModularField& mf, const Sl2Triple& triple) {
    const auto& rel = model.spec.relation;
    const int n = model.n();
    BracketReport rep;
    auto times = [&](const RatFn& f, const VecField& v) {
        VecField out;
        for (const auto& [var, g] : v.comp) out.set(var, model.reduce(f * g));
        return out;
    };
    const RatFn l = geo::discriminant(n).with_relation(rel);
    const VecField lr = times(l, mf.R);
    rep.add("[fR,F] = f*H, f = discriminant", bracket(lr, triple.F, rel), times(l, triple.H));
    rep.add("[H,fR] = (n+4)*fR, f = discriminant", bracket(triple.H, lr, rel), times(RatFn(n + 4), lr));

    auto w = modular::weights_of(model, triple.H);
    if (!w) return rep;
    std::vector<RatFn> samples{l, RatFn::var(sym::tvar(1), rel), RatFn::var(sym::tvar(2), rel) * RatFn::var(sym::tvar(3), rel),
                               RatFn::var(sym::tvar(n + 2), rel) * RatFn::var(sym::tvar(1), rel).pow(2), RatFn(1)};
    for (const auto& f : samples) {
        auto deg = modular::weighted_degree(f, *w);
        if (!deg) continue;
        const VecField fr = times(f, mf.R);
        rep.add("[H,fR] = (k+2)*fR, f = " + f.to_string() + ", k+2 = " + std::to_string(*deg + 2),
                bracket(triple.H, fr, rel), times(RatFn(*deg + 2), fr));
    }
    return rep;
}

BracketReport verify_structure(const Model& model, const Basis& basis) {
    const int n = model.n();
    const auto& rel = model.spec.relation;
    BracketReport rep;
    for (auto i = basis.begin(); i != basis.end(); ++i)
        for (auto j = std::next(i); j != basis.end(); ++j) {
            const MatF gi = group::lie_gen(n, i->first.first, i->first.second).g;
            const MatF gj = group::lie_gen(n, j->first.first, j->first.second).g;
            const MatF c = sym::commutator(gi, gj);
            VecField expected = c.is_zero() ? VecField{} : conn::solve_vf(model.spec, model.A, c.transpose());
            rep.add("[" + gname(i->first) + "," + gname(j->first) + "] = R_[g,g']", bracket(i->second, j->second, rel),
                    expected);
        }
    return rep;
}

BracketReport verify_jacobi(const Model& model, const ModularField& mf, const Basis& basis) {
    const auto& rel = model.spec.relation;
    std::vector<std::pair<std::string, const VecField*>> gens{{"R", &mf.R}};
    for (const auto& [ab, v] : basis) gens.emplace_back(gname(ab), &v);
    BracketReport rep;
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            for (std::size_t c = b + 1; c < gens.size(); ++c) {
                const VecField &x = *gens[a].second, &y = *gens[b].second, &z = *gens[c].second;
                VecField s = bracket(bracket(x, y, rel), z, rel) + bracket(bracket(y, z, rel), x, rel) +
                             bracket(bracket(z, x, rel), y, rel);
                VecField red;
                for (const auto& [v, f] : s.comp) red.set(v, model.reduce(f));
                rep.add("Jacobi(" + gens[a].first + "," + gens[b].first + "," + gens[c].first + ")", red, VecField{});
            }
    return rep;
}

}  // namespace dwork::lie
