#include "dwork/chart.hpp"

#include <algorithm>
#include <set>

#include "dwork/errors.hpp"

namespace dwork::chart {

using sym::kC;
using sym::tvar;

std::vector<Var> ChartSpec::ambient_vars() const {
    std::vector<Var> v;
    for (int i = 1; i <= params.D; ++i) v.push_back(tvar(i));
    return v;
}

bool ChartSpec::is_independent(Pos p) const {
    for (const auto& [v, q] : slot_map)
        if (q == p) return true;
    return false;
}

std::optional<Var> ChartSpec::var_at(Pos p) const {
    for (const auto& [v, q] : slot_map)
        if (q == p) return v;
    return std::nullopt;
}

std::vector<Poly> ChartSpec::locus_factors() const {
    std::vector<Poly> f;
    f.push_back(Poly::var(params.tbase()));
    f.push_back(geo::discriminant(params.n).num());
    for (int i = 2; i <= params.m; ++i) {
        auto v = var_at({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)});
        if (v) f.push_back(Poly::var(*v));
    }
    return f;
}

Poly ChartSpec::inverted_locus() const {
    Poly p(1);
    for (const auto& f : locus_factors()) p = p * f;
    return p;
}

bool ChartSpec::is_regular(const RatFn& f) const {
    Poly d = f.den();
    // constants and the symbol c count as units
    for (const auto& fac : locus_factors()) {
        while (!d.is_constant()) {
            auto q = d.divide_exact(fac);
            if (!q) break;
            d = *q;
        }
    }
    while (!d.is_constant()) {
        auto q = d.divide_exact(Poly::var(kC));
        if (!q) break;
        d = *q;
    }
    return d.is_constant();
}

ChartSpec chart_spec(int n) {
    ChartSpec spec;
    spec.params = geo::moduli_dim(n);
    const auto& p = spec.params;
    spec.rule_extrapolated = n >= 6;
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    const std::size_t bound = p.odd() ? n + 2 : n + 1;
    const std::size_t mid = static_cast<std::size_t>(p.m);  // 0-based (m+1, m+1)
    int next = 2;
    std::set<int> used{1, n + 2};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (i == 0 && j == 0) continue;
            if ((i + 1) + (j + 1) > bound) continue;
            if (next == n + 2) ++next;
            spec.slot_map[tvar(next)] = {i, j};
            used.insert(next);
            ++next;
        }
    if (!p.odd()) {
        int extra = 1;
        while (used.count(extra)) ++extra;
        spec.slot_map[tvar(extra)] = {mid, mid};
        spec.extra_var = tvar(extra);
    }
    if (static_cast<int>(spec.slot_map.size()) != p.D - 2)
        throw std::logic_error("chart layout does not match the dimension formula");
    // dependents: increasing antidiagonal, then row
    for (std::size_t s = 2; s <= 2 * k; ++s)
        for (std::size_t i = 0; i < k; ++i) {
            if (s < i + 2 || s - i - 2 > i) continue;
            std::size_t j = s - i - 2;
            if (j >= k) continue;
            Pos pos{i, j};
            if ((i == 0 && j == 0) || spec.is_independent(pos)) continue;
            spec.dependent_slots.push_back(pos);
        }
    return spec;
}

RatFn diagonal_closed_form(const ChartSpec& spec, std::size_t i) {
    const int n = spec.params.n;
    const RatFn sign((n + static_cast<int>(i) + 1) % 2 == 0 ? 1 : -1);
    const RatFn& sii = spec.S(i - 1, i - 1);
    RatFn scale = sign / (spec.c * RatFn(Rat(n + 2).pow(static_cast<unsigned>(n))));
    return scale * geo::discriminant(n).with_relation(spec.relation) / sii;
}

namespace {

// Which dependent slots can occur in entry (i,j) of S Omega S^T.
std::set<Pos> structural_unknowns(const MatF& omega, std::size_t i, std::size_t j,
                                  const std::set<Pos>& unsolved) {
    std::set<Pos> out;
    for (std::size_t a = 0; a <= i; ++a)
        for (std::size_t b = 0; b <= j; ++b) {
            if (omega(a, b).is_zero()) continue;
            if (unsolved.count({i, a})) out.insert({i, a});
            if (unsolved.count({j, b})) out.insert({j, b});
        }
    return out;
}

RatFn entry(const MatF& s, const MatF& omega, std::size_t i, std::size_t j) {
    RatFn sum;
    for (std::size_t a = 0; a <= i; ++a) {
        if (s(i, a).is_zero()) continue;
        for (std::size_t b = 0; b <= j; ++b) {
            if (omega(a, b).is_zero() || s(j, b).is_zero()) continue;
            sum += s(i, a) * omega(a, b) * s(j, b);
        }
    }
    return sum;
}

}  // namespace

ChartSpec solve_dependents(int n, const RatFn& c) {
    ChartSpec spec = chart_spec(n);
    spec.c = c;
    const auto& p = spec.params;
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    const MatF omega = geo::intersection_matrix(n, c);
    const MatF phi = geo::phi_matrix(n);

    if (!p.odd()) {
        // middle equation: t_D^2 * Omega_{m+1,m+1} = 1
        Poly l = geo::discriminant(n).num();
        RatFn scale = RatFn(p.m % 2 ? -1 : 1) / (RatFn(Rat(n + 2).pow(static_cast<unsigned>(n))) * c);
        auto rel = std::make_shared<sym::Relation>();
        rel->pivot = *spec.extra_var;
        rel->num = (RatFn(l) * RatFn(scale.num())).num();
        rel->den = scale.den();
        spec.relation = rel;
    }

    MatF s(k, k);
    s(0, 0) = RatFn(1);
    for (const auto& [v, pos] : spec.slot_map) s(pos.first, pos.second) = RatFn::var(v, spec.relation);

    std::set<Pos> unsolved(spec.dependent_slots.begin(), spec.dependent_slots.end());
    const Var placeholder = sym::uvar(1);
    for (std::size_t sum = 0; sum <= 2 * (k - 1); ++sum)
        for (std::size_t i = 0; i < k; ++i) {
            if (sum < i) continue;
            std::size_t j = sum - i;
            if (j < i || j >= k) continue;
            if (p.odd() && i == j) continue;  // antisymmetric: diagonal vanishes identically
            auto unknown = structural_unknowns(omega, i, j, unsolved);
            const std::string where = "equation (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            if (unknown.size() > 1) throw EliminationStuck(where + " has several new unknowns");
            if (unknown.empty()) {
                RatFn e = entry(s, omega, i, j) - phi(i, j);
                if (!e.with_relation(spec.relation).is_zero())
                    throw EliminationStuck(where + " has no unknown and does not hold: " + e.to_string());
                continue;
            }
            Pos target = *unknown.begin();
            s(target.first, target.second) = RatFn::var(placeholder, spec.relation);
            RatFn e = entry(s, omega, i, j) - phi(i, j);
            auto cs = e.num().coeffs_in(placeholder);
            if (cs.size() != 2 || cs[1].is_zero())
                throw EliminationStuck(where + " is not linear in its unknown");
            RatFn value = RatFn::make(-cs[0], cs[1], spec.relation);
            s(target.first, target.second) = value;
            spec.dependent_exprs[target] = value;
            unsolved.erase(target);
        }
    if (!unsolved.empty()) throw EliminationStuck(std::to_string(unsolved.size()) + " dependents left unsolved");
    spec.S = s;
    spec.solved = true;

    MatF check = s * omega * s.transpose() - phi;
    if (!check.map([&](const RatFn& x) { return x.with_relation(spec.relation); }).is_zero())
        throw EliminationStuck("S Omega S^T differs from Phi after elimination");
    return spec;
}

}  // namespace dwork::chart
