#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dwork/errors.hpp"
#include "dwork/modular.hpp"
#include "oracle.hpp"

using namespace dwork;
using namespace dwork::sym;
using conn::VecField;

namespace {

RatFn P(const std::string& s, RelationPtr rel = nullptr) { return parse_ratfn(s, rel); }

VecField field(std::initializer_list<std::pair<int, std::string>> comps, RelationPtr rel = nullptr) {
    VecField v;
    for (const auto& [i, s] : comps) v.set(tvar(i), P(s, rel));
    return v;
}

MatF reduce(const modular::Model& m, const MatF& x) {
    return x.map([&](const RatFn& f) { return m.reduce(f); });
}

std::vector<MatF> targets(const modular::Model& m) {
    std::vector<MatF> out;
    out.push_back(modular::yukawa(m).matrix());
    for (auto ab : group::gen_indices(m.n())) out.push_back(group::lie_gen(m.n(), ab.first, ab.second).g.transpose());
    return out;
}

// For even n the pivot differential is dependent on the relation:
// 2 t_D dt_D = d(value). Pull A back before comparing.
std::map<Var, MatF> restricted(const modular::Model& m) {
    std::map<Var, MatF> out(m.A.comp.begin(), m.A.comp.end());
    const auto& rel = m.spec.relation;
    if (!rel || !m.A.has(rel->pivot)) return out;
    const MatF ap = m.A.at(rel->pivot);
    out.erase(rel->pivot);
    const RatFn value = RatFn::make(rel->num, rel->den);
    const RatFn two_p = RatFn(2) * RatFn::var(rel->pivot, rel);
    for (Var v : {tvar(1), tvar(m.n() + 2)}) {
        MatF extra = (value.derive(v) / two_p) * ap;
        out[v] = out.count(v) ? out.at(v) + extra : extra;
    }
    return out;
}

}  // namespace

TEST_CASE("contraction with the modular field at n = 1") {
    auto m = modular::build_default_model(1);
    auto r = modular::modular_vf(m).R;
    MatF y(2, 2);
    y(0, 1) = RatFn(1);
    CHECK(conn::contract(m.A, r) == y);
}

TEST_CASE("connection preserves the intersection form") {
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        auto m = modular::build_default_model(n);
        for (const auto& [v, a] : restricted(m)) CHECK(reduce(m, a * m.phi + m.phi * a.transpose()).is_zero());
    }
}

TEST_CASE("connection at a constant period matrix is the base connection") {
    auto spec = chart::solve_dependents(1, RatFn::var(kC));
    spec.S = MatF::identity(2);
    auto a = conn::full_connection(spec);
    auto b = geo::base_connection(1);
    CHECK(a.at(tvar(1)) == b.at(tvar(1)));
    CHECK(a.at(tvar(3)) == b.at(tvar(3)));
}

TEST_CASE("contraction is linear over functions") {
    auto m = modular::build_default_model(2);
    auto r = modular::modular_vf(m).R;
    CHECK(conn::contract(m.A, VecField{}).is_zero());
    const RatFn t1 = RatFn::var(tvar(1), m.spec.relation);
    CHECK(reduce(m, conn::contract(m.A, t1 * r)) == reduce(m, t1 * conn::contract(m.A, r)));
}

TEST_CASE("solver examples at n = 1") {
    auto m = modular::build_default_model(1);
    auto g11 = group::lie_gen(1, 1, 1).g.transpose();
    CHECK(conn::solve_vf(m.spec, m.A, g11) == field({{1, "-t1"}, {2, "-2*t2"}, {3, "-3*t3"}}));
    CHECK(conn::solve_vf(m.spec, m.A, MatF(2, 2)).is_zero());
    MatF y(2, 2);
    y(0, 1) = RatFn(1);
    CHECK(conn::solve_vf(m.spec, m.A, y) ==
          field({{1, "-t1*t2-9*(t1^3-t3)"}, {2, "81*t1*(t1^3-t3)-t2^2"}, {3, "-3*t2*t3"}}));
}

TEST_CASE("zero target at n = 2") {
    auto m = modular::build_default_model(2);
    CHECK(conn::solve_vf(m.spec, m.A, MatF(3, 3)).is_zero());
}

TEST_CASE("targets outside the image have no field") {
    auto m = modular::build_default_model(2);
    CHECK_THROWS_AS(conn::solve_vf(m.spec, m.A, MatF::identity(3)), NoSuchField);
    try {
        conn::solve_vf(m.spec, m.A, MatF::identity(3));
    } catch (const Error& e) {
        CHECK(e.structural());
    }
}

TEST_CASE("solver round trip, uniqueness and tangency") {
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        auto m = modular::build_default_model(n);
        std::vector<VecField> seen;
        for (const MatF& t : targets(m)) {
            VecField h = conn::solve_vf(m.spec, m.A, t);
            CHECK(reduce(m, conn::contract(m.A, h)) == reduce(m, t));
            CHECK(conn::tangent_to_relation(m.spec, h));
            for (const auto& other : seen) CHECK(!(other == h));
            seen.push_back(h);
        }
    }
}

TEST_CASE("the modular field transports the period matrix as required") {
    // R(S) = Y S - S B(R), checked at random points without inverting S
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        auto m = modular::build_default_model(n);
        auto mf = modular::modular_vf(m);
        const MatF& s = m.spec.S;
        const auto b = geo::base_connection(n);
        const Var t1 = tvar(1), tb = tvar(n + 2);
        MatF bh = mf.R[t1] * b.at(t1) + mf.R[tb] * b.at(tb);
        MatF rhs = mf.Y.matrix() * s - s * bh;
        std::vector<Var> vars = m.spec.ambient_vars();
        int checked = 0;
        for (int trial = 0; trial < 20 && checked < 3; ++trial) {
            auto pt = oracle::random_point_on(rng, vars, m.spec.relation, tb);
            bool poles = false;
            bool ok = true;
            for (std::size_t i = 0; i < s.rows(); ++i)
                for (std::size_t j = 0; j < s.cols(); ++j) {
                    auto lhs = oracle::eval_ratfn(mf.R.apply(s(i, j)), pt);
                    auto want = oracle::eval_ratfn(rhs(i, j), pt);
                    if (!lhs || !want) {
                        poles = true;
                        continue;
                    }
                    ok = ok && *lhs == *want;
                }
            if (poles) continue;
            CHECK(ok);
            ++checked;
        }
        CHECK(checked == 3);
    }
}
