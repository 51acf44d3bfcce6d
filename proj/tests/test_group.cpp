#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include <json.hpp>

#include "dwork/errors.hpp"
#include "dwork/modular.hpp"
#include "oracle.hpp"

using namespace dwork;
using namespace dwork::sym;

namespace {

RatFn P(const std::string& s, RelationPtr rel = nullptr) { return parse_ratfn(s, rel); }

MatF ints(std::initializer_list<std::initializer_list<int>> rows) {
    MatF m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (int x : r) m(i, j++) = RatFn(x);
        ++i;
    }
    return m;
}

nlohmann::json fixture(int n) {
    std::ifstream in(std::string(DWORK_SOURCE_FIXTURES) + "/n" + std::to_string(n) + ".json");
    return nlohmann::json::parse(in);
}

std::vector<RatFn> random_params(std::mt19937_64& rng, int n) {
    const auto subs = group::subgroups(n);
    std::vector<RatFn> out;
    for (const auto& s : subs) {
        Rat r = oracle::random_rat(rng);
        while (s.multiplicative && r.is_zero()) r = oracle::random_rat(rng);
        out.emplace_back(r);
    }
    return out;
}

group::GroupElem elem_of(int n, Var (*slot)(int)) {
    std::vector<RatFn> p;
    for (std::size_t i = 1; i <= group::subgroups(n).size(); ++i) p.push_back(RatFn::var(slot(static_cast<int>(i))));
    return group::group_elem(n, p);
}

}  // namespace

TEST_CASE("generators at n = 3 and n = 4") {
    CHECK(group::lie_gen(3, 1, 2).g == ints({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 0, 0}}));
    CHECK(group::lie_gen(3, 1, 3).g == ints({{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
    CHECK(group::lie_gen(3, 2, 2).g == ints({{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 0}}));
    CHECK(group::lie_gen(4, 2, 3).g ==
          ints({{0, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, -1, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
    CHECK(group::lie_gen(4, 1, 4).g ==
          ints({{0, 0, 0, 1, 0}, {0, 0, 0, 0, -1}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
    CHECK_THROWS_AS(group::lie_gen(3, 3, 3), IndexOutOfRange);
    CHECK_THROWS_AS(group::lie_gen(3, 2, 1), IndexOutOfRange);
}

TEST_CASE("generators lie in the algebra and are independent") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const auto idx = group::gen_indices(n);
        CHECK(static_cast<int>(idx.size()) == geo::moduli_dim(n).d - 1);
        for (auto [a, b] : idx) {
            MatF g = group::lie_gen(n, a, b).g;
            CHECK(group::in_lie_algebra(n, g));
            CHECK(!g.is_zero());
        }
        CHECK(!group::in_lie_algebra(n, MatF::identity(n + 1)));
    }
}

TEST_CASE("subgroup matrices") {
    const RatFn p = RatFn::var(gvar(4));
    MatF want3 = MatF::identity(4);
    want3(0, 2) = p;
    want3(1, 3) = p;
    CHECK(group::subgroup_matrix(3, 4, p) == want3);
    const RatFn q = RatFn::var(gvar(6));
    MatF want4 = MatF::identity(5);
    want4(1, 2) = -q;
    want4(1, 3) = RatFn(Rat(-1, 2)) * q * q;
    want4(2, 3) = q;
    CHECK(group::subgroup_matrix(4, 6, q) == want4);
    MatF g1 = MatF::identity(5);
    g1(0, 0) = RatFn(Rat(1, 3));
    g1(4, 4) = RatFn(3);
    CHECK(group::subgroup_matrix(4, 1, RatFn(3)) == g1);
}

TEST_CASE("subgroup counts") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const auto p = geo::moduli_dim(n);
        const auto subs = group::subgroups(n);
        CHECK(static_cast<int>(subs.size()) == p.d - 1);
        int mult = 0;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            CHECK(subs[i].index == static_cast<int>(i) + 1);
            mult += subs[i].multiplicative;
            CHECK(subs[i].multiplicative == (subs[i].index <= p.m));
        }
        CHECK(mult == p.m);
    }
}

TEST_CASE("symbolic elements preserve the form") {
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        auto g = group::symbolic_elem(n);
        const MatF phi = geo::phi_matrix(n);
        CHECK(g.mat.transpose() * phi * g.mat == phi);
        CHECK(group::in_group(n, g.mat));
        for (std::size_t i = 0; i < g.mat.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(g.mat(i, j).is_zero());
    }
    CHECK(!group::in_group(2, RatFn(2) * MatF::identity(3)));
}

TEST_CASE("zero multiplicative parameter is rejected") {
    CHECK_THROWS_AS(group::group_elem(1, {RatFn(0), RatFn(1)}), ZeroScalar);
}

TEST_CASE("decomposition round trips") {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        for (int trial = 0; trial < 100; ++trial) {
            auto params = random_params(rng, n);
            auto g = group::group_elem(n, params);
            CHECK(group::decompose(n, g.mat) == params);
        }
    }
    CHECK_THROWS_AS(group::decompose(2, RatFn(2) * MatF::identity(3)), Singular);
}

TEST_CASE("action at n = 1") {
    auto spec = chart::solve_dependents(1, RatFn(*modular::matched_c(1)));
    auto pt = group::act(spec, group::generic_point(spec), group::symbolic_elem(1));
    CHECK(pt.at(tvar(1)) == P("t1*g1"));
    CHECK(pt.at(tvar(2)) == P("t2*g1^2+g2"));
    CHECK(pt.at(tvar(3)) == P("t3*g1^3"));
}

TEST_CASE("published actions") {
    for (int n : {3, 4}) {
        CAPTURE(n);
        auto spec = chart::solve_dependents(n, RatFn(*modular::matched_c(n)));
        auto pt = group::act(spec, group::generic_point(spec), group::symbolic_elem(n));
        for (const auto& [name, text] : fixture(n)["displays"]["action"].items()) {
            CAPTURE(name);
            Var v;
            REQUIRE(parse_var(name, v));
            CHECK(pt.at(v).with_relation(spec.relation) == P(text.get<std::string>(), spec.relation));
        }
    }
}

TEST_CASE("identity acts trivially") {
    for (int n = 1; n <= 5; ++n) {
        auto spec = chart::solve_dependents(n, RatFn::var(kC));
        auto t = group::generic_point(spec);
        CHECK(group::act(spec, t, group::identity_elem(n)) == t);
    }
}

TEST_CASE("scaling variables") {
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        auto spec = chart::solve_dependents(n, RatFn::var(kC));
        auto pt = group::act(spec, group::generic_point(spec), group::symbolic_elem(n));
        const RatFn g1 = RatFn::var(gvar(1));
        CHECK(pt.at(tvar(1)) == RatFn::var(tvar(1)) * g1);
        CHECK(pt.at(tvar(n + 2)) == RatFn::var(tvar(n + 2)) * g1.pow(n + 2));
    }
}

TEST_CASE("right action") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        auto spec = chart::solve_dependents(n, RatFn(*modular::matched_c(n)));
        auto t = group::generic_point(spec);
        auto a = elem_of(n, gvar);
        auto b = elem_of(n, uvar);
        auto lhs = group::act(spec, group::act(spec, t, a), b);
        auto rhs = group::act(spec, t, group::compose(a, b));
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& [v, f] : lhs) CHECK(f.with_relation(spec.relation) == rhs.at(v).with_relation(spec.relation));
    }
}

TEST_CASE("composition matches matrix product") {
    std::mt19937_64 rng(29);
    for (int n = 1; n <= 4; ++n) {
        auto a = group::group_elem(n, random_params(rng, n));
        auto b = group::group_elem(n, random_params(rng, n));
        CHECK(group::compose(a, b).mat == a.mat * b.mat);
    }
}

TEST_CASE("one-parameter derivatives against the basis") {
    // sign of d/dp (t . G_i(p)) relative to R_g, per subgroup
    const std::map<int, std::vector<int>> signs{
        {1, {-1, 1}}, {2, {-1, -1}}, {3, {-1, -1, -1, 1, 1, 1}}, {4, {-1, -1, -1, -1, -1, -1}}};
    for (const auto& [n, sg] : signs) {
        CAPTURE(n);
        auto m = modular::build_default_model(n);
        auto basis = modular::basis_vf(m);
        const auto subs = group::subgroups(n);
        REQUIRE(subs.size() == sg.size());
        for (std::size_t i = 0; i < subs.size(); ++i) {
            CAPTURE(i);
            auto v = group::infinitesimal(m.spec, subs[i].index);
            const auto& r = basis.at(subs[i].ab);
            conn::VecField want;
            for (const auto& [x, f] : r.comp) want.set(x, m.reduce(RatFn(sg[i]) * f));
            conn::VecField got;
            for (const auto& [x, f] : v.comp) got.set(x, m.reduce(f));
            CHECK(got == want);
        }
    }
}
