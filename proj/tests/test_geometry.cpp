#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "dwork/chart.hpp"
#include "dwork/errors.hpp"
#include "oracle.hpp"

using namespace dwork;
using namespace dwork::sym;
using chart::Pos;

namespace {

RatFn P(const std::string& s, RelationPtr rel = nullptr) { return parse_ratfn(s, rel); }
const RatFn kSymC = RatFn::var(kC);

// Set partitions of {1..r} into s blocks, by restricted growth strings.
std::int64_t count_partitions(int r, int s) {
    std::int64_t count = 0;
    std::vector<int> a(r, 0);
    std::function<void(int, int)> rec = [&](int pos, int maxv) {
        if (pos == r) {
            count += (maxv + 1 == s);
            return;
        }
        for (int v = 0; v <= maxv + 1 && v < s; ++v) {
            a[pos] = v;
            rec(pos + 1, std::max(maxv, v));
        }
    };
    if (r == 0) return s == 0;
    a[0] = 0;
    rec(1, 0);
    return count;
}

// Determinant by plain elimination over Q.
Rat det(std::vector<std::vector<Rat>> m) {
    const std::size_t k = m.size();
    Rat d(1);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m[p][c].is_zero()) ++p;
        if (p == k) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            Rat f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

Rat eval(const RatFn& f, const std::map<Var, Rat>& pt) {
    return oracle::eval_poly(f.num(), pt) / oracle::eval_poly(f.den(), pt);
}

}  // namespace

TEST_CASE("moduli dimensions") {
    auto p1 = geo::moduli_dim(1);
    CHECK(p1.d == 3);
    CHECK(p1.m == 1);
    CHECK(p1.D == 3);
    CHECK(p1.rho == 1);
    auto p3 = geo::moduli_dim(3);
    CHECK(p3.d == 7);
    CHECK(p3.m == 2);
    CHECK(p3.D == 7);
    auto p4 = geo::moduli_dim(4);
    CHECK(p4.d == 7);
    CHECK(p4.m == 2);
    CHECK(p4.D == 8);
    CHECK_THROWS_AS(geo::moduli_dim(0), IndexOutOfRange);
}

TEST_CASE("phi matrix") {
    MatF p1 = geo::phi_matrix(1);
    CHECK(p1(0, 1) == RatFn(1));
    CHECK(p1(1, 0) == RatFn(-1));
    CHECK(p1(0, 0).is_zero());
    MatF p2 = geo::phi_matrix(2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(p2(i, j) == RatFn(i + j == 2 ? 1 : 0));
    MatF p3 = geo::phi_matrix(3);
    const int rows[4][4] = {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(p3(i, j) == RatFn(rows[i][j]));
    for (int n = 1; n <= 9; ++n) {
        MatF p = geo::phi_matrix(n);
        CHECK(p.transpose() == RatFn(n % 2 ? -1 : 1) * p);
        CHECK(p * p == RatFn(n % 2 ? -1 : 1) * MatF::identity(n + 1));
    }
}

TEST_CASE("stirling numbers of the second kind") {
    CHECK(geo::stirling2(5, 5) == 1);
    CHECK(geo::stirling2(4, 1) == 1);
    CHECK(geo::stirling2(3, 2) == 3);
    for (int r = 1; r <= 8; ++r)
        for (int s = 1; s <= r; ++s) CHECK(geo::stirling2(r, s) == count_partitions(r, s));
    for (int r = 2; r <= 12; ++r)
        for (int s = 1; s <= r; ++s) {
            const std::int64_t keep = s < r ? s * geo::stirling2(r - 1, s) : 0;
            CHECK(geo::stirling2(r, s) == keep + geo::stirling2(r - 1, s - 1));
        }
}

TEST_CASE("base connection entries") {
    auto b = geo::base_connection(1);
    CHECK(b.at(tvar(3))(0, 0) == P("-1/(3*t3)"));
    CHECK(b.at(tvar(1))(1, 0) == P("-t1/(t1^3-t3)"));
    for (int n = 1; n <= 7; ++n) {
        auto bn = geo::base_connection(n);
        const std::size_t k = n + 1;
        CHECK(bn.comp.size() == 2);
        for (const auto& [v, m] : bn.comp)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    const bool band = j == i || j == i + 1 || i == k - 1;
                    if (!band) CHECK(m(i, j).is_zero());
                }
        if (k > 2)
            for (const auto& [v, m] : bn.comp) CHECK(m(0, 2).is_zero());
    }
}

TEST_CASE("intersection matrix at n = 1") {
    MatF om = geo::intersection_matrix(1, kSymC);
    RatFn q = P("-3*c/(t1^3-t3)");
    CHECK(om(0, 0).is_zero());
    CHECK(om(1, 1).is_zero());
    CHECK(om(0, 1) == q);
    CHECK(om(1, 0) == -q);
}

TEST_CASE("intersection matrix properties") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 7; ++n) {
        CAPTURE(n);
        MatF om = geo::intersection_matrix(n, kSymC);
        const std::size_t k = n + 1;
        CHECK(geo::omega_identity_holds(geo::base_connection(n), om));
        CHECK(om.transpose() == RatFn(n % 2 ? -1 : 1) * om);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i + j + 2 <= k) CHECK(om(i, j).is_zero());
        // invertible: nonzero determinant at a random point, computed here
        std::vector<Var> vars{tvar(1), tvar(n + 2), kC};
        auto pt = oracle::random_point(rng, vars);
        std::vector<std::vector<Rat>> num(k, std::vector<Rat>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) num[i][j] = eval(om(i, j), pt);
        CHECK(!det(num).is_zero());
    }
}

TEST_CASE("chart layouts") {
    auto s3 = chart::chart_spec(3);
    std::map<Var, Pos> want3{{tvar(2), {1, 0}}, {tvar(3), {1, 1}}, {tvar(4), {2, 0}}, {tvar(6), {2, 1}}, {tvar(7), {3, 0}}};
    CHECK(s3.slot_map == want3);
    CHECK(chart::chart_spec(5).slot_map.at(tvar(10)) == Pos{3, 2});
    auto s2 = chart::chart_spec(2);
    CHECK(s2.slot_map.at(tvar(2)) == Pos{1, 0});
    CHECK(s2.extra_var == tvar(3));
    CHECK(s2.slot_map.at(tvar(3)) == Pos{1, 1});
    for (int n = 1; n <= 8; ++n) {
        auto s = chart::chart_spec(n);
        CHECK(s.rule_extrapolated == (n >= 6));
    }
}

TEST_CASE("independent slot count") {
    // every chart variable except t1 and t_{n+2} sits in a slot
    for (int n = 1; n <= 8; ++n) {
        auto s = chart::chart_spec(n);
        CHECK(static_cast<int>(s.slot_map.size()) == s.params.D - 2);
        const int independents = static_cast<int>(s.slot_map.size()) - (s.extra_var ? 1 : 0);
        CHECK(independents == s.params.d - 2);
    }
}

TEST_CASE("elimination at n = 1") {
    auto s = chart::solve_dependents(1, kSymC);
    CHECK(s.S(1, 1) == P("-(t1^3-t3)/(3*c)"));
}

TEST_CASE("elimination identities") {
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        auto s = chart::solve_dependents(n, kSymC);
        auto red = [&](const RatFn& x) { return x.with_relation(s.relation); };
        MatF om = geo::intersection_matrix(n, kSymC);
        CHECK((s.S * om * s.S.transpose() - geo::phi_matrix(n)).map(red).is_zero());
        for (const auto& [pos, e] : s.dependent_exprs) CHECK(s.is_regular(e));
        const std::size_t k = n + 1;
        for (std::size_t i = 1; i <= (k + 1) / 2; ++i)
            CHECK(red(chart::diagonal_closed_form(s, i)) == red(s.S(k - i, k - i)));
        CHECK((s.relation != nullptr) == (n % 2 == 0));
    }
}

TEST_CASE("even relations at the matched constants") {
    auto s2 = chart::solve_dependents(2, RatFn(Rat(-1, 64)));
    REQUIRE(s2.relation);
    CHECK(s2.relation->pivot == tvar(3));
    CHECK(RatFn::make(s2.relation->num, s2.relation->den) == P("4*(t1^4-t4)"));
    auto s4 = chart::solve_dependents(4, RatFn(Rat(1, 46656)));
    REQUIRE(s4.relation);
    CHECK(s4.relation->pivot == tvar(8));
    CHECK(RatFn::make(s4.relation->num, s4.relation->den) == P("36*(t1^6-t6)"));
    CHECK(P("t8^2", s4.relation) == P("36*t1^6-36*t6"));
    // with symbolic c the constant is a function of c
    auto s4c = chart::solve_dependents(4, kSymC);
    CHECK((RatFn::make(s4c.relation->num, s4c.relation->den).support() & var_bit(kC)) != 0);
}

TEST_CASE("period matrix inverse at n = 3") {
    auto s = chart::solve_dependents(3, kSymC);
    MatF inv = mat_inverse(s.S);
    CHECK(inv * s.S == MatF::identity(4));
    CHECK(s.S * inv == MatF::identity(4));
}
