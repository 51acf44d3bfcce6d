#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dwork/connection.hpp"

namespace dwork::group {

using chart::ChartSpec;
using conn::VecField;
using sym::MatF;
using sym::Rat;
using sym::RatFn;
using sym::Var;

/// (a, b), 1-based.
using GenIndex = std::pair<int, int>;

struct LieGen {
    GenIndex ab;
    MatF g;
};

/// All (a, b) with 1 <= a <= m, a <= b <= 2m+1-a, ordered by a then b.
std::vector<GenIndex> gen_indices(int n);

/// Throws IndexOutOfRange.
LieGen lie_gen(int n, int a, int b);

/// g^T Phi + Phi g = 0
bool in_lie_algebra(int n, const MatF& g);

/// One-parameter subgroup G_i, 1 <= i <= d-1: multiplicative for i <= m,
/// additive afterwards, the additive ones ordered by (a, b).
struct Subgroup {
    int index = 0;
    bool multiplicative = false;
    GenIndex ab;  // the generator direction; (i, i) for multiplicative ones
};

std::vector<Subgroup> subgroups(int n);

/// The element of G_i with parameter p.
MatF subgroup_matrix(int n, int i, const RatFn& p);

struct GroupElem {
    int n = 0;
    std::vector<RatFn> params;  // g_1 .. g_{d-1}
    MatF mat;                   // G_1 G_2 ... G_{d-1}
};

/// Throws ZeroScalar, IndexOutOfRange.
GroupElem group_elem(int n, std::vector<RatFn> params);
/// Parameters g1 .. g_{d-1} as symbols.
GroupElem symbolic_elem(int n);
GroupElem identity_elem(int n);

/// g^T Phi g = Phi and g upper triangular
bool in_group(int n, const MatF& g);

/// Recovers the parameters from the matrix. Throws Singular when g is not in G.
std::vector<RatFn> decompose(int n, const MatF& g);

/// Parameters of the product a*b.
GroupElem compose(const GroupElem& a, const GroupElem& b);

/// Chart point: the value of every ambient variable t1..t_D.
using Point = std::map<Var, RatFn>;

/// The symbolic point t_i -> t_i.
Point generic_point(const ChartSpec& spec);

/// t . g, read off S' = g^T S diag(g1, ..., g1^{n+1}). Throws ActionShapeViolation.
Point act(const ChartSpec& spec, const Point& t, const GroupElem& g);

/// d/dp (t . G_i(p)) at the identity parameter.
VecField infinitesimal(const ChartSpec& spec, int i);

}  // namespace dwork::group
