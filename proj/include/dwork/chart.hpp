#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dwork/dworkgeo.hpp"

namespace dwork::chart {

using geo::DworkParams;
using sym::MatF;
using sym::Poly;
using sym::Rat;
using sym::RatFn;
using sym::RelationPtr;
using sym::Var;

/// 0-based matrix position inside S.
using Pos = std::pair<std::size_t, std::size_t>;

struct ChartSpec {
    DworkParams params;
    RatFn c;
    /// chart variable (other than t1 and t_{n+2}) -> its slot in S
    std::map<Var, Pos> slot_map;
    /// the extra ambient variable of even n sitting on the middle diagonal
    std::optional<Var> extra_var;
    /// dependent slots, in elimination order, with their expressions
    std::vector<Pos> dependent_slots;
    std::map<Pos, RatFn> dependent_exprs;
    RelationPtr relation;
    /// the full matrix S with dependents substituted
    MatF S;
    bool solved = false;
    bool rule_extrapolated = false;

    /// t1..t_D
    std::vector<Var> ambient_vars() const;
    bool is_independent(Pos p) const;
    /// Independent chart variable at p, if any.
    std::optional<Var> var_at(Pos p) const;
    /// t_{n+2} * (t_{n+2} - t1^{n+2}) * product of the diagonal independents s_22..s_mm
    Poly inverted_locus() const;
    /// The prime factors of the inverted locus.
    std::vector<Poly> locus_factors() const;
    /// Denominator of f divides a power of the inverted locus.
    bool is_regular(const RatFn& f) const;
};

/// Layout only: independent slots and numbering.
ChartSpec chart_spec(int n);

/// Layout plus dependent expressions and the even-n relation.
/// Throws EliminationStuck, OmegaInconsistent.
ChartSpec solve_dependents(int n, const RatFn& c);

/// Closed form of the lower-right diagonal entry s_{n+2-i,n+2-i} in terms of
/// s_ii, for 1 <= i <= (n+2)/2.
RatFn diagonal_closed_form(const ChartSpec& spec, std::size_t i);

}  // namespace dwork::chart
