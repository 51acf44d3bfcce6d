#pragma once

#include <map>
#include <string>

#include "dwork/chart.hpp"

namespace dwork::conn {

using chart::ChartSpec;
using geo::OneFormMat;
using sym::MatF;
using sym::RatFn;
using sym::Var;

/// Derivation sum_v comp[v] d/dv. Zero components are not stored.
struct VecField {
    std::map<Var, RatFn> comp;

    const RatFn& operator[](Var v) const;
    void set(Var v, RatFn f);
    /// V(f)
    RatFn apply(const RatFn& f) const;
    bool is_zero() const { return comp.empty(); }

    VecField operator-() const;
    friend VecField operator+(const VecField& a, const VecField& b);
    friend VecField operator-(const VecField& a, const VecField& b);
    friend VecField operator*(const RatFn& f, const VecField& v);
    friend bool operator==(const VecField& a, const VecField& b) { return a.comp == b.comp; }

    std::string to_string() const;
};

/// [V, W]_v = V(W_v) - W(V_v), reduced modulo the relation.
VecField bracket(const VecField& v, const VecField& w, const sym::RelationPtr& rel);

/// A = (dS + S B) S^{-1}, one matrix per ambient chart variable.
OneFormMat full_connection(const ChartSpec& spec);

/// sum_v H(v) A[v]
MatF contract(const OneFormMat& a, const VecField& h);

/// The unique field H with contract(A, H) = target. Throws NoSuchField.
VecField solve_vf(const ChartSpec& spec, const OneFormMat& a, const MatF& target);

/// H(t_D^2 den - num) reduces to zero (always true for odd n).
bool tangent_to_relation(const ChartSpec& spec, const VecField& h);

}  // namespace dwork::conn
