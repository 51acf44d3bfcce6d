#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dwork/group.hpp"

namespace dwork::modular {

using chart::ChartSpec;
using conn::VecField;
using geo::OneFormMat;
using group::GenIndex;
using sym::MatF;
using sym::Poly;
using sym::Rat;
using sym::RatFn;
using sym::Var;

/// Chart, connection and intersection data for one n and one choice of c.
struct Model {
    ChartSpec spec;
    OneFormMat A;
    MatF phi;
    std::string c_mode;  // "symbolic", "matched" or "explicit"

    int n() const { return spec.params.n; }
    RatFn reduce(const RatFn& f) const { return f.with_relation(spec.relation); }
};

/// The value of c for which the outputs match the published displays, when known.
std::optional<Rat> matched_c(int n);

/// c = nullopt means the symbol c.
Model build_model(int n, const std::optional<Rat>& c, const std::string& c_mode);
/// matched_c(n) when available, else symbolic.
Model build_default_model(int n);

struct YukawaSet {
    int n = 0;
    /// Y_0 .. Y_{n-1}; Y_0 = 1 and, for n >= 2, Y_{n-1} = -1
    std::vector<RatFn> vals;

    const RatFn& at(int i) const;
    /// superdiagonal Y_0, ..., Y_{n-1}
    MatF matrix() const;
};

YukawaSet yukawa(const Model& model);

struct ModularField {
    VecField R;
    YukawaSet Y;
};

/// Throws NoSuchField.
ModularField modular_vf(const Model& model);

using Basis = std::map<GenIndex, VecField>;

/// R_g for every canonical generator g. Throws NoSuchField.
Basis basis_vf(const Model& model);

struct Sl2Triple {
    VecField E, F, H;
};

/// Throws Sl2Violation.
Sl2Triple sl2_triple(const Model& model, const VecField& r, const Basis& basis);

using Weights = std::map<Var, int>;

/// Reads w off H = sum w_v t_v d/dt_v. Returns nullopt when H is not of that shape.
std::optional<Weights> weights_of(const Model& model, const VecField& h);

/// Weighted degree of a polynomial if it is quasi-homogeneous. The zero
/// polynomial has no degree.
std::optional<int> weighted_degree(const Poly& p, const Weights& w);
/// deg num - deg den, when both are quasi-homogeneous.
std::optional<int> weighted_degree(const RatFn& f, const Weights& w);

struct DegreeRow {
    Var var;
    std::optional<int> degree;  // nullopt: not quasi-homogeneous
    int expected = 0;
    bool ok = false;
};

struct DegreeReport {
    Weights w;
    std::vector<DegreeRow> r_rows;  // components of R against w + 2
    std::vector<DegreeRow> f_rows;  // components of F against w - 2
    bool all_ok() const;
};

DegreeReport degree_report(const Model& model, const VecField& r, const Sl2Triple& triple);

/// Keeps the quotient of numerator by denominator in every component.
VecField truncate_poly(const VecField& v);

}  // namespace dwork::modular
