#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dwork/modular.hpp"

namespace dwork::lie {

using chart::Pos;
using conn::bracket;
using conn::VecField;
using group::GenIndex;
using modular::Basis;
using modular::Model;
using modular::ModularField;
using modular::Sl2Triple;
using sym::MatF;
using sym::RatFn;

struct ReportRow {
    std::string name;
    std::string lhs, rhs;
    bool equal = false;
};

struct BracketReport {
    std::vector<ReportRow> rows;
    bool all_equal() const;
    void add(std::string name, const VecField& lhs, const VecField& rhs);
    void add(std::string name, const MatF& lhs, const MatF& rhs);
};

/// The bracket table of R against the canonical basis.
BracketReport verify_theorem2(const Model& model, const ModularField& mf, const Basis& basis);

/// A_{[V,W]} = [A_W, A_V] + V(A_W) - W(A_V)
bool verify_flatness(const Model& model, const VecField& v, const VecField& w);

struct Decomposition {
    bool member = false;
    RatFn f0;
    std::map<GenIndex, RatFn> coeffs;
    /// first nonzero residual entry (0-based), or the first coefficient that is not regular
    std::optional<Pos> obstruction;
    RatFn obstruction_value;
    std::string reason;
};

/// Writes contract(A, V) as f0 Y + sum f_ab g_ab^T with regular coefficients.
Decomposition amsy_decompose(const Model& model, const ModularField& mf, const VecField& v);

/// f0 R + sum f_ab R_{g_ab}
VecField assemble(const Model& model, const ModularField& mf, const Basis& basis, const RatFn& f0,
                  const std::map<GenIndex, RatFn>& coeffs);

/// [fR, F] = f H and [H, fR] = (n+4) fR for f = t1^{n+2} - t_{n+2}, plus
/// [H, fR] = (k+2) fR for sampled quasi-homogeneous f of degree k.
BracketReport fR_identities(const Model& model, const ModularField& mf, const Sl2Triple& triple);

/// [R_{g1}, R_{g2}] = R_{[g1, g2]} over all basis pairs.
BracketReport verify_structure(const Model& model, const Basis& basis);

/// Jacobi identity over every triple of {R} and the basis.
BracketReport verify_jacobi(const Model& model, const ModularField& mf, const Basis& basis);

}  // namespace dwork::lie
