#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dwork/matrix.hpp"

namespace dwork::geo {

using sym::MatF;
using sym::Rat;
using sym::RatFn;
using sym::Var;

struct DworkParams {
    int n = 0;
    int d = 0;    // moduli dimension
    int m = 0;    // half index
    int D = 0;    // number of ambient chart variables
    int rho = 0;  // n mod 2
    bool odd() const { return rho == 1; }
    Var t1() const { return sym::tvar(1); }
    /// The base parameter t_{n+2}.
    Var tbase() const { return sym::tvar(n + 2); }
};

DworkParams moduli_dim(int n);

MatF phi_matrix(int n);

std::int64_t stirling2(int r, int s);

/// Matrix of 1-forms: one coefficient matrix per differential. Variables not
/// present have zero coefficient.
struct OneFormMat {
    std::size_t dim = 0;
    std::map<Var, MatF> comp;

    const MatF& at(Var v) const;
    bool has(Var v) const { return comp.count(v) != 0; }
};

/// t1^{n+2} - t_{n+2}
RatFn discriminant(int n);

OneFormMat base_connection(int n);

/// c_n as a rational function: the symbol c, or a fixed rational.
RatFn c_value(const std::optional<Rat>& c);

/// Throws OmegaInconsistent.
MatF intersection_matrix(int n, const RatFn& c);

/// dM - (B M + M B^T) per differential; zero for the intersection matrix.
bool omega_identity_holds(const OneFormMat& b, const MatF& omega);

}  // namespace dwork::geo
