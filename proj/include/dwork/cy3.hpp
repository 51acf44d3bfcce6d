#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dwork/liealg.hpp"

namespace dwork::cy3 {

using lie::BracketReport;
using sym::MatF;
using sym::RatFn;

struct Dims {
    int size = 0;       // 2h+2
    int group_dim = 0;  // (3h^2+5h+4)/2
    int moduli_dim = 0; // h + group_dim
};

Dims cy3_dims(int h);

enum class Family { G0, Gab, Tab, Ta, T0, Ka, R };

/// A basis element by family and block indices (1-based; unused indices are 0).
struct Gen {
    Family fam;
    int a = 0, b = 0;
    std::string name() const;
    friend auto operator<=>(const Gen&, const Gen&) = default;
};

struct Cy3Basis {
    int h = 0;
    MatF phi;
    /// the constant generators with their connection matrices A_{R_g} = g^T
    std::vector<Gen> gens;
    std::map<Gen, MatF> conn;
    /// connection matrices of R_1..R_h with formal Yukawa symbols C_kij
    std::map<int, MatF> modular;

    const MatF& matrix_of(const Gen& g) const;
};

MatF cy3_phi(int h);
/// The formal symbol C_kij; symmetric in its indices. h <= 3.
RatFn yukawa_symbol(int h, int k, int i, int j);

Cy3Basis cy3_basis(int h);

/// Bracket table rows checked through A_{[X,Y]} = [A_Y, A_X] + X(A_Y) - Y(A_X).
/// Rows involving R_c are labelled "conditional".
BracketReport cy3_matrix_brackets(const Cy3Basis& basis);

/// Every bracket of two constant generators, expanded in the basis.
BracketReport cy3_closure(const Cy3Basis& basis);

/// The h triples (R_k, R_{k^k}, R_{g0} - R_{g^k_k}) at the matrix level.
BracketReport cy3_sl2(const Cy3Basis& basis);

/// Coefficients of a constant matrix in the basis; nullopt outside the span.
std::optional<std::vector<std::pair<RatFn, Gen>>> expand(const Cy3Basis& basis, const MatF& m);

/// Replaces the internal variable names of the Yukawa symbols by C_kij.
std::string render(const Cy3Basis& basis, const std::string& s);

}  // namespace dwork::cy3
