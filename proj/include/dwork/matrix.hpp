#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dwork/ratfn.hpp"

namespace dwork::sym {

/// Dense matrix of rational functions. Indices are 0-based.
class MatF {
public:
    MatF() = default;
    MatF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static MatF identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFn& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const RatFn& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    MatF transpose() const;
    MatF operator-() const;
    friend MatF operator+(const MatF& a, const MatF& b);
    friend MatF operator-(const MatF& a, const MatF& b);
    friend MatF operator*(const MatF& a, const MatF& b);
    friend MatF operator*(const RatFn& s, const MatF& a);
    friend bool operator==(const MatF& a, const MatF& b);

    bool is_zero() const;
    bool is_lower_triangular() const;
    bool is_upper_triangular() const;
    /// Entrywise map.
    template <class F>
    MatF map(F&& f) const {
        MatF r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = f(a_[k]);
        return r;
    }
    MatF derive(Var v) const {
        return map([v](const RatFn& x) { return x.derive(v); });
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFn> a_;
};

/// [X, Y] = XY - YX
MatF commutator(const MatF& x, const MatF& y);

enum class SolveStatus { Unique, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Unique;
    std::vector<RatFn> x;  // free unknowns set to zero
    bool residual_zero = false;
    std::size_t rank = 0;
};

/// Solves M x = b over the fraction field by Gauss-Jordan elimination.
/// Throws Inconsistent when there is no solution.
SolveResult solve_linear(const MatF& m, const std::vector<RatFn>& b);

/// Throws Singular.
MatF mat_inverse(const MatF& m);

}  // namespace dwork::sym
