#pragma once

#include <map>
#include <memory>
#include <string>

#include "dwork/poly.hpp"

namespace dwork::sym {

/// Quadratic relation pivot^2 = num / den with num, den free of the pivot.
/// Keeping den separate lets the relation carry a symbolic constant.
struct Relation {
    Var pivot;
    Poly num;
    Poly den;

    /// pivot^2 * den - num, the polynomial generating the relation ideal.
    Poly generator() const;
    bool operator==(const Relation& o) const { return pivot == o.pivot && num == o.num && den == o.den; }
};

using RelationPtr = std::shared_ptr<const Relation>;

/// Canonical rational function num/den, optionally in Q(vars)[pivot]/(relation).
///
/// Canonical form: gcd(num, den) = 1, den has leading coefficient 1 in the
/// graded-lex order, and when a relation is active num has degree at most 1 in
/// the pivot while den is free of it.
class RatFn {
public:
    RatFn() : den_(1) {}
    RatFn(std::int64_t c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFn(const Rat& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit RatFn(Poly p, RelationPtr rel = nullptr);
    static RatFn var(Var v, RelationPtr rel = nullptr) { return RatFn(Poly::var(v), std::move(rel)); }

    /// normalize(num, den, ctx); throws ZeroDenominator.
    static RatFn make(Poly num, Poly den, RelationPtr rel = nullptr);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const RelationPtr& relation() const { return rel_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    Rat constant_value() const { return num_.constant_value(); }
    VarSet support() const { return num_.support() | den_.support(); }

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
    RatFn inverse() const;
    RatFn pow(int e) const;

    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Formal partial derivative, every chart variable independent.
    RatFn derive(Var v) const;
    RatFn substitute(Var v, const RatFn& value) const;
    /// Rational value at a point; throws ZeroDenominator on a pole. The
    /// relation is ignored: the caller supplies a point on it or a pivot-free
    /// function.
    Rat evaluate(const std::map<Var, Rat>& point) const;

    RatFn with_relation(RelationPtr rel) const { return make(num_, den_, std::move(rel)); }

    std::string to_string() const;

private:
    RatFn with_rel_(const RelationPtr& rel) const;

    Poly num_;
    Poly den_;
    RelationPtr rel_;
};

/// Parses an expression in + - * / ^ and parentheses over integers, rationals
/// and variable names into canonical form.
RatFn parse_ratfn(const std::string& text, RelationPtr rel = nullptr);

}  // namespace dwork::sym
