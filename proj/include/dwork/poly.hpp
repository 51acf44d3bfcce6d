#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dwork/mono.hpp"
#include "dwork/rat.hpp"

namespace dwork::sym {

struct Term {
    Mono mono;
    Rat coef;
};

/// Sparse multivariate polynomial over Q. Terms are kept in strictly
/// decreasing graded-lex order with nonzero coefficients.
class Poly {
public:
    Poly() = default;
    Poly(const Rat& c);  // NOLINT(google-explicit-constructor)
    Poly(std::int64_t c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(const Mono& m, const Rat& c);
    static Poly var(Var v, unsigned e = 1) { return Poly(Mono::var(v, e), Rat(1)); }
    /// Takes arbitrary terms, sorts and combines them.
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef.is_one(); }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& lead() const { return terms_.front(); }
    Rat constant_value() const;

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
    unsigned degree_in(Var v) const;
    VarSet support() const;
    /// gcd of all monomials.
    Mono mono_content() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly mul_term(const Mono& m, const Rat& c) const;
    Poly scale(const Rat& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b);

    /// Exact quotient if b divides *this, otherwise nullopt.
    std::optional<Poly> divide_exact(const Poly& b) const;
    /// Division by the leading term of b in the graded-lex order:
    /// *this = q*b + r with no term of r divisible by lead(b).
    std::pair<Poly, Poly> divmod(const Poly& b) const;

    Poly derive(Var v) const;

    /// Coefficients as polynomial in v: result[k] is the coefficient of v^k.
    std::vector<Poly> coeffs_in(Var v) const;
    static Poly from_coeffs(Var v, const std::vector<Poly>& coeffs);
    /// Splits terms by their exponent pattern on the variables in mask.
    std::map<Mono, Poly> split(VarSet mask) const;

    Poly substitute(Var v, const Poly& value) const;
    Poly evaluate_partial(const std::map<Var, Rat>& point) const;
    Rat evaluate(const std::map<Var, Rat>& point) const;

    /// Multiplies by a rational so that coefficients are coprime integers and
    /// the leading coefficient is positive. Returns the factor used.
    Rat make_primitive();
    /// Divides by the leading coefficient.
    Poly monic() const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

Poly gcd(const Poly& a, const Poly& b);

}  // namespace dwork::sym
