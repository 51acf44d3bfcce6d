#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dwork::sym {

/// Exact rational number. Values that fit in 64-bit numerator/denominator are
/// kept inline; larger values spill to a GMP rational.
///
/// Invariant: denominator > 0 and gcd(|num|, den) == 1 in both representations.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(std::int64_t num, std::int64_t den);
    explicit Rat(const mpq_class& q);

    Rat(const Rat& o);
    Rat(Rat&&) noexcept = default;
    Rat& operator=(const Rat& o);
    Rat& operator=(Rat&&) noexcept = default;
    ~Rat() = default;

    /// Parses "p" or "p/q" with optional leading sign.
    static Rat parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    std::string to_string() const;
    double to_double() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b);
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

    Rat inverse() const;
    Rat abs() const { return sign() < 0 ? -*this : *this; }
    Rat pow(unsigned e) const;

    std::size_t hash() const;

private:
    void set_from_mpq(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

/// gcd of two integers given as rationals with denominator 1.
Rat gcd_integer(const Rat& a, const Rat& b);

}  // namespace dwork::sym
