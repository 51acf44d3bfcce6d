#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace dwork::sym {

/// Variable slot. The slot order is the variable order used by the monomial
/// ordering: t1 < t2 < ... < t24 < g1 < ... < g12 < u1 < ... < u11 < c.
using Var = std::uint8_t;

inline constexpr int kSlots = 48;
inline constexpr int kMaxT = 24;
inline constexpr int kMaxG = 12;
inline constexpr int kMaxU = 11;

constexpr Var tvar(int i) { return static_cast<Var>(i - 1); }
constexpr Var gvar(int i) { return static_cast<Var>(kMaxT + i - 1); }
constexpr Var uvar(int i) { return static_cast<Var>(kMaxT + kMaxG + i - 1); }
inline constexpr Var kC = kSlots - 1;

std::string var_name(Var v);
/// Returns false if the name does not denote a variable.
bool parse_var(const std::string& name, Var& out);

/// Bitmask over the 48 slots.
using VarSet = std::uint64_t;
constexpr VarSet var_bit(Var v) { return VarSet{1} << v; }

/// Exponent vector. Stored reversed (c first) so that bytewise comparison is
/// lexicographic with c as the largest variable.
class Mono {
public:
    Mono() = default;
    static Mono var(Var v, unsigned e = 1);

    unsigned exp(Var v) const { return e_[kSlots - 1 - v]; }
    void set_exp(Var v, unsigned e);
    unsigned degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }
    VarSet support() const;

    Mono operator*(const Mono& o) const;
    bool divides(const Mono& o) const;
    /// Requires divides(*this... ) i.e. o divides *this.
    Mono operator/(const Mono& o) const;
    static Mono gcd(const Mono& a, const Mono& b);
    static Mono lcm(const Mono& a, const Mono& b);

    /// Keeps only the variables in mask.
    Mono project(VarSet mask) const;

    /// Graded lexicographic comparison: negative, zero, positive.
    int compare(const Mono& o) const {
        if (deg_ != o.deg_) return deg_ < o.deg_ ? -1 : 1;
        return std::memcmp(e_.data(), o.e_.data(), kSlots);
    }
    bool operator==(const Mono& o) const { return deg_ == o.deg_ && e_ == o.e_; }
    bool operator<(const Mono& o) const { return compare(o) < 0; }

    std::size_t hash() const;
    std::string to_string() const;

private:
    std::array<std::uint8_t, kSlots> e_{};
    std::uint16_t deg_ = 0;
};

}  // namespace dwork::sym
