#include "dwork/rat.hpp"

#include <numeric>
#include <stdexcept>

namespace dwork::sym {

namespace {

using i128 = __int128;

constexpr i128 kMax = static_cast<i128>(INT64_MAX);
constexpr i128 kMin = -static_cast<i128>(INT64_MAX);  // symmetric range keeps negation safe

bool fits(i128 v) { return v <= kMax && v >= kMin; }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    i128 n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        set_from_mpq(std::move(q));
    }
}

Rat::Rat(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    set_from_mpq(std::move(c));
}

Rat::Rat(const Rat& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rat& Rat::operator=(const Rat& o) {
    if (this == &o) return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_) {
        if (big_)
            *big_ = *o.big_;
        else
            big_ = std::make_unique<mpq_class>(*o.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Rat::set_from_mpq(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != INT64_MIN) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    return Rat(q);
}

bool Rat::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rat::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rat::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rat::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
mpz_class Rat::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

std::string Rat::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rat::to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

Rat Rat::operator-() const {
    Rat r;
    if (big_) {
        r.set_from_mpq(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    if (!big_ && !o.big_) {
        if (o.num_ == 0) return *this;
        if (num_ == 0) return *this = o;
        if (den_ == 1 && o.den_ == 1) {
            i128 n = static_cast<i128>(num_) + o.num_;
            if (fits(n)) {
                num_ = static_cast<std::int64_t>(n);
                return *this;
            }
        }
        i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
        i128 d = static_cast<i128>(den_) * o.den_;
        // |n|, d < 2^127 since each factor < 2^63
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        set_from_mpq(std::move(q));
        return *this;
    }
    set_from_mpq(to_mpq() + o.to_mpq());
    return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0) return *this;
        if (o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        i128 a = num_, b = den_, c = o.num_, d = o.den_;
        i128 g1 = gcd128(a, d), g2 = gcd128(c, b);
        a /= g1;
        d /= g1;
        c /= g2;
        b /= g2;
        i128 n = a * c, dd = b * d;
        if (fits(n) && fits(dd)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(dd);
            return *this;
        }
        mpq_class q(to_mpz(n), to_mpz(dd));
        set_from_mpq(std::move(q));
        return *this;
    }
    set_from_mpq(to_mpq() * o.to_mpq());
    return *this;
}

Rat& Rat::operator/=(const Rat& o) { return *this *= o.inverse(); }

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: division by zero");
    if (big_) return Rat(1 / *big_);
    Rat r;
    if (num_ < 0) {
        r.num_ = -den_;
        r.den_ = -num_;
    } else {
        r.num_ = den_;
        r.den_ = num_;
    }
    return r;
}

Rat Rat::pow(unsigned e) const {
    Rat result(1), base(*this);
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return result;
}

bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a big value never fits inline
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rat::hash() const {
    if (!big_) return std::hash<std::int64_t>{}(num_) * 31U + std::hash<std::int64_t>{}(den_);
    return std::hash<std::string>{}(big_->get_str());
}

Rat gcd_integer(const Rat& a, const Rat& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    return Rat(mpq_class(g));
}

}  // namespace dwork::sym
