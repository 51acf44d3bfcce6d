#include "dwork/ratfn.hpp"

#include <cctype>

#include "dwork/errors.hpp"

namespace dwork::sym {

Poly Relation::generator() const { return Poly::var(pivot, 2) * den - num; }

namespace {

RelationPtr pick(const RatFn& a, const RatFn& b) {
    const auto& ra = a.relation();
    const auto& rb = b.relation();
    if (ra && rb && ra != rb && !(*ra == *rb)) throw RelationMismatch("operands carry different relations");
    return ra ? ra : rb;
}

bool has_pivot(const Poly& p, const RelationPtr& rel) { return rel && (p.support() & var_bit(rel->pivot)); }

// p * den^k = p0 + p1 * pivot, with k returned.
struct Reduced {
    Poly p0, p1;
    unsigned k = 0;
};

Reduced reduce_pivot(const Poly& p, const Relation& rel) {
    auto cs = p.coeffs_in(rel.pivot);
    Reduced r;
    r.k = static_cast<unsigned>((cs.size() - 1) / 2);
    std::vector<Poly> num_pows{Poly(1)}, den_pows{Poly(1)};
    for (unsigned i = 1; i <= r.k; ++i) {
        num_pows.push_back(num_pows.back() * rel.num);
        den_pows.push_back(den_pows.back() * rel.den);
    }
    for (std::size_t e = 0; e < cs.size(); ++e) {
        if (cs[e].is_zero()) continue;
        unsigned h = static_cast<unsigned>(e / 2);
        Poly term = cs[e] * num_pows[h] * den_pows[r.k - h];
        if (e % 2 == 0)
            r.p0 += term;
        else
            r.p1 += term;
    }
    return r;
}

void finish(Poly& num, Poly& den) {
    if (num.is_zero()) {
        den = Poly(1);
        return;
    }
    if (!den.is_constant()) {
        Poly g = gcd(num, den);
        if (!g.is_constant()) {
            num = num.divide_exact(g).value();
            den = den.divide_exact(g).value();
        }
    }
    const Rat& lc = den.lead().coef;
    if (!lc.is_one()) {
        Rat inv = lc.inverse();
        num = num.scale(inv);
        den = den.scale(inv);
    }
}

}  // namespace

RatFn::RatFn(Poly p, RelationPtr rel) : den_(1), rel_(std::move(rel)) {
    if (has_pivot(p, rel_) && p.degree_in(rel_->pivot) > 1) {
        *this = make(std::move(p), Poly(1), rel_);
    } else {
        num_ = std::move(p);
    }
}

RatFn RatFn::make(Poly num, Poly den, RelationPtr rel) {
    if (den.is_zero()) throw ZeroDenominator("denominator is zero");
    if (rel && (has_pivot(num, rel) || has_pivot(den, rel))) {
        Reduced n = reduce_pivot(num, *rel), d = reduce_pivot(den, *rel);
        if (n.k < d.k) {
            Poly f = rel->den.pow(d.k - n.k);
            n.p0 = n.p0 * f;
            n.p1 = n.p1 * f;
        } else if (d.k < n.k) {
            Poly f = rel->den.pow(n.k - d.k);
            d.p0 = d.p0 * f;
            d.p1 = d.p1 * f;
        }
        if (d.p1.is_zero()) {
            num = n.p0 + n.p1 * Poly::var(rel->pivot);
            den = d.p0;
        } else {
            // multiply by the conjugate so that the denominator is pivot-free
            Poly a = n.p0 * d.p0 * rel->den - n.p1 * d.p1 * rel->num;
            Poly b = (n.p1 * d.p0 - n.p0 * d.p1) * rel->den;
            num = a + b * Poly::var(rel->pivot);
            den = d.p0 * d.p0 * rel->den - d.p1 * d.p1 * rel->num;
        }
        if (den.is_zero()) throw ZeroDenominator("denominator vanishes modulo the relation");
    }
    RatFn r;
    finish(num, den);
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.rel_ = std::move(rel);
    return r;
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    RelationPtr rel = pick(a, b);
    if (a.is_zero()) {
        RatFn r = b;
        r.rel_ = rel;
        return r;
    }
    if (b.is_zero()) {
        RatFn r = a;
        r.rel_ = rel;
        return r;
    }
    RatFn r;
    r.rel_ = rel;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        if (!r.den_.is_one()) finish(r.num_, r.den_);
        return r;
    }
    Poly g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
        if (r.num_.is_zero()) r.den_ = Poly(1);
        return r;
    }
    Poly ad = a.den_.divide_exact(g).value();
    Poly bd = b.den_.divide_exact(g).value();
    Poly num = a.num_ * bd + b.num_ * ad;
    if (num.is_zero()) return RatFn(Poly(), rel);
    Poly g2 = gcd(num, g);
    if (!g2.is_constant()) {
        num = num.divide_exact(g2).value();
        g = g.divide_exact(g2).value();
    }
    Poly den = ad * bd * g;
    const Rat& lc = den.lead().coef;
    if (!lc.is_one()) {
        Rat inv = lc.inverse();
        num = num.scale(inv);
        den = den.scale(inv);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
    RelationPtr rel = pick(a, b);
    if (a.is_zero() || b.is_zero()) return RatFn(Poly(), rel);
    if (a.is_one()) return b.with_rel_(rel);
    if (b.is_one()) return a.with_rel_(rel);
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant()) {
        Poly g = gcd(an, bd);
        if (!g.is_constant()) {
            an = an.divide_exact(g).value();
            bd = bd.divide_exact(g).value();
        }
    }
    if (!ad.is_constant()) {
        Poly g = gcd(bn, ad);
        if (!g.is_constant()) {
            bn = bn.divide_exact(g).value();
            ad = ad.divide_exact(g).value();
        }
    }
    Poly num = an * bn, den = ad * bd;
    if (has_pivot(num, rel) && num.degree_in(rel->pivot) > 1) return RatFn::make(std::move(num), std::move(den), rel);
    RatFn r;
    r.rel_ = rel;
    const Rat& lc = den.lead().coef;
    if (!lc.is_one()) {
        Rat inv = lc.inverse();
        num = num.scale(inv);
        den = den.scale(inv);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    RelationPtr rel = pick(a, b);
    if (b.is_zero()) throw ZeroDenominator("division by zero");
    RatFn inv = b.inverse();
    inv.rel_ = rel;
    return a * inv;
}

RatFn RatFn::with_rel_(const RelationPtr& rel) const {
    RatFn r = *this;
    r.rel_ = rel;
    return r;
}

RatFn RatFn::inverse() const {
    if (is_zero()) throw ZeroDenominator("inverse of zero");
    if (has_pivot(num_, rel_)) return make(den_, num_, rel_);
    RatFn r;
    r.rel_ = rel_;
    r.num_ = den_;
    r.den_ = num_;
    const Rat& lc = r.den_.lead().coef;
    if (!lc.is_one()) {
        Rat inv = lc.inverse();
        r.num_ = r.num_.scale(inv);
        r.den_ = r.den_.scale(inv);
    }
    return r;
}

RatFn RatFn::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFn result(1), base(*this);
    result.rel_ = rel_;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1U) result = result * base;
        u >>= 1U;
        if (u) base = base * base;
    }
    return result;
}

RatFn RatFn::derive(Var v) const {
    Poly dn = num_.derive(v);
    if (den_.is_one()) return RatFn(std::move(dn), rel_);
    Poly dd = den_.derive(v);
    if (dd.is_zero()) {
        RatFn r;
        r.rel_ = rel_;
        r.num_ = std::move(dn);
        r.den_ = den_;
        finish(r.num_, r.den_);
        return r;
    }
    // (n/d)' = (n' d - n d') / d^2; a common factor g of d and d' cancels once
    Poly g = gcd(den_, dd);
    Poly dg = den_.divide_exact(g).value();
    Poly ddg = dd.divide_exact(g).value();
    Poly num = dn * dg - num_ * ddg;
    Poly den = den_ * dg;
    return make(std::move(num), std::move(den), rel_);
}

RatFn RatFn::substitute(Var v, const RatFn& value) const {
    RelationPtr rel = pick(*this, value);
    auto horner = [&](const Poly& p) {
        auto cs = p.coeffs_in(v);
        RatFn r(Poly(), rel);
        for (std::size_t k = cs.size(); k-- > 0;) r = r * value + RatFn(cs[k], rel);
        return r;
    };
    if (!(support() & var_bit(v))) return with_rel_(rel);
    return horner(num_) / horner(den_);
}

Rat RatFn::evaluate(const std::map<Var, Rat>& point) const {
    Rat d = den_.evaluate(point);
    if (d.is_zero()) throw ZeroDenominator("pole at evaluation point");
    return num_.evaluate(point) / d;
}

std::string RatFn::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(const std::string& s, RelationPtr rel) : s_(s), rel_(std::move(rel)) {}

    RatFn parse() {
        RatFn r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFn expr() {
        RatFn r = term();
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
    RatFn term() {
        RatFn r = unary();
        while (true) {
            if (eat('*'))
                r = r * unary();
            else if (eat('/'))
                r = r / unary();
            else
                return r;
        }
    }
    RatFn unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RatFn power() {
        RatFn base = primary();
        if (!eat('^')) return base;
        bool paren = eat('(');
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        int e = std::stoi(s_.substr(start, pos_ - start));
        if (paren && !eat(')')) fail("expected ')'");
        return base.pow(neg ? -e : e);
    }
    RatFn primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            RatFn r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFn(Poly(Rat::parse(s_.substr(start, pos_ - start))), rel_);
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            Var v;
            if (!parse_var(name, v)) throw UnknownVariable(name);
            return RatFn::var(v, rel_);
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    const std::string& s_;
    RelationPtr rel_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFn parse_ratfn(const std::string& text, RelationPtr rel) { return Parser(text, std::move(rel)).parse(); }

}  // namespace dwork::sym
