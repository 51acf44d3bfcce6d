#include "dwork/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "dwork/errors.hpp"

namespace dwork::sym {

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono.compare(b.mono) > 0; }

// Sorts descending and folds equal monomials, dropping zeros.
void canonicalize(std::vector<Term>& ts) {
    std::sort(ts.begin(), ts.end(), term_greater);
    std::size_t out = 0;
    for (std::size_t i = 0; i < ts.size();) {
        std::size_t j = i + 1;
        Rat c = std::move(ts[i].coef);
        while (j < ts.size() && ts[j].mono == ts[i].mono) {
            c += ts[j].coef;
            ++j;
        }
        if (!c.is_zero()) {
            ts[out].mono = ts[i].mono;
            ts[out].coef = std::move(c);
            ++out;
        }
        i = j;
    }
    ts.resize(out);
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = a[i].mono.compare(b[j].mono);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(negate_b ? Term{b[j].mono, -b[j].coef} : b[j]);
            ++j;
        } else {
            Rat s = negate_b ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
            if (!s.is_zero()) r.push_back(Term{a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(negate_b ? Term{b[j].mono, -b[j].coef} : b[j]);
    return r;
}

}  // namespace

Poly::Poly(const Rat& c) {
    if (!c.is_zero()) terms_.push_back(Term{Mono(), c});
}

Poly::Poly(const Mono& m, const Rat& c) {
    if (!c.is_zero()) terms_.push_back(Term{m, c});
}

Poly Poly::from_terms(std::vector<Term> terms) {
    canonicalize(terms);
    Poly p;
    p.terms_ = std::move(terms);
    return p;
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("Poly: not a constant");
    return terms_[0].coef;
}

unsigned Poly::degree_in(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exp(v));
    return d;
}

VarSet Poly::support() const {
    VarSet s = 0;
    for (const auto& t : terms_) s |= t.mono.support();
    return s;
}

Mono Poly::mono_content() const {
    if (terms_.empty()) return Mono();
    Mono g = terms_[0].mono;
    for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = Mono::gcd(g, terms_[i].mono);
    return g;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) ts.push_back(Term{x.mono * y.mono, x.coef * y.coef});
    canonicalize(ts);
    Poly r;
    r.terms_ = std::move(ts);
    return r;
}

Poly Poly::mul_term(const Mono& m, const Rat& c) const {
    if (c.is_zero()) return Poly();
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coef * c});
    return r;
}

Poly Poly::scale(const Rat& c) const { return mul_term(Mono(), c); }

Poly Poly::pow(unsigned e) const {
    Poly result(1), base(*this);
    while (e) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& b) const {
    if (b.is_zero()) throw ZeroDenominator("polynomial division by zero");
    if (is_zero()) return Poly();
    if (b.terms_.size() == 1) {
        const auto& bt = b.terms_[0];
        Poly q;
        q.terms_.reserve(terms_.size());
        Rat inv = bt.coef.inverse();
        for (const auto& t : terms_) {
            if (!bt.mono.divides(t.mono)) return std::nullopt;
            q.terms_.push_back(Term{t.mono / bt.mono, t.coef * inv});
        }
        return q;
    }
    const Mono& bl = b.lead().mono;
    if (!bl.divides(lead().mono)) return std::nullopt;
    // Trailing terms must divide as well: the smallest term of a is the product
    // of the smallest terms of q and b.
    if (!b.terms_.back().mono.divides(terms_.back().mono)) return std::nullopt;
    Rat inv = b.lead().coef.inverse();
    std::vector<Term> q;
    Poly r = *this;
    while (!r.is_zero()) {
        const Term& lt = r.terms_[0];
        if (!bl.divides(lt.mono)) return std::nullopt;
        Term qt{lt.mono / bl, lt.coef * inv};
        r -= b.mul_term(qt.mono, qt.coef);
        q.push_back(std::move(qt));
    }
    Poly out;
    out.terms_ = std::move(q);
    return out;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
    if (b.is_zero()) throw ZeroDenominator("polynomial division by zero");
    const Mono& bl = b.lead().mono;
    Rat inv = b.lead().coef.inverse();
    std::vector<Term> q, rem;
    Poly r = *this;
    while (!r.is_zero()) {
        const Term& lt = r.terms_[0];
        if (bl.divides(lt.mono)) {
            Term qt{lt.mono / bl, lt.coef * inv};
            r -= b.mul_term(qt.mono, qt.coef);
            q.push_back(std::move(qt));
        } else {
            rem.push_back(lt);
            r.terms_.erase(r.terms_.begin());
        }
    }
    Poly qp, rp;
    qp.terms_ = std::move(q);
    rp.terms_ = std::move(rem);
    return {qp, rp};
}

Poly Poly::derive(Var v) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        unsigned e = t.mono.exp(v);
        if (!e) continue;
        Mono m = t.mono;
        m.set_exp(v, e - 1);
        ts.push_back(Term{m, t.coef * Rat(static_cast<std::int64_t>(e))});
    }
    return from_terms(std::move(ts));
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
    std::vector<std::vector<Term>> parts(degree_in(v) + 1);
    for (const auto& t : terms_) {
        unsigned e = t.mono.exp(v);
        Mono m = t.mono;
        m.set_exp(v, 0);
        parts[e].push_back(Term{m, t.coef});
    }
    std::vector<Poly> out;
    out.reserve(parts.size());
    for (auto& p : parts) {
        // removing one variable from a graded order can reorder terms
        out.push_back(from_terms(std::move(p)));
    }
    if (out.empty()) out.emplace_back();
    return out;
}

Poly Poly::from_coeffs(Var v, const std::vector<Poly>& coeffs) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Mono xk = Mono::var(v, static_cast<unsigned>(k));
        for (const auto& t : coeffs[k].terms_) ts.push_back(Term{t.mono * xk, t.coef});
    }
    return from_terms(std::move(ts));
}

std::map<Mono, Poly> Poly::split(VarSet mask) const {
    std::map<Mono, std::vector<Term>> parts;
    for (const auto& t : terms_) {
        Mono key = t.mono.project(mask);
        parts[key].push_back(Term{t.mono / key, t.coef});
    }
    std::map<Mono, Poly> out;
    for (auto& [k, ts] : parts) out.emplace(k, from_terms(std::move(ts)));
    return out;
}

Poly Poly::substitute(Var v, const Poly& value) const {
    auto cs = coeffs_in(v);
    Poly r;
    for (std::size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
    return r;
}

Poly Poly::evaluate_partial(const std::map<Var, Rat>& point) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Mono m = t.mono;
        Rat c = t.coef;
        for (const auto& [v, val] : point) {
            unsigned e = m.exp(v);
            if (!e) continue;
            c *= val.pow(e);
            m.set_exp(v, 0);
        }
        ts.push_back(Term{m, std::move(c)});
    }
    return from_terms(std::move(ts));
}

Rat Poly::evaluate(const std::map<Var, Rat>& point) const {
    Poly p = evaluate_partial(point);
    if (!p.is_constant()) throw UnknownVariable("evaluation point misses variables of " + p.to_string());
    return p.constant_value();
}

Rat Poly::make_primitive() {
    if (terms_.empty()) return Rat(1);
    mpz_class l = 1, g = 0;
    for (const auto& t : terms_) {
        mpz_class d = t.coef.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (const auto& t : terms_) {
        mpz_class nn = t.coef.numerator();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nn.get_mpz_t());
    }
    Rat f{mpq_class(l, g)};
    if (terms_[0].coef.sign() < 0) f = -f;
    if (!f.is_one())
        for (auto& t : terms_) t.coef *= f;
    return f;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return scale(terms_[0].coef.inverse());
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        Rat c = t.coef;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += '-';
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        std::string ms = t.mono.to_string();
        if (ms.empty()) {
            s += c.to_string();
        } else {
            if (!c.is_one()) s += c.to_string() + "*";
            s += ms;
        }
    }
    return s;
}

// ---------------------------------------------------------------- gcd

namespace {

Poly gcd_rec(Poly a, Poly b);

Poly primitive(Poly p) {
    p.make_primitive();
    return p;
}

Poly exact(const Poly& a, const Poly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("gcd: expected exact division");
    return *q;
}

// gcd of b with every polynomial in cs, smallest first so that a trivial
// result is found early.
Poly gcd_with_all(Poly g, std::vector<Poly> cs) {
    std::sort(cs.begin(), cs.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
    for (auto& c : cs) {
        if (g.is_constant()) return Poly(1);
        g = gcd_rec(std::move(g), std::move(c));
    }
    return g.is_constant() ? Poly(1) : g;
}

Poly content_in(const std::vector<Poly>& cs) {
    std::vector<Poly> rest;
    Poly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        if (g.is_zero())
            g = c;
        else
            rest.push_back(c);
    }
    if (g.is_zero()) return Poly(1);
    return gcd_with_all(primitive(g), std::move(rest));
}

std::vector<Poly> strip(std::vector<Poly> v) {
    while (v.size() > 1 && v.back().is_zero()) v.pop_back();
    return v;
}

// pseudo-remainder of a by b w.r.t. x, both given as coefficient vectors
std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lc = b[db];
    while (a.size() - 1 >= db && !(a.size() == 1 && a[0].is_zero())) {
        std::size_t k = a.size() - 1 - db;
        Poly la = a.back();
        for (auto& c : a) c = c * lc;
        for (std::size_t i = 0; i <= db; ++i) a[i + k] -= la * b[i];
        a.pop_back();
        a = strip(std::move(a));
        if (a.empty()) a.emplace_back();
        if (db == 0) break;
    }
    if (a.empty()) a.emplace_back();
    return a;
}

Poly univariate_gcd(Poly a, Poly b) {
    a.make_primitive();
    b.make_primitive();
    if (a.total_degree() < b.total_degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
        b.make_primitive();
    }
    a.make_primitive();
    return a;
}

// Degree in x of gcd of the images of a and b under a substitution of the
// other variables at which neither leading coefficient in x vanishes. Since
// lc_x(gcd) divides both leading coefficients, 0 proves that x does not occur
// in the gcd. Returns -1 if no usable point was found.
int image_gcd_degree(const Poly& a, const Poly& b, Var x, VarSet vars) {
    std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ (std::uint64_t(x) << 32) ^ a.size() ^ (b.size() << 16);
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<std::int64_t>(state % 61) - 30;
    };
    auto ca = a.coeffs_in(x), cb = b.coeffs_in(x);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::map<Var, Rat> pt;
        for (Var v = 0; v < kSlots; ++v)
            if (v != x && (vars & var_bit(v))) {
                std::int64_t r = next();
                pt[v] = Rat(r == 0 ? 31 : r);
            }
        if (ca.back().evaluate(pt).is_zero() || cb.back().evaluate(pt).is_zero()) continue;
        Poly ia = a.evaluate_partial(pt), ib = b.evaluate_partial(pt);
        return static_cast<int>(univariate_gcd(std::move(ia), std::move(ib)).total_degree());
    }
    return -1;
}

Poly gcd_same_support(Poly a, Poly b, VarSet vars) {
    int nv = __builtin_popcountll(vars);
    if (nv == 1) return univariate_gcd(std::move(a), std::move(b));

    if (a.size() < b.size()) std::swap(a, b);
    if (auto q = a.divide_exact(b)) return primitive(b);

    // Variables the gcd cannot involve, detected through univariate images.
    VarSet absent = 0;
    for (Var v = 0; v < kSlots; ++v)
        if ((vars & var_bit(v)) && image_gcd_degree(a, b, v, vars) == 0) absent |= var_bit(v);
    if (absent == vars) return Poly(1);
    if (absent) {
        // gcd is free of these variables, so it is the gcd of all coefficients
        std::vector<Poly> cs;
        for (auto& [k, c] : a.split(absent)) cs.push_back(std::move(c));
        for (auto& [k, c] : b.split(absent)) cs.push_back(std::move(c));
        Poly first = std::move(cs.front());
        cs.erase(cs.begin());
        return gcd_with_all(primitive(std::move(first)), std::move(cs));
    }

    Var x = 0;
    unsigned best = ~0U;
    for (Var v = 0; v < kSlots; ++v) {
        if (!(vars & var_bit(v))) continue;
        unsigned d = std::min(a.degree_in(v), b.degree_in(v));
        if (d < best) {
            best = d;
            x = v;
        }
    }
    auto ca = a.coeffs_in(x);
    auto cb = b.coeffs_in(x);
    Poly conta = content_in(ca), contb = content_in(cb);
    Poly cont = gcd_rec(conta, contb);
    for (auto& c : ca) c = exact(c, conta);
    for (auto& c : cb) c = exact(c, contb);
    if (ca.size() < cb.size()) std::swap(ca, cb);
    while (true) {
        if (cb.size() == 1) {
            // cb is a nonzero x-free primitive polynomial, hence a unit in x
            return primitive(cont);
        }
        auto r = prem(ca, cb);
        if (r.size() == 1 && r[0].is_zero()) break;
        Poly cr = content_in(r);
        for (auto& c : r) c = exact(c, cr);
        Poly rp = Poly::from_coeffs(x, r);
        Rat f = rp.make_primitive();
        if (!f.is_one()) r = rp.coeffs_in(x);
        ca = std::move(cb);
        cb = std::move(r);
    }
    Poly g = Poly::from_coeffs(x, cb);
    return primitive(g * cont);
}

Poly gcd_rec(Poly a, Poly b) {
    if (a.is_zero()) return primitive(std::move(b));
    if (b.is_zero()) return primitive(std::move(a));
    if (a.is_constant() || b.is_constant()) return Poly(1);

    Mono ma = a.mono_content(), mb = b.mono_content();
    Mono mg = Mono::gcd(ma, mb);
    if (!ma.is_one()) a = a.divide_exact(Poly(ma, Rat(1))).value();
    if (!mb.is_one()) b = b.divide_exact(Poly(mb, Rat(1))).value();
    Poly mono_part(mg, Rat(1));
    if (a.is_constant() || b.is_constant()) return mono_part;
    if (a == b) return primitive(a) * mono_part;

    VarSet va = a.support(), vb = b.support();
    Poly g;
    if (VarSet extra = va & ~vb) {
        std::vector<Poly> cs;
        for (auto& [k, c] : a.split(extra)) cs.push_back(std::move(c));
        g = gcd_with_all(std::move(b), std::move(cs));
    } else if (VarSet extrb = vb & ~va) {
        std::vector<Poly> cs;
        for (auto& [k, c] : b.split(extrb)) cs.push_back(std::move(c));
        g = gcd_with_all(std::move(a), std::move(cs));
    } else {
        g = gcd_same_support(std::move(a), std::move(b), va);
    }
    if (g.is_constant()) return mono_part;
    return primitive(std::move(g)) * mono_part;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

}  // namespace dwork::sym
