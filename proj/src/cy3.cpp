#include "dwork/cy3.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <regex>

#include "dwork/errors.hpp"

namespace dwork::cy3 {

namespace {

constexpr int kMaxH = 3;

struct Layout {
    int h;
    std::size_t last() const { return static_cast<std::size_t>(2 * h + 1); }
    std::size_t b2(int i) const { return static_cast<std::size_t>(i); }
    std::size_t b3(int i) const { return static_cast<std::size_t>(h + i); }
};

int symbol_index(int h, std::array<int, 3> idx) {
    std::sort(idx.begin(), idx.end());
    int n = 0;
    for (int i = 1; i <= h; ++i)
        for (int j = i; j <= h; ++j)
            for (int k = j; k <= h; ++k, ++n)
                if (std::array<int, 3>{i, j, k} == idx) return n + 1;
    throw IndexOutOfRange("Yukawa symbol index");
}

Gen tsym(int a, int b) { return {Family::Tab, std::min(a, b), std::max(a, b)}; }
Gen gab(int upper, int lower) { return {Family::Gab, upper, lower}; }

using Combo = std::vector<std::pair<RatFn, Gen>>;

RatFn delta(int x, int y) { return RatFn(x == y ? 1 : 0); }

// The published table: entry [R_X, R_Y].
Combo table(int h, const RatFn& /*unused*/, const Gen& x, const Gen& y) {
    auto C = [&](int k, int i, int j) { return yukawa_symbol(h, k, i, j); };
    const RatFn half(sym::Rat(1, 2));
    Combo out;
    auto add = [&](RatFn c, Gen g) {
        if (!c.is_zero()) out.emplace_back(std::move(c), g);
    };
    const int a = x.a, b = x.b;
    switch (x.fam) {
        case Family::G0:
            if (y.fam == Family::Ta) add(-1, y);
            if (y.fam == Family::T0) add(-2, y);
            if (y.fam == Family::Ka) add(-1, y);
            if (y.fam == Family::R) add(1, y);
            break;
        case Family::Gab: {
            // X = g^a_b
            if (y.fam == Family::Tab) {
                add(-delta(a, y.a), tsym(b, y.b));
                add(-delta(a, y.b), tsym(b, y.a));
            }
            if (y.fam == Family::Ta) add(-delta(a, y.a), {Family::Ta, b});
            if (y.fam == Family::Ka) add(delta(y.a, b), {Family::Ka, a});
            if (y.fam == Family::R) add(-delta(a, y.a), {Family::R, b});
            break;
        }
        case Family::Tab:
            if (y.fam == Family::Gab) {
                // column g^d_c
                const int d = y.a, c = y.b;
                add(delta(a, d), tsym(b, c));
                add(delta(b, d), tsym(a, c));
            }
            if (y.fam == Family::Ka) {
                add(half * delta(a, y.a), {Family::Ta, b});
                add(half * delta(b, y.a), {Family::Ta, a});
            }
            if (y.fam == Family::R) {
                const int c = y.a;
                for (int d = 1; d <= h; ++d) {
                    add(-half * C(c, b, d), gab(d, a));
                    add(-half * C(a, c, d), gab(d, b));
                }
            }
            break;
        case Family::Ta:
            if (y.fam == Family::G0) add(1, x);
            if (y.fam == Family::Gab) add(delta(y.a, a), {Family::Ta, y.b});
            if (y.fam == Family::Ka) add(RatFn(2) * delta(y.a, a), {Family::T0});
            if (y.fam == Family::R) {
                add(2, tsym(a, y.a));
                for (int d = 1; d <= h; ++d) add(-C(a, y.a, d), {Family::Ka, d});
            }
            break;
        case Family::T0:
            if (y.fam == Family::G0) add(2, x);
            if (y.fam == Family::R) add(1, {Family::Ta, y.a});
            break;
        case Family::Ka:
            if (y.fam == Family::G0) add(1, x);
            if (y.fam == Family::Gab) add(-delta(a, y.b), {Family::Ka, y.a});
            if (y.fam == Family::Tab) {
                add(-half * delta(a, y.a), {Family::Ta, y.b});
                add(-half * delta(a, y.b), {Family::Ta, y.a});
            }
            if (y.fam == Family::Ta) add(RatFn(-2) * delta(a, y.a), {Family::T0});
            if (y.fam == Family::R) {
                add(-delta(a, y.a), {Family::G0});
                add(1, gab(a, y.a));
            }
            break;
        case Family::R:
            if (y.fam == Family::G0) add(-1, x);
            if (y.fam == Family::Gab) add(delta(a, y.a), {Family::R, y.b});
            if (y.fam == Family::Tab) {
                const int c = y.a, d = y.b;
                for (int e = 1; e <= h; ++e) {
                    add(half * C(a, d, e), gab(e, c));
                    add(half * C(a, c, e), gab(e, d));
                }
            }
            if (y.fam == Family::Ta) {
                add(-2, tsym(a, y.a));
                for (int e = 1; e <= h; ++e) add(C(a, y.a, e), {Family::Ka, e});
            }
            if (y.fam == Family::T0) add(-1, {Family::Ta, a});
            if (y.fam == Family::Ka) {
                add(delta(a, y.a), {Family::G0});
                add(-1, gab(y.a, a));
            }
            break;
    }
    return out;
}

}  // namespace

Dims cy3_dims(int h) {
    if (h < 1) throw IndexOutOfRange("h must be positive");
    Dims d;
    d.size = 2 * h + 2;
    d.group_dim = (3 * h * h + 5 * h + 4) / 2;
    d.moduli_dim = h + d.group_dim;
    return d;
}

std::string Gen::name() const {
    auto s = [](int i) { return std::to_string(i); };
    switch (fam) {
        case Family::G0: return "g0";
        case Family::Gab: return "g^" + s(a) + "_" + s(b);
        case Family::Tab: return "t_" + s(a) + s(b);
        case Family::Ta: return "t_" + s(a);
        case Family::T0: return "t0";
        case Family::Ka: return "k^" + s(a);
        case Family::R: return "R_" + s(a);
    }
    return "?";
}

MatF cy3_phi(int h) {
    const Layout l{h};
    MatF phi(l.last() + 1, l.last() + 1);
    phi(0, l.last()) = RatFn(-1);
    phi(l.last(), 0) = RatFn(1);
    for (int i = 1; i <= h; ++i) {
        phi(l.b2(i), l.b3(i)) = RatFn(1);
        phi(l.b3(i), l.b2(i)) = RatFn(-1);
    }
    return phi;
}

RatFn yukawa_symbol(int h, int k, int i, int j) {
    if (h > kMaxH) throw IndexOutOfRange("formal Yukawa symbols are available for h <= 3");
    return RatFn::var(sym::uvar(symbol_index(h, {k, i, j})));
}

const MatF& Cy3Basis::matrix_of(const Gen& g) const {
    if (g.fam == Family::R) return modular.at(g.a);
    return conn.at(g);
}

Cy3Basis cy3_basis(int h) {
    const Layout l{h};
    const std::size_t k = l.last() + 1;
    Cy3Basis out;
    out.h = h;
    out.phi = cy3_phi(h);
    auto put = [&](Gen g, MatF a) {
        const MatF gm = a.transpose();
        if (!(gm.transpose() * out.phi + out.phi * gm).is_zero())
            throw std::logic_error(g.name() + " is not in the Lie algebra");
        out.gens.push_back(g);
        out.conn.emplace(g, std::move(a));
    };
    {
        MatF a(k, k);
        a(0, 0) = RatFn(-1);
        a(l.last(), l.last()) = RatFn(1);
        put({Family::G0}, a);
    }
    for (int i = 1; i <= h; ++i)
        for (int j = 1; j <= h; ++j) {
            MatF a(k, k);
            a(l.b2(i), l.b2(j)) = RatFn(-1);
            a(l.b3(j), l.b3(i)) = RatFn(1);
            put(gab(i, j), a);
        }
    for (int i = 1; i <= h; ++i)
        for (int j = i; j <= h; ++j) {
            MatF a(k, k);
            const RatFn v(i == j ? sym::Rat(1) : sym::Rat(1, 2));
            a(l.b3(i), l.b2(j)) = v;
            a(l.b3(j), l.b2(i)) = v;
            put(tsym(i, j), a);
        }
    for (int i = 1; i <= h; ++i) {
        MatF a(k, k);
        a(l.b3(i), 0) = RatFn(-1);
        a(l.last(), l.b2(i)) = RatFn(1);
        put({Family::Ta, i}, a);
    }
    {
        MatF a(k, k);
        a(l.last(), 0) = RatFn(-1);
        put({Family::T0}, a);
    }
    for (int i = 1; i <= h; ++i) {
        MatF a(k, k);
        a(l.b2(i), 0) = RatFn(1);
        a(l.last(), l.b3(i)) = RatFn(1);
        put({Family::Ka, i}, a);
    }
    if (static_cast<int>(out.gens.size()) != cy3_dims(h).group_dim)
        throw std::logic_error("generator count differs from the dimension formula");
    if (h <= kMaxH)
        for (int c = 1; c <= h; ++c) {
            MatF a(k, k);
            a(0, l.b2(c)) = RatFn(1);
            a(l.b3(c), l.last()) = RatFn(1);
            for (int i = 1; i <= h; ++i)
                for (int j = 1; j <= h; ++j) a(l.b2(i), l.b3(j)) = yukawa_symbol(h, c, i, j);
            out.modular.emplace(c, a);
        }
    return out;
}

BracketReport cy3_matrix_brackets(const Cy3Basis& basis) {
    const int h = basis.h;
    const Layout l{h};
    const std::size_t k = l.last() + 1;
    std::vector<Gen> all = basis.gens;
    for (int c = 1; c <= h; ++c) all.push_back({Family::R, c});
    auto is_c_block = [&](std::size_t r, std::size_t c) {
        return r >= l.b2(1) && r <= l.b2(h) && c >= l.b3(1) && c <= l.b3(h);
    };
    // implied derivative of the symbol C_{sorted} along a constant field
    std::map<std::pair<Gen, int>, RatFn> implied;
    bool implied_consistent = true;
    auto record = [&](const Gen& along, int c, int i, int j, const RatFn& v) {
        auto key = std::make_pair(along, symbol_index(h, {c, i, j}));
        auto it = implied.find(key);
        if (it == implied.end())
            implied.emplace(key, v);
        else if (!(it->second == v))
            implied_consistent = false;
    };

    BracketReport rep;
    for (const auto& x : all)
        for (const auto& y : all) {
            MatF rhs(k, k);
            for (const auto& [coef, g] : table(h, RatFn(), x, y)) rhs = rhs + coef * basis.matrix_of(g);
            const MatF lhs = sym::commutator(basis.matrix_of(y), basis.matrix_of(x));
            const bool conditional = x.fam == Family::R || y.fam == Family::R;
            std::string name = "[R_" + x.name() + ",R_" + y.name() + "]";
            if (!conditional) {
                rep.add(name, lhs, rhs);
                continue;
            }
            // the difference must be a derivative of the Yukawa block
            const MatF diff = rhs - lhs;
            bool ok = true;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c)
                    if (!diff(r, c).is_zero() && !is_c_block(r, c)) ok = false;
            if (ok && x.fam != Family::R)
                for (int i = 1; i <= h; ++i)
                    for (int j = 1; j <= h; ++j) record(x, y.a, i, j, diff(l.b2(i), l.b3(j)));
            if (ok && y.fam != Family::R)
                for (int i = 1; i <= h; ++i)
                    for (int j = 1; j <= h; ++j) record(y, x.a, i, j, -diff(l.b2(i), l.b3(j)));
            rep.rows.push_back({"conditional: " + name, lhs.to_string(), rhs.to_string(), ok});
        }
    rep.rows.push_back({"conditional: implied derivatives of C are symmetric", "", "", implied_consistent});
    return rep;
}

BracketReport cy3_sl2(const Cy3Basis& basis) {
    const Layout l{basis.h};
    const std::size_t k = l.last() + 1;
    // a difference confined to the Yukawa block is a derivative of the C symbols
    auto yukawa_only = [&](const MatF& d) {
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                const bool in_block = r >= l.b2(1) && r <= l.b2(basis.h) && c >= l.b3(1) && c <= l.b3(basis.h);
                if (!in_block && !d(r, c).is_zero()) return false;
            }
        return true;
    };
    BracketReport rep;
    for (int kk = 1; kk <= basis.h; ++kk) {
        const MatF& e = basis.matrix_of({Family::R, kk});
        const MatF& f = basis.matrix_of({Family::Ka, kk});
        const MatF hm = basis.matrix_of({Family::G0}) - basis.matrix_of(gab(kk, kk));
        const std::string tag = " (k=" + std::to_string(kk) + ")";
        // A_{[X,Y]} = [A_Y, A_X] + X(A_Y) - Y(A_X)
        const MatF ef = sym::commutator(f, e), he = sym::commutator(e, hm);
        rep.rows.push_back({"conditional: [E,F] = H" + tag, ef.to_string(), hm.to_string(), yukawa_only(hm - ef)});
        rep.rows.push_back({"conditional: [H,E] = 2E" + tag, he.to_string(), (RatFn(2) * e).to_string(),
                            yukawa_only(RatFn(2) * e - he)});
        rep.add("[H,F] = -2F" + tag, sym::commutator(f, hm), RatFn(-2) * f);
    }
    return rep;
}

std::optional<std::vector<std::pair<RatFn, Gen>>> expand(const Cy3Basis& basis, const MatF& m) {
    const std::size_t k = m.rows(), g = basis.gens.size();
    MatF sys(k * k, g);
    std::vector<RatFn> rhs(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t j = 0; j < g; ++j) sys(r * k + c, j) = basis.conn.at(basis.gens[j])(r, c);
            rhs[r * k + c] = m(r, c);
        }
    try {
        auto sol = sym::solve_linear(sys, rhs);
        std::vector<std::pair<RatFn, Gen>> out;
        for (std::size_t j = 0; j < g; ++j)
            if (!sol.x[j].is_zero()) out.emplace_back(sol.x[j], basis.gens[j]);
        return out;
    } catch (const Inconsistent&) {
        return std::nullopt;
    }
}

BracketReport cy3_closure(const Cy3Basis& basis) {
    BracketReport rep;
    for (const auto& x : basis.gens)
        for (const auto& y : basis.gens) {
            const MatF lhs = sym::commutator(basis.matrix_of(y), basis.matrix_of(x));
            auto e = expand(basis, lhs);
            std::string rhs = "outside the span";
            if (e) {
                rhs.clear();
                for (const auto& [c, g] : *e) rhs += (rhs.empty() ? "" : " + ") + ("(" + c.to_string() + ")*R_" + g.name());
                if (rhs.empty()) rhs = "0";
            }
            rep.rows.push_back({"[R_" + x.name() + ",R_" + y.name() + "]", lhs.to_string(), rhs, e.has_value()});
        }
    return rep;
}

std::string render(const Cy3Basis& basis, const std::string& s) {
    std::map<int, std::string> names;
    const int h = basis.h;
    for (int i = 1; i <= h; ++i)
        for (int j = i; j <= h; ++j)
            for (int k = j; k <= h; ++k)
                names[symbol_index(h, {i, j, k})] = "C" + std::to_string(i) + std::to_string(j) + std::to_string(k);
    std::string out;
    std::regex re("u([0-9]+)");
    auto begin = std::sregex_iterator(s.begin(), s.end(), re);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        out += s.substr(last, static_cast<std::size_t>(it->position()) - last);
        out += names.at(std::stoi((*it)[1]));
        last = static_cast<std::size_t>(it->position() + it->length());
    }
    return out + s.substr(last);
}

}  // namespace dwork::cy3
