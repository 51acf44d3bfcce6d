#include "dwork/dworkgeo.hpp"

#include <gmpxx.h>

#include "dwork/errors.hpp"

namespace dwork::geo {

using sym::Poly;

DworkParams moduli_dim(int n) {
    if (n < 1) throw IndexOutOfRange("n must be positive, got " + std::to_string(n));
    DworkParams p;
    p.n = n;
    p.rho = n % 2;
    if (p.odd()) {
        p.d = (n + 1) * (n + 3) / 4 + 1;
        p.m = (n + 1) / 2;
        p.D = p.d;
    } else {
        p.d = n * (n + 2) / 4 + 1;
        p.m = n / 2;
        p.D = p.d + 1;
    }
    return p;
}

MatF phi_matrix(int n) {
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    MatF phi(k, k);
    if (n % 2 == 0) {
        for (std::size_t i = 0; i < k; ++i) phi(i, k - 1 - i) = RatFn(1);
        return phi;
    }
    const std::size_t m = k / 2;
    for (std::size_t i = 0; i < m; ++i) {
        phi(i, k - 1 - i) = RatFn(1);
        phi(k - 1 - i, i) = RatFn(-1);
    }
    return phi;
}

std::int64_t stirling2(int r, int s) {
    if (s < 0 || r < 0 || s > r) throw IndexOutOfRange("stirling2 needs 0 <= s <= r");
    mpz_class sum = 0, binom = 1, fact = 1;
    for (int i = 0; i <= s; ++i) {
        if (i > 0) binom = binom * (s - i + 1) / i;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(s - i), static_cast<unsigned long>(r));
        if (i % 2)
            sum -= binom * p;
        else
            sum += binom * p;
    }
    for (int i = 2; i <= s; ++i) fact *= i;
    mpz_class q = sum / fact;
    return q.get_si();
}

const MatF& OneFormMat::at(Var v) const {
    static thread_local std::map<std::size_t, MatF> zeros;
    auto it = comp.find(v);
    if (it != comp.end()) return it->second;
    auto z = zeros.find(dim);
    if (z == zeros.end()) z = zeros.emplace(dim, MatF(dim, dim)).first;
    return z->second;
}

RatFn discriminant(int n) { return RatFn(Poly::var(sym::tvar(1), n + 2) - Poly::var(sym::tvar(n + 2))); }

OneFormMat base_connection(int n) {
    DworkParams p = moduli_dim(n);
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    const Var t1 = p.t1(), tb = p.tbase();
    const RatFn T1 = RatFn::var(t1), TB = RatFn::var(tb);
    const RatFn N(n + 2);
    const RatFn L = discriminant(n);
    MatF d1(k, k), db(k, k);
    for (int i = 1; i <= n; ++i) {
        const std::size_t r = static_cast<std::size_t>(i) - 1;
        db(r, r) = RatFn(-i) / (N * TB);
        d1(r, r + 1) = RatFn(1);
        db(r, r + 1) = -T1 / (N * TB);
    }
    const std::size_t last = k - 1;
    for (int j = 1; j <= n; ++j) {
        RatFn s2(stirling2(n + 2, j));
        d1(last, j - 1) = -s2 * T1.pow(j) / L;
        db(last, j - 1) = s2 * T1.pow(j + 1) / (N * TB * L);
    }
    d1(last, last) = -RatFn(stirling2(n + 2, n + 1)) * T1.pow(n + 1) / L;
    db(last, last) = (RatFn(Rat(n * (n + 1), 2)) * T1.pow(n + 2) + RatFn(n + 1) * TB) / (N * TB * L);
    OneFormMat b;
    b.dim = k;
    b.comp.emplace(t1, std::move(d1));
    b.comp.emplace(tb, std::move(db));
    return b;
}

RatFn c_value(const std::optional<Rat>& c) { return c ? RatFn(*c) : RatFn::var(sym::kC); }

bool omega_identity_holds(const OneFormMat& b, const MatF& omega) {
    for (const auto& [v, bv] : b.comp) {
        MatF lhs = omega.derive(v);
        MatF rhs = bv * omega + omega * bv.transpose();
        if (!(lhs == rhs)) return false;
    }
    // differentials absent from B must not appear in Omega either
    sym::VarSet vars = 0;
    for (std::size_t i = 0; i < omega.rows(); ++i)
        for (std::size_t j = 0; j < omega.cols(); ++j) vars |= omega(i, j).support();
    for (Var v = 0; v < sym::kSlots; ++v)
        if ((vars & sym::var_bit(v)) && v != sym::kC && !b.has(v)) return false;
    return true;
}

MatF intersection_matrix(int n, const RatFn& c) {
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    const OneFormMat b = base_connection(n);
    const RatFn sign_sym = (n % 2) ? RatFn(-1) : RatFn(1);
    MatF omega(k, k);

    RatFn q = RatFn(Rat(-(n + 2)).pow(static_cast<unsigned>(n))) * c / discriminant(n);
    for (std::size_t j = 1; j <= k; ++j) omega(j - 1, k - j) = (j % 2 == 1) ? q : -q;

    // antidiagonal index s = i + j (1-based), unknowns with i <= j
    for (std::size_t s = k + 2; s <= 2 * k; ++s) {
        std::vector<std::pair<std::size_t, std::size_t>> unknowns;
        for (std::size_t i = 1; i <= k; ++i) {
            std::size_t j = s - i;
            if (j < i || j > k) continue;
            if (i == j && n % 2 == 1) continue;  // forced to zero by antisymmetry
            unknowns.emplace_back(i - 1, j - 1);
        }
        if (unknowns.empty()) continue;
        auto place = [&](MatF& m, std::size_t u, const RatFn& val) {
            auto [i, j] = unknowns[u];
            m(i, j) = val;
            if (i != j) m(j, i) = sign_sym * val;
        };
        std::vector<MatF> basis;
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            MatF e(k, k);
            place(e, u, RatFn(1));
            basis.push_back(std::move(e));
        }
        std::vector<std::vector<RatFn>> rows;
        std::vector<RatFn> rhs;
        for (const auto& [v, bv] : b.comp) {
            MatF known = bv * omega + omega * bv.transpose();
            MatF dom = omega.derive(v);
            std::vector<MatF> contrib;
            for (const auto& e : basis) contrib.push_back(bv * e + e * bv.transpose());
            for (std::size_t i = 1; i <= k; ++i) {
                std::size_t j = s - 1 - i;
                if (j < 1 || j > k) continue;
                std::vector<RatFn> row;
                bool any = false;
                for (const auto& cm : contrib) {
                    row.push_back(cm(i - 1, j - 1));
                    any = any || !row.back().is_zero();
                }
                RatFn r = dom(i - 1, j - 1) - known(i - 1, j - 1);
                if (!any && r.is_zero()) continue;
                rows.push_back(std::move(row));
                rhs.push_back(std::move(r));
            }
        }
        MatF sys(rows.size(), unknowns.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t u = 0; u < unknowns.size(); ++u) sys(r, u) = rows[r][u];
        sym::SolveResult sol;
        try {
            sol = sym::solve_linear(sys, rhs);
        } catch (const Inconsistent& e) {
            throw OmegaInconsistent("antidiagonal " + std::to_string(s) + " has no solution for n=" + std::to_string(n));
        }
        if (sol.status != sym::SolveStatus::Unique)
            throw OmegaInconsistent("antidiagonal " + std::to_string(s) + " is underdetermined for n=" + std::to_string(n));
        for (std::size_t u = 0; u < unknowns.size(); ++u) place(omega, u, sol.x[u]);
    }
    if (!omega_identity_holds(b, omega))
        throw OmegaInconsistent("dOmega = B Omega + Omega B^T fails for n=" + std::to_string(n));
    return omega;
}

}  // namespace dwork::geo
