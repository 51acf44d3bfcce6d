#include "dwork/matrix.hpp"

#include <stdexcept>

#include "dwork/errors.hpp"

namespace dwork::sym {

MatF MatF::identity(std::size_t n) {
    MatF m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFn(1);
    return m;
}

MatF MatF::transpose() const {
    MatF r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

MatF MatF::operator-() const {
    return map([](const RatFn& x) { return -x; });
}

MatF operator+(const MatF& a, const MatF& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("MatF: shape mismatch");
    MatF r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
}

MatF operator-(const MatF& a, const MatF& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("MatF: shape mismatch");
    MatF r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
}

MatF operator*(const MatF& a, const MatF& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("MatF: shape mismatch");
    MatF r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            RatFn s;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const RatFn& x = a(i, k);
                const RatFn& y = b(k, j);
                if (x.is_zero() || y.is_zero()) continue;
                s += x * y;
            }
            r(i, j) = std::move(s);
        }
    return r;
}

MatF operator*(const RatFn& s, const MatF& a) {
    return a.map([&](const RatFn& x) { return s * x; });
}

bool operator==(const MatF& a, const MatF& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

bool MatF::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool MatF::is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (!(*this)(i, j).is_zero()) return false;
    return true;
}

bool MatF::is_upper_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < i && j < cols_; ++j)
            if (!(*this)(i, j).is_zero()) return false;
    return true;
}

std::string MatF::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i ? ",\n [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) s += ", ";
            s += (*this)(i, j).to_string();
        }
        s += "]";
    }
    return s + "]";
}

MatF commutator(const MatF& x, const MatF& y) { return x * y - y * x; }

namespace {

std::size_t weight(const RatFn& f) { return f.num().size() + f.den().size(); }

}  // namespace

SolveResult solve_linear(const MatF& m, const std::vector<RatFn>& b) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (b.size() != rows) throw std::invalid_argument("solve_linear: rhs size mismatch");
    MatF aug(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
        aug(i, cols) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (aug(i, c).is_zero()) continue;
            if (best == rows || weight(aug(i, c)) < weight(aug(best, c))) best = i;
        }
        if (best == rows) continue;
        if (best != r)
            for (std::size_t j = 0; j <= cols; ++j) std::swap(aug(r, j), aug(best, j));
        RatFn inv = aug(r, c).inverse();
        for (std::size_t j = c; j <= cols; ++j)
            if (!aug(r, j).is_zero()) aug(r, j) = aug(r, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || aug(i, c).is_zero()) continue;
            RatFn f = aug(i, c);
            for (std::size_t j = c; j <= cols; ++j)
                if (!aug(r, j).is_zero()) aug(i, j) = aug(i, j) - f * aug(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!aug(i, cols).is_zero()) throw Inconsistent("row " + std::to_string(i) + " reduces to 0 = " + aug(i, cols).to_string());

    SolveResult res;
    res.rank = r;
    res.status = r == cols ? SolveStatus::Unique : SolveStatus::Underdetermined;
    res.x.assign(cols, RatFn());
    for (std::size_t k = 0; k < r; ++k) res.x[pivot_col[k]] = aug(k, cols);

    res.residual_zero = true;
    for (std::size_t i = 0; i < rows && res.residual_zero; ++i) {
        RatFn s = -b[i];
        for (std::size_t j = 0; j < cols; ++j)
            if (!m(i, j).is_zero() && !res.x[j].is_zero()) s += m(i, j) * res.x[j];
        res.residual_zero = s.is_zero();
    }
    return res;
}

MatF mat_inverse(const MatF& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw Singular("matrix is not square");
    if (m.is_lower_triangular()) {
        MatF inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            if (m(i, i).is_zero()) throw Singular("zero diagonal entry " + std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j) {
            inv(j, j) = m(j, j).inverse();
            for (std::size_t i = j + 1; i < n; ++i) {
                RatFn s;
                for (std::size_t k = j; k < i; ++k)
                    if (!m(i, k).is_zero() && !inv(k, j).is_zero()) s += m(i, k) * inv(k, j);
                inv(i, j) = s.is_zero() ? RatFn() : -(s / m(i, i));
            }
        }
        return inv;
    }
    MatF inv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<RatFn> e(n);
        e[col] = RatFn(1);
        SolveResult r;
        try {
            r = solve_linear(m, e);
        } catch (const Inconsistent&) {
            throw Singular("matrix is singular");
        }
        if (r.status != SolveStatus::Unique) throw Singular("matrix is singular");
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = r.x[i];
    }
    return inv;
}

}  // namespace dwork::sym
