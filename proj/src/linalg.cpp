#include "bnc/linalg.hpp"

#include <stdexcept>

#include "bnc/errors.hpp"

namespace bnc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.c_) throw SizeMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols, std::size_t nrows) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Matrix::col(std::size_t j) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
    if (v.size() != r_) throw SizeMismatch("column length");
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) throw SizeMismatch("matrix product shape");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Q& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (o(k, j) != 0) m(i, j) += x * o(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw SizeMismatch("matrix sum shape");
    Matrix m(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw SizeMismatch("matrix difference shape");
    Matrix m(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

Vec Matrix::operator*(const Vec& v) const {
    if (v.size() != c_) throw SizeMismatch("matrix-vector shape");
    Vec r(r_, Q(0));
    for (std::size_t j = 0; j < c_; ++j) {
        if (v[j] == 0) continue;
        for (std::size_t i = 0; i < r_; ++i)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    }
    return r;
}

Matrix Matrix::scaled(const Q& s) const {
    Matrix m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

RrefResult rref(Matrix m) {
    RrefResult res;
    std::size_t lead = 0;
    const std::size_t R = m.rows(), C = m.cols();
    for (std::size_t col = 0; col < C && lead < R; ++col) {
        std::size_t piv = lead;
        while (piv < R && m(piv, col) == 0) ++piv;
        if (piv == R) continue;
        if (piv != lead)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(piv, j), m(lead, j));
        Q inv = 1 / m(lead, col);
        for (std::size_t j = col; j < C; ++j) m(lead, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == lead || m(i, col) == 0) continue;
            Q f = m(i, col);
            for (std::size_t j = col; j < C; ++j)
                if (m(lead, j) != 0) m(i, j) -= f * m(lead, j);
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.reduced = std::move(m);
    return res;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> nullspace(const Matrix& m) {
    auto rr = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (auto p : rr.pivots) is_piv[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        Vec v(C, Q(0));
        v[f] = 1;
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.reduced(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw SizeMismatch("inverse of non-square matrix");
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto rr = rref(aug);
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

Coordinates::Coordinates(const std::vector<Vec>& basis, std::size_t ambient_dim)
    : k_(basis.size()), n_(ambient_dim), basis_(basis) {
    if (k_ == 0) return;
    // Pick k independent rows of the n x k basis matrix via RREF of its transpose.
    Matrix bt = Matrix::from_rows(basis);  // k x n
    auto rr = rref(bt);
    if (rr.pivots.size() != k_) throw std::domain_error("dependent basis");
    rows_ = rr.pivots;
    Matrix sq(k_, k_);
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) sq(i, j) = basis[j][rows_[i]];
    inv_ = inverse(sq);
}

Vec Coordinates::operator()(const Vec& v) const {
    if (v.size() != n_) throw SizeMismatch("coordinate vector length");
    Vec sel(k_);
    for (std::size_t i = 0; i < k_; ++i) sel[i] = v[rows_[i]];
    Vec c = inv_ * sel;
    Vec back(n_, Q(0));
    for (std::size_t j = 0; j < k_; ++j) axpy(back, c[j], basis_[j]);
    if (back != v) throw std::domain_error("vector outside span");
    return c;
}

bool Coordinates::in_span(const Vec& v) const {
    try {
        (*this)(v);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

Quotient::Quotient(std::size_t dim, const std::vector<Vec>& relations) : dim_(dim) {
    std::vector<bool> is_piv(dim, false);
    if (!relations.empty()) {
        auto rr = rref(Matrix::from_rows(relations));
        pivots_ = rr.pivots;
        red_ = Matrix(pivots_.size(), dim);
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            for (std::size_t j = 0; j < dim; ++j) red_(r, j) = rr.reduced(r, j);
        for (auto p : pivots_) is_piv[p] = true;
    }
    for (std::size_t j = 0; j < dim; ++j)
        if (!is_piv[j]) free_.push_back(j);
}

Vec Quotient::reduce(const Vec& v) const {
    if (v.size() != dim_) throw SizeMismatch("quotient input length");
    Vec full(v);
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        Q x = full[pivots_[r]];
        if (x == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (red_(r, j) != 0) full[j] -= x * red_(r, j);
    }
    Vec q(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i) q[i] = full[free_[i]];
    return q;
}

Vec Quotient::lift(const Vec& q) const {
    Vec v(dim_, Q(0));
    for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = q[i];
    return v;
}

}  // namespace bnc
