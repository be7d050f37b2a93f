#pragma once
#include <cstddef>
#include <vector>

#include "bnc/rational.hpp"

namespace bnc {

// Dense row-major matrix over Q.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Q(0)) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix from_cols(const std::vector<Vec>& cols, std::size_t nrows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix scaled(const Q& s) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

// Reduced row echelon form; returns pivot columns.
struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vec> nullspace(const Matrix& m);

// Coordinates with respect to a list of independent vectors (columns of a basis).
class Coordinates {
public:
    Coordinates() = default;
    explicit Coordinates(const std::vector<Vec>& basis, std::size_t ambient_dim);
    std::size_t size() const { return k_; }
    // Throws if v is not in the span.
    Vec operator()(const Vec& v) const;
    bool in_span(const Vec& v) const;

private:
    std::size_t k_ = 0, n_ = 0;
    std::vector<Vec> basis_;
    std::vector<std::size_t> rows_;
    Matrix inv_;
};

// Quotient V / span(relations): pivot coordinates are eliminated.
class Quotient {
public:
    Quotient() = default;
    Quotient(std::size_t dim, const std::vector<Vec>& relations);
    std::size_t ambient_dim() const { return dim_; }
    std::size_t dim() const { return free_.size(); }
    const std::vector<std::size_t>& free_columns() const { return free_; }
    Vec reduce(const Vec& v) const;  // quotient coordinates
    Vec lift(const Vec& q) const;    // section through free columns

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> free_;
    std::vector<std::size_t> pivots_;
    Matrix red_;
};

Matrix inverse(const Matrix& m);  // throws on singular input

}  // namespace bnc
