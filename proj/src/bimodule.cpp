#include "bnc/bimodule.hpp"

#include <stdexcept>

#include "bnc/errors.hpp"

namespace bnc {

namespace {

Matrix combine(const std::vector<Matrix>& mats, const Vec& b, std::size_t n) {
    Matrix out(n, n);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0) out = out + mats[j].scaled(b[j]);
    return out;
}

Matrix right_mult_matrix(const StructuredAlgebra& B, const Vec& b) {
    Matrix m(B.dim, B.dim);
    for (std::size_t j = 0; j < B.dim; ++j) m.set_col(j, B.mul(B.basis(j), b));
    return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

Matrix sub_block(const Matrix& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    Matrix out(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = m(i, j);
    return out;
}

}  // namespace

Vec Bimodule::unit_vector() const {
    Vec v = zero_vec(dim());
    for (std::size_t i = 0; i < dim_b(); ++i) v[i] = B->unit[i];
    return v;
}

Matrix Bimodule::projection() const {
    Matrix m(dim_b(), dim());
    for (std::size_t i = 0; i < dim_b(); ++i) m(i, i) = 1;
    return m;
}

std::vector<Vec> Bimodule::kernel_basis() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim_o; ++i) out.push_back(unit_vec(dim(), dim_b() + i));
    return out;
}

Matrix Bimodule::left_action_o(const Vec& b) const { return combine(left_o, b, dim_o); }
Matrix Bimodule::right_action_o(const Vec& b) const { return combine(right_o, b, dim_o); }

Matrix Bimodule::left_action(const Vec& b) const { return block_diag(B->left_matrix(b), left_action_o(b)); }
Matrix Bimodule::right_action(const Vec& b) const {
    return block_diag(right_mult_matrix(*B, b), right_action_o(b));
}

bool Bimodule::in_left(const Matrix& T) const {
    for (std::size_t j = 0; j < dim_b(); ++j) {
        Matrix R = right_action(B->basis(j));
        if (!(T * R == R * T)) return false;
    }
    return true;
}

bool Bimodule::in_right(const Matrix& T) const {
    for (std::size_t j = 0; j < dim_b(); ++j) {
        Matrix L = left_action(B->basis(j));
        if (!(T * L == L * T)) return false;
    }
    return true;
}

std::string Bimodule::defect() const {
    if (left_o.size() != dim_b() || right_o.size() != dim_b()) return "action list length";
    for (std::size_t j = 0; j < dim_b(); ++j)
        if (left_o[j].rows() != dim_o || left_o[j].cols() != dim_o || right_o[j].rows() != dim_o ||
            right_o[j].cols() != dim_o)
            return "action matrix shape";
    Matrix I = Matrix::identity(dim_o);
    if (!(left_action_o(B->unit) == I)) return "left action not unital";
    if (!(right_action_o(B->unit) == I)) return "right action not unital";
    for (std::size_t i = 0; i < dim_b(); ++i)
        for (std::size_t j = 0; j < dim_b(); ++j) {
            Vec p = B->mult[i][j];
            if (!(left_action_o(p) == left_o[i] * left_o[j]))
                return "left action not multiplicative at " + B->labels[i] + "," + B->labels[j];
            if (!(right_action_o(p) == right_o[j] * right_o[i]))
                return "right action not anti-multiplicative at " + B->labels[i] + "," + B->labels[j];
            if (!(left_o[i] * right_o[j] == right_o[j] * left_o[i]))
                return "actions do not commute at " + B->labels[i] + "," + B->labels[j];
        }
    return {};
}

Bimodule scalar_bimodule(AlgebraPtr B, std::size_t dim_o) {
    Bimodule x;
    x.B = B;
    x.dim_o = dim_o;
    for (std::size_t i = 0; i < dim_o; ++i) x.labels.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < B->dim; ++j) {
        Matrix m = Matrix::identity(dim_o).scaled(B->unit[j]);
        x.left_o.push_back(m);
        x.right_o.push_back(m);
    }
    if (!x.defect().empty()) throw std::invalid_argument("scalar bimodule needs B = Q");
    return x;
}

Matrix ThetaRep::theta(const Vec& a) const {
    Matrix m(X.dim(), X.dim());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) m = m + theta_basis[i].scaled(a[i]);
    return m;
}

Vec ThetaRep::expectation(const Matrix& M) const {
    Vec v = M * X.unit_vector();
    v.resize(X.dim_b());
    return v;
}

ThetaRep build_bimodule_from_space(const BBProbSpace& space) {
    const auto& A = *space.A;
    const auto& B = *space.B;
    auto kvecs = nullspace(space.expectation);
    Coordinates kc(kvecs, A.dim);
    std::vector<Vec> rel;
    for (std::size_t t = 0; t < A.dim; ++t)
        for (std::size_t j = 0; j < B.dim; ++j) {
            Vec d = sub(A.mul(A.basis(t), space.L(B.basis(j))), A.mul(A.basis(t), space.R(B.basis(j))));
            if (!is_zero(d)) rel.push_back(kc(d));
        }
    Quotient quo(kvecs.size(), rel);

    ThetaRep rep;
    rep.space = &space;
    rep.X.B = space.B;
    rep.X.dim_o = quo.dim();
    for (std::size_t c = 0; c < quo.dim(); ++c) rep.X.labels.push_back("q" + std::to_string(c + 1));
    const std::size_t nb = B.dim, nx = nb + quo.dim();

    auto phi = [&](const Vec& v) {
        Vec e = space.E(v);
        Vec w = sub(v, space.L(e));
        Vec q = kvecs.empty() ? Vec{} : quo.reduce(kc(w));
        Vec out = e;
        out.insert(out.end(), q.begin(), q.end());
        return out;
    };
    std::vector<Vec> reps;  // A-representatives of the X basis
    for (std::size_t j = 0; j < nb; ++j) reps.push_back(space.L(B.basis(j)));
    for (std::size_t c = 0; c < quo.dim(); ++c) {
        Vec lifted = quo.lift(unit_vec(quo.dim(), c));
        Vec a = zero_vec(A.dim);
        for (std::size_t i = 0; i < kvecs.size(); ++i) axpy(a, lifted[i], kvecs[i]);
        reps.push_back(a);
    }
    for (std::size_t t = 0; t < A.dim; ++t) {
        Matrix m(nx, nx);
        for (std::size_t c = 0; c < nx; ++c) m.set_col(c, phi(A.mul(A.basis(t), reps[c])));
        rep.theta_basis.push_back(m);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        Matrix l = rep.theta(space.L(B.basis(j))), r = rep.theta(space.R(B.basis(j)));
        for (const Matrix* m : {&l, &r}) {
            if (!sub_block(*m, 0, nb, nb, nx).is_zero() || !sub_block(*m, nb, nx, 0, nb).is_zero())
                throw std::logic_error("B-action does not preserve the decomposition");
        }
        rep.X.left_o.push_back(sub_block(l, nb, nx, nb, nx));
        rep.X.right_o.push_back(sub_block(r, nb, nx, nb, nx));
    }
    if (auto d = rep.X.defect(); !d.empty()) throw std::logic_error("constructed bimodule: " + d);
    return rep;
}

Bimodule doubled_bimodule(const Bimodule& x) {
    Bimodule y;
    y.B = x.B;
    y.dim_o = x.dim_o + x.dim();
    for (const auto& l : x.labels) y.labels.push_back(l + "'1");
    for (const auto& l : x.B->labels) y.labels.push_back(l + "'2");
    for (const auto& l : x.labels) y.labels.push_back(l + "'2");
    for (std::size_t j = 0; j < x.dim_b(); ++j) {
        Vec b = x.B->basis(j);
        y.left_o.push_back(block_diag(x.left_o[j], x.left_action(b)));
        y.right_o.push_back(block_diag(x.right_o[j], x.right_action(b)));
    }
    return y;
}

Matrix doubled_T(const Bimodule& x, const Matrix& thetaZ) {
    const std::size_t d = x.dim();
    Matrix m(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, d + j) = thetaZ(i, j);
    return m;
}

Matrix doubled_S(const Bimodule& x) {
    const std::size_t d = x.dim();
    Matrix m(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) m(d + i, i) = 1;
    return m;
}

Matrix doubled_D(const Bimodule& x, const Matrix& thetaZ) {
    if (thetaZ.rows() != x.dim()) throw SizeMismatch("operator size differs from the module");
    return block_diag(thetaZ, thetaZ);
}

Vec doubled_first(const Bimodule& x, const Vec& v) {
    Vec out = v;
    out.resize(2 * x.dim(), Q(0));
    return out;
}

Vec doubled_second(const Bimodule& x, const Vec& v) {
    Vec out = zero_vec(x.dim());
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace bnc
