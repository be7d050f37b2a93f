#include "bnc/algebra.hpp"

#include <sstream>

#include "bnc/errors.hpp"

namespace bnc {

Vec StructuredAlgebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim || y.size() != dim) throw SizeMismatch("algebra element length");
    Vec r(dim, Q(0));
    for (std::size_t i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (y[j] == 0) continue;
            Q c = x[i] * y[j];
            const Vec& p = mult[i][j];
            for (std::size_t k = 0; k < dim; ++k)
                if (p[k] != 0) r[k] += c * p[k];
        }
    }
    return r;
}

Matrix StructuredAlgebra::left_matrix(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, mul(x, basis(j)));
    return m;
}

std::optional<std::string> StructuredAlgebra::structural_defect() const {
    if (mult.size() != dim || unit.size() != dim || labels.size() != dim) return "shape";
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e = basis(i);
        if (mul(unit, e) != e || mul(e, unit) != e) return "unit fails on " + labels[i];
        for (std::size_t j = 0; j < dim; ++j) {
            Vec ij = mult[i][j];
            for (std::size_t k = 0; k < dim; ++k) {
                Vec ek = basis(k);
                if (mul(ij, ek) != mul(e, mult[j][k]))
                    return "associativity fails on (" + labels[i] + "," + labels[j] + "," + labels[k] + ")";
            }
        }
    }
    return std::nullopt;
}

AlgebraPtr scalar_algebra() {
    auto a = std::make_shared<StructuredAlgebra>();
    a->dim = 1;
    a->labels = {"1"};
    a->mult = {{Vec{Q(1)}}};
    a->unit = Vec{Q(1)};
    return a;
}

AlgebraPtr matrix_algebra(std::size_t n) {
    auto a = std::make_shared<StructuredAlgebra>();
    a->dim = n * n;
    a->mult.assign(a->dim, std::vector<Vec>(a->dim, zero_vec(a->dim)));
    a->unit = zero_vec(a->dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a->labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
            for (std::size_t k = 0; k < n; ++k) a->mult[i * n + j][j * n + k][i * n + k] = 1;
        }
    for (std::size_t i = 0; i < n; ++i) a->unit[i * n + i] = 1;
    return a;
}

AlgebraPtr diagonal_algebra(std::size_t n) {
    auto a = std::make_shared<StructuredAlgebra>();
    a->dim = n;
    a->mult.assign(n, std::vector<Vec>(n, zero_vec(n)));
    a->unit = Vec(n, Q(1));
    for (std::size_t i = 0; i < n; ++i) {
        a->labels.push_back("P" + std::to_string(i + 1));
        a->mult[i][i][i] = 1;
    }
    return a;
}

AlgebraElement::AlgebraElement(AlgebraPtr p, Vec c) : parent(std::move(p)), coeffs(std::move(c)) {
    if (coeffs.size() != parent->dim) throw SizeMismatch("element length differs from algebra dimension");
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->dim == b->dim && a->mult == b->mult && a->unit == b->unit;
}

AlgebraElement algebra_mul(const AlgebraElement& x, const AlgebraElement& y) {
    if (!same_algebra(x.parent, y.parent)) throw MismatchedAlgebra("product across algebras");
    return {x.parent, x.parent->mul(x.coeffs, y.coeffs)};
}

AlgebraElement algebra_add(const AlgebraElement& x, const AlgebraElement& y) {
    if (!same_algebra(x.parent, y.parent)) throw MismatchedAlgebra("sum across algebras");
    return {x.parent, add(x.coeffs, y.coeffs)};
}

AlgebraElement algebra_scale(const Q& s, const AlgebraElement& x) { return {x.parent, scale(s, x.coeffs)}; }

char side_letter(Side s) {
    switch (s) {
        case Side::Left: return 'l';
        case Side::Right: return 'r';
        default: return 'b';
    }
}

Side side_from_letter(char c) {
    switch (c) {
        case 'l': return Side::Left;
        case 'r': return Side::Right;
        case 'b': return Side::Boolean;
        default: throw AlphabetError(std::string("unknown side letter '") + c + "'");
    }
}

bool BBProbSpace::in_left_algebra(const Vec& x) const {
    for (std::size_t j = 0; j < B->dim; ++j) {
        Vec r = R(B->basis(j));
        if (A->mul(x, r) != A->mul(r, x)) return false;
    }
    return true;
}

bool BBProbSpace::in_right_algebra(const Vec& x) const {
    for (std::size_t j = 0; j < B->dim; ++j) {
        Vec l = L(B->basis(j));
        if (A->mul(x, l) != A->mul(l, x)) return false;
    }
    return true;
}

bool BBProbSpace::in_side(const Vec& x, Side s) const {
    return s == Side::Right ? in_right_algebra(x) : in_left_algebra(x);
}

bool AxiomReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

std::string fmt_vec(const Vec& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << "]";
    return os.str();
}

}  // namespace

AxiomReport check_bb_axioms(const BBProbSpace& s) {
    AxiomReport rep;
    const auto& A = *s.A;
    const auto& B = *s.B;
    auto add_check = [&](const std::string& name) -> AxiomCheck& {
        rep.checks.push_back({name, true, ""});
        return rep.checks.back();
    };
    auto shape_ok = s.expectation.rows() == B.dim && s.expectation.cols() == A.dim &&
                    s.left_embed.rows() == A.dim && s.left_embed.cols() == B.dim &&
                    s.right_embed.rows() == A.dim && s.right_embed.cols() == B.dim;
    {
        auto& c = add_check("shapes");
        if (!shape_ok) {
            c.pass = false;
            c.witness = "matrix shapes do not match algebra dimensions";
            return rep;
        }
    }
    {
        auto& c = add_check("algebra A structure");
        if (auto d = A.structural_defect()) c.pass = false, c.witness = *d;
        auto& c2 = add_check("algebra B structure");
        if (auto d = B.structural_defect()) c2.pass = false, c2.witness = *d;
    }
    {
        auto& c = add_check("left embedding unital homomorphism");
        if (s.L(B.unit) != A.unit) c.pass = false, c.witness = "L(1) != 1";
        for (std::size_t i = 0; i < B.dim && c.pass; ++i)
            for (std::size_t j = 0; j < B.dim && c.pass; ++j)
                if (s.L(B.mult[i][j]) != A.mul(s.L(B.basis(i)), s.L(B.basis(j))))
                    c.pass = false, c.witness = "b1=" + B.labels[i] + " b2=" + B.labels[j];
    }
    {
        auto& c = add_check("right embedding unital anti-homomorphism");
        if (s.R(B.unit) != A.unit) c.pass = false, c.witness = "R(1) != 1";
        for (std::size_t i = 0; i < B.dim && c.pass; ++i)
            for (std::size_t j = 0; j < B.dim && c.pass; ++j)
                if (s.R(B.mult[i][j]) != A.mul(s.R(B.basis(j)), s.R(B.basis(i))))
                    c.pass = false, c.witness = "b1=" + B.labels[i] + " b2=" + B.labels[j];
    }
    {
        auto& c = add_check("embeddings injective");
        if (rank(s.left_embed) != B.dim) c.pass = false, c.witness = "left embedding has a kernel";
        else if (rank(s.right_embed) != B.dim) c.pass = false, c.witness = "right embedding has a kernel";
    }
    {
        auto& c = add_check("left and right copies commute");
        for (std::size_t i = 0; i < B.dim && c.pass; ++i)
            for (std::size_t j = 0; j < B.dim && c.pass; ++j) {
                Vec l = s.L(B.basis(i)), r = s.R(B.basis(j));
                if (A.mul(l, r) != A.mul(r, l)) c.pass = false, c.witness = "L(" + B.labels[i] + "), R(" + B.labels[j] + ")";
            }
    }
    {
        auto& c = add_check("expectation unital");
        if (s.E(A.unit) != B.unit) c.pass = false, c.witness = "E(1) = " + fmt_vec(s.E(A.unit));
    }
    {
        auto& c = add_check("expectation bimodular");
        for (std::size_t i = 0; i < B.dim && c.pass; ++i)
            for (std::size_t j = 0; j < B.dim && c.pass; ++j) {
                Vec lr = A.mul(s.L(B.basis(i)), s.R(B.basis(j)));
                for (std::size_t t = 0; t < A.dim && c.pass; ++t) {
                    Vec lhs = s.E(A.mul(lr, A.basis(t)));
                    Vec rhs = B.mul(B.mul(B.basis(i), s.E(A.basis(t))), B.basis(j));
                    if (lhs != rhs)
                        c.pass = false,
                        c.witness = "b1=" + B.labels[i] + " b2=" + B.labels[j] + " T=" + A.labels[t] + ": " +
                                    fmt_vec(lhs) + " vs " + fmt_vec(rhs);
                }
            }
    }
    {
        auto& c = add_check("E(T L_b) = E(T R_b)");
        for (std::size_t t = 0; t < A.dim && c.pass; ++t)
            for (std::size_t j = 0; j < B.dim && c.pass; ++j) {
                Vec lhs = s.E(A.mul(A.basis(t), s.L(B.basis(j))));
                Vec rhs = s.E(A.mul(A.basis(t), s.R(B.basis(j))));
                if (lhs != rhs) c.pass = false, c.witness = "T=" + A.labels[t] + " b=" + B.labels[j];
            }
    }
    return rep;
}

AlgebraElement expectation_apply(const BBProbSpace& space, const AlgebraElement& x) {
    if (!same_algebra(x.parent, space.A)) throw MismatchedAlgebra("expectation of an element outside A");
    return {space.B, space.E(x.coeffs)};
}

std::vector<Vec> side_algebra_basis(const BBProbSpace& s, Side side) {
    const auto& A = *s.A;
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < s.B->dim; ++j) {
        Vec g = side == Side::Right ? s.L(s.B->basis(j)) : s.R(s.B->basis(j));
        // x g - g x as a linear function of x
        Matrix m(A.dim, A.dim);
        for (std::size_t t = 0; t < A.dim; ++t) m.set_col(t, sub(A.mul(A.basis(t), g), A.mul(g, A.basis(t))));
        for (std::size_t r = 0; r < A.dim; ++r) rows.push_back(m.row(r));
    }
    return nullspace(Matrix::from_rows(rows));
}

Q random_small_rational(std::mt19937_64& rng, int range) {
    int span = 2 * range + 1;
    long num = static_cast<long>(rng() % static_cast<unsigned long>(span)) - range;
    long den = 1 + static_cast<long>(rng() % 2);
    Q q(num, den);
    q.canonicalize();
    return q;
}

Vec random_combination(const std::vector<Vec>& basis, std::mt19937_64& rng, int range) {
    if (basis.empty()) return {};
    Vec v = zero_vec(basis[0].size());
    for (const auto& b : basis) axpy(v, random_small_rational(rng, range), b);
    return v;
}

namespace {

Matrix embed_scalars(std::size_t n) {
    // b -> b * I_n, for B = Q inside M_n
    Matrix m(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) m(i * n + i, 0) = 1;
    return m;
}

Matrix embed_diagonal(std::size_t n) {
    Matrix m(n * n, n);
    for (std::size_t i = 0; i < n; ++i) m(i * n + i, i) = 1;
    return m;
}

}  // namespace

BBProbSpace fixture_scalar() {
    BBProbSpace s;
    s.name = "scalar";
    s.A = scalar_algebra();
    s.B = scalar_algebra();
    s.expectation = Matrix::identity(1);
    s.left_embed = Matrix::identity(1);
    s.right_embed = Matrix::identity(1);
    return s;
}

BBProbSpace fixture_m2_scalar() {
    BBProbSpace s;
    s.name = "m2-scalar";
    s.A = matrix_algebra(2);
    s.B = scalar_algebra();
    s.expectation = Matrix(1, 4);
    s.expectation(0, 0) = 1;
    s.left_embed = embed_scalars(2);
    s.right_embed = embed_scalars(2);
    return s;
}

BBProbSpace fixture_diag2() {
    BBProbSpace s;
    s.name = "diag2";
    s.A = matrix_algebra(2);
    s.B = diagonal_algebra(2);
    s.expectation = embed_diagonal(2).transpose();
    s.left_embed = embed_diagonal(2);
    s.right_embed = embed_diagonal(2);
    return s;
}

BBProbSpace fixture_diag2_broken() {
    BBProbSpace s = fixture_diag2();
    s.name = "diag2-broken";
    s.expectation = Matrix(2, 4);
    s.expectation(1, 1) = 1;
    return s;
}

FaceReport check_faces(const FaceAssignment& fa) {
    FaceReport rep;
    const auto& s = *fa.space;
    const auto& A = *s.A;
    for (std::size_t k = 0; k < fa.faces.size(); ++k) {
        for (int slot = 0; slot < 3; ++slot) {
            Side side = slot == 0 ? Side::Left : slot == 1 ? Side::Right : Side::Boolean;
            for (std::size_t g = 0; g < fa.faces[k][slot].size(); ++g) {
                const Vec& z = fa.faces[k][slot][g];
                if (!s.in_side(z, side)) {
                    rep.ok = false;
                    rep.violations.push_back("face " + std::to_string(k) + " slot " + side_letter(side) +
                                             " generator " + std::to_string(g) + " outside its side algebra");
                }
            }
        }
        // B-closure of the boolean face on generators: L_b Z L_b' must lie in the span of
        // products of generators of length <= 3.
        const auto& gens = fa.faces[k][2];
        if (gens.empty()) continue;
        std::vector<Vec> span = gens, layer = gens;
        for (int len = 2; len <= 3; ++len) {
            std::vector<Vec> next;
            for (const auto& w : layer)
                for (const auto& g : gens) next.push_back(A.mul(w, g));
            span.insert(span.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        std::size_t r0 = rank(Matrix::from_rows(span));
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t i = 0; i < s.B->dim; ++i)
                for (std::size_t j = 0; j < s.B->dim; ++j) {
                    Vec x = A.mul(A.mul(s.L(s.B->basis(i)), gens[g]), s.L(s.B->basis(j)));
                    auto ext = span;
                    ext.push_back(x);
                    if (rank(Matrix::from_rows(ext)) != r0) {
                        rep.ok = false;
                        rep.violations.push_back("face " + std::to_string(k) + " boolean generator " +
                                                 std::to_string(g) + " not closed under L_B multiplication");
                    }
                }
    }
    return rep;
}

}  // namespace bnc
