#include <doctest.h>

#include <array>

#include "bnc/algebra.hpp"
#include "bnc/errors.hpp"

using namespace bnc;

namespace {

// Plain 2x2 matrix product, used as the oracle for the matrix-unit table.
using M2 = std::array<std::array<long, 2>, 2>;
M2 unit_matrix(int i, int j) {
    M2 m{};
    m[i][j] = 1;
    return m;
}
M2 prod(const M2& a, const M2& b) {
    M2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}
Vec flatten(const M2& m) { return {qint(m[0][0]), qint(m[0][1]), qint(m[1][0]), qint(m[1][1])}; }

bool all_pass(const AxiomReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace

TEST_CASE("unit times basis element is the basis element") {
    for (auto A : {scalar_algebra(), diagonal_algebra(2), matrix_algebra(2), matrix_algebra(3)}) {
        auto one = AlgebraElement::unit(A);
        for (std::size_t i = 0; i < A->dim; ++i) {
            AlgebraElement e(A, A->basis(i));
            CHECK(algebra_mul(one, e) == e);
            CHECK(algebra_mul(e, one) == e);
        }
    }
}

TEST_CASE("orthogonal diagonal idempotents multiply to zero") {
    auto B = diagonal_algebra(2);
    AlgebraElement p(B, B->basis(0)), q(B, B->basis(1));
    CHECK(algebra_mul(p, q).is_zero());
    CHECK(algebra_mul(q, p).is_zero());
    CHECK(algebra_mul(p, p) == p);
}

TEST_CASE("matrix units multiply like matrices") {
    auto A = matrix_algebra(2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            M2 x = unit_matrix(a / 2, a % 2), y = unit_matrix(b / 2, b % 2);
            CHECK(A->mul(A->basis(a), A->basis(b)) == flatten(prod(x, y)));
        }
    // E12 E21 = E11
    CHECK(algebra_mul({A, A->basis(1)}, {A, A->basis(2)}) == AlgebraElement(A, A->basis(0)));
}

TEST_CASE("products of elements from different algebras are rejected") {
    AlgebraElement x(matrix_algebra(2), matrix_algebra(2)->unit);
    AlgebraElement y(diagonal_algebra(2), diagonal_algebra(2)->unit);
    CHECK_THROWS_AS(algebra_mul(x, y), MismatchedAlgebra);
    CHECK_THROWS_AS(algebra_add(x, y), MismatchedAlgebra);
}

TEST_CASE("structure constants are associative and unital") {
    for (auto A : {scalar_algebra(), diagonal_algebra(3), matrix_algebra(2), matrix_algebra(3)})
        CHECK_FALSE(A->structural_defect().has_value());
}

TEST_CASE("a broken multiplication table is detected") {
    auto bad = std::make_shared<StructuredAlgebra>(*matrix_algebra(2));
    bad->mult[1][2] = bad->basis(3);  // E12 E21 := E22
    CHECK(bad->structural_defect().has_value());
}

TEST_CASE("desk fixtures satisfy the B-B axioms") {
    for (auto s : {fixture_scalar(), fixture_m2_scalar(), fixture_diag2()}) {
        INFO(s.name);
        CHECK(all_pass(check_bb_axioms(s)));
    }
}

TEST_CASE("the off-diagonal expectation fails bimodularity with a witness") {
    auto rep = check_bb_axioms(fixture_diag2_broken());
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "expectation bimodular") {
            found = true;
            CHECK_FALSE(c.pass);
            CHECK_FALSE(c.witness.empty());
        }
    CHECK(found);
}

TEST_CASE("expectation values on the desk fixtures") {
    auto m2 = fixture_m2_scalar();
    CHECK(expectation_apply(m2, AlgebraElement::unit(m2.A)) == AlgebraElement::unit(m2.B));
    CHECK(expectation_apply(m2, {m2.A, m2.A->basis(3)}).is_zero());  // E22
    CHECK(expectation_apply(m2, {m2.A, m2.A->basis(0)}) == AlgebraElement::unit(m2.B));

    auto d2 = fixture_diag2();
    CHECK(expectation_apply(d2, AlgebraElement::unit(d2.A)) == AlgebraElement::unit(d2.B));
    CHECK(expectation_apply(d2, {d2.A, d2.A->basis(1)}).is_zero());  // E12
    CHECK(expectation_apply(d2, {d2.A, d2.A->basis(3)}) == AlgebraElement(d2.B, d2.B->basis(1)));
    CHECK_THROWS_AS(expectation_apply(d2, AlgebraElement::unit(d2.B)), MismatchedAlgebra);
}

TEST_CASE("embeddings are homomorphisms and anti-homomorphisms") {
    auto s = fixture_diag2();
    const auto& B = *s.B;
    for (std::size_t i = 0; i < B.dim; ++i)
        for (std::size_t j = 0; j < B.dim; ++j) {
            Vec bij = B.mul(B.basis(i), B.basis(j));
            CHECK(s.L(bij) == s.A->mul(s.L(B.basis(i)), s.L(B.basis(j))));
            CHECK(s.R(bij) == s.A->mul(s.R(B.basis(j)), s.R(B.basis(i))));
        }
}

TEST_CASE("side membership on diag2") {
    auto s = fixture_diag2();
    // L_b = R_b = diagonal here, so only diagonal elements commute with all of them
    CHECK(s.in_side(s.A->basis(0), Side::Left));
    CHECK(s.in_side(s.A->basis(3), Side::Right));
    CHECK_FALSE(s.in_side(s.A->basis(1), Side::Left));
    CHECK_FALSE(s.in_side(s.A->basis(2), Side::Right));
    CHECK(side_algebra_basis(s, Side::Left).size() == 2);
}

TEST_CASE("face checks") {
    auto s = fixture_m2_scalar();
    FaceAssignment fa{&s, {{{{s.A->basis(1)}, {s.A->basis(2)}, {s.A->unit}}}}};
    CHECK(check_faces(fa).ok);

    auto d = fixture_diag2();
    FaceAssignment bad{&d, {{{{d.A->basis(1)}, {}, {}}}}};
    auto rep = check_faces(bad);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
}

TEST_CASE("random small rationals are canonical") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Q q = random_small_rational(rng);
        Q c = q;
        c.canonicalize();
        CHECK(q.get_num() == c.get_num());
        CHECK(q.get_den() == c.get_den());
    }
}
