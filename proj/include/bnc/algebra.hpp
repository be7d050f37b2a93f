#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bnc/linalg.hpp"

namespace bnc {

// Finite-dimensional unital algebra given by structure constants.
struct StructuredAlgebra {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Vec>> mult;  // mult[i][j] = e_i e_j in the basis
    Vec unit;

    Vec mul(const Vec& x, const Vec& y) const;
    Vec basis(std::size_t i) const { return unit_vec(dim, i); }
    // Left-multiplication matrix of x.
    Matrix left_matrix(const Vec& x) const;
    // First failing associativity or unit check, if any.
    std::optional<std::string> structural_defect() const;
};

using AlgebraPtr = std::shared_ptr<const StructuredAlgebra>;

AlgebraPtr scalar_algebra();
AlgebraPtr matrix_algebra(std::size_t n);    // basis E_ij, index i*n+j
AlgebraPtr diagonal_algebra(std::size_t n);  // basis of diagonal idempotents

struct AlgebraElement {
    AlgebraPtr parent;
    Vec coeffs;

    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr p, Vec c);
    static AlgebraElement unit(AlgebraPtr p) { return {p, p->unit}; }
    static AlgebraElement zero(AlgebraPtr p) { return {p, zero_vec(p->dim)}; }
    bool operator==(const AlgebraElement& o) const { return coeffs == o.coeffs; }
    bool is_zero() const { return bnc::is_zero(coeffs); }
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraElement algebra_mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement algebra_add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement algebra_scale(const Q& s, const AlgebraElement& x);

enum class Side { Left, Right, Boolean };
char side_letter(Side s);
Side side_from_letter(char c);  // l, r, b

struct BBProbSpace {
    std::string name;
    AlgebraPtr A, B;
    Matrix expectation;  // dim B x dim A
    Matrix left_embed;   // dim A x dim B
    Matrix right_embed;  // dim A x dim B

    Vec L(const Vec& b) const { return left_embed * b; }
    Vec R(const Vec& b) const { return right_embed * b; }
    Vec E(const Vec& x) const { return expectation * x; }
    bool in_left_algebra(const Vec& x) const;   // commutes with every R_b
    bool in_right_algebra(const Vec& x) const;  // commutes with every L_b
    bool in_side(const Vec& x, Side s) const;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool ok() const;
};

AxiomReport check_bb_axioms(const BBProbSpace& space);
AlgebraElement expectation_apply(const BBProbSpace& space, const AlgebraElement& x);

// Basis of the left algebra (commutant of R_B) or right algebra (commutant of L_B).
std::vector<Vec> side_algebra_basis(const BBProbSpace& space, Side s);

// Deterministic small-integer random combination of a basis.
Vec random_combination(const std::vector<Vec>& basis, std::mt19937_64& rng, int range = 3);
Q random_small_rational(std::mt19937_64& rng, int range = 3);

BBProbSpace fixture_scalar();
BBProbSpace fixture_m2_scalar();
BBProbSpace fixture_diag2();
// diag2 with the deliberately broken expectation T -> (0, T_12).
BBProbSpace fixture_diag2_broken();

// Faces for a family indexed by k = 0..K-1, given by generator lists.
struct FaceAssignment {
    const BBProbSpace* space = nullptr;
    // faces[k][slot] with slot 0 = l, 1 = r, 2 = b
    std::vector<std::array<std::vector<Vec>, 3>> faces;
};

struct FaceReport {
    bool ok = true;
    std::vector<std::string> violations;
};
FaceReport check_faces(const FaceAssignment& fa);

}  // namespace bnc
