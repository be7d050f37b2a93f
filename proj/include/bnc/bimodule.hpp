#pragma once
#include <string>
#include <vector>

#include "bnc/algebra.hpp"

namespace bnc {

// X = B (+) X°, coordinates [B basis | X° basis]. Actions are block diagonal:
// multiplication in B on the first block, the given matrices on X°.
struct Bimodule {
    AlgebraPtr B;
    std::size_t dim_o = 0;
    std::vector<std::string> labels;  // X° basis labels
    std::vector<Matrix> left_o;       // per B basis element, dim_o x dim_o
    std::vector<Matrix> right_o;

    std::size_t dim_b() const { return B->dim; }
    std::size_t dim() const { return B->dim + dim_o; }
    Vec unit_vector() const;
    Matrix projection() const;             // dim_b x dim
    std::vector<Vec> kernel_basis() const;  // X° inside X

    Matrix left_action(const Vec& b) const;   // full dim x dim
    Matrix right_action(const Vec& b) const;
    Matrix left_action_o(const Vec& b) const;  // X° block only
    Matrix right_action_o(const Vec& b) const;

    bool in_left(const Matrix& T) const;   // commutes with every right action
    bool in_right(const Matrix& T) const;  // commutes with every left action
    // First violated invariant, empty when the module is well formed.
    std::string defect() const;
};

Bimodule scalar_bimodule(AlgebraPtr B, std::size_t dim_o);

// Result of the faithful-representation construction on a B-B space.
struct ThetaRep {
    Bimodule X;
    const BBProbSpace* space = nullptr;
    std::vector<Matrix> theta_basis;  // theta of each basis element of A

    Matrix theta(const Vec& a) const;
    // E_{L(X)}(M) = p M 1_B
    Vec expectation(const Matrix& M) const;
};

ThetaRep build_bimodule_from_space(const BBProbSpace& space);

// Y = X (+) X with Y° = X° (+) X. Coordinates [B | X° | X].
Bimodule doubled_bimodule(const Bimodule& x);

// Operators of the doubling construction, all on Y coordinates.
Matrix doubled_T(const Bimodule& x, const Matrix& thetaZ);  // (xi1, xi2) -> (thetaZ xi2, 0)
Matrix doubled_S(const Bimodule& x);                        // (xi1, xi2) -> (0, xi1)
Matrix doubled_D(const Bimodule& x, const Matrix& thetaZ);  // diag(thetaZ, thetaZ)

// Embeds an X-operator into the first or second copy inside Y.
Vec doubled_first(const Bimodule& x, const Vec& v);
Vec doubled_second(const Bimodule& x, const Vec& v);

}  // namespace bnc
