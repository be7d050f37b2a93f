#pragma once
#include <random>

#include "bnc/bimodule.hpp"
#include "bnc/free_product.hpp"

namespace helpers {

using namespace bnc;

// X° = 2x2 matrices over B = diag2, b acting by left and right multiplication.
inline Bimodule matrix_bimodule() {
    Bimodule x;
    x.B = diagonal_algebra(2);
    x.dim_o = 4;
    x.labels = {"x11", "x12", "x21", "x22"};
    for (int a = 0; a < 2; ++a) {
        Matrix l(4, 4), r(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const int idx = i * 2 + j;
                if (i == a) l(idx, idx) = 1;
                if (j == a) r(idx, idx) = 1;
            }
        x.left_o.push_back(l);
        x.right_o.push_back(r);
    }
    return x;
}

// Random element of L_l(X) (commutes with right actions) or L_r(X), from the commutant's basis.
inline Matrix random_side_operator(const Bimodule& x, Side side, std::mt19937_64& rng, int range = 2) {
    const std::size_t n = x.dim();
    std::vector<Vec> rows;
    for (std::size_t bj = 0; bj < x.dim_b(); ++bj) {
        Matrix A = side == Side::Left ? x.right_action(x.B->basis(bj)) : x.left_action(x.B->basis(bj));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec r(n * n, Q(0));
                for (std::size_t k = 0; k < n; ++k) {
                    r[i * n + k] += A(k, j);
                    r[k * n + j] -= A(i, k);
                }
                rows.push_back(r);
            }
    }
    Vec c = random_combination(nullspace(Matrix::from_rows(rows)), rng, range);
    Matrix T(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) T(i, j) = c[i * n + j];
    return T;
}

}  // namespace helpers
