#pragma once
#include <vector>

#include "bnc/free_product.hpp"
#include "bnc/lr_diagram.hpp"

namespace bnc {

// mu_i(T_i): lambda (Left) or rho (Right) of T on component `colour`.
struct LROp {
    Side side = Side::Left;
    int colour = 0;
    Matrix T;
};

ChiMap ops_chi(const std::vector<LROp>& ops);
EpsilonMap ops_eps(const std::vector<LROp>& ops);

// mu_1(T_1)...mu_n(T_n) 1_B; positions in `projected` get P_eps(i) applied after mu_i.
FPVector lr_word_vector(const std::vector<LROp>& ops, const FreeProduct& fp,
                        const std::vector<std::size_t>& projected = {});

// E_D(mu_1(T_1), ..., mu_n(T_n)) for a diagram over the same colouring and shading.
FPVector e_d_vector(const LRDiagram& d, const std::vector<LROp>& ops, const FreeProduct& fp);

// (-1)^(number of cuts)
Q diagram_coefficient(const LRDiagram& d);

struct DiagramTerm {
    LRDiagram diagram;
    Q coef;
    FPVector vec;
};

struct LRDecomposition {
    ChiMap chi;
    EpsilonMap eps;
    std::vector<std::size_t> projected;  // 0-based, ascending
    FPVector direct;
    std::vector<DiagramTerm> terms;  // all of LR^lat
    bool reconstructs = false;       // sum of terms equals direct

    FPVector projected_word;          // primed word vector
    std::vector<DiagramTerm> kept;    // survivors of every projection
    std::vector<DiagramTerm> residual;  // the family S
    bool kept_matches = false;          // sum over kept equals projected_word
    bool split_reconstructs = false;    // direct = projected_word + sum over S
    bool residual_in_family = false;    // every D in S extends a colour-violating suffix diagram
    FPVector residual_sum;
};

LRDecomposition lr_decompose(const std::vector<LROp>& ops, const FreeProduct& fp,
                             std::vector<std::size_t> projected = {});

}  // namespace bnc
