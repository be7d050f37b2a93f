#pragma once
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "bnc/algebra.hpp"
#include "bnc/bimodule.hpp"
#include "bnc/free_product.hpp"
#include "bnc/moments.hpp"

namespace bnc {

struct Claim {
    std::string id;
    bool pass = true;
    std::size_t checked = 0;
    std::string witness;  // first failure, empty on success
    // detail() is only called for the first failure
    template <class F>
    void record(bool ok, F&& detail) {
        ++checked;
        if (!ok && pass) {
            pass = false;
            witness = detail();
        }
    }
};

struct ClaimReport {
    std::deque<Claim> claims;
    Claim& claim(const std::string& id);  // finds or appends
    const Claim* find(const std::string& id) const;
    bool pass() const;
    void merge(const ClaimReport& other);
};

// Triples of faces: faces[k][0] left, [1] right, [2] boolean.
using FfbFamily = FaceAssignment;

// Part k of a system on a free product: lambda_k(left), rho_k(right), C' = lambda_k(c), D' = rho_k(d).
struct FfbSystemPart {
    std::vector<Matrix> left, right, c, d;
};

// The free product doubles as the bi-free witness: every element is a regular representation.
struct FfbSystem {
    std::shared_ptr<const FreeProduct> fp;
    std::vector<FfbSystemPart> parts;
};

struct WordCheckOptions {
    std::size_t word_cap = 4;
    std::size_t max_tuples = 4;  // generator tuples per word shape before sampling
    std::size_t test_depth = 2;  // input vectors for operator identities
    std::uint64_t seed = 0;
};

struct FfbEmbedding {
    ThetaRep theta;
    Bimodule Y;  // doubled bimodule
    Matrix S;
    FfbSystem system;
    ClaimReport checks;  // side tags and the telescoping identity

    Matrix T(const Vec& z) const;
    Matrix D(const Vec& z) const;
    // alpha_{s,k}(z)
    ModuleOperator alpha(int k, Side s, const Vec& z) const;
};

FfbEmbedding embed_ffb_family(const FfbFamily& fam, std::size_t depth);

// The embedding with S replaced by the identity (fails the annihilation property).
FfbSystem corrupt_system(const FfbSystem& sys);

ClaimReport check_ffb_system(const FfbSystem& sys, const WordCheckOptions& opt);
// Single-k moment preservation of the embedding maps.
ClaimReport check_partial_ffb(const FfbEmbedding& emb, const FfbFamily& fam, const WordCheckOptions& opt);

// Family in a finite space against K copies of its own theta-bimodule.
ClaimReport check_ffb_independence(const FfbFamily& fam, const WordCheckOptions& opt);
// Triples (A^l, A^r, alg(C'D')) of a system; b letters taken as c * d.
// With drop_projections the reference uses lambda(m(Z)) without P (negative control).
ClaimReport check_ffb_independence(const FfbSystem& sys, const WordCheckOptions& opt,
                                   bool drop_projections = false);

// Independence plus the proof pipeline for expanded words with n' <= min(word_cap, pipeline_cap).
ClaimReport verify_system_gives_ffb(const FfbSystem& sys, const WordCheckOptions& opt,
                                    std::size_t pipeline_cap = 3);

// Vanishing outside BNC_ffb, the moment formula and kappa vanishing for every chi_hat with n' <= max_n.
ClaimReport check_ffb_formulas(const FfbSystem& sys, std::size_t max_n, std::uint64_t seed);

// m2-scalar family with two triples; `identical` gives both indices the same faces.
FfbFamily fixture_m2_family(const BBProbSpace& space, bool identical = false);

}  // namespace bnc
