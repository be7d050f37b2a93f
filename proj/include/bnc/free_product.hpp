#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bnc/bimodule.hpp"

namespace bnc {

// One elementary tensor x_1 (x) ... (x) x_m with x_j in the reduced part of component colours[j].
struct FPTerm {
    std::vector<int> colours;
    std::vector<Vec> factors;
    std::size_t depth() const { return colours.size(); }
};

// B summand plus a finite sum of elementary tensors (not normalised).
struct FPVector {
    Vec b;
    std::vector<FPTerm> terms;
    std::size_t depth() const;
};

// Reduced free product of bimodules over a common B, truncated at a fixed tensor depth.
class FreeProduct {
public:
    FreeProduct(std::vector<Bimodule> components, std::size_t depth);

    std::size_t num_components() const { return comps_.size(); }
    const Bimodule& component(std::size_t k) const { return comps_.at(k); }
    std::size_t depth() const { return depth_; }
    const AlgebraPtr& B() const { return comps_.front().B; }
    bool scalar_base() const { return B()->dim == 1; }

    FPVector zero() const;
    FPVector unit() const;
    FPVector scalar(const Vec& b) const;
    FPVector pure(const std::vector<int>& colours, const std::vector<Vec>& factors) const;
    // x in the full coordinates of component k
    FPVector embed(int k, const Vec& x) const;

    FPVector add(const FPVector& x, const FPVector& y) const;
    FPVector sub(const FPVector& x, const FPVector& y) const;
    FPVector scale(const Q& s, const FPVector& x) const;
    const Vec& p(const FPVector& v) const { return v.b; }

    // Regular representations; T acts on the full coordinates of component k.
    FPVector lambda(int k, const Matrix& T, const FPVector& v) const;
    FPVector rho(int k, const Matrix& T, const FPVector& v) const;
    FPVector bool_proj(int k, const FPVector& v) const;
    FPVector left_b(const Vec& b, const FPVector& v) const;
    FPVector right_b(const Vec& b, const FPVector& v) const;
    // Drops terms deeper than max_depth (used when only the B part will be read).
    FPVector prune(const FPVector& v, std::size_t max_depth) const;

    bool is_zero(const FPVector& v) const;
    bool equal(const FPVector& x, const FPVector& y) const { return is_zero(sub(x, y)); }

    // Word basis up to max_depth: the B basis, then each alternating colour pattern
    // (by length, then lexicographically) with a basis of its balanced tensor product.
    std::vector<std::vector<int>> patterns(std::size_t max_depth) const;
    std::size_t pattern_dim(const std::vector<int>& colours) const;
    std::size_t dim(std::size_t max_depth) const;
    std::size_t dim() const { return dim(depth_); }
    std::vector<FPVector> word_basis(std::size_t max_depth) const;
    std::vector<std::string> word_labels(std::size_t max_depth) const;
    // Canonical coordinates over word_basis(max_depth); throws if v is deeper.
    Vec coords(const FPVector& v, std::size_t max_depth) const;
    Vec coords(const FPVector& v) const { return coords(v, depth_); }
    std::string str(const FPVector& v) const;

private:
    struct Pattern {
        std::vector<std::size_t> dims;
        std::size_t plain = 1;
        bool trivial = true;  // no balancing relations (scalar B)
        Quotient quo;
    };
    const Pattern& pattern(const std::vector<int>& colours) const;
    Vec kron(const std::vector<Vec>& factors) const;
    Vec act_left(int colour, const Vec& b, const Vec& x) const;
    Vec act_right(int colour, const Vec& b, const Vec& x) const;
    void push_term(FPVector& out, FPTerm t) const;

    std::vector<Bimodule> comps_;
    std::size_t depth_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, std::unique_ptr<Pattern>> cache_;
};

enum class OpTag { None, Left, Right, Both };
OpTag tag_meet(OpTag a, OpTag b);

struct Primitive {
    enum class Kind { Lambda, Rho, BoolProj, LeftB, RightB } kind;
    int k = 0;
    std::shared_ptr<const Matrix> T;
    Vec b;
};

// Linear combination of products of primitives; within a product the last factor acts first.
class ModuleOperator {
public:
    struct Product {
        Q coef;
        std::vector<Primitive> factors;
    };

    static ModuleOperator identity();
    static ModuleOperator lambda(const FreeProduct& fp, int k, const Matrix& T);
    static ModuleOperator rho(const FreeProduct& fp, int k, const Matrix& T);
    static ModuleOperator bool_proj(int k);
    static ModuleOperator left_b(const Vec& b);
    static ModuleOperator right_b(const Vec& b);

    ModuleOperator operator*(const ModuleOperator& o) const;
    ModuleOperator operator+(const ModuleOperator& o) const;
    ModuleOperator scaled(const Q& s) const;

    FPVector apply(const FreeProduct& fp, const FPVector& v) const;
    // Largest number of regular-representation factors in one product.
    std::size_t lr_length() const;

    OpTag tag = OpTag::Both;
    std::vector<Product> terms;
};

// p(op_1 ... op_n 1_B), discarding terms that can no longer return to depth 0.
Vec word_expectation(const FreeProduct& fp, const std::vector<const ModuleOperator*>& word);
FPVector apply_word(const FreeProduct& fp, const std::vector<const ModuleOperator*>& word, const FPVector& v);

// Matrix of op on word_basis(max_input_depth), rows over word_basis(depth()).
Matrix operator_matrix(const ModuleOperator& op, const FreeProduct& fp, std::size_t max_input_depth);

}  // namespace bnc
