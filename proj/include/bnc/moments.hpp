#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bnc/free_product.hpp"
#include "bnc/partition.hpp"

namespace bnc {

// A letter of an operator word: one of the Z_i, or an inserted L_b / R_b.
struct Letter {
    enum class Kind { Op, L, R } kind = Kind::Op;
    std::size_t index = 0;
    Vec b;
};
using Word = std::vector<Letter>;

// E of products of Z_1..Z_n with B insertions.
class MomentOracle {
public:
    virtual ~MomentOracle() = default;
    virtual AlgebraPtr base() const = 0;
    virtual std::size_t size() const = 0;
    virtual Vec moment(const Word& w) const = 0;
    // E(Z_{i_1} ... Z_{i_k}) for the indices in mask, ascending.
    virtual Vec subset_moment(std::uint32_t mask) const;
    // Throws SideMismatch if some Z_i is outside the side algebra chi(i).
    virtual void check_sides(const ChiMap& chi) const = 0;
};

// Products taken in a finite-dimensional B-B space.
class AlgebraMoments : public MomentOracle {
public:
    AlgebraMoments(const BBProbSpace& space, std::vector<Vec> Z);
    AlgebraPtr base() const override { return space_->B; }
    std::size_t size() const override { return Z_.size(); }
    Vec moment(const Word& w) const override;
    void check_sides(const ChiMap& chi) const override;
    const std::vector<Vec>& elements() const { return Z_; }

private:
    const BBProbSpace* space_;
    std::vector<Vec> Z_;
};

// Operators on a truncated free product; E(T) = p T 1_B.
class ModuleMoments : public MomentOracle {
public:
    ModuleMoments(std::shared_ptr<const FreeProduct> fp, std::vector<ModuleOperator> ops);
    AlgebraPtr base() const override { return fp_->B(); }
    std::size_t size() const override { return ops_.size(); }
    Vec moment(const Word& w) const override;
    Vec subset_moment(std::uint32_t mask) const override;
    void check_sides(const ChiMap& chi) const override;

private:
    const FPVector& subset_vector(std::uint32_t mask) const;
    std::shared_ptr<const FreeProduct> fp_;
    std::vector<ModuleOperator> ops_;
    std::vector<std::size_t> lr_before_;  // regular factors in ops strictly before i
    mutable std::map<std::uint32_t, FPVector> cache_;
};

// How each block is folded into the rest: block V inserts L or R of its value
// next to item `target` (before it, or after it in the terminal-interval case).
struct ReductionPlan {
    std::vector<std::vector<int>> blocks;  // ordered by minimum
    std::vector<int> canonical_order;      // block indices, the root last
    std::vector<int> target;               // item index, -1 for the root
    std::vector<bool> before;
    std::vector<Letter::Kind> letter;
    std::vector<int> step;                 // position in canonical_order
};

ReductionPlan reduction_plan(const SetPartition& pi, const BNCContext& ctx);
// A random order in which every block comes after the blocks inserted into it.
std::vector<int> random_legal_order(const ReductionPlan& plan, std::mt19937_64& rng);

// Bi-multiplicative moment E_pi. Scalar B uses the product of block moments.
Vec e_pi(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf);
// Literal recursion in the given block order (must be legal for the plan).
Vec e_pi_ordered(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf,
                 const std::vector<int>& order);
Vec kappa_pi(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf);

struct PartitionTable {
    ChiMap chi;
    std::vector<SetPartition> parts;  // canonical order
    std::vector<Vec> values;
    const Vec& at(const SetPartition& p) const;
};

PartitionTable moment_table(const BNCContext& ctx, const MomentOracle& mf);
PartitionTable cumulant_table(const PartitionTable& moments, const BNCContext& ctx);
// sum over sigma <= pi of kappa_sigma
PartitionTable moments_from_cumulants(const PartitionTable& cumulants, const BNCContext& ctx);

bool refines_colouring(const SetPartition& pi, const EpsilonMap& eps);
bool is_constant(const EpsilonMap& eps);

struct BifreeReport {
    bool vacuous = false;  // constant colouring
    Vec lhs, rhs, kappa_full;
    bool moment_ok = false, kappa_ok = false;
    bool pass() const { return moment_ok && kappa_ok; }
};
BifreeReport bifree_moment_check(const BNCContext& ctx, const EpsilonMap& eps, const MomentOracle& mf);

// Möbius data for the ffb formulas over one colouring.
struct FfbMobius {
    FfbContext fctx;
    BNCContext ctx;
    std::vector<SetPartition> parts;
    std::vector<bool> in_ffb;
    std::vector<long long> mu_to_top;   // mu(sigma, 1)
    std::vector<long long> ffb_weight;  // sum over ffb pi >= sigma of mu(sigma, pi)
};
FfbMobius ffb_mobius(const ChiMap& chi_hat);

struct FfbFormulaReport {
    bool eps_constant = false;
    Vec lhs, rhs, kappa_full, kappa_alt;
    std::vector<SetPartition> nonvanishing;  // pi <= eps outside BNC_ffb with E_pi != 0
    bool formula_ok = false, kappa_ok = false, alt_ok = false, vanishing_ok = false;
};
// eps is the expanded colouring; positions f(i), f(i)+1 of a boolean slot must agree.
FfbFormulaReport ffb_moment_formula(const FfbMobius& data, const EpsilonMap& eps, const MomentOracle& mf);

struct KappaConstancyReport {
    bool eps_constant = false;
    Vec kappa_full;
    bool pass = false;
};
KappaConstancyReport kappa_constancy_check(const FfbMobius& data, const EpsilonMap& eps, const MomentOracle& mf);

}  // namespace bnc
