#include "bnc/moments.hpp"

#include <algorithm>
#include <deque>

#include "bnc/errors.hpp"

namespace bnc {

Vec MomentOracle::subset_moment(std::uint32_t mask) const {
    Word w;
    for (std::size_t i = 0; i < size(); ++i)
        if (mask >> i & 1u) w.push_back({Letter::Kind::Op, i, {}});
    return moment(w);
}

AlgebraMoments::AlgebraMoments(const BBProbSpace& space, std::vector<Vec> Z) : space_(&space), Z_(std::move(Z)) {
    for (const auto& z : Z_)
        if (z.size() != space.A->dim) throw SizeMismatch("element length differs from algebra dimension");
}

Vec AlgebraMoments::moment(const Word& w) const {
    const auto& A = *space_->A;
    Vec acc = A.unit;
    for (const auto& l : w) {
        switch (l.kind) {
            case Letter::Kind::Op: acc = A.mul(acc, Z_.at(l.index)); break;
            case Letter::Kind::L: acc = A.mul(acc, space_->L(l.b)); break;
            case Letter::Kind::R: acc = A.mul(acc, space_->R(l.b)); break;
        }
    }
    return space_->E(acc);
}

void AlgebraMoments::check_sides(const ChiMap& chi) const {
    if (chi.n() != Z_.size()) throw SizeMismatch("colouring length differs from number of elements");
    for (std::size_t i = 0; i < Z_.size(); ++i)
        if (!space_->in_side(Z_[i], chi[i]))
            throw SideMismatch("Z_" + std::to_string(i + 1) + " is not in the " +
                               (chi[i] == Side::Left ? "left" : "right") + " algebra");
}

ModuleMoments::ModuleMoments(std::shared_ptr<const FreeProduct> fp, std::vector<ModuleOperator> ops)
    : fp_(std::move(fp)), ops_(std::move(ops)) {
    if (ops_.size() > 31) throw CapExceeded("too many operators for subset caching");
    lr_before_.assign(ops_.size() + 1, 0);
    for (std::size_t i = 0; i < ops_.size(); ++i) lr_before_[i + 1] = lr_before_[i] + ops_[i].lr_length();
}

Vec ModuleMoments::moment(const Word& w) const {
    std::vector<ModuleOperator> extra;
    extra.reserve(w.size());
    std::vector<const ModuleOperator*> word;
    for (const auto& l : w) {
        if (l.kind == Letter::Kind::Op) {
            word.push_back(&ops_.at(l.index));
            continue;
        }
        extra.push_back(l.kind == Letter::Kind::L ? ModuleOperator::left_b(l.b) : ModuleOperator::right_b(l.b));
        word.push_back(&extra.back());
    }
    return word_expectation(*fp_, word);
}

const FPVector& ModuleMoments::subset_vector(std::uint32_t mask) const {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    FPVector v;
    if (mask == 0) {
        v = fp_->unit();
    } else {
        std::size_t lo = 0;
        while (!(mask >> lo & 1u)) ++lo;
        const FPVector& rest = subset_vector(mask & ~(1u << lo));
        v = fp_->prune(ops_[lo].apply(*fp_, rest), lr_before_[lo]);
    }
    return cache_.emplace(mask, std::move(v)).first->second;
}

Vec ModuleMoments::subset_moment(std::uint32_t mask) const { return subset_vector(mask).b; }

void ModuleMoments::check_sides(const ChiMap& chi) const {
    if (chi.n() != ops_.size()) throw SizeMismatch("colouring length differs from number of operators");
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        OpTag need = chi[i] == Side::Left ? OpTag::Left : OpTag::Right;
        if (tag_meet(ops_[i].tag, need) != need)
            throw SideMismatch("operator " + std::to_string(i + 1) + " does not carry the required side tag");
    }
}

ReductionPlan reduction_plan(const SetPartition& pi, const BNCContext& ctx) {
    if (pi.n() != ctx.n()) throw SizeMismatch("partition and colouring differ in length");
    if (!is_bnc(pi, ctx)) throw NotBNC(pi.str() + " is not bi-non-crossing for " + ctx.chi.str());
    ReductionPlan plan;
    plan.blocks = pi.blocks();
    const int nb = static_cast<int>(plan.blocks.size());
    plan.target.assign(nb, -1);
    plan.before.assign(nb, false);
    plan.letter.assign(nb, Letter::Kind::L);
    plan.step.assign(nb, 0);
    if (nb == 0) return plan;
    std::vector<bool> alive(nb, true);
    std::vector<int> block_of(pi.n());
    for (int b = 0; b < nb; ++b)
        for (int i : plan.blocks[b]) block_of[i] = b;
    for (int remaining = nb; remaining > 1; --remaining) {
        int V = -1;
        for (int b = 0; b < nb; ++b)
            if (alive[b] && (V < 0 || plan.blocks[b].front() > plan.blocks[V].front())) V = b;
        const int m = plan.blocks[V].front();
        std::vector<int> items;
        for (int i = 0; i < static_cast<int>(pi.n()); ++i)
            if (alive[block_of[i]]) items.push_back(i);
        bool tail = true;
        for (int i : items)
            if (i > m && block_of[i] != V) tail = false;
        if (tail) {
            int prev = -1;
            for (int i : items)
                if (i < m) prev = i;
            plan.target[V] = prev;
            plan.before[V] = false;
            plan.letter[V] = Letter::Kind::L;
        } else {
            std::deque<int> dq;
            auto min_alive = [&](int b) { return plan.blocks[b].front(); };
            for (auto it = items.rbegin(); it != items.rend() && *it >= m; ++it) {
                const int i = *it, X = block_of[i];
                const bool left = ctx.chi[i] == Side::Left;
                auto pos = std::find(dq.begin(), dq.end(), X);
                if (pos != dq.end()) {
                    if (i == min_alive(X)) dq.erase(pos);
                } else if (i != min_alive(X)) {
                    if (left) dq.push_front(X);
                    else dq.push_back(X);
                }
            }
            if (dq.empty()) throw std::logic_error("no spine next to the block minimum");
            const int W = ctx.chi[m] == Side::Left ? dq.front() : dq.back();
            int k = -1;
            for (int i : plan.blocks[W])
                if (i > m) {
                    k = i;
                    break;
                }
            plan.target[V] = k;
            plan.before[V] = true;
            plan.letter[V] = ctx.chi[m] == Side::Left ? Letter::Kind::L : Letter::Kind::R;
        }
        plan.step[V] = static_cast<int>(plan.canonical_order.size());
        plan.canonical_order.push_back(V);
        alive[V] = false;
    }
    for (int b = 0; b < nb; ++b)
        if (alive[b]) {
            plan.step[b] = static_cast<int>(plan.canonical_order.size());
            plan.canonical_order.push_back(b);
        }
    return plan;
}

namespace {

std::vector<int> block_index(const ReductionPlan& plan, std::size_t n) {
    std::vector<int> out(n, -1);
    for (std::size_t b = 0; b < plan.blocks.size(); ++b)
        for (int i : plan.blocks[b]) out[i] = static_cast<int>(b);
    return out;
}

}  // namespace

std::vector<int> random_legal_order(const ReductionPlan& plan, std::mt19937_64& rng) {
    const int nb = static_cast<int>(plan.blocks.size());
    std::size_t n = 0;
    for (const auto& b : plan.blocks) n += b.size();
    auto owner = block_index(plan, n);
    std::vector<int> pending(nb, 0);
    for (int b = 0; b < nb; ++b)
        if (plan.target[b] >= 0) ++pending[owner[plan.target[b]]];
    std::vector<int> ready, order;
    for (int b = 0; b < nb; ++b)
        if (pending[b] == 0) ready.push_back(b);
    while (!ready.empty()) {
        std::size_t pick = rng() % ready.size();
        int b = ready[pick];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
        order.push_back(b);
        if (plan.target[b] >= 0 && --pending[owner[plan.target[b]]] == 0) ready.push_back(owner[plan.target[b]]);
    }
    return order;
}

Vec e_pi_ordered(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf, const std::vector<int>& order) {
    if (mf.size() != pi.n()) throw SizeMismatch("partition size differs from the number of elements");
    auto plan = reduction_plan(pi, ctx);
    if (plan.blocks.empty()) return mf.base()->unit;
    auto owner = block_index(plan, pi.n());
    struct Ins {
        int step;
        Letter letter;
    };
    std::vector<std::vector<Ins>> pre(pi.n()), post(pi.n());
    std::vector<bool> done(plan.blocks.size(), false);
    Vec value;
    for (int V : order) {
        if (done[V]) throw std::invalid_argument("block reduced twice");
        Word w;
        for (int i : plan.blocks[V]) {
            auto p = pre[i];
            std::sort(p.begin(), p.end(), [](const Ins& a, const Ins& b) { return a.step > b.step; });
            for (auto& x : p) w.push_back(x.letter);
            w.push_back({Letter::Kind::Op, static_cast<std::size_t>(i), {}});
            auto q = post[i];
            std::sort(q.begin(), q.end(), [](const Ins& a, const Ins& b) { return a.step < b.step; });
            for (auto& x : q) w.push_back(x.letter);
        }
        value = mf.moment(w);
        done[V] = true;
        int t = plan.target[V];
        if (t < 0) continue;
        if (done[owner[t]]) throw std::invalid_argument("block order is not legal for this partition");
        Ins ins{plan.step[V], {plan.letter[V], 0, value}};
        (plan.before[V] ? pre[t] : post[t]).push_back(ins);
    }
    if (!std::all_of(done.begin(), done.end(), [](bool d) { return d; }))
        throw std::invalid_argument("block order misses a block");
    if (plan.target[order.back()] >= 0) throw std::invalid_argument("block order does not end at the root");
    return value;
}

Vec e_pi(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf) {
    if (mf.size() != pi.n()) throw SizeMismatch("partition size differs from the number of elements");
    if (!is_bnc(pi, ctx)) throw NotBNC(pi.str() + " is not bi-non-crossing for " + ctx.chi.str());
    if (mf.base()->dim == 1) {
        Q acc = 1;
        std::vector<std::uint32_t> masks(pi.num_blocks(), 0);
        for (std::size_t i = 0; i < pi.n(); ++i) masks[pi.rgs[i]] |= 1u << i;
        for (auto m : masks) {
            acc *= mf.subset_moment(m)[0];
            if (acc == 0) break;
        }
        return {acc};
    }
    return e_pi_ordered(pi, ctx, mf, reduction_plan(pi, ctx).canonical_order);
}

Vec kappa_pi(const SetPartition& pi, const BNCContext& ctx, const MomentOracle& mf) {
    Vec acc = zero_vec(mf.base()->dim);
    for (const auto& s : enumerate_bnc(ctx)) {
        if (!refines(s, pi)) continue;
        long long mu = mobius(s, pi, ctx);
        if (mu) axpy(acc, qint(mu), e_pi(s, ctx, mf));
    }
    return acc;
}

const Vec& PartitionTable::at(const SetPartition& p) const {
    auto it = std::lower_bound(parts.begin(), parts.end(), p);
    if (it == parts.end() || !(*it == p)) throw std::out_of_range("partition not in table: " + p.str());
    return values[static_cast<std::size_t>(it - parts.begin())];
}

PartitionTable moment_table(const BNCContext& ctx, const MomentOracle& mf) {
    mf.check_sides(ctx.chi);
    PartitionTable t{ctx.chi, enumerate_bnc(ctx), {}};
    for (const auto& p : t.parts) t.values.push_back(e_pi(p, ctx, mf));
    return t;
}

PartitionTable cumulant_table(const PartitionTable& moments, const BNCContext& ctx) {
    PartitionTable t{moments.chi, moments.parts, {}};
    const std::size_t dim = moments.values.empty() ? 0 : moments.values.front().size();
    for (const auto& p : t.parts) {
        Vec acc = zero_vec(dim);
        for (std::size_t s = 0; s < moments.parts.size(); ++s) {
            if (!refines(moments.parts[s], p)) continue;
            long long mu = mobius(moments.parts[s], p, ctx);
            if (mu) axpy(acc, qint(mu), moments.values[s]);
        }
        t.values.push_back(std::move(acc));
    }
    return t;
}

PartitionTable moments_from_cumulants(const PartitionTable& cumulants, const BNCContext& ctx) {
    (void)ctx;
    PartitionTable t{cumulants.chi, cumulants.parts, {}};
    const std::size_t dim = cumulants.values.empty() ? 0 : cumulants.values.front().size();
    for (const auto& p : t.parts) {
        Vec acc = zero_vec(dim);
        for (std::size_t s = 0; s < cumulants.parts.size(); ++s)
            if (refines(cumulants.parts[s], p)) axpy(acc, 1, cumulants.values[s]);
        t.values.push_back(std::move(acc));
    }
    return t;
}

bool refines_colouring(const SetPartition& pi, const EpsilonMap& eps) {
    for (std::size_t i = 0; i < pi.n(); ++i)
        for (std::size_t j = i + 1; j < pi.n(); ++j)
            if (pi.rgs[i] == pi.rgs[j] && eps[i] != eps[j]) return false;
    return true;
}

bool is_constant(const EpsilonMap& eps) {
    return std::adjacent_find(eps.begin(), eps.end(), std::not_equal_to<int>()) == eps.end();
}

BifreeReport bifree_moment_check(const BNCContext& ctx, const EpsilonMap& eps, const MomentOracle& mf) {
    if (eps.size() != ctx.n()) throw SizeMismatch("colouring lengths differ");
    BifreeReport r;
    r.vacuous = is_constant(eps);
    auto E = moment_table(ctx, mf);
    auto K = cumulant_table(E, ctx);
    const std::size_t dim = mf.base()->dim;
    r.lhs = E.at(SetPartition::full(ctx.n()));
    r.rhs = zero_vec(dim);
    for (std::size_t p = 0; p < K.parts.size(); ++p)
        if (refines_colouring(K.parts[p], eps)) axpy(r.rhs, 1, K.values[p]);
    r.kappa_full = K.at(SetPartition::full(ctx.n()));
    r.moment_ok = r.lhs == r.rhs;
    r.kappa_ok = r.vacuous || is_zero(r.kappa_full);
    return r;
}

FfbMobius ffb_mobius(const ChiMap& chi_hat) {
    FfbMobius d;
    d.fctx = lr_replacement(chi_hat);
    d.ctx = build_context(d.fctx.chi);
    d.parts = enumerate_bnc(d.ctx);
    const auto top = SetPartition::full(d.ctx.n());
    for (const auto& p : d.parts) {
        d.in_ffb.push_back(in_bnc_ffb(p, d.fctx));
        d.mu_to_top.push_back(mobius(p, top, d.ctx));
    }
    std::vector<std::size_t> ffb_idx;
    for (std::size_t i = 0; i < d.parts.size(); ++i)
        if (d.in_ffb[i]) ffb_idx.push_back(i);
    for (const auto& s : d.parts) {
        long long w = 0;
        for (auto i : ffb_idx)
            if (refines(s, d.parts[i])) w += mobius(s, d.parts[i], d.ctx);
        d.ffb_weight.push_back(w);
    }
    return d;
}

namespace {

void check_pair_colours(const FfbMobius& data, const EpsilonMap& eps) {
    if (eps.size() != data.ctx.n()) throw SizeMismatch("colouring length differs from the expanded word");
    for (int j : data.fctx.boolean_starts)
        if (eps[j] != eps[j + 1])
            throw ColouringError("boolean pair at positions " + std::to_string(j + 1) + "," +
                                 std::to_string(j + 2) + " has two colours");
}

}  // namespace

FfbFormulaReport ffb_moment_formula(const FfbMobius& data, const EpsilonMap& eps, const MomentOracle& mf) {
    check_pair_colours(data, eps);
    mf.check_sides(data.ctx.chi);
    FfbFormulaReport r;
    r.eps_constant = is_constant(eps);
    const std::size_t dim = mf.base()->dim;
    r.rhs = zero_vec(dim);
    r.kappa_full = zero_vec(dim);
    r.kappa_alt = zero_vec(dim);
    r.vanishing_ok = true;
    for (std::size_t s = 0; s < data.parts.size(); ++s) {
        const auto& p = data.parts[s];
        const bool needed = data.ffb_weight[s] || data.mu_to_top[s] || (!data.in_ffb[s] && refines_colouring(p, eps));
        if (!needed) continue;
        Vec e = e_pi(p, data.ctx, mf);
        if (data.ffb_weight[s]) axpy(r.rhs, qint(data.ffb_weight[s]), e);
        if (data.mu_to_top[s]) {
            axpy(r.kappa_full, qint(data.mu_to_top[s]), e);
            if (data.in_ffb[s]) axpy(r.kappa_alt, qint(data.mu_to_top[s]), e);
        }
        if (!data.in_ffb[s] && refines_colouring(p, eps) && !is_zero(e)) {
            r.nonvanishing.push_back(p);
            r.vanishing_ok = false;
        }
    }
    r.lhs = e_pi(SetPartition::full(data.ctx.n()), data.ctx, mf);
    r.formula_ok = r.lhs == r.rhs;
    r.kappa_ok = r.eps_constant || is_zero(r.kappa_full);
    r.alt_ok = r.kappa_alt == r.kappa_full;
    return r;
}

KappaConstancyReport kappa_constancy_check(const FfbMobius& data, const EpsilonMap& eps, const MomentOracle& mf) {
    check_pair_colours(data, eps);
    KappaConstancyReport r;
    r.eps_constant = is_constant(eps);
    r.kappa_full = zero_vec(mf.base()->dim);
    for (std::size_t s = 0; s < data.parts.size(); ++s)
        if (data.mu_to_top[s]) axpy(r.kappa_full, qint(data.mu_to_top[s]), e_pi(data.parts[s], data.ctx, mf));
    r.pass = r.eps_constant || is_zero(r.kappa_full);
    return r;
}

}  // namespace bnc
