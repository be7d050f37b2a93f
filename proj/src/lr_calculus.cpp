#include "bnc/lr_calculus.hpp"

#include <algorithm>
#include <deque>

#include "bnc/errors.hpp"

namespace bnc {

ChiMap ops_chi(const std::vector<LROp>& ops) {
    ChiMap c;
    for (const auto& o : ops) {
        if (o.side == Side::Boolean) throw AlphabetError("regular representations are left or right");
        c.sides.push_back(o.side);
    }
    return c;
}

EpsilonMap ops_eps(const std::vector<LROp>& ops) {
    EpsilonMap e;
    for (const auto& o : ops) e.push_back(o.colour);
    return e;
}

FPVector lr_word_vector(const std::vector<LROp>& ops, const FreeProduct& fp, const std::vector<std::size_t>& projected) {
    FPVector v = fp.unit();
    for (std::size_t i = ops.size(); i-- > 0;) {
        const auto& o = ops[i];
        v = o.side == Side::Left ? fp.lambda(o.colour, o.T, v) : fp.rho(o.colour, o.T, v);
        if (std::find(projected.begin(), projected.end(), i) != projected.end()) v = fp.bool_proj(o.colour, v);
    }
    return v;
}

namespace {

struct Factor {
    int colour;
    Vec v;  // full coordinates of the component
};

}  // namespace

FPVector e_d_vector(const LRDiagram& d, const std::vector<LROp>& ops, const FreeProduct& fp) {
    if (d.n() != ops.size()) throw SizeMismatch("diagram and word differ in length");
    if (!(d.chi == ops_chi(ops)) || d.eps != ops_eps(ops))
        throw SizeMismatch("diagram colouring does not match the word");
    const auto& B = *fp.B();
    Vec c = B.unit;
    std::deque<Factor> dq;
    auto proj = [&](const Factor& f) {
        return Vec(f.v.begin(), f.v.begin() + static_cast<std::ptrdiff_t>(B.dim));
    };
    auto embed_b = [&](int k, const Vec& b) {
        Vec v = zero_vec(fp.component(k).dim());
        std::copy(b.begin(), b.end(), v.begin());
        return v;
    };
    auto apply_b = [&](bool left, const Vec& b) {
        if (dq.empty()) {
            c = left ? B.mul(b, c) : B.mul(c, b);
            return;
        }
        Factor& f = left ? dq.front() : dq.back();
        const auto& comp = fp.component(f.colour);
        f.v = (left ? comp.left_action(b) : comp.right_action(b)) * f.v;
    };
    for (std::size_t i = d.n(); i-- > 0;) {
        const auto& o = ops[i];
        const bool left = o.side == Side::Left;
        const LREvent e = d.events[i];
        if (!is_connect(e) && !is_cut(e)) {
            Vec seed = B.unit;
            if (dq.empty()) {
                seed = c;
                c = B.unit;
            }
            Factor f{o.colour, o.T * embed_b(o.colour, seed)};
            if (is_top(e)) {
                if (left) dq.push_front(std::move(f));
                else dq.push_back(std::move(f));
            } else {
                apply_b(left, proj(f));
            }
            continue;
        }
        if (dq.empty()) throw std::invalid_argument("diagram joins a string that does not exist");
        Factor& end = left ? dq.front() : dq.back();
        if (end.colour != o.colour) throw std::invalid_argument("diagram joins a string of another shade");
        Vec v = is_connect(e) ? o.T * end.v : o.T * embed_b(o.colour, proj(end));
        if (is_top(e)) {
            end.v = std::move(v);
        } else {
            Factor f{o.colour, std::move(v)};
            if (left) dq.pop_front();
            else dq.pop_back();
            apply_b(left, proj(f));
        }
    }
    if (dq.empty()) return fp.scalar(c);
    std::vector<int> colours;
    std::vector<Vec> factors;
    for (const auto& f : dq) {
        colours.push_back(f.colour);
        factors.emplace_back(f.v.begin() + static_cast<std::ptrdiff_t>(B.dim), f.v.end());
    }
    return fp.pure(colours, factors);
}

Q diagram_coefficient(const LRDiagram& d) {
    std::size_t cuts = std::count_if(d.events.begin(), d.events.end(), is_cut);
    return cuts % 2 ? Q(-1) : Q(1);
}

namespace {

std::vector<DiagramTerm> evaluate(const DiagramFamily& fam, const std::vector<LROp>& ops, const FreeProduct& fp) {
    std::vector<DiagramTerm> out;
    for (const auto& d : fam.diagrams) out.push_back({d, diagram_coefficient(d), e_d_vector(d, ops, fp)});
    return out;
}

FPVector weighted_sum(const std::vector<DiagramTerm>& ts, const FreeProduct& fp) {
    FPVector s = fp.zero();
    for (const auto& t : ts) s = fp.add(s, fp.scale(t.coef, t.vec));
    return s;
}

DiagramFamily suffix_family(const ChiMap& chi, const EpsilonMap& eps, std::size_t i) {
    DiagramFamily f;
    f.chi.sides.assign(chi.sides.begin() + i, chi.sides.end());
    f.eps.assign(eps.begin() + i, eps.end());
    f.closure = Closure::Lateral;
    return f;
}

}  // namespace

LRDecomposition lr_decompose(const std::vector<LROp>& ops, const FreeProduct& fp, std::vector<std::size_t> projected) {
    LRDecomposition r;
    r.chi = ops_chi(ops);
    r.eps = ops_eps(ops);
    const std::size_t n = ops.size();
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    for (auto p : projected)
        if (p >= n) throw std::out_of_range("projected position beyond the word");
    r.projected = projected;

    r.direct = lr_word_vector(ops, fp);
    r.terms = evaluate(enumerate_lr_lat(r.chi, r.eps), ops, fp);
    r.reconstructs = fp.equal(weighted_sum(r.terms, fp), r.direct);

    DiagramFamily K = suffix_family(r.chi, r.eps, n), S = K;
    K.diagrams.push_back(LRDiagram{});
    for (std::size_t i = n; i-- > 0;) {
        DiagramFamily target = suffix_family(r.chi, r.eps, i);
        K = chi_extensions(K, target.chi, target.eps);
        S = chi_extensions(S, target.chi, target.eps);
        if (std::binary_search(projected.begin(), projected.end(), i)) {
            auto split = filter_boolean(K, r.eps[i]);
            K = std::move(split.kept);
            S.diagrams.insert(S.diagrams.end(), split.removed.diagrams.begin(), split.removed.diagrams.end());
            std::sort(S.diagrams.begin(), S.diagrams.end());
        }
    }
    r.projected_word = lr_word_vector(ops, fp, projected);
    r.kept = evaluate(K, ops, fp);
    r.residual = evaluate(S, ops, fp);
    r.residual_sum = weighted_sum(r.residual, fp);
    r.kept_matches = fp.equal(weighted_sum(r.kept, fp), r.projected_word);
    r.split_reconstructs = fp.equal(fp.add(r.projected_word, r.residual_sum), r.direct);
    r.residual_in_family = std::all_of(r.residual.begin(), r.residual.end(), [&](const DiagramTerm& t) {
        return std::any_of(projected.begin(), projected.end(), [&](std::size_t j) {
            return !in_lr_lat_k(restrict_to_suffix(t.diagram, j), r.eps[j]);
        });
    });
    return r;
}

}  // namespace bnc
