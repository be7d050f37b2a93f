#include "bnc/free_product.hpp"

#include <algorithm>
#include <sstream>

#include "bnc/errors.hpp"

namespace bnc {

std::size_t FPVector::depth() const {
    std::size_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.depth());
    return d;
}

namespace {

void split(const Vec& y, std::size_t nb, Vec& b, Vec& o) {
    b.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(nb));
    o.assign(y.begin() + static_cast<std::ptrdiff_t>(nb), y.end());
}

Vec join_bo(const Vec& b, const Vec& o) {
    Vec v = b;
    v.insert(v.end(), o.begin(), o.end());
    return v;
}

// Coefficients of each row on the reduced basis of the row span.
struct SpanSplit {
    std::vector<std::vector<std::pair<std::size_t, Q>>> coeffs;  // per basis vector: (row, alpha)
};

SpanSplit split_rows(const std::vector<const Vec*>& rows) {
    std::vector<Vec> m;
    for (auto* r : rows) m.push_back(*r);
    auto rr = rref(Matrix::from_rows(m));
    SpanSplit s;
    s.coeffs.resize(rr.pivots.size());
    for (std::size_t c = 0; c < rr.pivots.size(); ++c)
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const Q& a = (*rows[t])[rr.pivots[c]];
            if (a != 0) s.coeffs[c].push_back({t, a});
        }
    return s;
}

using Factors = std::vector<Vec>;

bool tensor_sum_zero(const std::vector<Factors>& terms, std::size_t pos) {
    if (terms.empty()) return true;
    const std::size_t m = terms.front().size();
    if (pos + 1 == m) {
        Vec acc = zero_vec(terms.front()[pos].size());
        for (const auto& t : terms) axpy(acc, 1, t[pos]);
        return is_zero(acc);
    }
    std::vector<const Vec*> firsts;
    for (const auto& t : terms) firsts.push_back(&t[pos]);
    auto s = split_rows(firsts);
    for (const auto& group : s.coeffs) {
        std::vector<Factors> next;
        for (auto [t, a] : group) {
            Factors f = terms[t];
            f[pos + 1] = scale(a, f[pos + 1]);
            next.push_back(std::move(f));
        }
        if (!tensor_sum_zero(next, pos + 1)) return false;
    }
    return true;
}

}  // namespace

FreeProduct::FreeProduct(std::vector<Bimodule> components, std::size_t depth)
    : comps_(std::move(components)), depth_(depth) {
    if (comps_.empty()) throw std::invalid_argument("free product needs at least one component");
    for (const auto& c : comps_)
        if (!same_algebra(c.B, comps_.front().B) && c.B->dim != comps_.front().B->dim)
            throw MismatchedAlgebra("components over different base algebras");
}

FPVector FreeProduct::zero() const { return {zero_vec(B()->dim), {}}; }
FPVector FreeProduct::unit() const { return {B()->unit, {}}; }
FPVector FreeProduct::scalar(const Vec& b) const { return {b, {}}; }

void FreeProduct::push_term(FPVector& out, FPTerm t) const {
    for (const auto& f : t.factors)
        if (bnc::is_zero(f)) return;
    if (t.depth() > depth_) throw DepthExceeded("word of length " + std::to_string(t.depth()) + " exceeds depth " +
                                                std::to_string(depth_));
    out.terms.push_back(std::move(t));
}

FPVector FreeProduct::pure(const std::vector<int>& colours, const std::vector<Vec>& factors) const {
    if (colours.size() != factors.size()) throw SizeMismatch("colours and factors differ in length");
    for (std::size_t j = 0; j < colours.size(); ++j) {
        if (colours[j] < 0 || static_cast<std::size_t>(colours[j]) >= comps_.size())
            throw std::out_of_range("colour out of range");
        if (j && colours[j] == colours[j - 1]) throw std::invalid_argument("adjacent equal colours");
        if (factors[j].size() != comps_[colours[j]].dim_o) throw SizeMismatch("factor length");
    }
    FPVector v = zero();
    if (colours.empty()) return v;
    push_term(v, {colours, factors});
    return v;
}

FPVector FreeProduct::embed(int k, const Vec& x) const {
    const auto& c = comps_.at(k);
    if (x.size() != c.dim()) throw SizeMismatch("vector length differs from component");
    Vec b, o;
    split(x, c.dim_b(), b, o);
    FPVector v = scalar(b);
    push_term(v, {{k}, {o}});
    return v;
}

FPVector FreeProduct::add(const FPVector& x, const FPVector& y) const {
    FPVector v{bnc::add(x.b, y.b), x.terms};
    v.terms.insert(v.terms.end(), y.terms.begin(), y.terms.end());
    return v;
}

FPVector FreeProduct::scale(const Q& s, const FPVector& x) const {
    if (s == 0) return zero();
    FPVector v{bnc::scale(s, x.b), x.terms};
    for (auto& t : v.terms) t.factors[0] = bnc::scale(s, t.factors[0]);
    return v;
}

FPVector FreeProduct::sub(const FPVector& x, const FPVector& y) const { return add(x, scale(-1, y)); }

Vec FreeProduct::act_left(int colour, const Vec& b, const Vec& x) const {
    if (scalar_base()) return bnc::scale(b[0], x);
    return comps_[colour].left_action_o(b) * x;
}

Vec FreeProduct::act_right(int colour, const Vec& b, const Vec& x) const {
    if (scalar_base()) return bnc::scale(b[0], x);
    return comps_[colour].right_action_o(b) * x;
}

FPVector FreeProduct::lambda(int k, const Matrix& T, const FPVector& v) const {
    const auto& c = comps_.at(k);
    const std::size_t nb = c.dim_b();
    if (T.rows() != c.dim() || T.cols() != c.dim()) throw SizeMismatch("operator size differs from component");
    FPVector out = zero();
    Vec yb, yo;
    if (!bnc::is_zero(v.b)) {
        split(T * join_bo(v.b, zero_vec(c.dim_o)), nb, yb, yo);
        out.b = bnc::add(out.b, yb);
        push_term(out, {{k}, {yo}});
    }
    Vec t1b, t1o;
    bool have_t1 = false;
    for (const auto& t : v.terms) {
        if (t.colours.front() == k) {
            split(T * join_bo(zero_vec(nb), t.factors.front()), nb, yb, yo);
            if (t.depth() == 1) {
                out.b = bnc::add(out.b, yb);
            } else if (!bnc::is_zero(yb)) {
                FPTerm rest{{t.colours.begin() + 1, t.colours.end()}, {t.factors.begin() + 1, t.factors.end()}};
                rest.factors[0] = act_left(rest.colours[0], yb, rest.factors[0]);
                push_term(out, std::move(rest));
            }
            FPTerm keep = t;
            keep.factors[0] = yo;
            push_term(out, std::move(keep));
        } else {
            if (!have_t1) {
                split(T * c.unit_vector(), nb, t1b, t1o);
                have_t1 = true;
            }
            if (!bnc::is_zero(t1b)) {
                FPTerm moved = t;
                moved.factors[0] = act_left(t.colours[0], t1b, t.factors[0]);
                push_term(out, std::move(moved));
            }
            if (!bnc::is_zero(t1o)) {
                FPTerm grown;
                grown.colours.push_back(k);
                grown.colours.insert(grown.colours.end(), t.colours.begin(), t.colours.end());
                grown.factors.push_back(t1o);
                grown.factors.insert(grown.factors.end(), t.factors.begin(), t.factors.end());
                push_term(out, std::move(grown));
            }
        }
    }
    return out;
}

FPVector FreeProduct::rho(int k, const Matrix& T, const FPVector& v) const {
    const auto& c = comps_.at(k);
    const std::size_t nb = c.dim_b();
    if (T.rows() != c.dim() || T.cols() != c.dim()) throw SizeMismatch("operator size differs from component");
    FPVector out = zero();
    Vec yb, yo;
    if (!bnc::is_zero(v.b)) {
        split(T * join_bo(v.b, zero_vec(c.dim_o)), nb, yb, yo);
        out.b = bnc::add(out.b, yb);
        push_term(out, {{k}, {yo}});
    }
    Vec t1b, t1o;
    bool have_t1 = false;
    for (const auto& t : v.terms) {
        const std::size_t m = t.depth();
        if (t.colours.back() == k) {
            split(T * join_bo(zero_vec(nb), t.factors.back()), nb, yb, yo);
            if (m == 1) {
                out.b = bnc::add(out.b, yb);
            } else if (!bnc::is_zero(yb)) {
                FPTerm rest{{t.colours.begin(), t.colours.end() - 1}, {t.factors.begin(), t.factors.end() - 1}};
                rest.factors.back() = act_right(rest.colours.back(), yb, rest.factors.back());
                push_term(out, std::move(rest));
            }
            FPTerm keep = t;
            keep.factors.back() = yo;
            push_term(out, std::move(keep));
        } else {
            if (!have_t1) {
                split(T * c.unit_vector(), nb, t1b, t1o);
                have_t1 = true;
            }
            if (!bnc::is_zero(t1b)) {
                FPTerm moved = t;
                moved.factors.back() = act_right(t.colours.back(), t1b, t.factors.back());
                push_term(out, std::move(moved));
            }
            if (!bnc::is_zero(t1o)) {
                FPTerm grown = t;
                grown.colours.push_back(k);
                grown.factors.push_back(t1o);
                push_term(out, std::move(grown));
            }
        }
    }
    return out;
}

FPVector FreeProduct::bool_proj(int k, const FPVector& v) const {
    FPVector out{v.b, {}};
    for (const auto& t : v.terms)
        if (t.depth() == 1 && t.colours[0] == k) out.terms.push_back(t);
    return out;
}

FPVector FreeProduct::left_b(const Vec& b, const FPVector& v) const {
    FPVector out{B()->mul(b, v.b), {}};
    for (const auto& t : v.terms) {
        FPTerm u = t;
        u.factors[0] = act_left(t.colours[0], b, t.factors[0]);
        push_term(out, std::move(u));
    }
    return out;
}

FPVector FreeProduct::right_b(const Vec& b, const FPVector& v) const {
    FPVector out{B()->mul(v.b, b), {}};
    for (const auto& t : v.terms) {
        FPTerm u = t;
        u.factors.back() = act_right(t.colours.back(), b, t.factors.back());
        push_term(out, std::move(u));
    }
    return out;
}

FPVector FreeProduct::prune(const FPVector& v, std::size_t max_depth) const {
    FPVector out{v.b, {}};
    for (const auto& t : v.terms)
        if (t.depth() <= max_depth) out.terms.push_back(t);
    return out;
}

bool FreeProduct::is_zero(const FPVector& v) const {
    if (!bnc::is_zero(v.b)) return false;
    if (v.terms.empty()) return true;
    if (!scalar_base()) return bnc::is_zero(coords(v, v.depth()));
    std::map<std::vector<int>, std::vector<Factors>> groups;
    for (const auto& t : v.terms) groups[t.colours].push_back(t.factors);
    for (const auto& [cols, terms] : groups)
        if (!tensor_sum_zero(terms, 0)) return false;
    return true;
}

std::vector<std::vector<int>> FreeProduct::patterns(std::size_t max_depth) const {
    std::vector<std::vector<int>> out, layer{{}};
    const int K = static_cast<int>(comps_.size());
    for (std::size_t len = 1; len <= max_depth; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int k = 0; k < K; ++k) {
                if (!w.empty() && w.back() == k) continue;
                auto u = w;
                u.push_back(k);
                next.push_back(u);
            }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

Vec FreeProduct::kron(const std::vector<Vec>& factors) const {
    Vec acc{Q(1)};
    for (const auto& f : factors) {
        Vec next(acc.size() * f.size(), Q(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (f[j] != 0) next[i * f.size() + j] = acc[i] * f[j];
        }
        acc = std::move(next);
    }
    return acc;
}

const FreeProduct::Pattern& FreeProduct::pattern(const std::vector<int>& colours) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(colours);
    if (it != cache_.end()) return *it->second;
    auto p = std::make_unique<Pattern>();
    for (int c : colours) {
        p->dims.push_back(comps_.at(c).dim_o);
        p->plain *= comps_.at(c).dim_o;
    }
    p->trivial = scalar_base() || colours.size() < 2;
    if (!p->trivial) {
        std::vector<Vec> rel;
        const std::size_t m = colours.size();
        for (std::size_t idx = 0; idx < p->plain; ++idx) {
            std::vector<Vec> units(m);
            std::size_t rem = idx;
            for (std::size_t j = m; j-- > 0;) {
                units[j] = unit_vec(p->dims[j], rem % p->dims[j]);
                rem /= p->dims[j];
            }
            for (std::size_t j = 0; j + 1 < m; ++j)
                for (std::size_t bi = 0; bi < B()->dim; ++bi) {
                    Vec b = B()->basis(bi);
                    auto lhs = units, rhs = units;
                    lhs[j] = comps_[colours[j]].right_action_o(b) * units[j];
                    rhs[j + 1] = comps_[colours[j + 1]].left_action_o(b) * units[j + 1];
                    Vec r = bnc::sub(kron(lhs), kron(rhs));
                    if (!bnc::is_zero(r)) rel.push_back(std::move(r));
                }
        }
        p->quo = Quotient(p->plain, rel);
    }
    auto& ref = *p;
    cache_.emplace(colours, std::move(p));
    return ref;
}

std::size_t FreeProduct::pattern_dim(const std::vector<int>& colours) const {
    const auto& p = pattern(colours);
    return p.trivial ? p.plain : p.quo.dim();
}

std::size_t FreeProduct::dim(std::size_t max_depth) const {
    std::size_t d = B()->dim;
    for (const auto& w : patterns(max_depth)) d += pattern_dim(w);
    return d;
}

std::vector<FPVector> FreeProduct::word_basis(std::size_t max_depth) const {
    std::vector<FPVector> out;
    for (std::size_t i = 0; i < B()->dim; ++i) out.push_back(scalar(B()->basis(i)));
    for (const auto& w : patterns(max_depth)) {
        const auto& p = pattern(w);
        std::vector<std::size_t> cols;
        if (p.trivial)
            for (std::size_t i = 0; i < p.plain; ++i) cols.push_back(i);
        else
            cols = p.quo.free_columns();
        for (auto idx : cols) {
            std::vector<Vec> f(w.size());
            for (std::size_t j = w.size(); j-- > 0;) {
                f[j] = unit_vec(p.dims[j], idx % p.dims[j]);
                idx /= p.dims[j];
            }
            out.push_back(pure(w, f));
        }
    }
    return out;
}

std::vector<std::string> FreeProduct::word_labels(std::size_t max_depth) const {
    std::vector<std::string> out;
    for (const auto& l : B()->labels) out.push_back(l);
    for (const auto& w : patterns(max_depth)) {
        const auto& p = pattern(w);
        std::vector<std::size_t> cols;
        if (p.trivial)
            for (std::size_t i = 0; i < p.plain; ++i) cols.push_back(i);
        else
            cols = p.quo.free_columns();
        for (auto idx : cols) {
            std::vector<std::string> parts(w.size());
            for (std::size_t j = w.size(); j-- > 0;) {
                parts[j] = std::to_string(w[j] + 1) + ":" + comps_[w[j]].labels[idx % p.dims[j]];
                idx /= p.dims[j];
            }
            std::string s;
            for (std::size_t j = 0; j < parts.size(); ++j) s += (j ? "|" : "") + parts[j];
            out.push_back(s);
        }
    }
    return out;
}

Vec FreeProduct::coords(const FPVector& v, std::size_t max_depth) const {
    if (v.depth() > max_depth) throw DepthExceeded("vector deeper than the requested basis");
    Vec out = v.b;
    std::map<std::vector<int>, Vec> plain;
    for (const auto& t : v.terms) {
        auto& acc = plain[t.colours];
        Vec k = kron(t.factors);
        if (acc.empty()) acc = zero_vec(k.size());
        axpy(acc, 1, k);
    }
    for (const auto& w : patterns(max_depth)) {
        const auto& p = pattern(w);
        auto it = plain.find(w);
        Vec part;
        if (it == plain.end())
            part = zero_vec(p.trivial ? p.plain : p.quo.dim());
        else
            part = p.trivial ? it->second : p.quo.reduce(it->second);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::string FreeProduct::str(const FPVector& v) const {
    const std::size_t d = v.depth();
    Vec c = coords(v, d);
    auto labels = word_labels(d);
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        os << (first ? "" : ", ") << "\"" << labels[i] << "\": \"" << to_string(c[i]) << "\"";
        first = false;
    }
    os << "}";
    return os.str();
}

OpTag tag_meet(OpTag a, OpTag b) {
    if (a == b) return a;
    if (a == OpTag::Both) return b;
    if (b == OpTag::Both) return a;
    return OpTag::None;
}

ModuleOperator ModuleOperator::identity() {
    ModuleOperator m;
    m.terms.push_back({Q(1), {}});
    return m;
}

ModuleOperator ModuleOperator::lambda(const FreeProduct& fp, int k, const Matrix& T) {
    const auto& c = fp.component(k);
    if (T.rows() != c.dim() || T.cols() != c.dim()) throw SizeMismatch("operator size differs from component");
    if (!fp.scalar_base() && !c.in_left(T)) throw SideMismatch("left regular representation of a non-left operator");
    ModuleOperator m;
    m.tag = fp.scalar_base() ? OpTag::Both : OpTag::Left;
    m.terms.push_back({Q(1), {{Primitive::Kind::Lambda, k, std::make_shared<const Matrix>(T), {}}}});
    return m;
}

ModuleOperator ModuleOperator::rho(const FreeProduct& fp, int k, const Matrix& T) {
    const auto& c = fp.component(k);
    if (T.rows() != c.dim() || T.cols() != c.dim()) throw SizeMismatch("operator size differs from component");
    if (!fp.scalar_base() && !c.in_right(T)) throw SideMismatch("right regular representation of a non-right operator");
    ModuleOperator m;
    m.tag = fp.scalar_base() ? OpTag::Both : OpTag::Right;
    m.terms.push_back({Q(1), {{Primitive::Kind::Rho, k, std::make_shared<const Matrix>(T), {}}}});
    return m;
}

ModuleOperator ModuleOperator::bool_proj(int k) {
    ModuleOperator m;
    m.terms.push_back({Q(1), {{Primitive::Kind::BoolProj, k, nullptr, {}}}});
    return m;
}

ModuleOperator ModuleOperator::left_b(const Vec& b) {
    ModuleOperator m;
    m.tag = OpTag::Left;
    m.terms.push_back({Q(1), {{Primitive::Kind::LeftB, 0, nullptr, b}}});
    return m;
}

ModuleOperator ModuleOperator::right_b(const Vec& b) {
    ModuleOperator m;
    m.tag = OpTag::Right;
    m.terms.push_back({Q(1), {{Primitive::Kind::RightB, 0, nullptr, b}}});
    return m;
}

ModuleOperator ModuleOperator::operator*(const ModuleOperator& o) const {
    ModuleOperator m;
    m.tag = tag_meet(tag, o.tag);
    for (const auto& a : terms)
        for (const auto& b : o.terms) {
            Product p{a.coef * b.coef, a.factors};
            p.factors.insert(p.factors.end(), b.factors.begin(), b.factors.end());
            m.terms.push_back(std::move(p));
        }
    return m;
}

ModuleOperator ModuleOperator::operator+(const ModuleOperator& o) const {
    ModuleOperator m = *this;
    m.tag = tag_meet(tag, o.tag);
    m.terms.insert(m.terms.end(), o.terms.begin(), o.terms.end());
    return m;
}

ModuleOperator ModuleOperator::scaled(const Q& s) const {
    ModuleOperator m = *this;
    for (auto& t : m.terms) t.coef *= s;
    return m;
}

FPVector ModuleOperator::apply(const FreeProduct& fp, const FPVector& v) const {
    FPVector out = fp.zero();
    for (const auto& t : terms) {
        FPVector w = v;
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
            switch (it->kind) {
                case Primitive::Kind::Lambda: w = fp.lambda(it->k, *it->T, w); break;
                case Primitive::Kind::Rho: w = fp.rho(it->k, *it->T, w); break;
                case Primitive::Kind::BoolProj: w = fp.bool_proj(it->k, w); break;
                case Primitive::Kind::LeftB: w = fp.left_b(it->b, w); break;
                case Primitive::Kind::RightB: w = fp.right_b(it->b, w); break;
            }
        }
        out = fp.add(out, fp.scale(t.coef, w));
    }
    return out;
}

std::size_t ModuleOperator::lr_length() const {
    std::size_t best = 0;
    for (const auto& t : terms) {
        std::size_t c = 0;
        for (const auto& f : t.factors)
            if (f.kind == Primitive::Kind::Lambda || f.kind == Primitive::Kind::Rho) ++c;
        best = std::max(best, c);
    }
    return best;
}

FPVector apply_word(const FreeProduct& fp, const std::vector<const ModuleOperator*>& word, const FPVector& v) {
    FPVector w = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = (*it)->apply(fp, w);
    return w;
}

Vec word_expectation(const FreeProduct& fp, const std::vector<const ModuleOperator*>& word) {
    std::vector<std::size_t> remaining(word.size() + 1, 0);  // lr factors strictly left of position
    for (std::size_t i = 0; i < word.size(); ++i) remaining[i + 1] = remaining[i] + word[i]->lr_length();
    FPVector w = fp.unit();
    for (std::size_t i = word.size(); i-- > 0;) {
        w = word[i]->apply(fp, w);
        w = fp.prune(w, remaining[i]);
    }
    return w.b;
}

Matrix operator_matrix(const ModuleOperator& op, const FreeProduct& fp, std::size_t max_input_depth) {
    auto basis = fp.word_basis(max_input_depth);
    std::vector<Vec> cols;
    for (const auto& e : basis) cols.push_back(fp.coords(op.apply(fp, e)));
    return Matrix::from_cols(cols, fp.dim());
}

}  // namespace bnc
