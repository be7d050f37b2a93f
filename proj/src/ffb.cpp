#include "bnc/ffb.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "bnc/errors.hpp"
#include "bnc/lr_calculus.hpp"
#include "bnc/partition.hpp"

namespace bnc {

Claim& ClaimReport::claim(const std::string& id) {
    for (auto& c : claims)
        if (c.id == id) return c;
    claims.push_back({});
    claims.back().id = id;
    return claims.back();
}

const Claim* ClaimReport::find(const std::string& id) const {
    for (const auto& c : claims)
        if (c.id == id) return &c;
    return nullptr;
}

bool ClaimReport::pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

void ClaimReport::merge(const ClaimReport& other) {
    for (const auto& o : other.claims) {
        Claim& c = claim(o.id);
        c.checked += o.checked;
        if (!o.pass && c.pass) {
            c.pass = false;
            c.witness = o.witness;
        }
    }
}

namespace {

Vec flatten(const Matrix& m) {
    Vec v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

// All tuples when there are at most `limit`, otherwise `limit` random ones.
template <class F>
void for_each_choice(const std::vector<std::size_t>& sizes, std::size_t limit, std::mt19937_64& rng, F&& fn) {
    limit = std::max<std::size_t>(limit, 1);
    for (auto s : sizes)
        if (s == 0) return;
    std::size_t total = 1;
    bool small = true;
    for (auto s : sizes) {
        if (total > limit / s) {
            small = false;
            break;
        }
        total *= s;
    }
    std::vector<std::size_t> c(sizes.size(), 0);
    if (small) {
        for (std::size_t t = 0; t < total; ++t) {
            fn(c);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (++c[i] < sizes[i]) break;
                c[i] = 0;
            }
        }
        return;
    }
    for (std::size_t t = 0; t < limit; ++t) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = rng() % sizes[i];
        fn(c);
    }
}

// Every string of length n over {0..base-1}, first position slowest.
template <class F>
void for_each_string(std::size_t n, int base, F&& fn) {
    std::vector<int> s(n, 0);
    while (true) {
        fn(s);
        std::size_t i = n;
        while (i > 0) {
            if (++s[i - 1] < base) break;
            s[i - 1] = 0;
            --i;
        }
        if (i == 0) return;
    }
}

// Weak compositions of m into `parts` parts.
void compositions(std::size_t m, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() + 1 == parts) {
        cur.push_back(m);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t a = 0; a <= m; ++a) {
        cur.push_back(a);
        compositions(m - a, parts, cur, out);
        cur.pop_back();
    }
}

const Side kSides[3] = {Side::Left, Side::Right, Side::Boolean};

std::string letter_name(Side s, int k, std::size_t g) {
    return std::string(1, side_letter(s)) + std::to_string(k) + "." + std::to_string(g);
}

std::string join_words(const std::vector<std::string>& w) {
    std::string out;
    for (const auto& s : w) out += (out.empty() ? "" : " ") + s;
    return out.empty() ? "(empty)" : out;
}

std::string vec_str(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
    return out + ")";
}

std::vector<const ModuleOperator*> pointers(const std::vector<ModuleOperator>& ops) {
    std::vector<const ModuleOperator*> out;
    for (const auto& o : ops) out.push_back(&o);
    return out;
}

Vec product_in(const StructuredAlgebra& A, const std::vector<Vec>& zs) {
    Vec acc = A.unit;
    for (const auto& z : zs) acc = A.mul(acc, z);
    return acc;
}

// Regular-representation operators of one system part.
struct PartOps {
    std::vector<ModuleOperator> left, right, c, d, algebra;  // algebra = left then right
    std::vector<std::string> algebra_names;
};

PartOps part_ops(const FfbSystem& sys, int k) {
    const auto& fp = *sys.fp;
    const auto& part = sys.parts[k];
    PartOps o;
    for (const auto& m : part.left) o.left.push_back(ModuleOperator::lambda(fp, k, m));
    for (const auto& m : part.right) o.right.push_back(ModuleOperator::rho(fp, k, m));
    for (const auto& m : part.c) o.c.push_back(ModuleOperator::lambda(fp, k, m));
    for (const auto& m : part.d) o.d.push_back(ModuleOperator::rho(fp, k, m));
    for (std::size_t g = 0; g < o.left.size(); ++g) {
        o.algebra.push_back(o.left[g]);
        o.algebra_names.push_back(letter_name(Side::Left, k, g));
    }
    for (std::size_t g = 0; g < o.right.size(); ++g) {
        o.algebra.push_back(o.right[g]);
        o.algebra_names.push_back(letter_name(Side::Right, k, g));
    }
    return o;
}

bool in_matrix_span(const std::vector<Matrix>& gens, const Matrix& m) {
    if (m.is_zero()) return true;
    if (gens.empty()) return false;
    std::vector<Vec> basis;
    for (const auto& g : gens) basis.push_back(flatten(g));
    std::size_t r = rank(Matrix::from_rows(basis));
    basis.push_back(flatten(m));
    return rank(Matrix::from_rows(basis)) == r;
}

}  // namespace

Matrix FfbEmbedding::T(const Vec& z) const { return doubled_T(theta.X, theta.theta(z)); }
Matrix FfbEmbedding::D(const Vec& z) const { return doubled_D(theta.X, theta.theta(z)); }

ModuleOperator FfbEmbedding::alpha(int k, Side s, const Vec& z) const {
    const auto& fp = *system.fp;
    switch (s) {
        case Side::Left: return ModuleOperator::lambda(fp, k, D(z));
        case Side::Right: return ModuleOperator::rho(fp, k, D(z));
        case Side::Boolean: break;
    }
    return ModuleOperator::lambda(fp, k, T(z)) * ModuleOperator::rho(fp, k, S);
}

FfbEmbedding embed_ffb_family(const FfbFamily& fam, std::size_t depth) {
    if (!fam.space) throw std::invalid_argument("family without a space");
    FfbEmbedding e;
    e.theta = build_bimodule_from_space(*fam.space);
    const Bimodule& X = e.theta.X;
    e.Y = doubled_bimodule(X);
    e.S = doubled_S(X);
    const std::size_t K = fam.faces.size();
    e.system.fp = std::make_shared<const FreeProduct>(std::vector<Bimodule>(K, e.Y), depth);
    e.system.parts.resize(K);

    Claim& tags = e.checks.claim("side-tags");
    tags.record(e.Y.in_left(e.S) && e.Y.in_right(e.S), [] { return std::string("S_1 is not two-sided"); });
    for (std::size_t k = 0; k < K; ++k) {
        auto& part = e.system.parts[k];
        const auto& f = fam.faces[k];
        for (std::size_t g = 0; g < f[0].size(); ++g) {
            part.left.push_back(e.D(f[0][g]));
            tags.record(e.Y.in_left(part.left.back()), [&] { return "D_Z for " + letter_name(Side::Left, k, g); });
        }
        for (std::size_t g = 0; g < f[1].size(); ++g) {
            part.right.push_back(e.D(f[1][g]));
            tags.record(e.Y.in_right(part.right.back()), [&] { return "D_Z for " + letter_name(Side::Right, k, g); });
        }
        for (std::size_t g = 0; g < f[2].size(); ++g) {
            part.c.push_back(e.T(f[2][g]));
            tags.record(e.Y.in_left(part.c.back()), [&] { return "T_Z for " + letter_name(Side::Boolean, k, g); });
        }
        part.d.push_back(e.S);
    }

    // D_Z1 S (T_A D_Z S)^n D_Z0 1_B = 0 (+) theta(Z1 (A Z)^n Z0) 1_B
    Claim& tele = e.checks.claim("telescoping");
    const auto& A = *fam.space->A;
    const Vec unitY = e.Y.unit_vector();
    for (std::size_t k = 0; k < K; ++k) {
        const auto& f = fam.faces[k];
        if (f[2].empty()) continue;
        std::vector<Vec> zs = f[0];
        zs.insert(zs.end(), f[1].begin(), f[1].end());
        if (zs.empty()) zs.push_back(A.unit);
        for (std::size_t n = 0; n <= 2; ++n) {
            std::size_t zi = 0;
            auto nextz = [&] { return zs[zi++ % zs.size()]; };
            Vec z0 = nextz();
            Vec v = e.D(z0) * unitY;
            Vec prod = z0;
            for (std::size_t j = 0; j < n; ++j) {
                Vec z = nextz();
                const Vec& a = f[2][j % f[2].size()];
                v = e.T(a) * (e.D(z) * (e.S * v));
                prod = A.mul(a, A.mul(z, prod));
            }
            Vec z1 = nextz();
            v = e.D(z1) * (e.S * v);
            prod = A.mul(z1, prod);
            Vec expect = doubled_second(X, e.theta.theta(prod) * X.unit_vector());
            tele.record(v == expect, [&] { return "k=" + std::to_string(k) + " n=" + std::to_string(n); });
        }
    }
    return e;
}

FfbSystem corrupt_system(const FfbSystem& sys) {
    FfbSystem out = sys;
    for (std::size_t k = 0; k < out.parts.size(); ++k)
        for (auto& d : out.parts[k].d) d = Matrix::identity(sys.fp->component(k).dim());
    return out;
}

ClaimReport check_ffb_system(const FfbSystem& sys, const WordCheckOptions& opt) {
    ClaimReport rep;
    const auto& fp = *sys.fp;
    Claim& tags = rep.claim("side-tags");
    Claim& closure = rep.claim("c-closure");
    Claim& ann_c = rep.claim("annihilation-c");
    Claim& ann_d = rep.claim("annihilation-d");
    Claim& van_c = rep.claim("vanishing-cdc");
    Claim& van_d = rep.claim("vanishing-dcd");
    std::mt19937_64 rng(opt.seed);
    const std::size_t tdepth = std::min(opt.test_depth, fp.depth());
    const auto tests = fp.word_basis(tdepth);
    const auto test_names = fp.word_labels(tdepth);
    const auto& Bref = *fp.B();

    for (std::size_t k = 0; k < sys.parts.size(); ++k) {
        const auto& part = sys.parts[k];
        const auto& Y = fp.component(k);
        for (const auto& m : part.left) tags.record(Y.in_left(m), [&] { return "left generator of part " + std::to_string(k); });
        for (const auto& m : part.right)
            tags.record(Y.in_right(m), [&] { return "right generator of part " + std::to_string(k); });
        for (const auto& m : part.c) tags.record(Y.in_left(m), [&] { return "C' generator of part " + std::to_string(k); });
        for (const auto& m : part.d)
            tags.record(Y.in_left(m) && Y.in_right(m), [&] { return "D' generator of part " + std::to_string(k); });
        for (std::size_t g = 0; g < part.c.size(); ++g)
            for (std::size_t j = 0; j < Bref.dim; ++j) {
                Matrix L = Y.left_action(Bref.basis(j));
                bool ok = in_matrix_span(part.c, L * part.c[g]) && in_matrix_span(part.c, part.c[g] * L);
                closure.record(ok, [&] { return "C' generator " + std::to_string(g) + " of part " + std::to_string(k); });
            }

        PartOps o = part_ops(sys, static_cast<int>(k));
        // (1): X w X' = 0 for X, X' in C' (resp. D') and words w over the algebra generators
        for (int which = 0; which < 2; ++which) {
            const auto& ends = which == 0 ? o.c : o.d;
            const char tag = which == 0 ? 'C' : 'D';
            Claim& cl = which == 0 ? ann_c : ann_d;
            if (ends.empty()) continue;
            for (std::size_t len = 0; len <= opt.word_cap; ++len) {
                std::vector<std::size_t> sizes(len + 2, o.algebra.size());
                sizes.front() = sizes.back() = ends.size();
                if (len > 0 && o.algebra.empty()) continue;
                for_each_choice(sizes, opt.max_tuples, rng, [&](const std::vector<std::size_t>& ch) {
                    ModuleOperator op = ends[ch.front()];
                    for (std::size_t i = 1; i + 1 < ch.size(); ++i) op = op * o.algebra[ch[i]];
                    op = op * ends[ch.back()];
                    for (std::size_t t = 0; t < tests.size(); ++t) {
                        bool ok = fp.is_zero(op.apply(fp, tests[t]));
                        cl.record(ok, [&] {
                            std::vector<std::string> w{std::string(1, tag) + std::to_string(k) + "." + std::to_string(ch.front())};
                            for (std::size_t i = 1; i + 1 < ch.size(); ++i) w.push_back(o.algebra_names[ch[i]]);
                            w.push_back(std::string(1, tag) + std::to_string(k) + "." + std::to_string(ch.back()));
                            return join_words(w) + " on " + test_names[t];
                        });
                        if (!ok) break;
                    }
                });
            }
        }

        // (2), (3): E(a C a (D a C)^n a) = 0 and the same with C and D exchanged, n <= 1
        if (o.c.empty() || o.d.empty()) continue;
        for (int which = 0; which < 2; ++which) {
            Claim& cl = which == 0 ? van_c : van_d;
            const auto& first = which == 0 ? o.c : o.d;
            const auto& second = which == 0 ? o.d : o.c;
            const char t1 = which == 0 ? 'C' : 'D', t2 = which == 0 ? 'D' : 'C';
            for (std::size_t n = 0; n <= 1; ++n) {
                const std::size_t slots = 2 + 2 * n;
                for (std::size_t m = 0; m <= opt.word_cap; ++m) {
                    if (m > 0 && o.algebra.empty()) continue;
                    std::vector<std::vector<std::size_t>> comps;
                    std::vector<std::size_t> cur;
                    compositions(m, slots, cur, comps);
                    for (const auto& comp : comps) {
                        // kinds: 0 algebra, 1 first, 2 second
                        std::vector<int> kinds;
                        auto push_a = [&](std::size_t cnt) { kinds.insert(kinds.end(), cnt, 0); };
                        push_a(comp[0]);
                        kinds.push_back(1);
                        push_a(comp[1]);
                        if (n == 1) {
                            kinds.push_back(2);
                            push_a(comp[2]);
                            kinds.push_back(1);
                            push_a(comp[3]);
                        }
                        std::vector<std::size_t> sizes;
                        for (int kd : kinds) sizes.push_back(kd == 0 ? o.algebra.size() : kd == 1 ? first.size() : second.size());
                        for_each_choice(sizes, opt.max_tuples, rng, [&](const std::vector<std::size_t>& ch) {
                            std::vector<const ModuleOperator*> word;
                            for (std::size_t i = 0; i < kinds.size(); ++i)
                                word.push_back(kinds[i] == 0 ? &o.algebra[ch[i]] : kinds[i] == 1 ? &first[ch[i]] : &second[ch[i]]);
                            Vec e = word_expectation(fp, word);
                            cl.record(is_zero(e), [&] {
                                std::vector<std::string> w;
                                for (std::size_t i = 0; i < kinds.size(); ++i) {
                                    if (kinds[i] == 0) w.push_back(o.algebra_names[ch[i]]);
                                    else w.push_back(std::string(1, kinds[i] == 1 ? t1 : t2) + std::to_string(k) + "." +
                                                     std::to_string(ch[i]));
                                }
                                return join_words(w) + " -> " + vec_str(e);
                            });
                        });
                    }
                }
            }
        }
    }
    return rep;
}

ClaimReport check_partial_ffb(const FfbEmbedding& emb, const FfbFamily& fam, const WordCheckOptions& opt) {
    ClaimReport rep;
    Claim& cl = rep.claim("moment-preservation");
    const auto& fp = *emb.system.fp;
    const auto& space = *fam.space;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t k = 0; k < fam.faces.size(); ++k) {
        const auto& f = fam.faces[k];
        std::vector<std::vector<ModuleOperator>> images(3);
        for (int s = 0; s < 3; ++s)
            for (const auto& z : f[s]) images[s].push_back(emb.alpha(static_cast<int>(k), kSides[s], z));
        for (std::size_t n = 1; n <= opt.word_cap; ++n)
            for_each_string(n, 3, [&](const std::vector<int>& chi) {
                std::vector<std::size_t> sizes;
                for (int s : chi) sizes.push_back(f[s].size());
                for_each_choice(sizes, opt.max_tuples, rng, [&](const std::vector<std::size_t>& ch) {
                    std::vector<Vec> zs;
                    std::vector<const ModuleOperator*> word;
                    for (std::size_t i = 0; i < n; ++i) {
                        zs.push_back(f[chi[i]][ch[i]]);
                        word.push_back(&images[chi[i]][ch[i]]);
                    }
                    Vec lhs = word_expectation(fp, word);
                    Vec rhs = space.E(product_in(*space.A, zs));
                    cl.record(lhs == rhs, [&] {
                        std::vector<std::string> w;
                        for (std::size_t i = 0; i < n; ++i) w.push_back(letter_name(kSides[chi[i]], k, ch[i]));
                        return join_words(w) + ": " + vec_str(lhs) + " vs " + vec_str(rhs);
                    });
                });
            });
    }
    return rep;
}

ClaimReport check_ffb_independence(const FfbFamily& fam, const WordCheckOptions& opt) {
    ClaimReport rep;
    Claim& cl = rep.claim("independence");
    const auto& space = *fam.space;
    ThetaRep th = build_bimodule_from_space(space);
    const int K = static_cast<int>(fam.faces.size());
    FreeProduct fp(std::vector<Bimodule>(K, th.X), opt.word_cap + 1);
    // reference operators per (k, slot, generator)
    std::vector<std::array<std::vector<ModuleOperator>, 3>> refs(K);
    for (int k = 0; k < K; ++k) {
        const auto& f = fam.faces[k];
        for (const auto& z : f[0]) refs[k][0].push_back(ModuleOperator::lambda(fp, k, th.theta(z)));
        for (const auto& z : f[1]) refs[k][1].push_back(ModuleOperator::rho(fp, k, th.theta(z)));
        for (const auto& z : f[2])
            refs[k][2].push_back(ModuleOperator::bool_proj(k) * ModuleOperator::lambda(fp, k, th.theta(z)) *
                                 ModuleOperator::bool_proj(k));
    }
    std::mt19937_64 rng(opt.seed);
    for (std::size_t n = 1; n <= opt.word_cap; ++n)
        for_each_string(n, 3, [&](const std::vector<int>& chi) {
            for_each_string(n, K, [&](const std::vector<int>& eps) {
                std::vector<std::size_t> sizes;
                for (std::size_t i = 0; i < n; ++i) sizes.push_back(fam.faces[eps[i]][chi[i]].size());
                for_each_choice(sizes, opt.max_tuples, rng, [&](const std::vector<std::size_t>& ch) {
                    std::vector<Vec> zs;
                    std::vector<const ModuleOperator*> word;
                    for (std::size_t i = 0; i < n; ++i) {
                        zs.push_back(fam.faces[eps[i]][chi[i]][ch[i]]);
                        word.push_back(&refs[eps[i]][chi[i]][ch[i]]);
                    }
                    Vec lhs = space.E(product_in(*space.A, zs));
                    Vec rhs = word_expectation(fp, word);
                    cl.record(lhs == rhs, [&] {
                        std::vector<std::string> w;
                        for (std::size_t i = 0; i < n; ++i) w.push_back(letter_name(kSides[chi[i]], eps[i], ch[i]));
                        return join_words(w) + ": " + vec_str(lhs) + " vs " + vec_str(rhs);
                    });
                });
            });
        });
    return rep;
}

namespace {

// Expanded operators of one system word shape.
struct SystemWord {
    std::vector<ModuleOperator> expanded;  // b letters split into lambda(c), rho(d)
    std::vector<ModuleOperator> zword;     // b letters as the product
    std::vector<ModuleOperator> tilde;     // reference representation
    std::vector<LROp> lr;
    std::vector<std::string> names;
};

SystemWord system_word(const FfbSystem& sys, const std::vector<int>& chi, const std::vector<int>& eps,
                       const std::vector<std::size_t>& ch, bool drop_projections) {
    const auto& fp = *sys.fp;
    SystemWord w;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const int k = eps[i];
        const auto& part = sys.parts[k];
        if (chi[i] == 0 || chi[i] == 1) {
            const Matrix& m = chi[i] == 0 ? part.left[ch[i]] : part.right[ch[i]];
            auto op = chi[i] == 0 ? ModuleOperator::lambda(fp, k, m) : ModuleOperator::rho(fp, k, m);
            w.expanded.push_back(op);
            w.zword.push_back(op);
            w.tilde.push_back(op);
            w.lr.push_back({chi[i] == 0 ? Side::Left : Side::Right, k, m});
            w.names.push_back(letter_name(kSides[chi[i]], k, ch[i]));
            continue;
        }
        const std::size_t gc = ch[i] / part.d.size(), gd = ch[i] % part.d.size();
        const Matrix& c = part.c[gc];
        const Matrix& d = part.d[gd];
        auto lc = ModuleOperator::lambda(fp, k, c);
        auto rd = ModuleOperator::rho(fp, k, d);
        w.expanded.push_back(lc);
        w.expanded.push_back(rd);
        w.zword.push_back(lc * rd);
        auto m = ModuleOperator::lambda(fp, k, c * d);
        w.tilde.push_back(drop_projections ? m : ModuleOperator::bool_proj(k) * m * ModuleOperator::bool_proj(k));
        w.lr.push_back({Side::Left, k, c});
        w.lr.push_back({Side::Right, k, d});
        w.names.push_back(letter_name(Side::Boolean, k, gc) + "/" + std::to_string(gd));
    }
    return w;
}

std::vector<std::size_t> system_sizes(const FfbSystem& sys, const std::vector<int>& chi, const std::vector<int>& eps) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const auto& part = sys.parts[eps[i]];
        sizes.push_back(chi[i] == 0 ? part.left.size() : chi[i] == 1 ? part.right.size() : part.c.size() * part.d.size());
    }
    return sizes;
}

std::string shape_str(const std::vector<int>& chi, const std::vector<int>& eps) {
    std::string s;
    for (int c : chi) s += side_letter(kSides[c]);
    return s + " eps " + epsilon_str(eps);
}

}  // namespace

ClaimReport check_ffb_independence(const FfbSystem& sys, const WordCheckOptions& opt, bool drop_projections) {
    ClaimReport rep;
    Claim& cl = rep.claim("independence");
    const auto& fp = *sys.fp;
    const int K = static_cast<int>(sys.parts.size());
    std::mt19937_64 rng(opt.seed);
    for (std::size_t n = 1; n <= opt.word_cap; ++n)
        for_each_string(n, 3, [&](const std::vector<int>& chi) {
            for_each_string(n, K, [&](const std::vector<int>& eps) {
                for_each_choice(system_sizes(sys, chi, eps), opt.max_tuples, rng, [&](const std::vector<std::size_t>& ch) {
                    SystemWord w = system_word(sys, chi, eps, ch, drop_projections);
                    Vec lhs = word_expectation(fp, pointers(w.expanded));
                    Vec rhs = word_expectation(fp, pointers(w.tilde));
                    cl.record(lhs == rhs, [&] { return join_words(w.names) + ": " + vec_str(lhs) + " vs " + vec_str(rhs); });
                });
            });
        });
    return rep;
}

ClaimReport verify_system_gives_ffb(const FfbSystem& sys, const WordCheckOptions& opt, std::size_t pipeline_cap) {
    ClaimReport rep = check_ffb_independence(sys, opt);
    Claim& z2t = rep.claim("ZtoT");
    Claim& eat = rep.claim("EATtoELT");
    Claim& lrd = rep.claim("LRdecompofTs");
    Claim& mut = rep.claim("muprimeTstotildeZ");
    Claim& sup = rep.claim("Eofsuperfluousis0");
    const auto& fp = *sys.fp;
    const int K = static_cast<int>(sys.parts.size());
    std::mt19937_64 rng(opt.seed + 1);
    const std::size_t cap = std::min(opt.word_cap, pipeline_cap);
    const FPVector one = fp.unit();
    for (std::size_t n = 1; n <= cap; ++n)
        for_each_string(n, 3, [&](const std::vector<int>& chi) {
            std::string chis;
            for (int c : chi) chis += side_letter(kSides[c]);
            const FfbContext fctx = lr_replacement(ChiMap::parse(chis));
            for_each_string(n, K, [&](const std::vector<int>& eps) {
                for_each_choice(system_sizes(sys, chi, eps), 1, rng, [&](const std::vector<std::size_t>& ch) {
                    SystemWord w = system_word(sys, chi, eps, ch, false);
                    auto where = [&] { return join_words(w.names); };
                    FPVector direct = lr_word_vector(w.lr, fp);
                    z2t.record(fp.equal(apply_word(fp, pointers(w.zword), one), direct), where);
                    eat.record(word_expectation(fp, pointers(w.expanded)) == fp.p(direct), where);
                    std::vector<std::size_t> projected(fctx.boolean_starts.begin(), fctx.boolean_starts.end());
                    LRDecomposition dec = lr_decompose(w.lr, fp, projected);
                    lrd.record(dec.reconstructs && dec.kept_matches && dec.split_reconstructs && dec.residual_in_family,
                               where);
                    mut.record(fp.equal(dec.projected_word, apply_word(fp, pointers(w.tilde), one)), where);
                    sup.record(is_zero(fp.p(dec.residual_sum)), where);
                });
            });
        });
    return rep;
}

ClaimReport check_ffb_formulas(const FfbSystem& sys, std::size_t max_n, std::uint64_t seed) {
    ClaimReport rep;
    Claim& van = rep.claim("vanishing");
    Claim& form = rep.claim("main-formula");
    Claim& kap = rep.claim("kappa-mixed-zero");
    Claim& alt = rep.claim("kappa-restricted-sum");
    const int K = static_cast<int>(sys.parts.size());
    std::mt19937_64 rng(seed);
    for (std::size_t n = 1; n <= max_n; ++n)
        for_each_string(n, 3, [&](const std::vector<int>& chi) {
            std::string chis;
            for (int c : chi) chis += side_letter(kSides[c]);
            const FfbMobius data = ffb_mobius(ChiMap::parse(chis));
            for_each_string(n, K, [&](const std::vector<int>& eps) {
                for_each_choice(system_sizes(sys, chi, eps), 1, rng, [&](const std::vector<std::size_t>& ch) {
                    SystemWord w = system_word(sys, chi, eps, ch, false);
                    EpsilonMap e;
                    for (std::size_t i = 0; i < n; ++i) {
                        e.push_back(eps[i]);
                        if (chi[i] == 2) e.push_back(eps[i]);
                    }
                    ModuleMoments mm(sys.fp, w.expanded);
                    FfbFormulaReport r = ffb_moment_formula(data, e, mm);
                    const std::string where = shape_str(chi, eps) + " " + join_words(w.names);
                    van.record(r.vanishing_ok, [&] { return where + " nonzero at " + r.nonvanishing.front().str(); });
                    form.record(r.formula_ok, [&] { return where + ": " + vec_str(r.lhs) + " vs " + vec_str(r.rhs); });
                    kap.record(r.kappa_ok, [&] { return where + ": kappa " + vec_str(r.kappa_full); });
                    alt.record(r.alt_ok, [&] {
                        return where + ": " + vec_str(r.kappa_alt) + " vs " + vec_str(r.kappa_full);
                    });
                });
            });
        });
    return rep;
}

FfbFamily fixture_m2_family(const BBProbSpace& space, bool identical) {
    // basis E11, E12, E21, E22
    auto m = [](int a, int b, int c, int d) { return Vec{qint(a), qint(b), qint(c), qint(d)}; };
    FfbFamily fam;
    fam.space = &space;
    fam.faces.push_back({std::vector<Vec>{m(0, 1, 1, 0), m(1, 0, 0, 2)}, std::vector<Vec>{m(0, 0, 1, 0), m(1, -1, 0, 0)},
                         std::vector<Vec>{m(0, 1, 0, 1)}});
    if (identical)
        fam.faces.push_back(fam.faces.front());
    else
        fam.faces.push_back({std::vector<Vec>{m(1, 0, -1, 0), m(0, 0, 0, 1)}, std::vector<Vec>{m(0, 1, 1, 1)},
                             std::vector<Vec>{m(2, 0, 1, 0)}});
    return fam;
}

}  // namespace bnc
