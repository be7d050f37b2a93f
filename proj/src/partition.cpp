#include "bnc/partition.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "bnc/errors.hpp"

namespace bnc {

bool ChiMap::has_boolean() const {
    return std::find(sides.begin(), sides.end(), Side::Boolean) != sides.end();
}

ChiMap ChiMap::parse(const std::string& s) {
    ChiMap c;
    for (char ch : s) {
        if (ch == ',' || ch == ' ') continue;
        c.sides.push_back(side_from_letter(ch));
    }
    return c;
}

std::string ChiMap::str() const {
    std::string s;
    for (auto x : sides) s += side_letter(x);
    return s;
}

EpsilonMap parse_epsilon(const std::string& s) {
    EpsilonMap e;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw ParseError("bad colour: " + tok);
            e.push_back(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad colour: " + tok);
        }
    }
    return e;
}

std::string epsilon_str(const EpsilonMap& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s;
}

bool is_valid_rgs(const std::vector<int>& r) {
    int mx = -1;
    for (int x : r) {
        if (x < 0 || x > mx + 1) return false;
        mx = std::max(mx, x);
    }
    return true;
}

SetPartition::SetPartition(std::vector<int> r) : rgs(std::move(r)) {
    if (!is_valid_rgs(rgs)) throw ParseError("not a restricted-growth string");
}

SetPartition SetPartition::singletons(std::size_t n) {
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 0);
    return SetPartition(r);
}

SetPartition SetPartition::full(std::size_t n) { return SetPartition(std::vector<int>(n, 0)); }

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
    std::map<int, int> ids;
    std::vector<int> r(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = ids.find(labels[i]);
        if (it == ids.end()) it = ids.emplace(labels[i], static_cast<int>(ids.size())).first;
        r[i] = it->second;
    }
    return SetPartition(r);
}

SetPartition SetPartition::from_blocks(std::size_t n, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> lab(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int x : blocks[b]) {
            if (x < 0 || static_cast<std::size_t>(x) >= n || lab[x] != -1) throw ParseError("blocks do not partition");
            lab[x] = static_cast<int>(b);
        }
    for (int x : lab)
        if (x == -1) throw ParseError("blocks do not cover");
    return from_labels(lab);
}

SetPartition SetPartition::parse(const std::string& s) {
    std::vector<std::vector<int>> blocks;
    std::size_t i = 0;
    int maxv = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == ',') {
            ++i;
            continue;
        }
        if (c != '{') throw ParseError("expected '{' in partition: " + s);
        std::size_t j = s.find('}', i);
        if (j == std::string::npos) throw ParseError("unterminated block: " + s);
        std::vector<int> block;
        std::stringstream ss(s.substr(i + 1, j - i - 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.find_first_not_of(' ') == std::string::npos) continue;
            int v;
            try {
                v = std::stoi(tok);
            } catch (const std::logic_error&) {
                throw ParseError("bad element: " + tok);
            }
            if (v < 1) throw ParseError("elements are 1-based");
            block.push_back(v - 1);
            maxv = std::max(maxv, v);
        }
        blocks.push_back(block);
        i = j + 1;
    }
    return from_blocks(static_cast<std::size_t>(maxv), blocks);
}

SetPartition SetPartition::parse_rgs(const std::string& s) { return SetPartition(parse_epsilon(s)); }

int SetPartition::num_blocks() const {
    int mx = -1;
    for (int x : rgs) mx = std::max(mx, x);
    return mx + 1;
}

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> b(num_blocks());
    for (std::size_t i = 0; i < rgs.size(); ++i) b[rgs[i]].push_back(static_cast<int>(i));
    return b;
}

std::string SetPartition::str() const {
    std::string s;
    auto bl = blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
        s += b ? ",{" : "{";
        for (std::size_t j = 0; j < bl[b].size(); ++j) s += (j ? "," : "") + std::to_string(bl[b][j] + 1);
        s += "}";
    }
    return s;
}

std::string SetPartition::rgs_str() const { return epsilon_str(rgs); }

bool is_noncrossing(const SetPartition& p) {
    const int n = static_cast<int>(p.n());
    // a < b < c < d, a~c, b~d, a!~b
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (p.rgs[a] == p.rgs[b]) continue;
            for (int c = b + 1; c < n; ++c) {
                if (p.rgs[c] != p.rgs[a]) continue;
                for (int d = c + 1; d < n; ++d)
                    if (p.rgs[d] == p.rgs[b]) return false;
            }
        }
    return true;
}

BNCContext build_context(const ChiMap& chi) {
    if (chi.has_boolean()) throw AlphabetError("s_chi needs a two-letter colouring, got " + chi.str());
    BNCContext ctx;
    ctx.chi = chi;
    const int n = static_cast<int>(chi.n());
    for (int i = 0; i < n; ++i)
        if (chi[i] == Side::Left) ctx.s_chi.push_back(i);
    for (int i = n - 1; i >= 0; --i)
        if (chi[i] == Side::Right) ctx.s_chi.push_back(i);
    ctx.prec_rank.assign(n, 0);
    for (int j = 0; j < n; ++j) ctx.prec_rank[ctx.s_chi[j]] = j;
    return ctx;
}

SetPartition relabel_to_nc(const SetPartition& p, const BNCContext& ctx) {
    if (p.n() != ctx.n()) throw SizeMismatch("partition size differs from colouring length");
    std::vector<int> lab(p.n());
    for (std::size_t j = 0; j < p.n(); ++j) lab[j] = p.rgs[ctx.s_chi[j]];
    return SetPartition::from_labels(lab);
}

SetPartition relabel_from_nc(const SetPartition& q, const BNCContext& ctx) {
    if (q.n() != ctx.n()) throw SizeMismatch("partition size differs from colouring length");
    std::vector<int> lab(q.n());
    for (std::size_t i = 0; i < q.n(); ++i) lab[i] = q.rgs[ctx.prec_rank[i]];
    return SetPartition::from_labels(lab);
}

bool is_bnc(const SetPartition& p, const BNCContext& ctx) { return is_noncrossing(relabel_to_nc(p, ctx)); }

namespace {

std::size_t env_cap(std::size_t dflt) {
    if (const char* e = std::getenv("BNC_ENGINE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end != e && *end == '\0' && v >= 0) return static_cast<std::size_t>(v);
    }
    return dflt;
}

void nc_dfs(std::size_t n, std::vector<int>& r, std::vector<int>& last, std::vector<int>& first, int nblocks,
            std::vector<SetPartition>& out) {
    const int i = static_cast<int>(r.size());
    if (static_cast<std::size_t>(i) == n) {
        out.emplace_back(r);
        return;
    }
    for (int b = 0; b <= nblocks; ++b) {
        if (b < nblocks) {
            // joining block b after its last element must not cross an open block
            bool ok = true;
            for (int j = last[b] + 1; j < i && ok; ++j)
                if (first[r[j]] < last[b]) ok = false;
            if (!ok) continue;
            int saved = last[b];
            r.push_back(b);
            last[b] = i;
            nc_dfs(n, r, last, first, nblocks, out);
            last[b] = saved;
            r.pop_back();
        } else {
            r.push_back(b);
            last.push_back(i);
            first.push_back(i);
            nc_dfs(n, r, last, first, nblocks + 1, out);
            first.pop_back();
            last.pop_back();
            r.pop_back();
        }
    }
}

}  // namespace

std::size_t bnc_cap() { return env_cap(10); }
std::size_t lr_cap() { return env_cap(8); }

std::vector<SetPartition> enumerate_nc(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::vector<SetPartition>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<SetPartition> out;
    std::vector<int> r, last, first;
    nc_dfs(n, r, last, first, 0, out);
    cache.emplace(n, out);
    return out;
}

std::vector<SetPartition> enumerate_bnc(const BNCContext& ctx) { return enumerate_bnc(ctx, bnc_cap()); }

std::vector<SetPartition> enumerate_bnc(const BNCContext& ctx, std::size_t cap) {
    if (ctx.n() > cap)
        throw CapExceeded("n = " + std::to_string(ctx.n()) + " exceeds enumeration cap " + std::to_string(cap));
    auto nc = enumerate_nc(ctx.n());
    std::vector<SetPartition> out;
    out.reserve(nc.size());
    for (const auto& q : nc) out.push_back(relabel_from_nc(q, ctx));
    std::sort(out.begin(), out.end());
    return out;
}

bool refines(const SetPartition& pi, const SetPartition& sigma) {
    if (pi.n() != sigma.n()) throw SizeMismatch("refines: sizes differ");
    std::vector<int> img(pi.num_blocks(), -1);
    for (std::size_t i = 0; i < pi.n(); ++i) {
        int& t = img[pi.rgs[i]];
        if (t == -1) t = sigma.rgs[i];
        else if (t != sigma.rgs[i]) return false;
    }
    return true;
}

SetPartition meet(const SetPartition& pi, const SetPartition& sigma) {
    if (pi.n() != sigma.n()) throw SizeMismatch("meet: sizes differ");
    std::vector<int> lab(pi.n());
    const int m = sigma.num_blocks() + 1;
    for (std::size_t i = 0; i < pi.n(); ++i) lab[i] = pi.rgs[i] * m + sigma.rgs[i];
    return SetPartition::from_labels(lab);
}

namespace {

int uf_find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

}  // namespace

SetPartition join_partitions(const SetPartition& pi, const SetPartition& sigma) {
    if (pi.n() != sigma.n()) throw SizeMismatch("join: sizes differ");
    const int n = static_cast<int>(pi.n());
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    std::vector<int> fp(pi.num_blocks(), -1), fs(sigma.num_blocks(), -1);
    for (int i = 0; i < n; ++i) {
        if (fp[pi.rgs[i]] == -1) fp[pi.rgs[i]] = i;
        else par[uf_find(par, i)] = uf_find(par, fp[pi.rgs[i]]);
        if (fs[sigma.rgs[i]] == -1) fs[sigma.rgs[i]] = i;
        else par[uf_find(par, i)] = uf_find(par, fs[sigma.rgs[i]]);
    }
    std::vector<int> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = uf_find(par, i);
    return SetPartition::from_labels(lab);
}

SetPartition nc_closure(const SetPartition& p) {
    std::vector<int> lab = p.rgs;
    const int n = static_cast<int>(lab.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n && !changed; ++a)
            for (int b = a + 1; b < n && !changed; ++b) {
                if (lab[a] == lab[b]) continue;
                for (int c = b + 1; c < n && !changed; ++c) {
                    if (lab[c] != lab[a]) continue;
                    for (int d = c + 1; d < n && !changed; ++d)
                        if (lab[d] == lab[b]) {
                            int from = lab[b], to = lab[a];
                            for (auto& x : lab)
                                if (x == from) x = to;
                            changed = true;
                        }
                }
            }
    }
    return SetPartition::from_labels(lab);
}

SetPartition join(const SetPartition& pi, const SetPartition& sigma, const BNCContext& ctx) {
    auto a = relabel_to_nc(pi, ctx), b = relabel_to_nc(sigma, ctx);
    return relabel_from_nc(nc_closure(join_partitions(a, b)), ctx);
}

namespace {

struct NcTable {
    std::vector<SetPartition> elems;
    std::unordered_map<std::string, int> index;
    std::map<int, std::vector<std::pair<int, long long>>> rows;  // pi -> (tau, mu)
};

std::string key_of(const SetPartition& p) {
    std::string k;
    for (int x : p.rgs) k.push_back(static_cast<char>('A' + x));
    return k;
}

NcTable& nc_table(std::size_t n) {
    static std::map<std::size_t, NcTable> tables;
    auto it = tables.find(n);
    if (it != tables.end()) return it->second;
    NcTable t;
    t.elems = enumerate_nc(n);
    for (std::size_t i = 0; i < t.elems.size(); ++i) t.index.emplace(key_of(t.elems[i]), static_cast<int>(i));
    return tables.emplace(n, std::move(t)).first->second;
}

const std::vector<std::pair<int, long long>>& mobius_row(NcTable& t, int pi) {
    auto it = t.rows.find(pi);
    if (it != t.rows.end()) return it->second;
    const auto& p = t.elems[pi];
    std::vector<int> up;
    for (std::size_t i = 0; i < t.elems.size(); ++i)
        if (refines(p, t.elems[i])) up.push_back(static_cast<int>(i));
    std::stable_sort(up.begin(), up.end(),
                     [&](int a, int b) { return t.elems[a].num_blocks() > t.elems[b].num_blocks(); });
    std::vector<std::pair<int, long long>> row;
    row.reserve(up.size());
    for (std::size_t a = 0; a < up.size(); ++a) {
        if (up[a] == pi) {
            row.emplace_back(pi, 1);
            continue;
        }
        long long s = 0;
        for (const auto& [rho, m] : row)
            if (m != 0 && refines(t.elems[rho], t.elems[up[a]])) s += m;
        row.emplace_back(up[a], -s);
    }
    std::sort(row.begin(), row.end());
    return t.rows.emplace(pi, std::move(row)).first->second;
}

std::mutex& mobius_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

long long mobius_nc(const SetPartition& pi, const SetPartition& sigma) {
    if (pi.n() != sigma.n()) throw SizeMismatch("mobius: sizes differ");
    if (!refines(pi, sigma)) return 0;
    std::lock_guard<std::mutex> lock(mobius_mutex());
    auto& t = nc_table(pi.n());
    auto ip = t.index.find(key_of(pi)), is = t.index.find(key_of(sigma));
    if (ip == t.index.end() || is == t.index.end()) throw NotBNC("mobius_nc: argument is crossing");
    const auto& row = mobius_row(t, ip->second);
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(is->second, LLONG_MIN));
    return (it != row.end() && it->first == is->second) ? it->second : 0;
}

long long mobius(const SetPartition& pi, const SetPartition& sigma, const BNCContext& ctx) {
    if (pi.n() != ctx.n() || sigma.n() != ctx.n()) throw SizeMismatch("mobius: sizes differ");
    if (!is_bnc(pi, ctx)) throw NotBNC(pi.str() + " is not bi-non-crossing for " + ctx.chi.str());
    if (!is_bnc(sigma, ctx)) throw NotBNC(sigma.str() + " is not bi-non-crossing for " + ctx.chi.str());
    return mobius_nc(relabel_to_nc(pi, ctx), relabel_to_nc(sigma, ctx));
}

FfbContext lr_replacement(const ChiMap& chi_hat) {
    FfbContext f;
    f.chi_hat = chi_hat;
    std::vector<int> lab;
    int next = 0;
    for (std::size_t i = 0; i < chi_hat.n(); ++i) {
        f.f.push_back(static_cast<int>(f.chi.n()));
        if (chi_hat[i] == Side::Boolean) {
            f.boolean_starts.push_back(static_cast<int>(f.chi.n()));
            f.chi.sides.push_back(Side::Left);
            f.chi.sides.push_back(Side::Right);
            lab.push_back(next);
            lab.push_back(next++);
        } else {
            f.chi.sides.push_back(chi_hat[i]);
            lab.push_back(next++);
        }
    }
    f.bottom = SetPartition::from_labels(lab);
    return f;
}

bool in_bnc_ffb(const SetPartition& p, const FfbContext& fctx) {
    for (int j : fctx.boolean_starts)
        if (p.rgs[j] != p.rgs[j + 1]) return false;
    return true;
}

std::vector<SetPartition> enumerate_bnc_ffb(const FfbContext& fctx) { return enumerate_bnc_ffb(fctx, bnc_cap()); }

std::vector<SetPartition> enumerate_bnc_ffb(const FfbContext& fctx, std::size_t cap) {
    auto all = enumerate_bnc(build_context(fctx.chi), cap);
    std::vector<SetPartition> out;
    for (auto& p : all)
        if (in_bnc_ffb(p, fctx)) out.push_back(std::move(p));
    return out;
}

unsigned long long catalan(unsigned n) {
    unsigned long long c = 1;
    for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace bnc
