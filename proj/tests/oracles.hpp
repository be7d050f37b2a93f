#pragma once
// Brute-force reference implementations shared by the test binaries.
#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

// All restricted growth strings of length n.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> r(n);
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            out.push_back(r);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            r[i] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    if (n == 0) out.push_back({});
    else {
        r[0] = 0;
        rec(1, 0);
    }
    return out;
}

// position of each element (0-based) in the order: lefts ascending, then rights descending
inline std::vector<int> chi_positions(const std::string& chi) {
    int n = static_cast<int>(chi.size());
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (chi[i] == 'l') order.push_back(i);
    for (int i = n - 1; i >= 0; --i)
        if (chi[i] == 'r') order.push_back(i);
    std::vector<int> pos(n);
    for (int j = 0; j < n; ++j) pos[order[j]] = j;
    return pos;
}

// no a < b < c < d (in the chi order) with a,c in one block and b,d in another
inline bool bnc_quartic(const std::vector<int>& rgs, const std::string& chi) {
    int n = static_cast<int>(rgs.size());
    auto pos = chi_positions(chi);
    std::vector<int> at(n);
    for (int i = 0; i < n; ++i) at[pos[i]] = rgs[i];
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (at[a] == at[c] && at[b] == at[d] && at[a] != at[b]) return false;
    return true;
}

// Same test in linear time: scanning in the chi order, a block that reappears must be the innermost open one.
inline bool bnc(const std::vector<int>& rgs, const std::string& chi) {
    int n = static_cast<int>(rgs.size());
    auto pos = chi_positions(chi);
    std::vector<int> at(n), last(n, -1), open;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) at[pos[i]] = rgs[i];
    for (int j = 0; j < n; ++j) last[at[j]] = j;
    for (int j = 0; j < n; ++j) {
        int x = at[j];
        if (seen[x]) {
            if (open.empty() || open.back() != x) return false;
            if (last[x] == j) open.pop_back();
        } else {
            seen[x] = true;
            if (last[x] != j) open.push_back(x);
        }
    }
    return true;
}

inline bool leq(const std::vector<int>& p, const std::vector<int>& s) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[i] == p[j] && s[i] != s[j]) return false;
    return true;
}

inline std::vector<std::string> all_chis(int n, const std::string& alphabet = "lr") {
    std::vector<std::string> out{""};
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (auto& s : out)
            for (char c : alphabet) next.push_back(s + c);
        out = next;
    }
    return out;
}

inline long long catalan(int n) {
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace oracle
