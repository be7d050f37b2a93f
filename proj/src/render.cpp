#include "bnc/render.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace bnc {

namespace {

struct Piece {
    std::vector<int> nodes;  // 0-based
    bool top = false;
    std::string colour;
};

struct Scene {
    ChiMap chi;
    std::vector<std::string> node_colour;
    std::vector<Piece> pieces;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

// Node i (0-based) sits at height n - i; the top edge is at n + 1 (times 0.5).
double height(int i, std::size_t n) { return 0.5 * static_cast<double>(n - i); }

bool drawn(const Piece& p) { return p.top || p.nodes.size() > 1; }

// Spine order from pairwise non-crossing constraints; ties broken by side balance, then first node.
std::vector<int> spine_order(const Scene& sc) {
    const std::size_t n = sc.chi.n();
    std::vector<int> ids;
    for (std::size_t i = 0; i < sc.pieces.size(); ++i)
        if (drawn(sc.pieces[i])) ids.push_back(static_cast<int>(i));
    const std::size_t m = ids.size();
    auto extent = [&](const Piece& p, double& lo, double& hi) {
        lo = height(p.nodes.back(), n);
        hi = p.top ? 0.5 * static_cast<double>(n + 1) : height(p.nodes.front(), n);
    };
    // before[a][b]: a must be left of b
    std::vector<std::vector<bool>> before(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            const Piece& V = sc.pieces[ids[a]];
            const Piece& W = sc.pieces[ids[b]];
            double lo, hi;
            extent(V, lo, hi);
            for (int u : W.nodes) {
                double y = height(u, n);
                if (y <= lo || y >= hi) continue;
                if (sc.chi[u] == Side::Left) before[b][a] = true;
                else before[a][b] = true;
            }
        }
    auto balance = [&](const Piece& p) {
        double r = 0;
        for (int u : p.nodes) r += sc.chi[u] == Side::Right ? 1 : 0;
        return r / static_cast<double>(p.nodes.size());
    };
    std::vector<int> indeg(m, 0), order;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (before[a][b]) ++indeg[b];
    std::vector<bool> used(m, false);
    for (std::size_t step = 0; step < m; ++step) {
        int pick = -1;
        for (std::size_t a = 0; a < m; ++a) {
            if (used[a] || indeg[a] > 0) continue;
            if (pick < 0) {
                pick = static_cast<int>(a);
                continue;
            }
            const Piece& P = sc.pieces[ids[a]];
            const Piece& Q = sc.pieces[ids[pick]];
            if (balance(P) < balance(Q) || (balance(P) == balance(Q) && P.nodes.front() < Q.nodes.front()))
                pick = static_cast<int>(a);
        }
        if (pick < 0)  // inconsistent constraints: fall back to the remaining pieces in index order
            for (std::size_t a = 0; a < m; ++a)
                if (!used[a]) {
                    pick = static_cast<int>(a);
                    break;
                }
        used[pick] = true;
        order.push_back(ids[pick]);
        for (std::size_t b = 0; b < m; ++b)
            if (before[pick][b]) --indeg[b];
    }
    return order;
}

std::string tikz(const Scene& sc) {
    const std::size_t n = sc.chi.n();
    std::ostringstream os;
    os << "\\documentclass[tikz]{standalone}\n\\begin{document}\n\\begin{tikzpicture}[baseline]\n";
    if (n == 0) {
        os << "\\end{tikzpicture}\n\\end{document}\n";
        return os.str();
    }
    auto order = spine_order(sc);
    const double w = order.size() <= 3 ? 1.5 : 0.4 * static_cast<double>(order.size() + 1);
    const double top = 0.5 * static_cast<double>(n + 1);
    os << "  \\draw[thick, dashed] (0," << num(top) << ") -- (0,0) -- (" << num(w) << ",0) -- (" << num(w) << ","
       << num(top) << ");\n";
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = sc.chi[i] == Side::Left;
        const std::string x = left ? "0" : num(w), y = num(height(static_cast<int>(i), n));
        const auto& c = sc.node_colour[i];
        os << "  \\draw[" << c << ", fill=" << c << "] (" << x << ", " << y << ") circle (0.05);\n";
        os << "  \\node[" << (left ? "left" : "right") << "] at (" << x << ", " << y << ") {$" << i + 1 << "$};\n";
    }
    for (std::size_t j = 0; j < order.size(); ++j) {
        const Piece& p = sc.pieces[order[j]];
        const double xs = w * static_cast<double>(j + 1) / static_cast<double>(order.size() + 1);
        for (int u : p.nodes) {
            const std::string xn = sc.chi[u] == Side::Left ? "0" : num(w), y = num(height(u, n));
            os << "  \\draw[" << p.colour << ", thick] (" << xn << ", " << y << ") -- (" << num(xs) << ", " << y
               << ");\n";
        }
        const double lo = height(p.nodes.back(), n), hi = p.top ? top : height(p.nodes.front(), n);
        if (hi > lo)
            os << "  \\draw[" << p.colour << ", thick] (" << num(xs) << ", " << num(lo) << ") -- (" << num(xs)
               << ", " << num(hi) << ");\n";
    }
    os << "\\end{tikzpicture}\n\\end{document}\n";
    return os.str();
}

std::string dot(const Scene& sc) {
    const std::size_t n = sc.chi.n();
    std::ostringstream os;
    os << "graph diagram {\n  node [shape=circle, fixedsize=true, width=0.3];\n";
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = sc.chi[i] == Side::Left;
        os << "  n" << i + 1 << " [label=\"" << i + 1 << "\", color=" << sc.node_colour[i] << ", pos=\""
           << (left ? "0" : "3") << "," << num(height(static_cast<int>(i), n)) << "!\"];\n";
    }
    for (std::size_t b = 0; b < sc.pieces.size(); ++b) {
        const Piece& p = sc.pieces[b];
        for (std::size_t j = 0; j + 1 < p.nodes.size(); ++j)
            os << "  n" << p.nodes[j] + 1 << " -- n" << p.nodes[j + 1] + 1 << " [color=" << p.colour << "];\n";
        if (p.top) {
            os << "  top" << b + 1 << " [shape=point];\n";
            os << "  n" << p.nodes.front() + 1 << " -- top" << b + 1 << " [color=" << p.colour << ", style=dashed];\n";
        }
    }
    os << "}\n";
    return os.str();
}

Scene partition_scene(const SetPartition& p, const ChiMap& chi) {
    Scene sc;
    sc.chi = chi;
    sc.node_colour.assign(chi.n(), "black");
    for (auto& b : p.blocks()) sc.pieces.push_back({b, false, "black"});
    return sc;
}

Scene diagram_scene(const LRDiagram& d) {
    Scene sc;
    sc.chi = d.chi;
    for (std::size_t i = 0; i < d.n(); ++i) sc.node_colour.push_back(shade_colour(d.eps, d.eps[i]));
    auto st = d.structure();
    for (const auto& s : st.strings) sc.pieces.push_back({s.nodes, s.top, shade_colour(d.eps, s.shade)});
    return sc;
}

}  // namespace

std::string shade_colour(const EpsilonMap& eps, int value) {
    static const char* palette[4] = {"orange", "blue", "green", "red"};
    std::set<int> values(eps.begin(), eps.end());
    auto it = values.find(value);
    std::size_t rank = it == values.end() ? 0 : static_cast<std::size_t>(std::distance(values.begin(), it));
    return palette[rank % 4];
}

std::string render_partition_tikz(const SetPartition& p, const ChiMap& chi) { return tikz(partition_scene(p, chi)); }
std::string render_diagram_tikz(const LRDiagram& d) { return tikz(diagram_scene(d)); }
std::string render_partition_dot(const SetPartition& p, const ChiMap& chi) { return dot(partition_scene(p, chi)); }
std::string render_diagram_dot(const LRDiagram& d) { return dot(diagram_scene(d)); }

}  // namespace bnc
