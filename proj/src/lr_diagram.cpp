#include "bnc/lr_diagram.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "bnc/errors.hpp"

namespace bnc {

char event_letter(LREvent e) {
    switch (e) {
        case LREvent::NewTop: return 'T';
        case LREvent::NewClose: return 'N';
        case LREvent::ConnectTop: return 'J';
        case LREvent::ConnectClose: return 'C';
        case LREvent::CutTop: return 'X';
        case LREvent::CutClose: return 'K';
    }
    return '?';
}

LREvent event_from_letter(char c) {
    switch (c) {
        case 'T': return LREvent::NewTop;
        case 'N': return LREvent::NewClose;
        case 'J': return LREvent::ConnectTop;
        case 'C': return LREvent::ConnectClose;
        case 'X': return LREvent::CutTop;
        case 'K': return LREvent::CutClose;
    }
    throw ParseError(std::string("unknown diagram event '") + c + "'");
}

bool is_connect(LREvent e) { return e == LREvent::ConnectTop || e == LREvent::ConnectClose; }
bool is_cut(LREvent e) { return e == LREvent::CutTop || e == LREvent::CutClose; }
bool is_top(LREvent e) { return e == LREvent::NewTop || e == LREvent::ConnectTop || e == LREvent::CutTop; }

namespace {

struct RawString {
    std::vector<int> nodes;  // descending while building
    int shade = 0;
    int cut_from = -1;
};

// Replays events for nodes from..n-1, bottom up. Returns strings and the final deque.
void replay(const ChiMap& chi, const EpsilonMap& eps, const std::vector<LREvent>& ev, std::size_t from,
            std::vector<RawString>& strings, std::deque<int>& dq, std::size_t& cuts) {
    const int n = static_cast<int>(ev.size());
    for (int i = n - 1; i >= static_cast<int>(from); --i) {
        const bool left = chi[i] == Side::Left;
        const int e = eps[i];
        const bool can_join = !dq.empty() && strings[left ? dq.front() : dq.back()].shade == e;
        const LREvent x = ev[i];
        const bool joins = is_connect(x) || is_cut(x);
        if (joins != can_join)
            throw std::invalid_argument("node " + std::to_string(i + 1) +
                                        (can_join ? " must join the outer top string" : " has no string to join"));
        auto push = [&](int s) {
            if (left) dq.push_front(s);
            else dq.push_back(s);
        };
        auto pop = [&]() {
            if (left) dq.pop_front();
            else dq.pop_back();
        };
        if (!joins) {
            strings.push_back({{i}, e, -1});
            if (is_top(x)) push(static_cast<int>(strings.size()) - 1);
        } else if (is_connect(x)) {
            int s = left ? dq.front() : dq.back();
            strings[s].nodes.push_back(i);
            if (!is_top(x)) pop();
        } else {
            int lower = left ? dq.front() : dq.back();
            pop();
            strings.push_back({{i}, e, lower});
            ++cuts;
            if (is_top(x)) push(static_cast<int>(strings.size()) - 1);
        }
    }
}

void check_shapes(const ChiMap& chi, const EpsilonMap& eps) {
    if (chi.n() != eps.size()) throw SizeMismatch("colouring and shading lengths differ");
    if (chi.has_boolean()) throw AlphabetError("LR diagrams need a two-letter colouring, got " + chi.str());
}

// Extends upward from node `from`-1 to 0 starting at the given deque of shades.
void extend(const ChiMap& chi, const EpsilonMap& eps, int i, std::deque<int>& shades, std::vector<LREvent>& ev,
            bool lateral, std::vector<LRDiagram>& out) {
    if (i < 0) {
        out.push_back({chi, eps, ev});
        return;
    }
    const bool left = chi[i] == Side::Left;
    const int e = eps[i];
    const bool can_join = !shades.empty() && (left ? shades.front() : shades.back()) == e;
    auto push = [&](int s) {
        if (left) shades.push_front(s);
        else shades.push_back(s);
    };
    auto pop = [&]() {
        if (left) shades.pop_front();
        else shades.pop_back();
    };
    if (!can_join) {
        ev[i] = LREvent::NewClose;
        extend(chi, eps, i - 1, shades, ev, lateral, out);
        ev[i] = LREvent::NewTop;
        push(e);
        extend(chi, eps, i - 1, shades, ev, lateral, out);
        pop();
        return;
    }
    // joined string stays at the end with the same shade when it continues
    ev[i] = LREvent::ConnectTop;
    extend(chi, eps, i - 1, shades, ev, lateral, out);
    if (lateral) {
        ev[i] = LREvent::CutTop;
        extend(chi, eps, i - 1, shades, ev, lateral, out);
    }
    pop();
    ev[i] = LREvent::ConnectClose;
    extend(chi, eps, i - 1, shades, ev, lateral, out);
    if (lateral) {
        ev[i] = LREvent::CutClose;
        extend(chi, eps, i - 1, shades, ev, lateral, out);
    }
    push(e);
}

DiagramFamily make_family(const ChiMap& chi, const EpsilonMap& eps, std::vector<LRDiagram> ds, Closure c) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return {chi, eps, std::move(ds), c};
}

DiagramFamily enumerate_impl(const ChiMap& chi, const EpsilonMap& eps, std::size_t cap, bool lateral) {
    check_shapes(chi, eps);
    if (chi.n() > cap)
        throw CapExceeded("n = " + std::to_string(chi.n()) + " exceeds diagram cap " + std::to_string(cap));
    std::vector<LRDiagram> out;
    std::deque<int> shades;
    std::vector<LREvent> ev(chi.n(), LREvent::NewClose);
    extend(chi, eps, static_cast<int>(chi.n()) - 1, shades, ev, lateral, out);
    return make_family(chi, eps, std::move(out), lateral ? Closure::Lateral : Closure::Plain);
}

}  // namespace

LRStructure LRDiagram::structure() const {
    check_shapes(chi, eps);
    if (events.size() != chi.n()) throw SizeMismatch("event list length differs from colouring length");
    std::vector<RawString> raw;
    std::deque<int> dq;
    LRStructure st;
    replay(chi, eps, events, 0, raw, dq, st.num_cuts);
    std::vector<int> order(raw.size());
    for (std::size_t s = 0; s < raw.size(); ++s) {
        std::sort(raw[s].nodes.begin(), raw[s].nodes.end());
        order[s] = static_cast<int>(s);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a].nodes.front() < raw[b].nodes.front(); });
    std::vector<int> newid(raw.size());
    for (std::size_t k = 0; k < order.size(); ++k) newid[order[k]] = static_cast<int>(k);
    st.strings.resize(raw.size());
    st.string_of.assign(n(), -1);
    for (std::size_t s = 0; s < raw.size(); ++s) {
        auto& out = st.strings[newid[s]];
        out.nodes = raw[s].nodes;
        out.shade = raw[s].shade;
        out.cut_from = raw[s].cut_from < 0 ? -1 : newid[raw[s].cut_from];
        for (int v : out.nodes) st.string_of[v] = newid[s];
    }
    for (int s : dq) {
        st.strings[newid[s]].top = true;
        st.spine_order.push_back(newid[s]);
    }
    return st;
}

std::size_t LRDiagram::num_top() const { return structure().spine_order.size(); }

std::vector<int> LRDiagram::top_shades() const {
    auto st = structure();
    std::vector<int> out;
    for (int s : st.spine_order) out.push_back(st.strings[s].shade);
    return out;
}

bool LRDiagram::is_plain() const { return std::none_of(events.begin(), events.end(), is_cut); }

std::string LRDiagram::key() const {
    std::string k;
    for (auto e : events) k.push_back(event_letter(e));
    return k;
}

std::string LRDiagram::str() const {
    auto st = structure();
    std::string s;
    for (std::size_t b = 0; b < st.strings.size(); ++b) {
        s += b ? " {" : "{";
        for (std::size_t j = 0; j < st.strings[b].nodes.size(); ++j)
            s += (j ? "," : "") + std::to_string(st.strings[b].nodes[j] + 1);
        s += st.strings[b].top ? "}^" : "}";
    }
    return s;
}

bool LRDiagram::operator==(const LRDiagram& o) const {
    return chi == o.chi && eps == o.eps && events == o.events;
}

bool LRDiagram::operator<(const LRDiagram& o) const {
    if (events != o.events) return events < o.events;
    if (eps != o.eps) return eps < o.eps;
    return chi.sides < o.chi.sides;
}

bool DiagramFamily::contains(const LRDiagram& d) const {
    return std::binary_search(diagrams.begin(), diagrams.end(), d);
}

DiagramFamily enumerate_lr(const ChiMap& chi, const EpsilonMap& eps) { return enumerate_lr(chi, eps, lr_cap()); }
DiagramFamily enumerate_lr(const ChiMap& chi, const EpsilonMap& eps, std::size_t cap) {
    return enumerate_impl(chi, eps, cap, false);
}
DiagramFamily enumerate_lr_lat(const ChiMap& chi, const EpsilonMap& eps) {
    return enumerate_lr_lat(chi, eps, lr_cap());
}
DiagramFamily enumerate_lr_lat(const ChiMap& chi, const EpsilonMap& eps, std::size_t cap) {
    return enumerate_impl(chi, eps, cap, true);
}

DiagramFamily lr_k(const DiagramFamily& fam, std::size_t k) {
    DiagramFamily out{fam.chi, fam.eps, {}, fam.closure};
    for (const auto& d : fam.diagrams)
        if (d.num_top() == k) out.diagrams.push_back(d);
    return out;
}

DiagramFamily lateral_closure(const DiagramFamily& fam) {
    std::vector<LRDiagram> out;
    for (const auto& d : fam.diagrams) {
        std::vector<std::size_t> joins;
        for (std::size_t i = 0; i < d.n(); ++i)
            if (is_connect(d.events[i]) || is_cut(d.events[i])) joins.push_back(i);
        for (std::size_t mask = 0; mask < (std::size_t{1} << joins.size()); ++mask) {
            LRDiagram v = d;
            for (std::size_t b = 0; b < joins.size(); ++b) {
                if (!(mask >> b & 1)) continue;
                auto& e = v.events[joins[b]];
                if (e == LREvent::ConnectTop) e = LREvent::CutTop;
                else if (e == LREvent::ConnectClose) e = LREvent::CutClose;
            }
            out.push_back(std::move(v));
        }
    }
    return make_family(fam.chi, fam.eps, std::move(out), Closure::Lateral);
}

bool in_lr_lat_k(const LRDiagram& d, int k) {
    auto shades = d.top_shades();
    return shades.empty() || (shades.size() == 1 && shades[0] == k);
}

BooleanSplit filter_boolean(const DiagramFamily& fam, int k) {
    BooleanSplit s{{fam.chi, fam.eps, {}, fam.closure}, {fam.chi, fam.eps, {}, fam.closure}};
    for (const auto& d : fam.diagrams) (in_lr_lat_k(d, k) ? s.kept : s.removed).diagrams.push_back(d);
    return s;
}

LRDiagram restrict_to_suffix(const LRDiagram& d, std::size_t i) {
    if (i > d.n()) throw SizeMismatch("suffix start beyond diagram size");
    LRDiagram r;
    r.chi.sides.assign(d.chi.sides.begin() + i, d.chi.sides.end());
    r.eps.assign(d.eps.begin() + i, d.eps.end());
    r.events.assign(d.events.begin() + i, d.events.end());
    return r;
}

DiagramFamily chi_extensions(const DiagramFamily& S, const ChiMap& chi, const EpsilonMap& eps) {
    check_shapes(chi, eps);
    const std::size_t m = S.chi.n();
    if (m > chi.n() || S.eps.size() != m) throw SuffixMismatch("suffix family is longer than the target word");
    const std::size_t i = chi.n() - m;
    if (!std::equal(S.chi.sides.begin(), S.chi.sides.end(), chi.sides.begin() + i) ||
        !std::equal(S.eps.begin(), S.eps.end(), eps.begin() + i))
        throw SuffixMismatch("family is not over the suffix of (" + chi.str() + ")");
    std::vector<LRDiagram> out;
    for (const auto& d0 : S.diagrams) {
        std::vector<LREvent> ev(chi.n(), LREvent::NewClose);
        std::copy(d0.events.begin(), d0.events.end(), ev.begin() + i);
        std::vector<RawString> raw;
        std::deque<int> dq;
        std::size_t cuts = 0;
        replay(chi, eps, ev, i, raw, dq, cuts);
        std::deque<int> shades;
        for (int s : dq) shades.push_back(raw[s].shade);
        extend(chi, eps, static_cast<int>(i) - 1, shades, ev, true, out);
    }
    return make_family(chi, eps, std::move(out), Closure::Lateral);
}

SetPartition pieces_partition(const LRDiagram& d) {
    auto st = d.structure();
    return SetPartition::from_labels(st.string_of);
}

SetPartition diagram_to_partition(const LRDiagram& d) {
    auto st = d.structure();
    if (!st.spine_order.empty()) throw HasTopSpine("diagram " + d.str() + " has strings reaching the top gap");
    return SetPartition::from_labels(st.string_of);
}

}  // namespace bnc
