#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "bnc/partition.hpp"

namespace bnc {

// What happens at a node when it is added on top of the diagram below it.
enum class LREvent : std::uint8_t {
    NewTop,        // fresh string, continues to the top gap
    NewClose,      // fresh string, stops at this node
    ConnectTop,    // joins the outer same-shade top string, which continues up
    ConnectClose,  // joins it and the string stops here
    CutTop,        // would join, but the spine below this rib is cut; new piece continues up
    CutClose,      // cut below, new piece stops here
};

char event_letter(LREvent e);
LREvent event_from_letter(char c);
bool is_connect(LREvent e);
bool is_cut(LREvent e);
bool is_top(LREvent e);

struct LRString {
    std::vector<int> nodes;  // ascending, 0-based
    bool top = false;
    int shade = 0;
    int cut_from = -1;  // index of the piece this one was cut off (lower piece), if any
};

struct LRStructure {
    std::vector<LRString> strings;  // ordered by minimum node
    std::vector<int> string_of;     // per node
    std::vector<int> spine_order;   // top strings, left to right
    std::size_t num_cuts = 0;
};

struct LRDiagram {
    ChiMap chi;
    EpsilonMap eps;
    std::vector<LREvent> events;  // events[i] belongs to node i

    std::size_t n() const { return events.size(); }
    // Replays the construction; throws std::invalid_argument on an impossible event sequence.
    LRStructure structure() const;
    std::size_t num_top() const;
    std::vector<int> top_shades() const;  // shades of the top strings, left to right
    bool is_plain() const;                // no cuts
    std::string key() const;              // event letters, node 1 first
    std::string str() const;
    bool operator==(const LRDiagram& o) const;
    bool operator<(const LRDiagram& o) const;
};

enum class Closure { Plain, Lateral };

struct DiagramFamily {
    ChiMap chi;
    EpsilonMap eps;
    std::vector<LRDiagram> diagrams;  // sorted, unique
    Closure closure = Closure::Plain;

    std::size_t size() const { return diagrams.size(); }
    bool contains(const LRDiagram& d) const;
};

DiagramFamily enumerate_lr(const ChiMap& chi, const EpsilonMap& eps);
DiagramFamily enumerate_lr(const ChiMap& chi, const EpsilonMap& eps, std::size_t cap);
DiagramFamily enumerate_lr_lat(const ChiMap& chi, const EpsilonMap& eps);
DiagramFamily enumerate_lr_lat(const ChiMap& chi, const EpsilonMap& eps, std::size_t cap);

DiagramFamily lr_k(const DiagramFamily& fam, std::size_t k);
DiagramFamily lateral_closure(const DiagramFamily& fam);

struct BooleanSplit {
    DiagramFamily kept, removed;
};
// kept: no top string, or a single top string of shade k.
BooleanSplit filter_boolean(const DiagramFamily& fam, int k);
bool in_lr_lat_k(const LRDiagram& d, int k);

// Diagram on nodes i..n-1 (0-based i).
LRDiagram restrict_to_suffix(const LRDiagram& d, std::size_t i);
DiagramFamily chi_extensions(const DiagramFamily& S, const ChiMap& chi, const EpsilonMap& eps);

// Pieces as a partition; diagram_to_partition additionally requires no top strings.
SetPartition pieces_partition(const LRDiagram& d);
SetPartition diagram_to_partition(const LRDiagram& d);

}  // namespace bnc
