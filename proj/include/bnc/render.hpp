#pragma once
#include <string>

#include "bnc/lr_diagram.hpp"
#include "bnc/partition.hpp"

namespace bnc {

// Two dashed walls, left nodes on the left wall, right nodes on the right, node 1 at the top.
// Strings are drawn as ribs to a vertical spine; top strings run up to the top edge.
std::string render_partition_tikz(const SetPartition& p, const ChiMap& chi);
std::string render_diagram_tikz(const LRDiagram& d);
std::string render_partition_dot(const SetPartition& p, const ChiMap& chi);
std::string render_diagram_dot(const LRDiagram& d);

// Colour of an epsilon value: palette orange, blue, green, red by rank among the values present.
std::string shade_colour(const EpsilonMap& eps, int value);

}  // namespace bnc
