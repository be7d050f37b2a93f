#pragma once
#include <memory>
#include <string>

#include <json.hpp>

#include "bnc/algebra.hpp"
#include "bnc/ffb.hpp"
#include "bnc/free_product.hpp"
#include "bnc/lr_diagram.hpp"
#include "bnc/moments.hpp"
#include "bnc/partition.hpp"

namespace bnc {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; integers are also accepted on input.
Json to_json(const Q& q);
Q rational_from_json(const Json& j);
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json to_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const Json& j);

Json to_json(const StructuredAlgebra& a);
AlgebraPtr algebra_from_json(const Json& j);
Json to_json(const BBProbSpace& s);
BBProbSpace space_from_json(const Json& j);

// {"space": ..., "faces": [{"l": [...], "r": [...], "b": [...]}, ...]}
struct LoadedFamily {
    std::unique_ptr<BBProbSpace> space;
    FaceAssignment family;
};
Json to_json(const FaceAssignment& fa);
LoadedFamily family_from_json(const Json& j);

Json to_json(const SetPartition& p);  // rgs array
SetPartition partition_from_json(const Json& j);

Json to_json(const LRDiagram& d);
LRDiagram diagram_from_json(const Json& j);

Json to_json(const PartitionTable& t, const EpsilonMap& eps);
Json to_json(const ClaimReport& r);
// {word label: coefficient}, zero coordinates omitted
Json to_json(const FreeProduct& fp, const FPVector& v);

// Reads and parses a file; throws ParseError.
Json read_json_file(const std::string& path);

}  // namespace bnc
