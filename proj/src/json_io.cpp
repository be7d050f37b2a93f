#include "bnc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "bnc/errors.hpp"

namespace bnc {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(const Q& q) { return to_string(q); }

Q rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return qint(j.get<long long>());
    throw ParseError("rational must be a \"p/q\" string or an integer");
}

Json to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
    return out;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected a list of matrix rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw ParseError("ragged matrix");
    return Matrix::from_rows(rows);
}

Json to_json(const StructuredAlgebra& a) {
    Json j;
    j["dim"] = a.dim;
    j["labels"] = a.labels;
    Json mult = Json::array();
    for (const auto& row : a.mult) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(to_json(e));
        mult.push_back(r);
    }
    j["mult"] = mult;
    j["unit"] = to_json(a.unit);
    return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
    auto a = std::make_shared<StructuredAlgebra>();
    a->dim = field(j, "dim").get<std::size_t>();
    if (j.contains("labels")) a->labels = j.at("labels").get<std::vector<std::string>>();
    else
        for (std::size_t i = 0; i < a->dim; ++i) a->labels.push_back("e" + std::to_string(i + 1));
    const Json& mult = field(j, "mult");
    if (!mult.is_array() || mult.size() != a->dim) throw ParseError("mult must be dim x dim");
    for (const auto& row : mult) {
        if (!row.is_array() || row.size() != a->dim) throw ParseError("mult must be dim x dim");
        std::vector<Vec> r;
        for (const auto& e : row) {
            r.push_back(vec_from_json(e));
            if (r.back().size() != a->dim) throw ParseError("structure constant of wrong length");
        }
        a->mult.push_back(std::move(r));
    }
    a->unit = vec_from_json(field(j, "unit"));
    if (a->unit.size() != a->dim || a->labels.size() != a->dim) throw ParseError("unit or labels of wrong length");
    if (auto d = a->structural_defect()) throw ParseError("algebra: " + *d);
    return a;
}

Json to_json(const BBProbSpace& s) {
    Json j;
    j["name"] = s.name;
    j["A"] = to_json(*s.A);
    j["B"] = to_json(*s.B);
    j["expectation"] = to_json(s.expectation);
    j["left_embed"] = to_json(s.left_embed);
    j["right_embed"] = to_json(s.right_embed);
    return j;
}

BBProbSpace space_from_json(const Json& j) {
    BBProbSpace s;
    s.name = j.value("name", std::string("custom"));
    s.A = algebra_from_json(field(j, "A"));
    s.B = algebra_from_json(field(j, "B"));
    s.expectation = matrix_from_json(field(j, "expectation"));
    s.left_embed = matrix_from_json(field(j, "left_embed"));
    s.right_embed = matrix_from_json(field(j, "right_embed"));
    const std::size_t a = s.A->dim, b = s.B->dim;
    if (s.expectation.rows() != b || s.expectation.cols() != a) throw ParseError("expectation must be dim B x dim A");
    for (const Matrix* m : {&s.left_embed, &s.right_embed})
        if (m->rows() != a || m->cols() != b) throw ParseError("embeddings must be dim A x dim B");
    return s;
}

Json to_json(const FaceAssignment& fa) {
    Json j;
    if (fa.space) j["space"] = to_json(*fa.space);
    Json faces = Json::array();
    for (const auto& f : fa.faces) {
        Json t;
        const char* keys[3] = {"l", "r", "b"};
        for (int s = 0; s < 3; ++s) {
            Json g = Json::array();
            for (const auto& v : f[s]) g.push_back(to_json(v));
            t[keys[s]] = g;
        }
        faces.push_back(t);
    }
    j["faces"] = faces;
    return j;
}

LoadedFamily family_from_json(const Json& j) {
    LoadedFamily out;
    out.space = std::make_unique<BBProbSpace>(space_from_json(field(j, "space")));
    out.family.space = out.space.get();
    for (const auto& t : field(j, "faces")) {
        std::array<std::vector<Vec>, 3> f;
        const char* keys[3] = {"l", "r", "b"};
        for (int s = 0; s < 3; ++s)
            if (t.contains(keys[s]))
                for (const auto& v : t.at(keys[s])) {
                    f[s].push_back(vec_from_json(v));
                    if (f[s].back().size() != out.space->A->dim) throw ParseError("face generator of wrong length");
                }
        out.family.faces.push_back(std::move(f));
    }
    return out;
}

Json to_json(const SetPartition& p) { return p.rgs; }

SetPartition partition_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("partition must be an rgs array");
    auto r = j.get<std::vector<int>>();
    if (!is_valid_rgs(r)) throw ParseError("not a restricted growth string");
    return SetPartition(r);
}

Json to_json(const LRDiagram& d) {
    auto st = d.structure();
    Json j;
    j["chi"] = d.chi.str();
    j["eps"] = d.eps;
    j["events"] = d.key();
    Json strings = Json::array();
    for (const auto& s : st.strings) {
        std::vector<int> nodes;
        for (int v : s.nodes) nodes.push_back(v + 1);
        strings.push_back({{"nodes", nodes}, {"top", s.top}});
    }
    j["strings"] = strings;
    j["spine_order"] = st.spine_order;
    return j;
}

LRDiagram diagram_from_json(const Json& j) {
    LRDiagram d;
    d.chi = ChiMap::parse(field(j, "chi").get<std::string>());
    d.eps = field(j, "eps").get<EpsilonMap>();
    for (char c : field(j, "events").get<std::string>()) d.events.push_back(event_from_letter(c));
    try {
        d.structure();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("diagram: ") + e.what());
    }
    return d;
}

Json to_json(const PartitionTable& t, const EpsilonMap& eps) {
    Json j;
    j["chi"] = t.chi.str();
    j["eps"] = eps;
    Json entries = Json::array();
    for (std::size_t i = 0; i < t.parts.size(); ++i)
        entries.push_back({{"pi", t.parts[i].rgs}, {"blocks", t.parts[i].str()}, {"value", to_json(t.values[i])}});
    j["entries"] = entries;
    return j;
}

Json to_json(const ClaimReport& r) {
    Json claims = Json::array();
    for (const auto& c : r.claims) {
        Json w = Json::object();
        if (!c.pass) w["detail"] = c.witness;
        claims.push_back({{"id", c.id}, {"status", c.pass ? "pass" : "fail"}, {"checked", c.checked}, {"witness", w}});
    }
    return {{"claims", claims}};
}

Json to_json(const FreeProduct& fp, const FPVector& v) {
    const std::size_t d = v.depth();
    Vec c = fp.coords(v, d);
    auto labels = fp.word_labels(d);
    Json j = Json::object();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) j[labels[i]] = to_json(c[i]);
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace bnc
