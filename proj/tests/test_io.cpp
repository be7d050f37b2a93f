#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bnc/errors.hpp"
#include "bnc/json_io.hpp"
#include "bnc/render.hpp"

using namespace bnc;

namespace {
std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t c = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
}

LRDiagram example_diagram(const std::string& key) {
    for (auto& d : enumerate_lr_lat(ChiMap::parse("lrl"), {1, 1, 2}).diagrams)
        if (d.key() == key) return d;
    FAIL("missing " << key);
    return {};
}
}  // namespace

TEST_CASE("rationals and matrices") {
    CHECK(to_json(Q(-3, 4)) == "-3/4");
    CHECK(rational_from_json(Json("6/8")) == Q(3, 4));
    CHECK(rational_from_json(Json(5)) == qint(5));
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json("x")), ParseError);
    Matrix m = Matrix::from_rows({{qint(1), Q(1, 2)}, {qint(0), qint(-7)}});
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1"],["1","2"]])")), ParseError);
}

TEST_CASE("spaces round-trip") {
    for (auto s : {fixture_scalar(), fixture_m2_scalar(), fixture_diag2()}) {
        auto back = space_from_json(to_json(s));
        CHECK(back.name == s.name);
        CHECK(back.A->mult == s.A->mult);
        CHECK(back.B->unit == s.B->unit);
        CHECK(back.expectation == s.expectation);
        CHECK(back.left_embed == s.left_embed);
        CHECK(back.right_embed == s.right_embed);
        CHECK(to_json(back).dump() == to_json(s).dump());
    }
}

TEST_CASE("malformed spaces are parse errors") {
    auto j = to_json(fixture_diag2());
    auto no_unit = j;
    no_unit["A"].erase("unit");
    CHECK_THROWS_AS(space_from_json(no_unit), ParseError);
    auto bad_shape = j;
    bad_shape["expectation"] = Json::parse(R"([["1","0","0","0"]])");
    CHECK_THROWS_AS(space_from_json(bad_shape), ParseError);
    auto broken = j;
    broken["A"]["mult"][1][2] = Json::parse(R"(["0","0","0","1"])");
    CHECK_THROWS_AS(space_from_json(broken), ParseError);
}

TEST_CASE("families round-trip") {
    auto s = fixture_m2_scalar();
    auto fam = fixture_m2_family(s);
    auto loaded = family_from_json(to_json(fam));
    CHECK(loaded.family.faces == fam.faces);
    CHECK(loaded.family.space == loaded.space.get());
    auto j = to_json(fam);
    j["faces"][0]["l"][0] = Json::parse(R"(["1"])");
    CHECK_THROWS_AS(family_from_json(j), ParseError);
}

TEST_CASE("partitions and diagrams round-trip") {
    auto p = SetPartition::parse("{1,2,5,6},{3,4}");
    CHECK(to_json(p) == Json::parse("[0,0,1,1,0,0]"));
    CHECK(partition_from_json(to_json(p)) == p);
    CHECK_THROWS_AS(partition_from_json(Json::parse("[1,0]")), ParseError);

    for (auto& d : enumerate_lr_lat(ChiMap::parse("lrl"), {1, 1, 2}).diagrams) {
        auto j = to_json(d);
        CHECK(diagram_from_json(j) == d);
        CHECK(j.contains("strings"));
        CHECK(j.contains("spine_order"));
    }
    auto e4 = to_json(example_diagram("JTN"));
    CHECK(e4["strings"][0]["nodes"] == Json::parse("[1,2]"));
    CHECK(e4["strings"][0]["top"] == true);
    auto bad = e4;
    bad["events"] = "CCC";
    CHECK_THROWS_AS(diagram_from_json(bad), ParseError);
}

TEST_CASE("claim reports serialise with witnesses on failure only") {
    ClaimReport r;
    r.claim("ok").record(true, [] { return std::string("x"); });
    r.claim("bad").record(false, [] { return std::string("word l0.1"); });
    auto j = to_json(r);
    CHECK(j["claims"][0]["status"] == "pass");
    CHECK(j["claims"][0]["witness"].empty());
    CHECK(j["claims"][1]["status"] == "fail");
    CHECK(j["claims"][1]["witness"]["detail"] == "word l0.1");
}

TEST_CASE("reading files") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/space.json"), ParseError);
    const std::string path = "bnc_io_test.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(read_json_file(path), ParseError);
    {
        std::ofstream out(path);
        out << to_json(fixture_diag2()).dump();
    }
    CHECK(space_from_json(read_json_file(path)).name == "diag2");
    std::remove(path.c_str());
}

TEST_CASE("rendering the figure partition") {
    auto chi = ChiMap::parse("lrlllr");
    auto t = render_partition_tikz(SetPartition::parse("{1,2,5,6},{3,4}"), chi);
    CHECK(t.rfind("\\documentclass[tikz]{standalone}", 0) == 0);
    CHECK(count(t, "dashed") == 1);
    CHECK(count(t, "circle") == 6);
    CHECK(count(t, "\\node[left]") == 4);
    CHECK(count(t, "\\node[right]") == 2);
    CHECK(t.find("\\end{document}") != std::string::npos);
    CHECK(t == render_partition_tikz(SetPartition::parse("{1,2,5,6},{3,4}"), chi));
    auto d = render_partition_dot(SetPartition::parse("{1,2,5,6},{3,4}"), chi);
    CHECK(count(d, " -- ") == 4);
}

TEST_CASE("rendering diagrams") {
    auto e4 = render_diagram_tikz(example_diagram("JTN"));
    // nodes 1 and 2 orange, node 3 blue; the string and its spine are orange
    CHECK(count(e4, "\\draw[orange, fill=orange]") == 2);
    CHECK(count(e4, "\\draw[blue, fill=blue]") == 1);
    CHECK(count(e4, "\\draw[orange, thick]") == 3);
    CHECK(e4.find("(0.75, 2)") != std::string::npos);  // spine reaches the top edge

    LRDiagram empty;
    auto t = render_diagram_tikz(empty);
    CHECK(t == "\\documentclass[tikz]{standalone}\n\\begin{document}\n\\begin{tikzpicture}[baseline]\n"
               "\\end{tikzpicture}\n\\end{document}\n");
    auto dot = render_diagram_dot(example_diagram("JTN"));
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(shade_colour({5, 2, 9}, 9) == "green");
    CHECK(shade_colour({5, 2, 9}, 2) == "orange");
}
