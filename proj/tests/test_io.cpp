#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "hgshift/io.hpp"
#include "hgshift/matching.hpp"
#include "testutil.hpp"

using namespace hgshift;

TEST_CASE("hypergraph json round-trips") {
    Hypergraph g = hgtest::triangle_hypergraph(1.0, 2.0, 0.5);
    std::ostringstream out;
    write_hypergraph_json(out, g);
    std::istringstream in(out.str());
    Hypergraph back = read_hypergraph_json(in, "roundtrip");
    REQUIRE(back.vertex_count == g.vertex_count);
    REQUIRE(back.hyperedges.size() == g.hyperedges.size());
    for (Index e = 0; e < g.edge_count(); ++e) {
        REQUIRE(back.hyperedges[e].weight == g.hyperedges[e].weight);
        REQUIRE(back.hyperedges[e].members == g.hyperedges[e].members);
    }
}

TEST_CASE("hypergraph parser reports invariant violations with context") {
    std::istringstream bad(R"({"vertex_count": 2,
        "hyperedges": [{"weight": 1.0, "members": {"0": 1.4}}]})");
    try {
        read_hypergraph_json(bad, "bad.json");
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& err) {
        std::string msg = err.what();
        REQUIRE(msg.find("bad.json") != std::string::npos);
        REQUIRE(msg.find("out of range") != std::string::npos);
    }
}

TEST_CASE("hypergraph parser reports the line of a syntax error") {
    std::istringstream bad("{\n\"vertex_count\": 1,\n\"hyperedges\": [}\n}");
    try {
        read_hypergraph_json(bad, "syntax.json");
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& err) {
        std::string msg = err.what();
        REQUIRE(msg.find("syntax.json:3") != std::string::npos);
    }
}

TEST_CASE("point csv round-trips with labels and comments") {
    std::istringstream in("# generated set\n1.5,2.5,0\n-3.25,4.0,2\n");
    PointSet ps = read_points_csv(in, "pts");
    REQUIRE(ps.points.size() == 2);
    REQUIRE(ps.has_labels());
    REQUIRE(ps.labels[1] == 2);

    std::ostringstream out;
    write_points_csv(out, ps);
    std::istringstream in2(out.str());
    PointSet back = read_points_csv(in2, "pts2");
    REQUIRE(back.points == ps.points);
    REQUIRE(back.labels == ps.labels);
}

TEST_CASE("point csv accepts unlabeled points and rejects partial labels") {
    std::istringstream in("0,0\n1,1\n");
    PointSet ps = read_points_csv(in);
    REQUIRE(!ps.has_labels());

    std::istringstream mixed("0,0,1\n1,1\n");
    REQUIRE_THROWS_AS(read_points_csv(mixed), std::runtime_error);

    std::istringstream junk("0,zebra\n");
    try {
        read_points_csv(junk, "junk.csv");
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& err) {
        REQUIRE(std::string(err.what()).find("junk.csv:1") != std::string::npos);
    }
}

TEST_CASE("matching instance json round-trips") {
    CorrespondenceSet cs = gen_matching_instance(6, 0.05, 3, 77);
    std::ostringstream out;
    write_instance_json(out, cs);
    std::istringstream in(out.str());
    CorrespondenceSet back = read_instance_json(in, "inst");
    REQUIRE(back.source_points == cs.source_points);
    REQUIRE(back.target_points == cs.target_points);
    REQUIRE(back.candidates == cs.candidates);
    REQUIRE(back.truth == cs.truth);
}

TEST_CASE("instance parser rejects out-of-range candidates") {
    std::istringstream bad(R"({"source_points": [[0,0]], "target_points": [[0,0]],
                              "candidates": [[0, 5]]})");
    REQUIRE_THROWS_AS(read_instance_json(bad), std::runtime_error);
}
