#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "trycolor/errors.hpp"
#include "trycolor/graph.hpp"

using namespace trycolor;

TEST_CASE("generators produce the expected shapes") {
    Graph ring = generate(GraphKind::ring, 5, 2, 0);
    CHECK(ring.edge_count() == 5);
    for (int v = 0; v < 5; ++v) CHECK(ring.degree(v) == 2);

    Graph k4 = generate(GraphKind::complete, 4, 3, 0);
    CHECK(k4.edge_count() == 6);
    for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

    Graph star = generate(GraphKind::star, 6, 5, 0);
    CHECK(star.degree(0) == 5);
    for (int v = 1; v < 6; ++v) CHECK(star.degree(v) == 1);

    CHECK_THROWS_AS(generate(GraphKind::complete, 4, 2, 0), ParameterError);
    CHECK_THROWS_AS(generate(GraphKind::star, 4, 2, 0), ParameterError);
}

TEST_CASE("random generator is deterministic and respects the degree bound") {
    Graph a = generate(GraphKind::random_bounded_degree, 100, 8, 7);
    Graph b = generate(GraphKind::random_bounded_degree, 100, 8, 7);
    CHECK(a.edges() == b.edges());
    for (int v = 0; v < 100; ++v) CHECK(a.degree(v) <= 8);

    Graph c = generate(GraphKind::random_bounded_degree, 100, 8, 8);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("generated graphs satisfy the structural invariants") {
    for (auto kind : {GraphKind::ring, GraphKind::complete, GraphKind::star,
                      GraphKind::random_bounded_degree}) {
        for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
            int n = 17, delta = 16;
            Graph g = generate(kind, n, delta, seed);
            std::set<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
            CHECK(edges.size() == static_cast<std::size_t>(g.edge_count()));
            for (const auto& [u, v] : edges) {
                CHECK(u < v);
                CHECK(g.has_edge(u, v));
                CHECK(g.has_edge(v, u));
            }
            for (int v = 0; v < n; ++v) CHECK(g.degree(v) <= delta);
        }
    }
}

TEST_CASE("greedy coloring is proper with a small palette") {
    Graph ring4 = generate(GraphKind::ring, 4, 2, 0);
    Coloring c = greedy_input_coloring(ring4);
    CHECK(c.palette_size == 2);
    CHECK(c.color == std::vector<int>{0, 1, 0, 1});

    Graph k4 = generate(GraphKind::complete, 4, 3, 0);
    Coloring ck = greedy_input_coloring(k4);
    CHECK(ck.palette_size == 4);
    CHECK(ck.distinct_count() == 4);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = generate(GraphKind::random_bounded_degree, 200, 8, seed);
        Coloring gc = greedy_input_coloring(g);
        CHECK(is_proper(g, gc));
        CHECK(gc.palette_size <= 9);
    }
}

TEST_CASE("identity coloring") {
    Graph g = generate(GraphKind::ring, 7, 2, 0);
    Coloring c = identity_coloring(g);
    CHECK(c.palette_size == 7);
    for (int v = 0; v < 7; ++v) CHECK(c.color[v] == v);
    CHECK(is_proper(g, c));
}

TEST_CASE("spread coloring keeps classes and properness") {
    Graph g = generate(GraphKind::random_bounded_degree, 120, 6, 3);
    Coloring base = greedy_input_coloring(g);
    Coloring wide = spread_coloring(base, 4096, 11);
    CHECK(wide.palette_size == 4096);
    CHECK(is_proper(g, wide));
    for (std::size_t v = 0; v < base.color.size(); ++v)
        for (std::size_t u = 0; u < base.color.size(); ++u)
            if (base.color[u] == base.color[v]) CHECK(wide.color[u] == wide.color[v]);
}

TEST_CASE("graph serialization round-trips") {
    Graph g = generate(GraphKind::ring, 5, 2, 0);
    std::stringstream buf;
    save_graph(g, buf);
    Graph back = load_graph(buf);
    CHECK(back == g);

    Coloring c = greedy_input_coloring(g);
    std::stringstream cbuf;
    save_coloring(c, cbuf);
    Coloring cback = load_coloring(cbuf);
    CHECK(cback.palette_size == c.palette_size);
    CHECK(cback.color == c.color);
}

TEST_CASE("serialization round-trips across random instances") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = generate(GraphKind::random_bounded_degree, 60, 5, seed);
        std::stringstream buf;
        save_graph(g, buf);
        CHECK(load_graph(buf) == g);
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_parse_error = [](const std::string& text, int line) {
        std::stringstream buf(text);
        try {
            load_graph(buf);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("graph 3 1 2\ne 1 1\n", 2);                 // self-loop
    expect_parse_error("graph 3 2 1\ne 0 1\ne 1 2\n", 3);          // degree over bound
    expect_parse_error("grph 3 0 2\n", 1);                         // malformed header
    expect_parse_error("graph 3 1 2\ne 2 1\n", 2);                 // not in u < v order
    expect_parse_error("graph 3 2 2\ne 0 1\ne 0 1\n", 3);          // duplicate edge
    expect_parse_error("graph 3 2 2\ne 0 1\n", 3);                 // count mismatch
}
