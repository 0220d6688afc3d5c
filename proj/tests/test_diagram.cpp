#include <catch_amalgamated.hpp>

#include "rackbeads/rackbeads.hpp"

using namespace rackbeads;

namespace {

const std::string links = RACKBEADS_SOURCE_DIR "/corpus/links/";

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

TEST_CASE("PD code of the Hopf link") {
  const auto d = parse_pd("PD[X[3,2,4,1], X[1,4,2,3]]");
  CHECK(d.crossing_count() == 2);
  CHECK(d.semi_arc_count() == 4);
  CHECK(d.component_count() == 2);
  CHECK_FALSE(d.is_virtual());
  CHECK(d.crossings()[0] == Crossing{-1, 3, 2, 4, 1});
  CHECK(d.crossings()[1] == Crossing{-1, 1, 4, 2, 3});
  CHECK(self_writhe(d) == std::vector<int>{0, 0});
  CHECK(d == read_diagram(links + "L2a1.link"));
}

TEST_CASE("PD orientation of the trefoil") {
  const auto d = read_diagram(links + "sources/3_1.pd");
  CHECK(d.component_count() == 1);
  CHECK(self_writhe(d) == std::vector<int>{-3});
  // mirror image by swapping the over strand direction
  const auto m = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]");
  CHECK(self_writhe(m) == std::vector<int>{3});
}

TEST_CASE("PD accepts parentheses and zero crossings") {
  CHECK(parse_pd("X(3,2,4,1) X(1,4,2,3)") == parse_pd("PD[X[3,2,4,1],X[1,4,2,3]]"));
  CHECK(parse_pd("PD[]") == LinkDiagram::unknot());
}

TEST_CASE("PD errors") {
  CHECK_THROWS_AS(parse_pd("X[1,2,3]"), StructuralError);
  CHECK_THROWS_AS(parse_pd("X[1,2,3,5] X[5,3,2,1]"), StructuralError);
  CHECK_THROWS_AS(parse_pd("X[1,2,2,1] X[3,4,4,3] X[1,2,3,4]"), StructuralError);
}

TEST_CASE("Gauss codes") {
  SECTION("virtual trefoil") {
    const auto d = parse_gauss("O1-O2-U1-U2-");
    CHECK(d.is_virtual());
    CHECK(d.crossing_count() == 2);
    CHECK(d.semi_arc_count() == 4);
    CHECK(self_writhe(d) == std::vector<int>{-2});
    CHECK(d == read_diagram(links + "v2.1.link"));
  }
  SECTION("classical trefoil from its Gauss code") {
    const auto d = parse_gauss("O1+U2+O3+U1+O2+U3+", "<t>", false);
    CHECK_FALSE(d.is_virtual());
    CHECK(self_writhe(d) == std::vector<int>{3});
  }
  SECTION("two components, one crossing-free") {
    const auto d = parse_gauss("O1-U2-O2-U1-\n-\n");
    CHECK(d.component_count() == 2);
    CHECK(d.crossing_count() == 2);
    CHECK(self_writhe(d) == std::vector<int>{-2, 0});
  }
  SECTION("errors") {
    CHECK_THROWS_AS(parse_gauss("O1+U1-"), StructuralError);
    CHECK_THROWS_AS(parse_gauss("O1+O1+"), StructuralError);
    CHECK_THROWS_AS(parse_gauss("O1+"), StructuralError);
    CHECK_THROWS_AS(parse_gauss("O1+U1+ junk"), StructuralError);
    CHECK_THROWS_AS(parse_gauss(""), StructuralError);
  }
}

TEST_CASE("native format") {
  const auto d = parse_native("# Hopf link\nC -1 3 2 4 1\nC -1 1 4 2 3\nK 1 2\nK 3 4\n");
  CHECK(d == read_diagram(links + "L2a1.link"));
  CHECK(parse_native(format_native(d)) == d);
  const auto kinked = read_diagram(RACKBEADS_SOURCE_DIR "/corpus/diagrams/hopf_kinked.link");
  CHECK(kinked.kinks().size() == 2);
  CHECK(kinked.crossing_count() == 2);
  CHECK(self_writhe(kinked) == std::vector<int>{1, 1});
  CHECK(parse_native(format_native(kinked)) == kinked);
  CHECK(parse_native("V\nC -1 2 4 3 1\nC -1 3 1 4 2\nK 1 2 3 4\n").is_virtual());
  CHECK_THROWS_AS(parse_native("C 2 1 2 3 4\n"), StructuralError);
  CHECK_THROWS_AS(parse_native("C 1 1 2 3\n"), StructuralError);
  CHECK_THROWS_AS(parse_native("Q 1\n"), StructuralError);
}

TEST_CASE("diagram validation") {
  // semi-arc 1 enters two nodes
  CHECK_THROWS_AS(LinkDiagram(2, {{1, 1, 1, 2, 2}}, {}), StructuralError);
  // semi-arc 3 is produced but never consumed
  CHECK_THROWS_AS(LinkDiagram(3, {{1, 1, 2, 3, 1}}, {}), StructuralError);
  // a semi-arc without nodes is a separate crossing-free component
  CHECK(LinkDiagram(3, {{1, 1, 2, 2, 1}}, {}).component_count() == 2);
  CHECK_THROWS_AS(LinkDiagram(2, {{0, 1, 2, 2, 1}}, {}), StructuralError);
  CHECK_NOTHROW(LinkDiagram(1, {}, {}));
}

TEST_CASE("format detection") {
  CHECK(format_from_path("a/b.pd") == DiagramFormat::PD);
  CHECK(format_from_path("x.gauss") == DiagramFormat::Gauss);
  CHECK(format_from_path("x.link") == DiagramFormat::Native);
  CHECK(parse_format_name("pd") == DiagramFormat::PD);
  CHECK(format_name(DiagramFormat::Gauss) == "gauss");
  CHECK_THROWS_AS(parse_format_name("dt"), StructuralError);
}

TEST_CASE("PD output parses back to the same diagram") {
  for (const char* id : {"3_1", "4_1", "8_18", "L2a1", "L6n1", "L7a5"}) {
    INFO(id);
    const auto d = read_diagram(links + id + ".link");
    CHECK(parse_pd(format_pd(d)) == d);
  }
}

TEST_CASE("framing realizes every class") {
  for (const char* id : {"unknot", "3_1", "L2a1", "L6a4", "v3.7"}) {
    const auto d = read_diagram(links + id + ".link");
    for (int n = 1; n <= 4; ++n)
      for (const auto& w : framing_classes(d.component_count(), n)) {
        const auto framed = with_framing(d, w, n);
        const auto sw = self_writhe(framed);
        for (int c = 0; c < d.component_count(); ++c) REQUIRE(mod(sw[c], n) == w[c]);
        REQUIRE(framed.component_count() == d.component_count());
        REQUIRE(framed.crossing_count() == d.crossing_count());
      }
  }
  CHECK_THROWS_AS(with_framing(LinkDiagram::unknot(), {0, 0}, 2), StructuralError);
  CHECK_THROWS_AS(with_framing(LinkDiagram::unknot(), {2}, 2), StructuralError);
}

TEST_CASE("framing classes are lexicographic") {
  CHECK(framing_classes(2, 2) == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(framing_classes(1, 1) == std::vector<std::vector<int>>{{0}});
  CHECK(framing_classes(0, 3) == std::vector<std::vector<int>>{{}});
}

TEST_CASE("kinks on the crossing-free unknot") {
  const auto d = append_kinks(LinkDiagram::unknot(), {3});
  CHECK(d.semi_arc_count() == 3);
  CHECK(d.kinks().size() == 3);
  CHECK(self_writhe(d) == std::vector<int>{3});
  CHECK(d.components() == std::vector<std::vector<int>>{{1, 2, 3}});
}

TEST_CASE("Reidemeister moves") {
  const auto d = read_diagram(links + "3_1.link");
  const auto r2 = reidemeister_two(d, 1, 4, 1);
  CHECK(r2.crossing_count() == 5);
  CHECK(r2.semi_arc_count() == 10);
  CHECK(self_writhe(r2) == self_writhe(d));
  const auto curl = add_curl(d, 2, -1);
  CHECK(curl.crossing_count() == 4);
  CHECK(self_writhe(curl) == std::vector<int>{-4});
  const auto loop = add_curl(LinkDiagram::unknot(), 1, 1);
  CHECK(loop.semi_arc_count() == 2);
  CHECK(self_writhe(loop) == std::vector<int>{1});
  CHECK_THROWS_AS(reidemeister_two(d, 1, 1), StructuralError);
  CHECK_THROWS_AS(add_curl(d, 1, 0), StructuralError);
}

TEST_CASE("label constraints") {
  using K = LabelConstraint::Kind;
  const auto d = read_diagram(RACKBEADS_SOURCE_DIR "/corpus/diagrams/hopf_kinked.link");
  const auto cs = label_constraints(d);
  REQUIRE(cs.size() == 6);
  // negative crossing: under_in = under_out ▷ over
  CHECK(cs[0] == LabelConstraint{K::Operation, 3, 1, 4});
  CHECK(cs[1] == LabelConstraint{K::Equality, 5, 4, 0});
  CHECK(cs[4] == LabelConstraint{K::Kink, 2, 1, 0});
}
