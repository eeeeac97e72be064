#include "bmono/braidarr.hpp"
#include "bmono/exactgeom.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace bmono;

namespace {

RationalLine line(const char* a, const char* b, const char* c, LineLabel l) {
  return RationalLine(parse_rational(a), parse_rational(b), parse_rational(c), std::move(l));
}

std::size_t pair_count(const LineArrangement& arr) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < arr.lines.size(); ++i)
    for (std::size_t j = i + 1; j < arr.lines.size(); ++j) k += intersect(arr.lines[i], arr.lines[j]).has_value();
  return k;
}

std::map<std::size_t, std::size_t> multiplicities(const LineArrangement& arr) {
  std::map<std::size_t, std::size_t> m;
  for (auto& sp : singular_points(arr)) m[sp.multiplicity()]++;
  return m;
}

}  // namespace

TEST_CASE("rationals parse and print exactly", "[exactgeom]") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(from_double(0.375) == Rational(3, 8));
  CHECK(from_double(-2.5) == Rational(-5, 2));
}

TEST_CASE("intersections of rational lines", "[exactgeom]") {
  auto xaxis = line("0", "1", "0", {1, 2});
  auto yaxis = line("1", "0", "0", {1, 3});
  CHECK(*intersect(xaxis, yaxis) == Point{0, 0});
  auto p = RationalLine::slope_intercept(1, 0, {1, 2});
  auto q = RationalLine::slope_intercept(1, 1, {1, 3});
  CHECK_FALSE(intersect(p, q).has_value());
  auto u = RationalLine::slope_intercept(2, 1, {1, 2});
  auto v = RationalLine::slope_intercept(-1, 4, {1, 3});
  CHECK(*intersect(u, v) == Point{1, 3});
  CHECK_THROWS_AS(intersect(u, RationalLine::slope_intercept(2, 1, {2, 3})), Error);
}

TEST_CASE("labels parse and compare", "[exactgeom]") {
  CHECK(parse_label("(1,2)") == LineLabel{1, 2});
  CHECK(parse_label("(1,2,3)") == LineLabel{1, 2, 3});
  CHECK_THROWS_AS(parse_label("(2,1)"), ParseError);
  CHECK_THROWS_AS(parse_label("(1,2,3,4)"), ParseError);
  CHECK_THROWS_AS(parse_label("1,2"), ParseError);
  CHECK(LineLabel{1, 2}.shares_index(LineLabel{2, 3}));
  CHECK_FALSE(LineLabel{1, 2}.shares_index(LineLabel{3, 4}));
}

TEST_CASE("singular points and multiplicities", "[exactgeom]") {
  LineArrangement arr;
  arr.n = 3;
  arr.lines = {RationalLine::slope_intercept(1, 0, {1, 2}), RationalLine::slope_intercept(-1, 0, {1, 3}),
               RationalLine::slope_intercept(3, 0, {2, 3})};
  auto pts = singular_points(arr);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].multiplicity() == 3);

  auto m4 = multiplicities(lex_arrangement(4));
  CHECK(m4[2] == 3);
  CHECK(m4[3] == 4);
  auto m5 = multiplicities(lex_arrangement(5));
  CHECK(m5[2] == 15);
  CHECK(m5[3] == 10);
}

TEST_CASE("singular points account for every intersecting pair", "[exactgeom]") {
  for (int n = 3; n <= 6; ++n) {
    auto arr = lex_arrangement(n);
    std::size_t sum = 0;
    for (auto& sp : singular_points(arr)) sum += sp.multiplicity() * (sp.multiplicity() - 1) / 2;
    CHECK(sum == pair_count(arr));
  }
}

TEST_CASE("singular points come in decreasing x", "[exactgeom]") {
  auto pts = singular_points(lex_arrangement(5));
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) CHECK(pts[k].point.first > pts[k + 1].point.first);
}

TEST_CASE("scan position validation", "[exactgeom]") {
  LineArrangement v;
  v.n = 3;
  v.lines = {line("1", "0", "0", {1, 2}), RationalLine::slope_intercept(1, 0, {1, 3})};
  auto c = validate_scan_position(v);
  CHECK_FALSE(c.ok);
  REQUIRE_FALSE(c.diagnostics.empty());
  CHECK(c.diagnostics[0].find("vertical line") != std::string::npos);

  // y = 0 meets y = x at (0,0), y = 1 meets y = 1 - x at (0,1)
  LineArrangement s;
  s.n = 4;
  s.lines = {RationalLine::slope_intercept(0, 0, {1, 2}), RationalLine::slope_intercept(1, 0, {1, 3}),
             RationalLine::slope_intercept(0, 1, {2, 3}), RationalLine::slope_intercept(-1, 1, {3, 4})};
  bool shared = false;
  for (auto& d : validate_scan_position(s).diagnostics) shared = shared || d.find("shared x 0") != std::string::npos;
  CHECK(shared);

  CHECK(validate_scan_position(lex_arrangement(5)).ok);
}

TEST_CASE("arrangement files round trip", "[exactgeom]") {
  auto arr = lex_arrangement(4);
  std::ostringstream os;
  write_arrangement(os, arr);
  std::istringstream is(os.str());
  auto back = read_arrangement(is);
  REQUIRE(back.lines.size() == arr.lines.size());
  CHECK(back.n == 4);
  for (std::size_t k = 0; k < arr.lines.size(); ++k) {
    CHECK(back.lines[k].same_locus(arr.lines[k]));
    CHECK(back.lines[k].label == arr.lines[k].label);
  }
  std::istringstream bad("(1,2) 1 2\n");
  CHECK_THROWS_AS(read_arrangement(bad), ParseError);
  std::istringstream dup("(1,2) 1 1 0\n(1,2) 1 2 0\n");
  CHECK_THROWS_AS(read_arrangement(dup), Error);
}
