#include "bmono/braidarr.hpp"

#include <catch_amalgamated.hpp>

using namespace bmono;

namespace {

const std::vector<LefschetzPair> kPairs4{{3, 4}, {1, 3}, {3, 5}, {2, 3}, {5, 6}, {3, 5}, {1, 3}};

// f_i = (t_i^2, t_i, t_i^3)
Section moment_like(const std::vector<Rational>& t) {
  Section s;
  for (auto& x : t) s.f.push_back({x * x, x, x * x * x});
  return s;
}

std::size_t count_mult(const LineArrangement& arr, std::size_t m) {
  std::size_t k = 0;
  for (auto& sp : singular_points(arr)) k += sp.multiplicity() == m;
  return k;
}

}  // namespace

TEST_CASE("lexicographic arrangements have the expected points", "[braidarr]") {
  auto a3 = lex_arrangement(3);
  CHECK(a3.lines.size() == 3);
  CHECK(count_mult(a3, 3) == 1);
  auto a4 = lex_arrangement(4);
  CHECK(a4.lines.size() == 6);
  CHECK(count_mult(a4, 3) == 4);
  CHECK(count_mult(a4, 2) == 3);
  auto a6 = lex_arrangement(6);
  CHECK(a6.lines.size() == 15);
  CHECK(count_mult(a6, 3) == 20);
  CHECK(count_mult(a6, 2) == 45);
}

TEST_CASE("inequality families and properties hold", "[braidarr]") {
  for (int n = 3; n <= 7; ++n) {
    auto arr = lex_arrangement(n);
    auto fam = check_inequality_families(arr);
    CHECK(fam.ok());
    auto props = verify_properties(arr);
    CHECK(props.p1);
    CHECK(props.p2);
    CHECK(props.p3);
  }
  auto fam3 = check_inequality_families(lex_arrangement(3));
  for (auto& [f, k] : fam3.checked) CHECK(k == 0);
  auto fam5 = check_inequality_families(lex_arrangement(5));
  CHECK(fam5.checked.at("I") == 1);  // (1,i,i) instances are vacuous
  CHECK(fam5.checked.at("III") == 2);
}

TEST_CASE("inequality families detect violations", "[braidarr]") {
  auto bad = section_arrangement(moment_like({-1, -2, -3, -4, -5}));
  auto fam = check_inequality_families(bad);
  CHECK_FALSE(fam.ok());
  CHECK_FALSE(fam.violations.empty());
}

TEST_CASE("verify_properties rejects P3 and P2 violations", "[braidarr]") {
  // triples at x = -(t_i+t_j+t_k): P(1,3,4) lies left of P(2,3,4)
  auto p3 = verify_properties(section_arrangement(moment_like({1, 0, 2, 3})));
  CHECK_FALSE(p3.p3);

  LineArrangement four;
  four.n = 4;
  four.lines = {RationalLine::slope_intercept(3, 0, {1, 2}), RationalLine::slope_intercept(2, 0, {1, 3}),
                RationalLine::slope_intercept(1, 0, {1, 4}), RationalLine::slope_intercept(0, 0, {2, 3})};
  CHECK_FALSE(verify_properties(four).p2);
}

TEST_CASE("predicted script", "[braidarr]") {
  auto s3 = predicted_transitions(3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].kind == TransitionStep::flip);
  CHECK(s3[0].labels == std::vector<LineLabel>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(script_pairs(s3) == std::vector<LefschetzPair>{{1, 3}});
  CHECK(trace_normal_form(script_pairs(predicted_transitions(4))) == trace_normal_form(kPairs4));
  // the commuting exchanges after P(1,2,4): (1,2)|(3,4) is emitted before (1,3)|(2,4)
  std::vector<LefschetzPair> first_block{{3, 4}, {1, 3}, {3, 5}, {5, 6}, {2, 3}, {3, 5}, {1, 3}};
  CHECK(script_pairs(predicted_transitions(4)) == first_block);
}

TEST_CASE("predicted script exchanges every disjoint pair once", "[braidarr]") {
  for (int n = 3; n <= 8; ++n) {
    std::vector<LineLabel> flips;
    std::map<std::pair<LineLabel, LineLabel>, int> exchanged;
    for (auto& st : predicted_transitions(n)) {
      if (st.kind == TransitionStep::flip) {
        auto t = st.labels;
        std::sort(t.begin(), t.end());
        flips.push_back(LineLabel{t[0][0], t[0][1], t[1][1]});
        continue;
      }
      auto a = st.labels[0], b = st.labels[1];
      if (b < a) std::swap(a, b);
      CHECK_FALSE(a.shares_index(b));
      exchanged[{a, b}]++;
    }
    std::size_t disjoint = 0;
    for (auto& a : lex_labels(n))
      for (auto& b : lex_labels(n))
        if (a < b && !a.shares_index(b)) {
          ++disjoint;
          CHECK(exchanged[{a, b}] == 1);
        }
    CHECK(exchanged.size() == disjoint);
    CHECK(std::is_sorted(flips.begin(), flips.end()));
    CHECK(flips.size() == static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6));
  }
}

TEST_CASE("geometric and predicted pair lists agree for small n", "[braidarr]") {
  for (int n = 3; n <= 5; ++n) {
    auto geometric = lefschetz_pairs(wiring_from_arrangement(lex_arrangement(n)));
    auto predicted = script_pairs(predicted_transitions(n));
    CHECK(trace_normal_form(geometric) == trace_normal_form(predicted));
  }
  CHECK(lefschetz_pairs(wiring_from_arrangement(lex_arrangement(4))) == kPairs4);
}

TEST_CASE("section parameters", "[braidarr]") {
  auto& p = lex_params_cached(5);
  CHECK(p.n == 5);
  CHECK(p.agrees_with_script);
  CHECK(p.slopes.size() == 10);
  CHECK(p.anchors.size() == 3);
  for (auto& [l, m] : p.slopes)
    if (!(l == LineLabel{1, 2})) CHECK(p.slope_12 > m);
  for (int i = 3; i < 5; ++i) CHECK(p.anchors.at(i) > p.anchors.at(i + 1));
  std::ostringstream os;
  write_params(os, p);
  CHECK(os.str().find("n 5\n") != std::string::npos);
  CHECK_THROWS_AS(lex_params(2), Error);
}

TEST_CASE("the moment construction is lexicographic", "[braidarr]") {
  for (int n = 3; n <= 7; ++n) {
    auto arr = section_arrangement(moment_section(n));
    CHECK(verify_properties(arr).ok());
    CHECK(check_inequality_families(arr).ok());
  }
}
