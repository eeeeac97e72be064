#include "bmono/artin.hpp"
#include "bmono/braidarr.hpp"
#include "bmono/monodromy.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace bmono;

namespace {

PosWord g(int k) { return PosWord(k); }

bool same_on(const PosEndo& f, const PosEndo& h, int l) {
  for (int k = 1; k <= l; ++k)
    if (!(f(g(k)) == h(g(k)))) return false;
  return true;
}

}  // namespace

TEST_CASE("adjacent half-twists", "[monodromy]") {
  auto cw = adjacent_halftwist(2, Orientation::cw, 4);
  auto ccw = adjacent_halftwist(2, Orientation::ccw, 4);
  CHECK(cw(g(2) * g(3)) == g(2) * g(3));
  CHECK((cw * ccw).is_identity());
  CHECK((ccw * cw).is_identity());
  auto full = cw * cw;
  CHECK(full(g(2)) == (g(2) * g(3)) * g(2) * (g(2) * g(3)).inverse());
  CHECK_FALSE(cw.is_identity());
  CHECK(PosEndo().is_identity());
  CHECK_THROWS_AS(adjacent_halftwist(4, Orientation::cw, 4), Error);
}

TEST_CASE("interval half-twists", "[monodromy]") {
  for (int k = 1; k < 5; ++k)
    for (auto o : {Orientation::cw, Orientation::ccw})
      CHECK(same_on(interval_halftwist(k, k + 1, o, 5), adjacent_halftwist(k, o, 5), 5));
  for (int l = 2; l <= 6; ++l)
    for (int a = 1; a <= l; ++a)
      for (int b = a + 1; b <= l; ++b)
        for (auto o : {Orientation::cw, Orientation::ccw}) {
          auto ref = interval_halftwist(a, b, o, l, 0);
          for (int v = 1; v < 4; ++v) CHECK(same_on(ref, interval_halftwist(a, b, o, l, v), l));
          CHECK(ref(boundary_word(a, b)) == boundary_word(a, b));
          CHECK(ref(boundary_word(1, l)) == boundary_word(1, l));
        }
  CHECK_THROWS_AS(interval_halftwist(3, 3, Orientation::cw, 4), Error);
}

TEST_CASE("transport along the four-strand wiring", "[monodromy]") {
  auto wd = wiring_from_arrangement(lex_arrangement(4));
  auto first = transport(wd.events, 0, Orientation::cw, wd.l);
  CHECK(first == std::vector<PosWord>{g(3), g(4)});
  CHECK(wd.initial_order[2] == LineLabel{1, 4});
  CHECK(wd.initial_order[3] == LineLabel{2, 3});
  // event 2 is the triple [1,3]; the first twist moved position 3, so the raw
  // third loop is conjugated by g3 and reduces to g4 = (2,3) since (1,4) and (2,3) commute
  auto second = transport(wd.events, 1, Orientation::cw, wd.l);
  CHECK(second == std::vector<PosWord>{g(1), g(2), g(3) * g(4) * g(3).inverse()});
  auto mono = braid_monodromy(wd);
  std::vector<LineLabel> labels;
  for (auto& w : mono.relations[1].words) {
    REQUIRE(w.size() == 1);
    labels.push_back(wd.initial_order[w[0].sym - 1]);
  }
  CHECK(labels == std::vector<LineLabel>{{1, 2}, {1, 3}, {2, 3}});
  for (std::size_t j = 0; j < wd.events.size(); ++j)
    for (auto& w : transport(wd.events, j, Orientation::cw, wd.l)) CHECK(w.is_conjugate_of_generator());
}

TEST_CASE("relators of a relation", "[monodromy]") {
  Relation dbl{Relation::commutator, {g(1), g(2)}, 0};
  auto r = relators_of(dbl);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == g(1) * g(2) * g(1).inverse() * g(2).inverse());

  // words top first: A3, A2, A1
  auto A1 = g(1), A2 = g(2), A3 = g(3);
  Relation tri{Relation::cyclic, {A3, A2, A1}, 0};
  auto rs = relators_of(tri);
  REQUIRE(rs.size() == 2);
  auto E0 = A3 * A2 * A1, E1 = A1 * A3 * A2, E2 = A2 * A1 * A3;
  CHECK(rs[0].canonical() == (E0 * E1.inverse()).canonical());
  CHECK(rs[1].canonical() == (E0 * E2.inverse()).canonical());
  // the chained equality E1 = E2 follows from the two
  CHECK(((E0 * E1.inverse()).inverse() * (E0 * E2.inverse())) == E1 * E2.inverse());

  Relation quad{Relation::cyclic, {g(4), g(3), g(2), g(1)}, 0};
  CHECK(relators_of(quad).size() == 3);
}

TEST_CASE("presentation of the free arrangement", "[monodromy]") {
  auto wd = wiring_from_pairs(3, {}, placeholder_order(3));
  auto p = presentation_of(wd);
  CHECK(p.generators.size() == 3);
  CHECK(p.relators.empty());
}

TEST_CASE("relator counts for four and five strands", "[monodromy]") {
  CHECK(presentation_of(wiring_from_arrangement(lex_arrangement(4))).relators.size() == 11);
  CHECK(presentation_of(wiring_from_arrangement(lex_arrangement(5))).relators.size() == 35);
}

TEST_CASE("conjugator reduction keeps the relators valid", "[monodromy]") {
  for (int n = 4; n <= 5; ++n) {
    auto wd = wiring_from_arrangement(lex_arrangement(n));
    for (auto& r : presentation_of(wd, Orientation::cw, false).relators) CHECK(artin_oracle_check(r, n));
    auto mono = braid_monodromy(wd);
    for (auto& rel : mono.relations)
      for (auto& w : rel.words) CHECK(w.is_conjugate_of_generator());
  }
}

TEST_CASE("presentation text round trip", "[monodromy]") {
  auto p = presentation_of(wiring_from_arrangement(lex_arrangement(4)));
  std::ostringstream os;
  write_presentation(os, p);
  std::istringstream is(os.str());
  auto back = read_presentation(is);
  CHECK(back.generators == p.generators);
  CHECK(back.relators == p.relators);

  std::istringstream missing("S(1,2) S(1,3)\n");
  CHECK_THROWS_AS(read_presentation(missing), ParseError);
  std::istringstream unlisted("generators: S(1,2)\nS(1,3)\n");
  CHECK_THROWS_AS(read_presentation(unlisted), ParseError);
  std::istringstream junk("generators: S(1,2)\nT(1,2)\n");
  CHECK_THROWS_AS(read_presentation(junk), ParseError);
}
