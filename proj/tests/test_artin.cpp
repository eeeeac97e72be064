#include "bmono/artin.hpp"
#include "bmono/braidarr.hpp"

#include <catch_amalgamated.hpp>

using namespace bmono;

namespace {

std::size_t choose(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("target presentation sizes", "[artin]") {
  auto t4 = modified_artin_presentation(4);
  CHECK(t4.generators.size() == 6);
  CHECK(t4.relators.size() == 11);
  auto t2 = modified_artin_presentation(2);
  CHECK(t2.generators.size() == 1);
  CHECK(t2.relators.empty());
  for (int n = 3; n <= 8; ++n) {
    auto t = modified_artin_presentation(n);
    CHECK(t.count(Family::r1) == 2 * choose(n, 4));
    CHECK(t.count(Family::r2) == choose(n, 4));
    CHECK(t.count(Family::r3) == 2 * choose(n, 3));
  }
}

TEST_CASE("four-strand target relators", "[artin]") {
  auto t = modified_artin_presentation(4).presentation();
  Presentation want{t.generators,
                    {commutator(S(1, 2), S(3, 4)), commutator(S(1, 4), S(2, 3)),
                     commutator(S(1, 3), S(1, 4) * S(2, 4) * S(1, 4).inverse()),
                     commutator(S(1, 2) * S(1, 3), S(2, 3)), commutator(S(1, 2), S(1, 3) * S(2, 3)),
                     commutator(S(1, 2) * S(1, 4), S(2, 4)), commutator(S(1, 2), S(1, 4) * S(2, 4)),
                     commutator(S(1, 3) * S(1, 4), S(3, 4)), commutator(S(1, 3), S(1, 4) * S(3, 4)),
                     commutator(S(2, 3) * S(2, 4), S(3, 4)), commutator(S(2, 3), S(2, 4) * S(3, 4))}};
  CHECK(presentations_match(t, want).match);
}

TEST_CASE("relator classification", "[artin]") {
  auto c1 = classify_relator(commutator(S(1, 2), S(3, 4)));
  CHECK(c1.family == Family::r1);
  CHECK(c1.indices == std::vector<int>{3, 4, 1, 2});
  auto c2 = classify_relator(commutator(S(2, 4), S(2, 5) * S(3, 5) * S(2, 5).inverse()));
  CHECK(c2.family == Family::r2);
  CHECK(classify_relator(commutator(S(1, 2) * S(1, 3), S(2, 3))).family == Family::r3);
  CHECK(classify_relator(commutator(S(1, 2), S(1, 3) * S(2, 3)).inverse()).family == Family::r3);
  CHECK(classify_relator(LabelWord()).family == Family::unknown);
  CHECK(classify_relator(commutator(S(1, 3), S(2, 4))).family == Family::unknown);
  CHECK(classify_relator(commutator(S(3, 5), S(4, 5) * S(2, 4) * S(4, 5).inverse()), SecondForm::original).family ==
        Family::r2);
}

TEST_CASE("matcher works up to rotation and inversion", "[artin]") {
  auto t = modified_artin_presentation(4).presentation();
  auto u = t;
  auto& w = u.relators[3];
  auto ls = w.inverse().letters();
  std::rotate(ls.begin(), ls.begin() + 2, ls.end());
  w = LabelWord(ls);
  CHECK(presentations_match(u, t).match);
  CHECK(presentations_match(t, u).match);
  u.relators.pop_back();
  auto rep = presentations_match(u, t);
  CHECK_FALSE(rep.match);
  CHECK(rep.unmatched_target.size() == 1);
  Presentation other{{LineLabel{1, 2}}, {}};
  CHECK_THROWS_AS(presentations_match(other, t), Error);
}

TEST_CASE("pipeline matches the target for four and five strands", "[artin]") {
  for (int n : {4, 5}) {
    auto p = presentation_of(wiring_from_arrangement(lex_arrangement(n)));
    CHECK(presentations_match(p, modified_artin_presentation(n)).match);
  }
}

TEST_CASE("oracle", "[artin]") {
  CHECK(calibrate_handedness() == kSwingHandedness);
  CHECK(artin_oracle_check(S(1, 2) * S(1, 2).inverse(), 3));
  CHECK_FALSE(artin_oracle_check(commutator(S(1, 2), S(1, 3)), 3));
  CHECK_FALSE(artin_oracle_check(S(1, 2), 3));
  for (auto& r : modified_artin_presentation(5).relators) CHECK(artin_oracle_check(r.word, 5));
  CHECK_THROWS_AS(artin_oracle_check(S(1, 4), 3), Error);
}

TEST_CASE("both crossing relator forms hold", "[artin]") {
  for (int n = 4; n <= 6; ++n)
    for (int r = 1; r <= n; ++r)
      for (int i = r + 1; i <= n; ++i)
        for (int s = i + 1; s <= n; ++s)
          for (int j = s + 1; j <= n; ++j) {
            CHECK(artin_oracle_check(shape_r2(r, i, s, j, SecondForm::original), n));
            CHECK(artin_oracle_check(shape_r2(r, i, s, j, SecondForm::remark), n));
          }
}

TEST_CASE("the swing is a pure braid", "[artin]") {
  // a pure braid sends each generator to a conjugate of itself
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 4}}) {
    auto e = braid_action(swing_braid(i, j), 4);
    auto boundary = PosWord(1) * PosWord(2) * PosWord(3) * PosWord(4);
    CHECK(e(boundary) == boundary);
    for (int k = 1; k <= 4; ++k) {
      auto w = e(PosWord(k));
      REQUIRE(w.is_conjugate_of_generator());
      CHECK(w[w.size() / 2].sym == k);
    }
  }
}
