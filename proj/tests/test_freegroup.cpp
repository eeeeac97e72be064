#include "bmono/freegroup.hpp"

#include <catch_amalgamated.hpp>

using namespace bmono;

using W = Word<int>;

TEST_CASE("words stay freely reduced", "[freegroup]") {
  W a(1), b(2);
  CHECK((a * a.inverse()).empty());
  CHECK((a * b * b.inverse() * a).size() == 2);
  CHECK((a * b).inverse() == b.inverse() * a.inverse());
}

TEST_CASE("cyclic reduction and canonical form", "[freegroup]") {
  W a(1), b(2), c(3);
  auto w = a * b * c * a.inverse();
  CHECK(w.cyclically_reduced() == b * c);
  auto r = commutator(a, b);
  auto rotated = b * a.inverse() * b.inverse() * a;
  CHECK(r.canonical() == rotated.canonical());
  CHECK(r.canonical() == r.inverse().canonical());
  CHECK_FALSE(r.canonical() == commutator(a, c).canonical());
}

TEST_CASE("conjugates of generators", "[freegroup]") {
  W a(1), b(2), c(3);
  CHECK(a.is_conjugate_of_generator());
  CHECK((b * a * b.inverse()).is_conjugate_of_generator());
  CHECK((b * c.inverse() * a * c * b.inverse()).is_conjugate_of_generator());
  CHECK_FALSE((a * b).is_conjugate_of_generator());
  CHECK_FALSE(a.inverse().is_conjugate_of_generator());
  CHECK_FALSE(W().is_conjugate_of_generator());
}

TEST_CASE("exponent sums", "[freegroup]") {
  W a(1), b(2);
  CHECK(commutator(a * b, b).exponent_sums().empty());
  auto s = (a * a * b.inverse()).exponent_sums();
  CHECK(s[1] == 2);
  CHECK(s[2] == -1);
}

TEST_CASE("endomorphisms compose by substitution", "[freegroup]") {
  Endo<int> f, g;
  f.set(1, W(1) * W(2));
  g.set(2, W(3));
  auto fg = f * g;  // f after g
  CHECK(fg(W(1)) == W(1) * W(2));
  CHECK(fg(W(2)) == W(3));
  auto gf = g * f;
  CHECK(gf(W(1)) == W(1) * W(3));
  CHECK(Endo<int>().is_identity());
  Endo<int> id;
  id.set(4, W(4));
  CHECK(id.is_identity());
}

TEST_CASE("word formatting", "[freegroup]") {
  auto s = format_word(W(1) * W(2).inverse(), [](int k) { return "g" + std::to_string(k); });
  CHECK(s == "g1 g2^-1");
}
