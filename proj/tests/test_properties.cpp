#include "bmono/monodromy.hpp"
#include "bmono/wiring.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace bmono;

namespace {

// Random pair lists are valid wiring diagrams; the invariants below must hold for all of them.
WiringDiagram random_wiring(std::mt19937& rng, int l, int events) {
  std::uniform_int_distribution<int> pos(1, l - 1);
  std::uniform_int_distribution<int> span(1, 3);
  std::vector<LefschetzPair> pairs;
  for (int k = 0; k < events; ++k) {
    int a = pos(rng);
    int b = std::min(l, a + span(rng));
    pairs.push_back({a, b});
  }
  std::vector<LineLabel> order;
  for (int k = 1; k <= l; ++k) order.push_back(LineLabel{k, l + 1 + k});
  return wiring_from_pairs(l, pairs, order);
}

}  // namespace

TEST_CASE("invariants on random wirings", "[properties]") {
  auto seed = GENERATE(range(1, 41));
  std::mt19937 rng(static_cast<unsigned>(seed));
  int l = 3 + seed % 5;
  auto wd = random_wiring(rng, l, 4 + seed % 9);
  auto o = seed % 2 ? Orientation::cw : Orientation::ccw;

  auto whole = boundary_word(1, l);
  for (auto& e : wd.events) CHECK(interval_halftwist(e.pair.a, e.pair.b, o, l)(whole) == whole);

  auto mono = braid_monodromy(wd, o);
  for (auto& loops : mono.raw_loops)
    for (auto& w : loops) CHECK(w.is_conjugate_of_generator());
  for (auto& rel : mono.relations)
    for (auto& w : rel.words) CHECK(w.is_conjugate_of_generator());

  // the product of an event's raw loops, top first, is a conjugate of the sub-disk boundary
  for (std::size_t j = 0; j < wd.events.size(); ++j) {
    PosWord prod;
    for (auto& w : mono.raw_loops[j]) prod *= w;
    auto& p = wd.events[j].pair;
    PosWord expect = boundary_word(p.a, p.b);
    for (std::size_t q = j; q-- > 0;) expect = interval_halftwist(wd.events[q].pair.a, wd.events[q].pair.b, o, l)(expect);
    CHECK(prod == expect);
  }

  for (auto& r : presentation_of(wd, o).relators) CHECK(r.exponent_sums().empty());

  auto back = wiring_from_pairs(l, lefschetz_pairs(wd), wd.initial_order);
  CHECK(back.final_order() == wd.final_order());
  std::ostringstream os;
  write_pairs(os, wd);
  std::istringstream is(os.str());
  auto parsed = read_pairs(is);
  CHECK(lefschetz_pairs(parsed) == lefschetz_pairs(wd));
  CHECK(parsed.initial_order == wd.initial_order);
}

TEST_CASE("trace normal form is invariant under commuting swaps", "[properties]") {
  auto seed = GENERATE(range(1, 21));
  std::mt19937 rng(static_cast<unsigned>(seed));
  auto wd = random_wiring(rng, 7, 12);
  auto pairs = lefschetz_pairs(wd);
  auto shuffled = pairs;
  for (int step = 0; step < 30; ++step) {
    std::uniform_int_distribution<std::size_t> d(0, shuffled.size() - 2);
    auto k = d(rng);
    auto& u = shuffled[k];
    auto& v = shuffled[k + 1];
    if (u.b < v.a || v.b < u.a) std::swap(u, v);
  }
  CHECK(trace_normal_form(shuffled) == trace_normal_form(pairs));
  CHECK(wiring_from_pairs(7, shuffled, wd.initial_order).final_order() == wd.final_order());
}
