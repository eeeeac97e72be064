#pragma once

#include "error.hpp"
#include "freegroup.hpp"
#include "wiring.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bmono {

enum class Orientation { cw, ccw };

inline Orientation parse_orientation(const std::string& s) {
  if (s == "cw") return Orientation::cw;
  if (s == "ccw") return Orientation::ccw;
  throw Error(ErrorKind::invalid, "unknown orientation " + s);
}

// Generators g_1..g_l are named by their far-right position.
using PosWord = Word<int>;
using PosEndo = Endo<int>;
using LabelWord = Word<LineLabel>;

inline PosEndo adjacent_halftwist(int k, Orientation o, int l) {
  if (k < 1 || k >= l) throw Error(ErrorKind::invalid, "adjacent half-twist out of range");
  PosWord gk(k), gk1(k + 1);
  PosEndo e;
  if (o == Orientation::cw) {
    e.set(k, gk * gk1 * gk.inverse());
    e.set(k + 1, gk);
  } else {
    e.set(k, gk1);
    e.set(k + 1, gk1.inverse() * gk * gk1);
  }
  return e;
}

// Positive half-twist words for [a,b] as sequences of adjacent indices.
// 0: (s_a..s_{b-1})(s_a..s_{b-2})..(s_a)
// 1: (s_a)(s_{a+1} s_a)..(s_{b-1}..s_a)
// 2: (s_{b-1}..s_a)(s_{b-1}..s_{a+1})..(s_{b-1})
// 3: (s_{b-1})(s_{b-2} s_{b-1})..(s_a..s_{b-1})
inline std::vector<int> halftwist_factorization(int a, int b, int variant = 0) {
  std::vector<int> w;
  switch (variant) {
    case 0:
      for (int top = b - 1; top >= a; --top)
        for (int k = a; k <= top; ++k) w.push_back(k);
      break;
    case 1:
      for (int top = a; top <= b - 1; ++top)
        for (int k = top; k >= a; --k) w.push_back(k);
      break;
    case 2:
      for (int bot = a; bot <= b - 1; ++bot)
        for (int k = b - 1; k >= bot; --k) w.push_back(k);
      break;
    case 3:
      for (int bot = b - 1; bot >= a; --bot)
        for (int k = bot; k <= b - 1; ++k) w.push_back(k);
      break;
    default:
      throw Error(ErrorKind::invalid, "unknown factorization");
  }
  return w;
}

inline PosEndo interval_halftwist(int a, int b, Orientation o, int l, int variant = 0) {
  if (a < 1 || a >= b || b > l) throw Error(ErrorKind::invalid, "invalid interval");
  PosEndo e;
  for (int k : halftwist_factorization(a, b, variant)) e = e * adjacent_halftwist(k, o, l);
  return e;
}

inline PosWord boundary_word(int a, int b) {
  PosWord w;
  for (int k = a; k <= b; ++k) w *= PosWord(k);
  return w;
}

// Loops A_1..A_m of event j (0-based), top position first: images of
// g_a..g_b under the half-twists of events j-1, ..., 0, event j-1 applied first.
inline std::vector<PosWord> transport(const std::vector<WiringEvent>& events, std::size_t j, Orientation o, int l) {
  if (j >= events.size()) throw Error(ErrorKind::invalid, "event index out of range");
  std::vector<PosWord> loops;
  for (int p = events[j].pair.a; p <= events[j].pair.b; ++p) {
    PosWord w(p);
    for (std::size_t q = j; q-- > 0;) w = interval_halftwist(events[q].pair.a, events[q].pair.b, o, l)(w);
    loops.push_back(std::move(w));
  }
  return loops;
}

struct Relation {
  enum Kind { commutator, cyclic } kind;
  std::vector<PosWord> words;  // top position first
  std::size_t event = 0;
};

// Equalities of a relation as relators LHS*RHS^-1, cyclically reduced.
// Cyclic with loops A_1 (bottom) .. A_m (top): E_0 = A_m..A_1 and E_k its
// rotations; the relators are E_0 * E_k^-1 for k = 1..m-1.
inline std::vector<PosWord> relators_of(const Relation& r) {
  if (r.kind == Relation::commutator) return {commutator(r.words[0], r.words[1]).cyclically_reduced()};
  const std::size_t m = r.words.size();
  // words[0] is top = A_m, words[m-1] is bottom = A_1
  auto E = [&](std::size_t k) {
    PosWord w;
    for (std::size_t t = 0; t < m; ++t) w *= r.words[(t + m - k) % m];
    return w;
  };
  std::vector<PosWord> out;
  for (std::size_t k = 1; k < m; ++k) out.push_back((E(0) * E(k).inverse()).cyclically_reduced());
  return out;
}

// Removes conjugating letters that commute, by an earlier double point, with
// the loop they conjugate. Works from the innermost letter outward.
class CommutationTable {
 public:
  void add(int gen, const PosWord& w) { pairs_.insert({gen, w}); }
  bool commutes(int gen, const PosWord& w) const { return pairs_.count({gen, w}) > 0; }

  PosWord simplify(const PosWord& loop) const {
    if (!loop.is_conjugate_of_generator()) return loop;
    std::size_t mid = loop.size() / 2;
    std::vector<Letter<int>> u(loop.letters().begin(), loop.letters().begin() + mid);
    PosWord g(loop[mid].sym);
    for (std::size_t i = u.size(); i-- > 0;) {
      PosWord rest(std::vector<Letter<int>>(u.begin() + i + 1, u.end()));
      PosWord inner = rest * g * rest.inverse();
      if (commutes(u[i].sym, inner)) u.erase(u.begin() + i);
    }
    PosWord c(u);
    return c * g * c.inverse();
  }

 private:
  std::set<std::pair<int, PosWord>> pairs_;
};

inline std::size_t common_conjugator_length(const std::vector<PosWord>& loops) {
  std::size_t k = 0;
  for (;;) {
    for (auto& w : loops)
      if (w.size() / 2 <= k || !(w[k] == loops[0][k])) return k;
    ++k;
  }
}

struct MonodromyResult {
  std::vector<Relation> relations;
  std::vector<std::vector<PosWord>> raw_loops;  // unsimplified transport, per event
};

inline MonodromyResult braid_monodromy(const WiringDiagram& wd, Orientation o = Orientation::cw,
                                       bool reduce_conjugators = true) {
  MonodromyResult res;
  const int l = wd.l;
  std::vector<PosEndo> twists;
  for (auto& e : wd.events) twists.push_back(interval_halftwist(e.pair.a, e.pair.b, o, l));
  CommutationTable table;
  for (std::size_t j = 0; j < wd.events.size(); ++j) {
    auto& ev = wd.events[j];
    std::vector<PosWord> loops;
    for (int p = ev.pair.a; p <= ev.pair.b; ++p) {
      PosWord w(p);
      for (std::size_t q = j; q-- > 0;) w = twists[q](w);
      loops.push_back(std::move(w));
    }
    res.raw_loops.push_back(loops);
    if (reduce_conjugators) {
      std::size_t k = common_conjugator_length(loops);
      for (auto& w : loops) w = table.simplify(w.slice(k, w.size() - k));
    }
    Relation rel{loops.size() == 2 ? Relation::commutator : Relation::cyclic, loops, j};
    if (reduce_conjugators && rel.kind == Relation::commutator) {
      if (loops[0].size() == 1) table.add(loops[0][0].sym, loops[1]);
      if (loops[1].size() == 1) table.add(loops[1][0].sym, loops[0]);
    }
    res.relations.push_back(std::move(rel));
  }
  return res;
}

struct Presentation {
  std::vector<LineLabel> generators;
  std::vector<LabelWord> relators;
};

inline LabelWord relabel(const PosWord& w, const std::vector<LineLabel>& initial_order) {
  return w.map([&](int p) { return initial_order.at(p - 1); });
}

inline Presentation presentation_of(const WiringDiagram& wd, Orientation o = Orientation::cw,
                                    bool reduce_conjugators = true) {
  Presentation pr;
  pr.generators = wd.initial_order;
  for (auto& rel : braid_monodromy(wd, o, reduce_conjugators).relations)
    for (auto& r : relators_of(rel)) pr.relators.push_back(relabel(r, wd.initial_order));
  return pr;
}

// ---- presentation text format ----

inline std::string symbol_token(const LineLabel& l) {
  std::string s = "S(";
  for (std::size_t k = 0; k < l.idx.size(); ++k) s += (k ? "," : "") + std::to_string(l.idx[k]);
  return s + ")";
}

inline std::string format_relator(const LabelWord& w) { return format_word(w, symbol_token); }

inline void write_presentation(std::ostream& os, const Presentation& p) {
  os << "generators:";
  for (auto& g : p.generators) os << ' ' << symbol_token(g);
  os << "\n";
  for (auto& r : p.relators) os << format_relator(r) << "\n";
}

inline Letter<LineLabel> parse_token(const std::string& tok) {
  std::string t = tok;
  int e = 1;
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0) {
    e = -1;
    t.resize(t.size() - 3);
  }
  if (t.size() < 6 || t[0] != 'S' || t[1] != '(') throw ParseError("bad token " + tok);
  return {parse_label(t.substr(1)), e};
}

inline Presentation read_presentation(std::istream& in) {
  Presentation p;
  std::string raw;
  bool have_gens = false;
  while (std::getline(in, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "generators:") {
      while (ls >> tok) {
        auto l = parse_token(tok);
        if (l.exp != 1) throw ParseError("inverse in generator list");
        p.generators.push_back(l.sym);
      }
      have_gens = true;
      continue;
    }
    LabelWord w;
    do w.push(parse_token(tok));
    while (ls >> tok);
    p.relators.push_back(w);
  }
  if (!have_gens) throw ParseError("missing generators: line");
  std::set<LineLabel> gens(p.generators.begin(), p.generators.end());
  for (auto& r : p.relators)
    for (auto& l : r.letters())
      if (!gens.count(l.sym)) throw ParseError("relator uses unlisted generator " + symbol_token(l.sym));
  return p;
}

}  // namespace bmono
