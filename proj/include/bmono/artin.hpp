#pragma once

#include "error.hpp"
#include "monodromy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bmono {

enum class SecondForm { original, remark };

inline SecondForm parse_second_form(const std::string& s) {
  if (s == "original") return SecondForm::original;
  if (s == "remark") return SecondForm::remark;
  throw Error(ErrorKind::invalid, "unknown second form " + s);
}

enum class Family { r1, r2, r3, unknown };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::r1: return "r-I";
    case Family::r2: return "r-II";
    case Family::r3: return "r-III";
    default: return "unknown";
  }
}

inline LabelWord S(int i, int j) { return LabelWord(LineLabel{i, j}); }

struct TaggedRelator {
  Family family;
  std::vector<int> indices;
  LabelWord word;
};

// r-I: i<r<s<j or r<s<i<j
inline bool noncrossing(int i, int j, int r, int s) { return (i < r && r < s && s < j) || (r < s && s < i && i < j); }

inline LabelWord shape_r1(int i, int j, int r, int s) { return commutator(S(i, j), S(r, s)); }

// r < i < s < j
inline LabelWord shape_r2(int r, int i, int s, int j, SecondForm f) {
  if (f == SecondForm::remark) return commutator(S(r, s), S(r, j) * S(i, j) * S(r, j).inverse());
  return commutator(S(i, j), S(s, j) * S(r, s) * S(s, j).inverse());
}

// i < j < r, two relators
inline LabelWord shape_r3(int i, int j, int r, int which) {
  if (which == 0) return commutator(S(i, j) * S(i, r), S(j, r));
  return commutator(S(i, j), S(i, r) * S(j, r));
}

struct ArtinTarget {
  int n = 0;
  SecondForm form = SecondForm::remark;
  std::vector<LineLabel> generators;
  std::vector<TaggedRelator> relators;

  std::size_t count(Family f) const {
    return static_cast<std::size_t>(
        std::count_if(relators.begin(), relators.end(), [&](auto& t) { return t.family == f; }));
  }
  Presentation presentation() const {
    Presentation p{generators, {}};
    for (auto& t : relators) p.relators.push_back(t.word.cyclically_reduced());
    return p;
  }
};

inline ArtinTarget modified_artin_presentation(int n, SecondForm form = SecondForm::remark) {
  if (n < 2) throw Error(ErrorKind::invalid, "n must be at least 2");
  ArtinTarget t;
  t.n = n;
  t.form = form;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) t.generators.push_back(LineLabel{i, j});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s)
          if (noncrossing(i, j, r, s)) t.relators.push_back({Family::r1, {i, j, r, s}, shape_r1(i, j, r, s)});
  for (int r = 1; r <= n; ++r)
    for (int i = r + 1; i <= n; ++i)
      for (int s = i + 1; s <= n; ++s)
        for (int j = s + 1; j <= n; ++j) t.relators.push_back({Family::r2, {r, i, s, j}, shape_r2(r, i, s, j, form)});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = j + 1; r <= n; ++r)
        for (int w = 0; w < 2; ++w) t.relators.push_back({Family::r3, {i, j, r}, shape_r3(i, j, r, w)});
  return t;
}

struct Classification {
  Family family = Family::unknown;
  std::vector<int> indices;
};

inline Classification classify_relator(const LabelWord& r, SecondForm form = SecondForm::remark) {
  Classification c;
  if (r.empty()) return c;
  std::set<int> idx;
  for (auto& l : r.letters()) {
    if (l.sym.arity() != 2) return c;
    idx.insert(l.sym[0]);
    idx.insert(l.sym[1]);
  }
  if (idx.size() > 4) return c;
  std::vector<int> v(idx.begin(), idx.end());
  auto key = r.canonical();
  auto same = [&](const LabelWord& w) { return w.canonical() == key; };
  if (v.size() == 4) {
    int a = v[0], b = v[1], x = v[2], y = v[3];
    // the two non-crossing splits and the crossing one
    if (same(shape_r1(a, y, b, x))) return {Family::r1, {a, y, b, x}};
    if (same(shape_r1(x, y, a, b))) return {Family::r1, {x, y, a, b}};
    if (same(shape_r2(a, b, x, y, form))) return {Family::r2, {a, b, x, y}};
    SecondForm other = form == SecondForm::remark ? SecondForm::original : SecondForm::remark;
    if (same(shape_r2(a, b, x, y, other))) return {Family::r2, {a, b, x, y}};
  } else if (v.size() == 3) {
    for (int w = 0; w < 2; ++w)
      if (same(shape_r3(v[0], v[1], v[2], w))) return {Family::r3, {v[0], v[1], v[2]}};
  }
  return c;
}

struct MatchReport {
  bool match = false;
  std::vector<LabelWord> unmatched_computed;  // in p, not in target
  std::vector<LabelWord> unmatched_target;    // in target, not in p
  std::map<Family, std::size_t> family_counts;  // of p's relators
};

inline MatchReport presentations_match(const Presentation& p, const Presentation& target) {
  std::set<LineLabel> g1(p.generators.begin(), p.generators.end()), g2(target.generators.begin(), target.generators.end());
  if (g1 != g2) throw Error(ErrorKind::mismatch, "generator sets differ");
  using Key = std::vector<Letter<LineLabel>>;
  std::multimap<Key, const LabelWord*> want;
  for (auto& r : target.relators) want.emplace(r.canonical(), &r);
  MatchReport rep;
  for (auto& r : p.relators) {
    rep.family_counts[classify_relator(r.cyclically_reduced()).family]++;
    auto it = want.find(r.canonical());
    if (it == want.end())
      rep.unmatched_computed.push_back(r);
    else
      want.erase(it);
  }
  for (auto& [k, w] : want) rep.unmatched_target.push_back(*w);
  rep.match = rep.unmatched_computed.empty() && rep.unmatched_target.empty();
  return rep;
}

inline MatchReport presentations_match(const Presentation& p, const ArtinTarget& t) {
  return presentations_match(p, t.presentation());
}

// ---- oracle: pure braids acting on the free group F_n ----

// Handedness of a swing relative to the Artin generators, frozen by
// calibrate_handedness() against the n=4 target (see tests).
inline constexpr int kSwingHandedness = +1;

using BraidWord = std::vector<std::pair<int, int>>;  // (k, +-1) for sigma_k^{+-1}

inline BraidWord swing_braid(int i, int j, int handedness = kSwingHandedness) {
  BraidWord w;
  for (int k = j - 1; k > i; --k) w.push_back({k, 1});
  w.push_back({i, handedness});
  w.push_back({i, handedness});
  for (int k = i + 1; k < j; ++k) w.push_back({k, -1});
  return w;
}

inline PosEndo artin_sigma(int k, int e, int n) {
  return adjacent_halftwist(k, e > 0 ? Orientation::cw : Orientation::ccw, n);
}

inline PosEndo braid_action(const BraidWord& w, int n) {
  PosEndo img;
  for (auto [k, e] : w) {
    if (k < 1 || k >= n) throw Error(ErrorKind::invalid, "braid letter out of range");
    img = img * artin_sigma(k, e, n);
  }
  return img;
}

inline BraidWord relator_braid(const LabelWord& r, int n, int handedness = kSwingHandedness) {
  BraidWord bw;
  for (auto& l : r.letters()) {
    if (l.sym.arity() != 2 || l.sym[0] < 1 || l.sym[1] > n || l.sym[0] >= l.sym[1])
      throw Error(ErrorKind::invalid, "symbol out of range " + symbol_token(l.sym));
    auto a = swing_braid(l.sym[0], l.sym[1], handedness);
    if (l.exp > 0)
      bw.insert(bw.end(), a.begin(), a.end());
    else
      for (auto it = a.rbegin(); it != a.rend(); ++it) bw.push_back({it->first, -it->second});
  }
  return bw;
}

inline bool artin_oracle_check(const LabelWord& r, int n, int handedness = kSwingHandedness) {
  return braid_action(relator_braid(r, n, handedness), n).is_identity();
}

// Returns the handedness (+1 or -1) under which every target relator at n=4 passes.
inline int calibrate_handedness() {
  auto t = modified_artin_presentation(4);
  for (int h : {+1, -1}) {
    bool all = true;
    for (auto& r : t.relators) all = all && artin_oracle_check(r.word, 4, h);
    if (all) return h;
  }
  throw Error(ErrorKind::mismatch, "no handedness passes the n=4 target");
}

}  // namespace bmono
