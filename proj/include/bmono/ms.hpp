#pragma once

#include "error.hpp"
#include "exactgeom.hpp"
#include "monodromy.hpp"
#include "wiring.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace bmono {

// Five lines a x + b y = c; translating line p means c_p -> c_p + t_p.
struct BaseArrangement {
  std::vector<RationalLine> lines;
};

// y = i x + i^2, i = 1..5: tangents to a parabola, so no three are concurrent.
// Base labels only carry the file order; line p is labelled (p,p+1).
inline BaseArrangement default_base() {
  BaseArrangement b;
  for (int i = 1; i <= 5; ++i)
    b.lines.push_back(RationalLine::slope_intercept(Rational(i), Rational(i * i), LineLabel{i, i + 1}));
  return b;
}

inline BaseArrangement read_base(std::istream& in) {
  auto arr = read_arrangement(in);
  if (arr.lines.size() != 5) throw ParseError("base arrangement needs 5 lines, got " + std::to_string(arr.lines.size()));
  return BaseArrangement{arr.lines};
}

inline void check_generic(const BaseArrangement& b) {
  auto& L = b.lines;
  if (L.size() != 5) throw Error(ErrorKind::invalid, "base arrangement needs 5 lines");
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      if (L[i].a * L[j].b - L[i].b * L[j].a == 0) throw Error(ErrorKind::invalid, "degenerate base: parallel lines");
      for (std::size_t k = j + 1; k < 5; ++k) {
        auto p = intersect(L[i], L[j]);
        if (L[k].contains(*p)) throw Error(ErrorKind::invalid, "degenerate base: three concurrent lines");
      }
    }
}

// sum coeff[p] t_p + constant = 0
struct DiscriminantalHyperplane {
  LineLabel L;
  std::array<Rational, 5> coeff;
  Rational constant;

  Rational eval(const std::array<Rational, 5>& t) const {
    Rational s = constant;
    for (int p = 0; p < 5; ++p) s += coeff[p] * t[p];
    return s;
  }
};

inline Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Rows (a_p, b_p, c_p + t_p); the determinant is linear in t with the
// cofactors of the last column as coefficients.
inline std::vector<DiscriminantalHyperplane> discriminantal_hyperplanes(const BaseArrangement& base) {
  check_generic(base);
  std::vector<DiscriminantalHyperplane> out;
  for (int p = 1; p <= 5; ++p)
    for (int q = p + 1; q <= 5; ++q)
      for (int r = q + 1; r <= 5; ++r) {
        std::array<int, 3> rows{p, q, r};
        DiscriminantalHyperplane h;
        h.L = LineLabel{p, q, r};
        std::array<std::array<Rational, 3>, 3> m;
        for (int k = 0; k < 3; ++k) {
          auto& ln = base.lines[rows[k] - 1];
          m[k] = {ln.a, ln.b, ln.c};
        }
        h.constant = det3(m);
        for (int k = 0; k < 3; ++k) {
          int u = (k + 1) % 3, v = (k + 2) % 3;
          if (u > v) std::swap(u, v);
          Rational minor = m[u][0] * m[v][1] - m[u][1] * m[v][0];
          h.coeff[rows[k] - 1] = (k % 2 == 0 ? minor : -minor);
        }
        out.push_back(h);
      }
  return out;
}

// t = base + s d1 + u d2, plotted as (x, y) = (s, u)
struct SectionPlane {
  std::array<Rational, 5> base, d1, d2;
};

inline LineArrangement section_lines(const std::vector<DiscriminantalHyperplane>& hyps, const SectionPlane& pl) {
  LineArrangement arr;
  arr.n = 5;
  for (auto& h : hyps) {
    Rational a = 0, b = 0;
    for (int p = 0; p < 5; ++p) {
      a += h.coeff[p] * pl.d1[p];
      b += h.coeff[p] * pl.d2[p];
    }
    if (a == 0 && b == 0) throw Error(ErrorKind::invalid, "non-generic section at " + to_string(h.L));
    arr.lines.emplace_back(a, b, -h.eval(pl.base), h.L);
  }
  arr.validate();
  return arr;
}

inline std::vector<LineLabel> triple_labels() {
  std::vector<LineLabel> v;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int k = j + 1; k <= 5; ++k) v.push_back(LineLabel{i, j, k});
  return v;
}

struct MsPropertyReport {
  bool p1 = false, p2 = false, p3 = false, scan = false;
  std::size_t doubles = 0, quadruples = 0;
  std::vector<std::string> diagnostics;
  bool ok() const { return p1 && p2 && p3 && scan; }
};

// (1) boundary order lexicographic, (2) only double points and the five
// quadruple points P_K, (3) x(P_K) decreasing in lexicographic order of K.
inline MsPropertyReport verify_ms_properties(const LineArrangement& arr) {
  MsPropertyReport rep;
  auto scan = validate_scan_position(arr);
  rep.scan = scan.ok;
  for (auto& d : scan.diagnostics) rep.diagnostics.push_back(d);
  if (!rep.scan) return rep;
  std::vector<const RationalLine*> ls;
  for (auto& l : arr.lines) ls.push_back(&l);
  std::sort(ls.begin(), ls.end(), [](auto* u, auto* v) { return u->label < v->label; });
  rep.p1 = true;
  for (std::size_t k = 0; k + 1 < ls.size(); ++k)
    if (!(ls[k]->slope() > ls[k + 1]->slope())) {
      rep.p1 = false;
      rep.diagnostics.push_back("1: slope order at " + to_string(ls[k]->label) + " " + to_string(ls[k + 1]->label));
    }
  rep.p2 = true;
  std::map<std::array<int, 4>, Rational> quad_x;
  for (auto& sp : singular_points(arr)) {
    if (sp.multiplicity() == 2) {
      ++rep.doubles;
      continue;
    }
    std::set<int> idx;
    for (auto& l : sp.incident) idx.insert(l.idx.begin(), l.idx.end());
    if (sp.multiplicity() != 4 || idx.size() != 4) {
      rep.p2 = false;
      rep.diagnostics.push_back("2: point of multiplicity " + std::to_string(sp.multiplicity()) + " " + point_labels(sp));
      continue;
    }
    ++rep.quadruples;
    std::array<int, 4> K;
    std::copy(idx.begin(), idx.end(), K.begin());
    quad_x[K] = sp.point.first;
  }
  if (rep.quadruples != 5 || rep.doubles != 15) {
    rep.p2 = false;
    rep.diagnostics.push_back("2: " + std::to_string(rep.quadruples) + " quadruple and " + std::to_string(rep.doubles) +
                              " double points");
  }
  rep.p3 = quad_x.size() == 5;
  for (auto it = quad_x.begin(); rep.p3 && std::next(it) != quad_x.end(); ++it)
    if (!(it->second > std::next(it)->second)) {
      rep.p3 = false;
      rep.diagnostics.push_back("3: quadruple points out of order");
    }
  return rep;
}

namespace detail {

struct MsFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  std::vector<std::array<double, 5>> coeff;
  std::vector<double> constant;
  double margin = 1e-2;

  int inputs() const { return 15; }
  int values() const { return 9 + 4 + 2; }

  // line k: A x + B y + C = 0
  void lines(const Eigen::VectorXd& v, std::vector<std::array<double, 3>>& L) const {
    L.resize(coeff.size());
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      double A = 0, B = 0, C = constant[k];
      for (int p = 0; p < 5; ++p) {
        C += coeff[k][p] * v[p];
        A += coeff[k][p] * v[5 + p];
        B += coeff[k][p] * v[10 + p];
      }
      L[k] = {A, B, C};
    }
  }
  int operator()(const Eigen::VectorXd& v, Eigen::VectorXd& f) const {
    std::vector<std::array<double, 3>> L;
    lines(v, L);
    int r = 0;
    for (std::size_t k = 0; k + 1 < L.size(); ++k) {
      double s0 = -L[k][0] / L[k][1], s1 = -L[k + 1][0] / L[k + 1][1];
      f[r++] = std::max(0.0, margin - (s0 - s1));
    }
    auto X = [&](int p, int q) {
      auto& a = L[p];
      auto& b = L[q];
      return (a[1] * b[2] - b[1] * a[2]) / (a[0] * b[1] - b[0] * a[1]);
    };
    // P_K from two of its lines; lex indices 0:123 1:124 2:125 3:134 4:135 5:145 6:234 7:235 8:245 9:345
    double x1234 = X(0, 1), x1235 = X(0, 2), x1245 = X(1, 2), x1345 = X(3, 4), x2345 = X(6, 7);
    double xs[5] = {x1234, x1235, x1245, x1345, x2345};
    for (int k = 0; k < 4; ++k) f[r++] = std::max(0.0, margin - (xs[k] - xs[k + 1]));
    // keep the parameter scale bounded
    double n2 = v.squaredNorm();
    f[r++] = std::max(0.0, n2 - 1e4) * 1e-3;
    f[r++] = std::max(0.0, 1.0 - n2);
    for (int k = 0; k < f.size(); ++k)
      if (!std::isfinite(f[k])) f[k] = 1e3;
    return 0;
  }
};

}  // namespace detail

struct MsSearchResult {
  SectionPlane plane;
  LineArrangement arrangement;
  MsPropertyReport report;
  int candidates = 0;
};

// Deterministic seeded search: random starts in double precision pushed
// towards properties (1) and (3), rounded to dyadic rationals, verified exactly.
inline MsSearchResult search_52_lex_section(const BaseArrangement& base, unsigned long long seed = 1, int budget = 200) {
  auto hyps = discriminantal_hyperplanes(base);
  detail::MsFunctor fn;
  for (auto& h : hyps) {
    std::array<double, 5> c;
    for (int p = 0; p < 5; ++p) c[p] = to_double(h.coeff[p]);
    fn.coeff.push_back(c);
    fn.constant.push_back(to_double(h.constant));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MsSearchResult best;
  std::string best_diag = "no candidate";
  for (int it = 0; it < budget; ++it) {
    Eigen::VectorXd v(15);
    for (int k = 0; k < 15; ++k) v[k] = gauss(rng) * 3.0;
    for (double margin : {1e-1, 1e-2}) {
      fn.margin = margin;
      Eigen::NumericalDiff<detail::MsFunctor> nd(fn);
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::MsFunctor>> lm(nd);
      lm.parameters.maxfev = 2000;
      lm.minimize(v);
    }
    bool finite = true;
    for (int k = 0; k < 15; ++k) finite = finite && std::isfinite(v[k]);
    if (!finite) continue;
    SectionPlane pl;
    for (int p = 0; p < 5; ++p) {
      pl.base[p] = from_double(v[p], 24);
      pl.d1[p] = from_double(v[5 + p], 24);
      pl.d2[p] = from_double(v[10 + p], 24);
    }
    try {
      auto arr = section_lines(hyps, pl);
      auto rep = verify_ms_properties(arr);
      if (rep.ok()) return {pl, arr, rep, it + 1};
      if (!rep.diagnostics.empty()) best_diag = rep.diagnostics.front();
    } catch (const Error& e) {
      best_diag = e.what();
    }
  }
  throw SearchExhausted("no (5,2)-lexicographic section within budget " + std::to_string(budget) + "; last: " + best_diag);
}

// ---- relation families ----

enum class MsFamily { R1, R2, R3, R4, unknown };

inline const char* ms_family_name(MsFamily f) {
  switch (f) {
    case MsFamily::R1: return "R-I";
    case MsFamily::R2: return "R-II";
    case MsFamily::R3: return "R-III";
    case MsFamily::R4: return "R-IV";
    default: return "unknown";
  }
}

// {a,b} and {c,d} cross when they interleave; a shared endpoint does not cross
inline bool pairs_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

// Coordinate pairs {1,2}, {1,3}, {2,3} of the two triples.
inline int crossing_pairs(const LineLabel& I, const LineLabel& J) {
  int n = 0;
  for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) n += pairs_cross(I[p], I[q], J[p], J[q]);
  return n;
}

inline LabelWord ms_r4_shape(const std::array<int, 4>& K, int which) {
  auto T = [&](int a, int b, int c) { return LabelWord(LineLabel{K[a], K[b], K[c]}); };
  auto A = T(0, 1, 2), B = T(0, 1, 3), C = T(0, 2, 3), D = T(1, 2, 3);
  if (which == 0) return commutator(A, B * C * D);
  if (which == 1) return commutator(A * B, C * D);
  return commutator(A * B * C, D);
}

// How crossings are counted when classifying [X, c g c^-1].
// complement: the 2-subsets [5]\X and [5]\Y interleave, counted over every
// letter Y of c g. coordinate: the coordinate pairs of X and g, as crossing_pairs.
enum class CrossingRule { complement, coordinate };

inline CrossingRule parse_crossing_rule(const std::string& s) {
  if (s == "complement") return CrossingRule::complement;
  if (s == "coordinate") return CrossingRule::coordinate;
  throw Error(ErrorKind::invalid, "unknown crossing rule " + s);
}

inline std::pair<int, int> complement_pair(const LineLabel& I, int n = 5) {
  std::vector<int> rest;
  for (int k = 1; k <= n; ++k)
    if (std::find(I.idx.begin(), I.idx.end(), k) == I.idx.end()) rest.push_back(k);
  if (rest.size() != 2) throw Error(ErrorKind::invalid, "complement is not a pair: " + to_string(I));
  return {rest[0], rest[1]};
}

inline bool complements_cross(const LineLabel& I, const LineLabel& J) {
  auto [a, b] = complement_pair(I);
  auto [c, d] = complement_pair(J);
  return pairs_cross(a, b, c, d);
}

struct MsClassification {
  MsFamily family = MsFamily::unknown;
  std::size_t conjugator_length = 0;
  std::vector<LineLabel> letters;  // outer, then the conjugated word's letters up to the innermost
};

// Reads r as [X, c g c^-1] with X and g single generators and c positive of
// length 0..2, then checks the crossing count (see CrossingRule) against the
// conjugator length. Otherwise tries the three R-IV words of a 4-subset.
inline MsClassification classify_relation_ms(const LabelWord& r0, CrossingRule rule = CrossingRule::complement) {
  MsClassification out;
  auto r = r0.cyclically_reduced();
  if (r.empty()) return out;
  for (auto& l : r.letters())
    if (l.sym.arity() != 3) return out;

  std::set<int> idx;
  for (auto& l : r.letters()) idx.insert(l.sym.idx.begin(), l.sym.idx.end());
  if (idx.size() == 4) {
    std::array<int, 4> K;
    std::copy(idx.begin(), idx.end(), K.begin());
    auto key = r.canonical();
    for (int w = 0; w < 3; ++w)
      if (ms_r4_shape(K, w).canonical() == key) {
        out.family = MsFamily::R4;
        for (int k : K) out.letters.push_back(LineLabel{std::vector<int>{k}});
        return out;
      }
  }

  const std::size_t len = r.size();
  if (len < 4 || len % 2) return out;
  const std::size_t ylen = (len - 2) / 2;
  for (const LabelWord& base : {r, r.inverse()}) {
    auto ls = base.letters();
    for (std::size_t rot = 0; rot < len; ++rot) {
      std::rotate(ls.begin(), ls.begin() + 1, ls.end());
      if (ls[0].exp != 1) continue;
      LabelWord w(ls);
      if (w.size() != len) continue;
      auto x = w.slice(0, 1);
      auto y = w.slice(1, 1 + ylen);
      if (!(w == x * y * x.inverse() * y.inverse())) continue;
      if (!y.is_conjugate_of_generator()) continue;
      std::size_t c = ylen / 2;
      bool positive = true;
      for (std::size_t k = 0; k < c; ++k) positive = positive && y[k].exp == 1;
      if (!positive || c > 2) continue;
      const auto& X = x[0].sym;
      const auto& g = y[c].sym;
      int crossings = 0;
      if (rule == CrossingRule::coordinate)
        crossings = crossing_pairs(X, g);
      else
        for (std::size_t k = 0; k <= c; ++k) crossings += complements_cross(X, y[k].sym);
      if (static_cast<std::size_t>(crossings) != c) continue;
      out.family = c == 0 ? MsFamily::R1 : c == 1 ? MsFamily::R2 : MsFamily::R3;
      out.conjugator_length = c;
      out.letters.push_back(X);
      for (std::size_t k = 0; k <= c; ++k) out.letters.push_back(y[k].sym);
      return out;
    }
  }
  return out;
}

struct Ms52Result {
  MsSearchResult search;
  WiringDiagram wiring;
  Presentation presentation;
  std::vector<MsClassification> classes;
  std::map<MsFamily, std::size_t> counts;
  std::size_t unknown_coordinate = 0;  // unknowns under CrossingRule::coordinate
};

inline Presentation ms52_presentation(const LineArrangement& arr, WiringDiagram* wd_out = nullptr) {
  auto wd = wiring_from_arrangement(arr);
  auto p = presentation_of(wd, Orientation::cw);
  if (wd_out) *wd_out = std::move(wd);
  return p;
}

inline Ms52Result run_ms52(const BaseArrangement& base, unsigned long long seed = 1, int budget = 200) {
  Ms52Result res;
  res.search = search_52_lex_section(base, seed, budget);
  res.presentation = ms52_presentation(res.search.arrangement, &res.wiring);
  for (auto& r : res.presentation.relators) {
    res.classes.push_back(classify_relation_ms(r));
    res.counts[res.classes.back().family]++;
    res.unknown_coordinate += classify_relation_ms(r, CrossingRule::coordinate).family == MsFamily::unknown;
  }
  return res;
}

}  // namespace bmono
