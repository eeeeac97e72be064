#pragma once

#include "error.hpp"
#include "exactgeom.hpp"
#include "wiring.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace bmono {

// A real 2-section of Br(n): the restrictions f_i = u_i x + v_i y + w_i of
// the coordinates; l_{i,j} is the locus f_i = f_j.
struct Section {
  std::vector<std::array<Rational, 3>> f;  // f[i-1] = (u_i, v_i, w_i)
  int n() const { return static_cast<int>(f.size()); }
};

inline RationalLine section_line(const Section& s, int i, int j) {
  auto& p = s.f[i - 1];
  auto& q = s.f[j - 1];
  return RationalLine(p[0] - q[0], p[1] - q[1], q[2] - p[2], LineLabel{i, j});
}

inline LineArrangement section_arrangement(const Section& s) {
  LineArrangement arr;
  arr.n = s.n();
  for (int i = 1; i <= s.n(); ++i)
    for (int j = i + 1; j <= s.n(); ++j) arr.lines.push_back(section_line(s, i, j));
  return arr;
}

struct LexParams {
  int n = 0;
  Section section;
  std::map<LineLabel, Rational> slopes;  // includes (1,2)
  std::map<int, Rational> anchors;       // y(P_{1,2,i}), i >= 3
  Rational slope_12;
  std::string construction;              // "moment" or "search"
  bool agrees_with_script = false;       // geometric and predicted pair lists coincide up to commutation
  int restarts_used = 0;
};

// ---- triple points and the conditions on them ----

inline Point triple_point(const LineArrangement& arr, int i, int j, int k) {
  auto p = intersect(arr.by_label(LineLabel{i, j}), arr.by_label(LineLabel{i, k}));
  if (!p) throw Error(ErrorKind::invalid, "parallel lines at a triple");
  return *p;
}

struct InequalityReport {
  std::map<std::string, std::size_t> checked;  // per family
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Families (I)-(V): each asks x(P_lhs) < x(P_rhs) for lex-consecutive-type
// triples. Instances whose index triple degenerates are vacuous.
inline InequalityReport check_inequality_families(const LineArrangement& arr) {
  const int n = arr.n;
  InequalityReport rep;
  std::map<std::array<int, 3>, Rational> xs;
  auto X = [&](int i, int j, int k) -> const Rational& {
    std::array<int, 3> key{i, j, k};
    auto it = xs.find(key);
    if (it == xs.end()) it = xs.emplace(key, triple_point(arr, i, j, k).first).first;
    return it->second;
  };
  auto valid = [&](int i, int j, int k) { return 1 <= i && i < j && j < k && k <= n; };
  auto need = [&](const char* fam, std::array<int, 3> lo, std::array<int, 3> hi) {
    if (!valid(lo[0], lo[1], lo[2]) || !valid(hi[0], hi[1], hi[2])) return;
    rep.checked[fam]++;
    if (!(X(lo[0], lo[1], lo[2]) < X(hi[0], hi[1], hi[2]))) {
      auto t = [](std::array<int, 3> a) {
        return "P(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + ")";
      };
      rep.violations.push_back(std::string(fam) + ": x(" + t(lo) + ") < x(" + t(hi) + ") fails");
    }
  };
  for (const char* f : {"I", "II", "III", "IV", "V"}) rep.checked[f] = 0;
  for (int i = 3; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) need("I", {1, i, j}, {1, i, j - 1});
  for (int i = 3; i <= n - 2; ++i) need("II", {1, i + 1, i + 2}, {1, i, n});
  for (int h = 1; h <= n - 3; ++h) need("III", {h + 1, h + 2, h + 3}, {h, n - 1, n});
  for (int h = 2; h <= n; ++h)
    for (int i = 1; h + i <= n; ++i)
      for (int j = i + 1; h + j <= n; ++j) need("IV", {h, h + i, h + j}, {h, h + i, h + j - 1});
  for (int h = 2; h <= n - 2; ++h)
    for (int i = 1; i <= n - h - 1; ++i) need("V", {h, h + i + 1, h + i + 2}, {h, h + i, n});
  return rep;
}

struct PropertyReport {
  bool p1 = false, p2 = false, p3 = false;
  std::vector<std::string> diagnostics;
  bool ok() const { return p1 && p2 && p3; }
};

// (P1) boundary order, (P2) only doubles and labelled triples, (P3) triples by x.
inline PropertyReport verify_properties(const LineArrangement& arr) {
  PropertyReport rep;
  for (auto& l : arr.lines)
    if (l.label.arity() != 2) {
      rep.diagnostics.push_back("label arity");
      return rep;
    }
  std::vector<const RationalLine*> ls;
  for (auto& l : arr.lines) ls.push_back(&l);
  std::sort(ls.begin(), ls.end(), [](auto* u, auto* v) { return u->label < v->label; });
  rep.p1 = true;
  for (std::size_t k = 0; k + 1 < ls.size(); ++k)
    if (ls[k]->vertical() || ls[k + 1]->vertical() || !(ls[k]->slope() > ls[k + 1]->slope())) {
      rep.p1 = false;
      rep.diagnostics.push_back("P1: slope order at " + to_string(ls[k]->label) + " " + to_string(ls[k + 1]->label));
    }

  auto pts = singular_points(arr);
  rep.p2 = true;
  std::map<std::array<int, 3>, Rational> triple_x;
  for (auto& sp : pts) {
    if (sp.multiplicity() == 2) {
      if (sp.incident[0].shares_index(sp.incident[1])) {
        rep.p2 = false;
        rep.diagnostics.push_back("P2: double point of index-sharing lines " + point_labels(sp));
      }
      continue;
    }
    std::set<int> idx;
    for (auto& l : sp.incident) idx.insert(l.idx.begin(), l.idx.end());
    if (sp.multiplicity() != 3 || idx.size() != 3) {
      rep.p2 = false;
      rep.diagnostics.push_back("P2: point of multiplicity " + std::to_string(sp.multiplicity()) + " " +
                                point_labels(sp));
      continue;
    }
    std::array<int, 3> t;
    std::copy(idx.begin(), idx.end(), t.begin());
    triple_x[t] = sp.point.first;
  }
  const int n = arr.n;
  std::size_t expected = static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
  if (triple_x.size() != expected) {
    rep.p2 = false;
    rep.diagnostics.push_back("P2: " + std::to_string(triple_x.size()) + " triple points, expected " +
                              std::to_string(expected));
  }
  rep.p3 = true;
  for (auto it = triple_x.begin(); it != triple_x.end() && std::next(it) != triple_x.end(); ++it) {
    auto nx = std::next(it);
    if (!(it->second > nx->second)) {
      rep.p3 = false;
      rep.diagnostics.push_back("P3: x order between consecutive triples");
    }
  }
  return rep;
}

// ---- the script of order transitions ----

struct TransitionStep {
  enum Kind { exchange, flip } kind;
  std::vector<LineLabel> labels;  // exchange: the two swapped labels, top first; flip: the three
  LefschetzPair pair;
};

using TransitionScript = std::vector<TransitionStep>;

// Triples in lexicographic order. Before flipping the triple (i,j,k), each
// line lying between its three lines leaves the interval: upward if it has not
// met and shares no index with any triple line above it, otherwise downward.
// The bottom lines move up first, then the top lines move down. After the last
// triple the remaining pairs are exchanged in bubble order.
inline TransitionScript predicted_transitions(int n) {
  if (n < 3) throw Error(ErrorKind::invalid, "n must be at least 3");
  std::vector<LineLabel> order;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) order.push_back(LineLabel{i, j});
  std::set<std::pair<LineLabel, LineLabel>> met;
  auto key = [](const LineLabel& a, const LineLabel& b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
  TransitionScript script;
  auto pos = [&](const LineLabel& l) { return static_cast<int>(std::find(order.begin(), order.end(), l) - order.begin()); };
  auto swap_at = [&](int p) {
    auto &a = order[p], &b = order[p + 1];
    if (a.shares_index(b) || met.count(key(a, b)))
      throw Error(ErrorKind::invalid, "script exchanges " + to_string(a) + " and " + to_string(b));
    met.insert(key(a, b));
    script.push_back({TransitionStep::exchange, {a, b}, {p + 1, p + 2}});
    std::swap(a, b);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        LineLabel X{i, j}, Y{i, k}, Z{j, k};
        std::set<LineLabel> tri{X, Y, Z};
        int lo = std::min({pos(X), pos(Y), pos(Z)}), hi = std::max({pos(X), pos(Y), pos(Z)});
        std::map<LineLabel, char> kind;
        for (int p = lo + 1; p < hi; ++p) {
          const auto& L = order[p];
          if (tri.count(L)) continue;
          bool up = true, down = true;
          for (auto& t : tri) {
            bool free = !L.shares_index(t) && !met.count(key(L, t));
            if (pos(t) < p)
              up = up && free;
            else
              down = down && free;
          }
          if (!up && !down) throw Error(ErrorKind::invalid, "script stuck at " + to_string(L));
          kind[L] = down ? 'D' : 'U';
        }
        auto k_of = [&](int p) { auto it = kind.find(order[p]); return it == kind.end() ? ' ' : it->second; };
        for (bool changed = true; changed;) {
          changed = false;
          for (auto& t : {Z, Y}) {
            int p = pos(t);
            while (p > 0 && k_of(p - 1) == 'D') {
              swap_at(p - 1);
              --p;
              changed = true;
            }
          }
          if (changed) continue;
          for (auto& t : {X, Y}) {
            int p = pos(t);
            while (p + 1 < static_cast<int>(order.size()) && k_of(p + 1) == 'U') {
              swap_at(p);
              ++p;
              changed = true;
            }
          }
        }
        lo = std::min({pos(X), pos(Y), pos(Z)});
        hi = std::max({pos(X), pos(Y), pos(Z)});
        if (hi - lo != 2) throw Error(ErrorKind::invalid, "triple lines not adjacent");
        script.push_back({TransitionStep::flip, {order[lo], order[lo + 1], order[lo + 2]}, {lo + 1, hi + 1}});
        std::reverse(order.begin() + lo, order.begin() + hi + 1);
        met.insert(key(X, Y));
        met.insert(key(X, Z));
        met.insert(key(Y, Z));
      }
  // remaining exchanges until the order is reversed
  for (bool done = false; !done;) {
    done = true;
    for (std::size_t p = 0; p + 1 < order.size(); ++p)
      if (order[p] < order[p + 1]) {
        swap_at(static_cast<int>(p));
        done = false;
        break;
      }
  }
  return script;
}

inline std::vector<LefschetzPair> script_pairs(const TransitionScript& s) {
  std::vector<LefschetzPair> out;
  for (auto& st : s) out.push_back(st.pair);
  return out;
}

inline std::vector<LineLabel> lex_labels(int n) {
  std::vector<LineLabel> v;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) v.push_back(LineLabel{i, j});
  return v;
}

// ---- construction ----

// f_i = t_i^2 x + t_i y + t_i^3: l_{i,j} has slope -(t_i+t_j) and the triple
// P_{i,j,k} sits at x = -(t_i+t_j+t_k).
inline Section moment_section(int n) {
  Section s;
  for (int i = 1; i <= n; ++i) {
    Rational t = -Rational(Integer(1) << (2 * (n - i))) + Rational(i * i, 91);
    s.f.push_back({t * t, t, t * t * t});
  }
  return s;
}

struct LexCheck {
  bool valid = false;  // scan position, P1-P3, families (I)-(V)
  bool agrees = false;
  std::vector<std::string> diagnostics;
};

inline LexCheck check_section(const Section& s, const std::vector<LefschetzPair>& predicted_nf) {
  LexCheck c;
  auto arr = section_arrangement(s);
  try {
    arr.validate();
  } catch (const Error& e) {
    c.diagnostics.push_back(e.what());
    return c;
  }
  auto scan = validate_scan_position(arr);
  if (!scan) {
    c.diagnostics = scan.diagnostics;
    return c;
  }
  auto props = verify_properties(arr);
  auto fam = check_inequality_families(arr);
  c.valid = props.ok() && fam.ok();
  for (auto& d : props.diagnostics) c.diagnostics.push_back(d);
  for (auto& d : fam.violations) c.diagnostics.push_back(d);
  if (!c.valid) return c;
  auto wd = wiring_from_arrangement(arr);
  if (wd.initial_order != lex_labels(s.n())) {
    c.valid = false;
    c.diagnostics.push_back("far-right order is not lexicographic");
    return c;
  }
  c.agrees = trace_normal_form(lefschetz_pairs(wd)) == predicted_nf;
  if (!c.agrees) c.diagnostics.push_back("pair list differs from the predicted script");
  return c;
}

namespace detail {

// For each line, consecutive groups in its predicted crossing sequence give
// constraints x(l & y) > x(l & z).
struct ScriptConstraints {
  int n = 0;
  std::vector<std::array<int, 2>> labels;                // line index -> (i,j)
  std::vector<std::array<int, 3>> order;                 // (l, y, z)
};

inline ScriptConstraints script_constraints(int n, const TransitionScript& script) {
  ScriptConstraints sc;
  sc.n = n;
  auto labs = lex_labels(n);
  std::map<LineLabel, int> id;
  for (auto& l : labs) {
    id[l] = static_cast<int>(sc.labels.size());
    sc.labels.push_back({l[0], l[1]});
  }
  auto wd = wiring_from_pairs(static_cast<int>(labs.size()), script_pairs(script), labs);
  std::vector<std::vector<std::vector<int>>> seq(labs.size());
  for (auto& e : wd.events)
    for (auto& x : e.labels) {
      std::vector<int> g;
      for (auto& y : e.labels)
        if (!(y == x)) g.push_back(id[y]);
      seq[id[x]].push_back(g);
    }
  for (std::size_t l = 0; l < seq.size(); ++l)
    for (std::size_t k = 0; k + 1 < seq[l].size(); ++k)
      sc.order.push_back({static_cast<int>(l), seq[l][k][0], seq[l][k + 1][0]});
  return sc;
}

struct HingeFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const ScriptConstraints* sc;
  double margin;

  int inputs() const { return 3 * (sc->n - 1); }
  int values() const { return static_cast<int>(sc->labels.size() - 1 + sc->order.size()); }

  // x = (f_2, .., f_n) flattened, f_1 = 0
  void lines(const Eigen::VectorXd& x, std::vector<std::array<double, 3>>& L) const {
    auto F = [&](int i, int c) { return i == 1 ? 0.0 : x[3 * (i - 2) + c]; };
    L.resize(sc->labels.size());
    for (std::size_t k = 0; k < sc->labels.size(); ++k) {
      int i = sc->labels[k][0], j = sc->labels[k][1];
      L[k] = {F(i, 0) - F(j, 0), F(i, 1) - F(j, 1), F(i, 2) - F(j, 2)};  // a x + b y + c = 0
    }
  }
  static double cross_x(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    return (p[1] * q[2] - q[1] * p[2]) / (p[0] * q[1] - q[0] * p[1]);
  }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    std::vector<std::array<double, 3>> L;
    lines(x, L);
    int r = 0;
    for (std::size_t k = 0; k + 1 < L.size(); ++k) {
      double s0 = -L[k][0] / L[k][1], s1 = -L[k + 1][0] / L[k + 1][1];
      fvec[r++] = 30.0 * std::max(0.0, margin - (s0 - s1));
    }
    for (auto& c : sc->order) {
      double d = cross_x(L[c[0]], L[c[1]]) - cross_x(L[c[0]], L[c[2]]);
      fvec[r++] = std::max(0.0, margin - d);
    }
    for (int k = 0; k < fvec.size(); ++k)
      if (!std::isfinite(fvec[k])) fvec[k] = 1e3;
    return 0;
  }
};

}  // namespace detail

struct LexSearchOptions {
  unsigned long long seed = 1;
  int restarts = 48;
};

inline void fill_params(LexParams& p) {
  auto arr = section_arrangement(p.section);
  for (auto& l : arr.lines) p.slopes[l.label] = l.slope();
  p.slope_12 = p.slopes.at(LineLabel{1, 2});
  for (int i = 3; i <= p.n; ++i) p.anchors[i] = triple_point(arr, 1, 2, i).second;
}

// Deterministic: the moment construction when it already follows the
// predicted script, otherwise a seeded least-squares search; if the search
// runs out, the moment construction is returned with agrees_with_script=false.
inline LexParams lex_params(int n, const LexSearchOptions& opt = {}) {
  if (n < 3) throw Error(ErrorKind::invalid, "n must be at least 3");
  auto predicted = trace_normal_form(script_pairs(predicted_transitions(n)));
  LexParams out;
  out.n = n;
  out.section = moment_section(n);
  out.construction = "moment";
  auto base = check_section(out.section, predicted);
  if (!base.valid) throw SearchExhausted("moment construction fails: " + base.diagnostics.front());
  out.agrees_with_script = base.agrees;
  if (!base.agrees) {
    auto sc = detail::script_constraints(n, predicted_transitions(n));
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.1, 0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rs = 0; rs < opt.restarts; ++rs) {
      Eigen::VectorXd x(3 * (n - 1));
      double eps = unif(rng), scale = 1.0;
      std::array<double, 3> acc{0, 0, 0};
      for (int i = 2; i <= n; ++i) {
        for (int c = 0; c < 3; ++c) {
          acc[c] += scale * gauss(rng);
          x[3 * (i - 2) + c] = acc[c];
        }
        scale *= eps;
      }
      for (double margin : {1e-2, 1e-3}) {
        detail::HingeFunctor fn{&sc, margin};
        Eigen::NumericalDiff<detail::HingeFunctor> nd(fn);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::HingeFunctor>> lm(nd);
        lm.parameters.maxfev = 3000;
        lm.minimize(x);
      }
      Section cand;
      cand.f.push_back({Rational(0), Rational(0), Rational(0)});
      bool finite = true;
      for (int i = 2; i <= n && finite; ++i) {
        std::array<Rational, 3> fi;
        for (int c = 0; c < 3; ++c) {
          if (!std::isfinite(x[3 * (i - 2) + c])) finite = false;
          else fi[c] = from_double(x[3 * (i - 2) + c], 40);
        }
        cand.f.push_back(fi);
      }
      out.restarts_used = rs + 1;
      if (!finite) continue;
      auto chk = check_section(cand, predicted);
      if (chk.valid && chk.agrees) {
        out.section = cand;
        out.construction = "search";
        out.agrees_with_script = true;
        break;
      }
    }
  }
  fill_params(out);
  return out;
}

// Memoized: the search for n >= 5 is the slow part of every pipeline run.
inline const LexParams& lex_params_cached(int n) {
  static std::mutex mu;
  static std::map<int, LexParams> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, lex_params(n)).first;
  return it->second;
}

inline LineArrangement lex_arrangement(int n) {
  auto arr = section_arrangement(lex_params_cached(n).section);
  arr.validate();
  return arr;
}

inline void write_params(std::ostream& os, const LexParams& p) {
  os << "# lexicographic section parameters\n";
  os << "n " << p.n << "\n";
  os << "construction " << p.construction << "\n";
  os << "agrees_with_script " << (p.agrees_with_script ? "yes" : "no") << "\n";
  os << "slope_12 " << to_string(p.slope_12) << "\n";
  for (auto& [l, m] : p.slopes) os << "slope " << to_string(l) << ' ' << to_string(m) << "\n";
  for (auto& [i, y] : p.anchors) os << "anchor " << i << ' ' << to_string(y) << "\n";
  for (int i = 1; i <= p.n; ++i) {
    auto& f = p.section.f[i - 1];
    os << "f " << i << ' ' << to_string(f[0]) << ' ' << to_string(f[1]) << ' ' << to_string(f[2]) << "\n";
  }
}

}  // namespace bmono
