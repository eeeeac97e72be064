#pragma once

#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bmono {

// (i,j) for sections of Br(n), (i,j,k) for MS(5,2)
struct LineLabel {
  std::vector<int> idx;

  LineLabel() = default;
  LineLabel(std::initializer_list<int> il) : idx(il) {}
  explicit LineLabel(std::vector<int> v) : idx(std::move(v)) {}

  std::size_t arity() const { return idx.size(); }
  int operator[](std::size_t k) const { return idx[k]; }
  bool valid() const {
    if (idx.size() < 2) return false;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k)
      if (idx[k] >= idx[k + 1]) return false;
    return idx.front() >= 0;  // 0 only in placeholder labels (0,k)
  }
  bool shares_index(const LineLabel& o) const {
    for (int a : idx)
      for (int b : o.idx)
        if (a == b) return true;
    return false;
  }
  auto operator<=>(const LineLabel&) const = default;
  bool operator==(const LineLabel&) const = default;
};

inline std::string to_string(const LineLabel& l) {
  std::string s = "(";
  for (std::size_t k = 0; k < l.idx.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(l.idx[k]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LineLabel& l) { return os << to_string(l); }

// Accepts "(1,2)" or "(1,2,3)".
inline LineLabel parse_label(std::string_view s) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') throw ParseError("bad label: " + std::string(s));
  std::vector<int> v;
  std::string body(s.substr(1, s.size() - 2));
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int x = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::exception&) {
      throw ParseError("bad label: " + std::string(s));
    }
  }
  LineLabel l(v);
  if (!l.valid() || l.arity() > 3) throw ParseError("bad label: " + std::string(s));
  return l;
}

using Point = std::pair<Rational, Rational>;

// a*x + b*y = c, scaled so that the first nonzero of (a,b) is 1
struct RationalLine {
  Rational a, b, c;
  LineLabel label;

  RationalLine() = default;
  RationalLine(Rational a_, Rational b_, Rational c_, LineLabel lab = {})
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), label(std::move(lab)) {
    if (a == 0 && b == 0) throw Error(ErrorKind::invalid, "degenerate line");
    Rational lead = a != 0 ? a : b;
    a /= lead;
    b /= lead;
    c /= lead;
  }

  // y = m*x + q
  static RationalLine slope_intercept(const Rational& m, const Rational& q, LineLabel lab = {}) {
    return RationalLine(-m, Rational(1), q, std::move(lab));
  }

  bool vertical() const { return b == 0; }
  Rational slope() const { return -a / b; }
  Rational y_at(const Rational& x) const { return (c - a * x) / b; }
  bool contains(const Point& p) const { return a * p.first + b * p.second == c; }
  bool same_locus(const RationalLine& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline std::optional<Point> intersect(const RationalLine& l1, const RationalLine& l2) {
  if (l1.same_locus(l2)) throw Error(ErrorKind::invalid, "coincident");
  Rational det = l1.a * l2.b - l1.b * l2.a;
  if (det == 0) return std::nullopt;
  Rational x = (l1.c * l2.b - l1.b * l2.c) / det;
  Rational y = (l1.a * l2.c - l1.c * l2.a) / det;
  return Point{x, y};
}

struct LineArrangement {
  int n = 0;
  std::vector<RationalLine> lines;

  void validate() const {
    std::set<LineLabel> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (!seen.insert(lines[i].label).second)
        throw Error(ErrorKind::invalid, "duplicate label " + to_string(lines[i].label));
      for (std::size_t j = 0; j < i; ++j)
        if (lines[i].same_locus(lines[j]))
          throw Error(ErrorKind::invalid,
                      "coincident lines " + to_string(lines[j].label) + " " + to_string(lines[i].label));
    }
  }
  const RationalLine& by_label(const LineLabel& l) const {
    for (auto& ln : lines)
      if (ln.label == l) return ln;
    throw Error(ErrorKind::invalid, "no line " + to_string(l));
  }
};

struct SingularPoint {
  Point point;
  std::vector<LineLabel> incident;  // sorted
  std::size_t multiplicity() const { return incident.size(); }
};

inline std::vector<SingularPoint> singular_points(const LineArrangement& arr) {
  std::map<Point, std::set<std::size_t>> acc;
  const auto& L = arr.lines;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j)
      if (auto p = intersect(L[i], L[j])) {
        auto& s = acc[*p];
        s.insert(i);
        s.insert(j);
      }
  std::vector<SingularPoint> out;
  out.reserve(acc.size());
  for (auto& [p, s] : acc) {
    SingularPoint sp{p, {}};
    for (auto k : s) sp.incident.push_back(L[k].label);
    std::sort(sp.incident.begin(), sp.incident.end());
    out.push_back(std::move(sp));
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& u, const SingularPoint& v) {
    if (u.point.first != v.point.first) return u.point.first > v.point.first;
    return u.point.second > v.point.second;
  });
  return out;
}

struct Check {
  bool ok = true;
  std::vector<std::string> diagnostics;
  void fail(std::string msg) {
    ok = false;
    diagnostics.push_back(std::move(msg));
  }
  explicit operator bool() const { return ok; }
};

inline std::string point_labels(const SingularPoint& sp) {
  std::string s;
  for (auto& l : sp.incident) s += to_string(l);
  return s;
}

inline Check validate_scan_position(const LineArrangement& arr) {
  Check c;
  for (auto& l : arr.lines)
    if (l.vertical()) c.fail("vertical line " + to_string(l.label));
  if (!c) return c;
  auto pts = singular_points(arr);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    if (pts[k].point.first == pts[k + 1].point.first)
      c.fail("shared x " + to_string(pts[k].point.first) + ": " + point_labels(pts[k]) + " " +
             point_labels(pts[k + 1]));
  return c;
}

// label a b c, '#' starts a comment
inline LineArrangement read_arrangement(std::istream& in) {
  LineArrangement arr;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string lab, a, b, c, extra;
    if (!(ls >> lab)) continue;
    if (!(ls >> a >> b >> c) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected `label a b c`");
    auto label = parse_label(lab);
    try {
      arr.lines.emplace_back(parse_rational(a), parse_rational(b), parse_rational(c), label);
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    for (int v : label.idx) arr.n = std::max(arr.n, v);
  }
  arr.validate();
  return arr;
}

inline void write_arrangement(std::ostream& os, const LineArrangement& arr) {
  os << "# n=" << arr.n << " lines=" << arr.lines.size() << "\n";
  for (auto& l : arr.lines)
    os << to_string(l.label) << ' ' << to_string(l.a) << ' ' << to_string(l.b) << ' ' << to_string(l.c) << '\n';
}

}  // namespace bmono
