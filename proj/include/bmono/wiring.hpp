#pragma once

#include "error.hpp"
#include "exactgeom.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bmono {

struct LefschetzPair {
  int a = 0, b = 0;
  auto operator<=>(const LefschetzPair&) const = default;
  bool operator==(const LefschetzPair&) const = default;
};

inline std::string to_string(const LefschetzPair& p) {
  return "[" + std::to_string(p.a) + "," + std::to_string(p.b) + "]";
}

struct WiringEvent {
  LefschetzPair pair;
  std::vector<LineLabel> labels;  // positions a..b just right of the event
  Rational x;
};

struct WiringDiagram {
  int l = 0;
  std::vector<LineLabel> initial_order;  // position 1 = top
  std::vector<WiringEvent> events;       // decreasing x

  std::vector<LineLabel> order_after(std::size_t count) const {
    auto order = initial_order;
    for (std::size_t k = 0; k < count && k < events.size(); ++k) {
      auto& p = events[k].pair;
      std::reverse(order.begin() + (p.a - 1), order.begin() + p.b);
    }
    return order;
  }
  std::vector<LineLabel> final_order() const { return order_after(events.size()); }
};

inline WiringDiagram wiring_from_arrangement(const LineArrangement& arr) {
  auto chk = validate_scan_position(arr);
  if (!chk) throw Error(ErrorKind::invalid, "scan position invalid: " + chk.diagnostics.front());
  WiringDiagram wd;
  wd.l = static_cast<int>(arr.lines.size());
  std::vector<const RationalLine*> by_slope;
  for (auto& l : arr.lines) by_slope.push_back(&l);
  std::sort(by_slope.begin(), by_slope.end(),
            [](const RationalLine* u, const RationalLine* v) { return u->slope() > v->slope(); });
  for (auto* l : by_slope) wd.initial_order.push_back(l->label);

  auto order = wd.initial_order;
  for (auto& sp : singular_points(arr)) {
    std::vector<int> pos;
    for (auto& lab : sp.incident)
      pos.push_back(static_cast<int>(std::find(order.begin(), order.end(), lab) - order.begin()));
    std::sort(pos.begin(), pos.end());
    if (pos.back() - pos.front() + 1 != static_cast<int>(pos.size()))
      throw Error(ErrorKind::invalid, "non-contiguous event at " + point_labels(sp));
    WiringEvent ev{{pos.front() + 1, pos.back() + 1}, {}, sp.point.first};
    ev.labels.assign(order.begin() + pos.front(), order.begin() + pos.back() + 1);
    std::reverse(order.begin() + pos.front(), order.begin() + pos.back() + 1);
    wd.events.push_back(std::move(ev));
  }
  return wd;
}

inline std::vector<LefschetzPair> lefschetz_pairs(const WiringDiagram& wd) {
  std::vector<LefschetzPair> out;
  for (auto& e : wd.events) out.push_back(e.pair);
  return out;
}

inline WiringDiagram wiring_from_pairs(int l, const std::vector<LefschetzPair>& pairs,
                                       std::vector<LineLabel> initial_order) {
  if (static_cast<int>(initial_order.size()) != l) throw Error(ErrorKind::invalid, "initial order size != l");
  WiringDiagram wd;
  wd.l = l;
  wd.initial_order = std::move(initial_order);
  auto order = wd.initial_order;
  long long x = static_cast<long long>(pairs.size());
  for (auto& p : pairs) {
    if (p.a < 1 || p.a >= p.b || p.b > l) throw Error(ErrorKind::invalid, "pair out of range " + to_string(p));
    WiringEvent ev{p, {order.begin() + (p.a - 1), order.begin() + p.b}, Rational(x--)};
    std::reverse(order.begin() + (p.a - 1), order.begin() + p.b);
    wd.events.push_back(std::move(ev));
  }
  return wd;
}

// Default labels 1..l as (k, k+1) would collide with real labels; use (0,k).
inline std::vector<LineLabel> placeholder_order(int l) {
  std::vector<LineLabel> v;
  for (int k = 1; k <= l; ++k) v.push_back(LineLabel{std::vector<int>{0, k}});
  return v;
}

// Representative of the commutation class: events whose position intervals are
// disjoint commute, so repeatedly emit the least available pair.
inline std::vector<LefschetzPair> trace_normal_form(const std::vector<LefschetzPair>& pairs) {
  std::vector<LefschetzPair> rem = pairs, out;
  while (!rem.empty()) {
    std::size_t best = rem.size();
    for (std::size_t k = 0; k < rem.size(); ++k) {
      bool blocked = false;
      for (std::size_t q = 0; q < k && !blocked; ++q)
        blocked = !(rem[q].b < rem[k].a || rem[q].a > rem[k].b);
      if (!blocked && (best == rem.size() || rem[k] < rem[best])) best = k;
    }
    out.push_back(rem[best]);
    rem.erase(rem.begin() + best);
  }
  return out;
}

// ---- pair-list text format ----

inline void write_pairs(std::ostream& os, const WiringDiagram& wd, bool with_order = true) {
  os << "l=" << wd.l << "\n";
  if (with_order) {
    os << "order=";
    for (std::size_t k = 0; k < wd.initial_order.size(); ++k) os << (k ? " " : "") << to_string(wd.initial_order[k]);
    os << "\n";
  }
  for (auto& e : wd.events) os << e.pair.a << ' ' << e.pair.b << "\n";
}

inline WiringDiagram read_pairs(std::istream& in) {
  int l = -1;
  std::vector<LineLabel> order;
  std::vector<LefschetzPair> pairs;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto where = " at line " + std::to_string(lineno);
    if (tok.rfind("l=", 0) == 0) {
      try {
        l = std::stoi(tok.substr(2));
      } catch (const std::exception&) {
        throw ParseError("bad l=" + where);
      }
    } else if (tok.rfind("order=", 0) == 0) {
      std::string first = tok.substr(6);
      if (!first.empty()) order.push_back(parse_label(first));
      while (ls >> tok) order.push_back(parse_label(tok));
    } else {
      LefschetzPair p;
      std::string second, extra;
      try {
        p.a = std::stoi(tok);
        if (!(ls >> second) || (ls >> extra)) throw std::invalid_argument("");
        p.b = std::stoi(second);
      } catch (const std::exception&) {
        throw ParseError("expected `a b`" + where);
      }
      pairs.push_back(p);
    }
  }
  if (l < 0) throw ParseError("missing l= header");
  if (order.empty()) order = placeholder_order(l);
  if (static_cast<int>(order.size()) != l) throw ParseError("order= lists " + std::to_string(order.size()) + " labels, l=" + std::to_string(l));
  try {
    return wiring_from_pairs(l, pairs, order);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

// ---- rendering ----

enum class RenderFormat { ascii, svg };

inline RenderFormat parse_render_format(const std::string& s) {
  if (s == "ascii") return RenderFormat::ascii;
  if (s == "svg") return RenderFormat::svg;
  throw Error(ErrorKind::invalid, "unknown render format " + s);
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace detail

// Columns run right to left in scan order: column 0 is the far right fiber.
inline std::string render_ascii(const WiringDiagram& wd) {
  std::ostringstream os;
  os << "# wiring diagram, " << wd.l << " wires, " << wd.events.size() << " events, scan right to left\n";
  if (wd.l == 0) return os.str();
  std::size_t w = 0;
  for (auto& lab : wd.initial_order) w = std::max(w, to_string(lab).size());
  const int cols = static_cast<int>(wd.events.size());
  // rows 2*(p-1) hold wires, odd rows hold crossings
  std::vector<std::string> grid(2 * wd.l - 1, std::string(4 * cols + 4, ' '));
  for (int p = 0; p < wd.l; ++p) std::fill(grid[2 * p].begin(), grid[2 * p].end(), '-');
  for (int c = 0; c < cols; ++c) {
    auto& pr = wd.events[c].pair;
    int col = 4 * (cols - c) + 1;  // earlier events further right
    for (int r = 2 * (pr.a - 1); r <= 2 * (pr.b - 1); ++r) grid[r][col] = (r % 2 == 0) ? '*' : '|';
  }
  auto fin = wd.final_order();
  for (int p = 0; p < wd.l; ++p) {
    auto left = to_string(fin[p]);
    auto right = to_string(wd.initial_order[p]);
    os << std::string(w - left.size(), ' ') << left << ' ' << grid[2 * p] << ' ' << right << "\n";
    if (p + 1 < wd.l) os << std::string(w + 1, ' ') << grid[2 * p + 1] << "\n";
  }
  for (int c = 0; c < cols; ++c) {
    auto& e = wd.events[c];
    os << "event " << c + 1 << " " << to_string(e.pair) << " x=" << to_string(e.x) << " :";
    for (auto& lab : e.labels) os << ' ' << to_string(lab);
    os << "\n";
  }
  return os.str();
}

inline std::string render_svg(const WiringDiagram& wd) {
  const int dx = 60, dy = 30, margin = 70;
  const int cols = static_cast<int>(wd.events.size());
  const int width = 2 * margin + dx * (cols + 1);
  const int height = 2 * margin / 2 + dy * std::max(wd.l, 1) + 40;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  if (wd.l == 0) {
    os << "</svg>\n";
    return os.str();
  }
  auto xcol = [&](int c) { return width - margin - dx * c; };  // c = 0 far right
  auto ypos = [&](int p) { return margin / 2 + dy * p; };     // p 0-based
  // per wire, polyline vertices
  std::vector<std::vector<std::pair<int, int>>> path(wd.l);
  auto order = wd.initial_order;
  std::vector<int> wire_at(wd.l);
  for (int p = 0; p < wd.l; ++p) {
    wire_at[p] = p;
    path[p].push_back({xcol(0) + dx / 2, ypos(p)});
  }
  for (int c = 0; c < cols; ++c) {
    auto& pr = wd.events[c].pair;
    int xr = xcol(c) - dx / 4, xl = xcol(c + 1) + dx / 4;
    for (int p = pr.a - 1; p < pr.b; ++p) {
      int q = pr.a - 1 + pr.b - 1 - p;
      path[wire_at[p]].push_back({xr, ypos(p)});
      path[wire_at[p]].push_back({xl, ypos(q)});
    }
    std::reverse(wire_at.begin() + (pr.a - 1), wire_at.begin() + pr.b);
  }
  for (int p = 0; p < wd.l; ++p) path[wire_at[p]].push_back({xcol(cols) - dx / 2, ypos(p)});
  for (int w = 0; w < wd.l; ++w) {
    os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < path[w].size(); ++k)
      os << (k ? " " : "") << path[w][k].first << "," << path[w][k].second;
    os << "\"/>\n";
    os << "  <text x=\"" << xcol(0) + dx / 2 + 4 << "\" y=\"" << ypos(w) + 4 << "\" font-size=\"11\">"
       << detail::xml_escape(to_string(wd.initial_order[w])) << "</text>\n";
  }
  for (int c = 0; c < cols; ++c) {
    auto& e = wd.events[c];
    int cx = (xcol(c) + xcol(c + 1)) / 2;
    int cy = (ypos(e.pair.a - 1) + ypos(e.pair.b - 1)) / 2;
    os << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\" fill=\"red\"/>\n";
    std::string lab = to_string(e.pair);
    for (auto& l : e.labels) lab += " " + to_string(l);
    os << "  <text x=\"" << cx - 12 << "\" y=\"" << ypos(wd.l - 1) + 24 + 12 * (c % 2) << "\" font-size=\"9\">"
       << detail::xml_escape(to_string(e.pair)) << "</text>\n";
    os << "  <title>" << detail::xml_escape(lab) << "</title>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string render(const WiringDiagram& wd, RenderFormat f) {
  return f == RenderFormat::ascii ? render_ascii(wd) : render_svg(wd);
}

}  // namespace bmono
