#pragma once

#include "artin.hpp"
#include "braidarr.hpp"
#include "monodromy.hpp"
#include "ms.hpp"
#include "wiring.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace bmono {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// filename -> contents; everything a selftest run writes to disk
using Artifacts = std::map<std::string, std::string>;

namespace golden {

inline const std::vector<LefschetzPair>& pairs4() {
  static const std::vector<LefschetzPair> v{{3, 4}, {1, 3}, {3, 5}, {2, 3}, {5, 6}, {3, 5}, {1, 3}};
  return v;
}

inline LabelWord C(const LabelWord& a, const LabelWord& b) { return commutator(a, b); }
inline LabelWord I(const LabelWord& a) { return a.inverse(); }

// The explicit relator lists for four and five strands, written out by hand.
inline Presentation presentation4() {
  Presentation p;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) p.generators.push_back(LineLabel{i, j});
  p.relators = {
      C(S(1, 2), S(3, 4)),
      C(S(1, 4), S(2, 3)),
      C(S(1, 3), S(1, 4) * S(2, 4) * I(S(1, 4))),
      C(S(1, 2) * S(1, 3), S(2, 3)), C(S(1, 2), S(1, 3) * S(2, 3)),
      C(S(1, 2) * S(1, 4), S(2, 4)), C(S(1, 2), S(1, 4) * S(2, 4)),
      C(S(1, 3) * S(1, 4), S(3, 4)), C(S(1, 3), S(1, 4) * S(3, 4)),
      C(S(2, 3) * S(2, 4), S(3, 4)), C(S(2, 3), S(2, 4) * S(3, 4)),
  };
  return p;
}

inline Presentation presentation5() {
  Presentation p;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) p.generators.push_back(LineLabel{i, j});
  p.relators = {
      C(S(1, 2), S(3, 4)), C(S(1, 2), S(3, 5)), C(S(1, 2), S(4, 5)), C(S(1, 3), S(4, 5)),
      C(S(1, 4), S(2, 3)), C(S(1, 5), S(2, 3)), C(S(1, 5), S(2, 4)), C(S(1, 5), S(3, 4)),
      C(S(2, 3), S(4, 5)), C(S(2, 5), S(3, 4)),
      C(S(1, 3), S(1, 4) * S(2, 4) * I(S(1, 4))),
      C(S(1, 3), S(1, 5) * S(2, 5) * I(S(1, 5))),
      C(S(1, 4), S(1, 5) * S(2, 5) * I(S(1, 5))),
      C(S(1, 4), S(1, 5) * S(3, 5) * I(S(1, 5))),
      C(S(2, 4), S(2, 5) * S(3, 5) * I(S(2, 5))),
      C(S(1, 2) * S(1, 3), S(2, 3)), C(S(1, 2), S(1, 3) * S(2, 3)),
      C(S(1, 2) * S(1, 4), S(2, 4)), C(S(1, 2), S(1, 4) * S(2, 4)),
      C(S(1, 2) * S(1, 5), S(2, 5)), C(S(1, 2), S(1, 5) * S(2, 5)),
      C(S(1, 3) * S(1, 4), S(3, 4)), C(S(1, 3), S(1, 4) * S(3, 4)),
      C(S(1, 3) * S(1, 5), S(3, 5)), C(S(1, 3), S(1, 5) * S(3, 5)),
      C(S(1, 4) * S(1, 5), S(4, 5)), C(S(1, 4), S(1, 5) * S(4, 5)),
      C(S(2, 3) * S(2, 4), S(3, 4)), C(S(2, 3), S(2, 4) * S(3, 4)),
      C(S(2, 3) * S(2, 5), S(3, 5)), C(S(2, 3), S(2, 5) * S(3, 5)),
      C(S(2, 4) * S(2, 5), S(4, 5)), C(S(2, 4), S(2, 5) * S(4, 5)),
      C(S(3, 4) * S(3, 5), S(4, 5)), C(S(3, 4), S(3, 5) * S(4, 5)),
  };
  return p;
}

}  // namespace golden

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

inline std::string format_pairs(const std::vector<LefschetzPair>& v) {
  std::string s;
  for (auto& p : v) s += to_string(p);
  return s;
}

// Text report of a presentation against the target for n strands. Returns
// true when the relators match and every relator passes the oracle.
inline bool verify_artin_report(std::ostream& os, const Presentation& p, int n, SecondForm form = SecondForm::remark) {
  auto target = modified_artin_presentation(n, form);
  MatchReport rep;
  bool generators_ok = true;
  try {
    rep = presentations_match(p, target);
  } catch (const Error&) {
    generators_ok = false;
  }
  std::size_t oracle_fail = 0;
  std::vector<std::string> lines;
  for (auto& r : p.relators) {
    bool ok = false;
    try {
      ok = artin_oracle_check(r, n);
    } catch (const Error&) {
    }
    oracle_fail += !ok;
    lines.push_back(std::string(ok ? "pass " : "FAIL ") + format_relator(r));
  }
  std::map<Family, std::size_t> fam;
  for (auto& r : p.relators) fam[classify_relator(r.cyclically_reduced(), form).family]++;
  bool match = generators_ok && rep.match;
  const char* status = oracle_fail ? "ORACLE FAIL" : match ? "MATCH" : "MISMATCH";
  os << status << "\n";
  os << "# relators " << p.relators.size() << ", target " << target.relators.size() << "\n";
  for (auto f : {Family::r1, Family::r2, Family::r3, Family::unknown}) os << "# " << family_name(f) << ' ' << fam[f] << "\n";
  if (!generators_ok) os << "# generator sets differ\n";
  for (auto& w : rep.unmatched_computed) os << "# unmatched computed " << format_relator(w) << "\n";
  for (auto& w : rep.unmatched_target) os << "# unmatched target " << format_relator(w) << "\n";
  for (auto& l : lines) os << "# oracle " << l << "\n";
  os << "status=" << (oracle_fail ? "oracle_fail" : match ? "match" : "mismatch") << "\n";
  os << "n=" << n << "\n";
  os << "relators=" << p.relators.size() << "\n";
  os << "target_relators=" << target.relators.size() << "\n";
  os << "r1=" << fam[Family::r1] << "\nr2=" << fam[Family::r2] << "\nr3=" << fam[Family::r3]
     << "\nunknown=" << fam[Family::unknown] << "\n";
  os << "unmatched_computed=" << rep.unmatched_computed.size() << "\n";
  os << "unmatched_target=" << rep.unmatched_target.size() << "\n";
  os << "oracle_fail=" << oracle_fail << "\n";
  return match && oracle_fail == 0;
}

inline void write_ms52_report(std::ostream& os, const Ms52Result& r) {
  auto& rep = r.search.report;
  os << "lines=" << r.search.arrangement.lines.size() << "\n";
  os << "quadruple_points=" << rep.quadruples << "\n";
  os << "double_points=" << rep.doubles << "\n";
  os << "candidates=" << r.search.candidates << "\n";
  os << "generators=" << r.presentation.generators.size() << "\n";
  os << "relators=" << r.presentation.relators.size() << "\n";
  for (auto f : {MsFamily::R1, MsFamily::R2, MsFamily::R3, MsFamily::R4, MsFamily::unknown}) {
    auto it = r.counts.find(f);
    os << ms_family_name(f) << '=' << (it == r.counts.end() ? 0 : it->second) << "\n";
  }
  os << "unknown_coordinate_rule=" << r.unknown_coordinate << "\n";
  for (std::size_t k = 0; k < r.classes.size(); ++k) {
    os << "# " << ms_family_name(r.classes[k].family) << ' ' << format_relator(r.presentation.relators[k]) << "\n";
  }
}

// Every file a selftest run writes. Computed from scratch on each call.
inline Artifacts build_artifacts() {
  Artifacts a;
  for (int n = 3; n <= 7; ++n) {
    auto p = lex_params(n);
    auto arr = section_arrangement(p.section);
    auto wd = wiring_from_arrangement(arr);
    auto pres = presentation_of(wd);
    std::ostringstream pa, ar, pr, pw, vr;
    write_params(pa, p);
    write_arrangement(ar, arr);
    write_pairs(pw, wd);
    write_presentation(pr, pres);
    verify_artin_report(vr, pres, n);
    auto stem = "lex-" + std::to_string(n);
    a[stem + ".params"] = pa.str();
    a[stem + ".arr"] = ar.str();
    a[stem + ".pairs"] = pw.str();
    a[stem + ".pres"] = pr.str();
    a[stem + ".verify"] = vr.str();
  }
  auto ms = run_ms52(default_base());
  std::ostringstream ar, pw, pr, rp;
  write_arrangement(ar, ms.search.arrangement);
  write_pairs(pw, ms.wiring);
  write_presentation(pr, ms.presentation);
  write_ms52_report(rp, ms);
  a["ms52.arr"] = ar.str();
  a["ms52.pairs"] = pw.str();
  a["ms52.pres"] = pr.str();
  a["ms52.report"] = rp.str();
  return a;
}

namespace detail {

inline std::string counts_string(const std::map<Family, std::size_t>& m) {
  std::string s;
  for (auto f : {Family::r1, Family::r2, Family::r3, Family::unknown}) {
    auto it = m.find(f);
    s += std::string(s.empty() ? "" : " ") + family_name(f) + "=" + std::to_string(it == m.end() ? 0 : it->second);
  }
  return s;
}

inline Presentation lex_presentation(int n) { return presentation_of(wiring_from_arrangement(lex_arrangement(n))); }

inline bool endo_equal_on(const PosEndo& f, const PosEndo& g, int l) {
  for (int k = 1; k <= l; ++k)
    if (!(f(PosWord(k)) == g(PosWord(k)))) return false;
  return true;
}

// (a)-(e) over the lexicographic wirings for n = 3..7 and, if given, the MS(5,2) wiring.
inline CriterionResult property_suite(const std::vector<WiringDiagram>& wirings) {
  CriterionResult c{6, "property suite", true, "", 0};
  std::size_t na = 0, nb = 0, nc = 0, nd = 0, ne = 0;
  auto fail = [&](const std::string& why) {
    if (c.pass) c.detail = why;
    c.pass = false;
  };
  for (int l = 2; l <= 6; ++l)
    for (int a = 1; a <= l; ++a)
      for (int b = a + 1; b <= l; ++b)
        for (auto o : {Orientation::cw, Orientation::ccw}) {
          auto ref = interval_halftwist(a, b, o, l, 0);
          for (int v = 1; v < 4; ++v) {
            ++na;
            if (!endo_equal_on(ref, interval_halftwist(a, b, o, l, v), l))
              fail("(a) factorization " + std::to_string(v) + " differs on [" + std::to_string(a) + "," +
                   std::to_string(b) + "] l=" + std::to_string(l));
          }
        }
  for (auto& wd : wirings) {
    auto whole = boundary_word(1, wd.l);
    for (auto o : {Orientation::cw, Orientation::ccw})
      for (auto& e : wd.events) {
        ++nb;
        if (!(interval_halftwist(e.pair.a, e.pair.b, o, wd.l)(whole) == whole)) fail("(b) boundary product moved");
      }
    auto mono = braid_monodromy(wd);
    for (auto& loops : mono.raw_loops)
      for (auto& w : loops) {
        ++nc;
        if (!w.is_conjugate_of_generator()) fail("(c) raw loop is not a conjugate of a generator");
      }
    for (auto& rel : mono.relations)
      for (auto& w : rel.words) {
        ++nc;
        if (!w.is_conjugate_of_generator()) fail("(c) reduced loop is not a conjugate of a generator");
      }
    ++nd;
    auto back = wiring_from_pairs(wd.l, lefschetz_pairs(wd), wd.initial_order);
    bool same = back.events.size() == wd.events.size() && back.final_order() == wd.final_order();
    for (std::size_t k = 0; same && k < wd.events.size(); ++k)
      same = back.events[k].pair == wd.events[k].pair && back.events[k].labels == wd.events[k].labels;
    std::ostringstream os;
    write_pairs(os, wd);
    std::istringstream is(os.str());
    auto parsed = read_pairs(is);
    same = same && lefschetz_pairs(parsed) == lefschetz_pairs(wd) && parsed.initial_order == wd.initial_order;
    if (!same) fail("(d) wiring round trip changed the event structure");
    for (auto& r : presentation_of(wd).relators) {
      ++ne;
      if (!r.exponent_sums().empty()) fail("(e) relator with nonzero abelianization " + format_relator(r));
    }
  }
  std::string counts = "a=" + std::to_string(na) + " b=" + std::to_string(nb) + " c=" + std::to_string(nc) +
                       " d=" + std::to_string(nd) + " e=" + std::to_string(ne);
  c.detail = c.pass ? counts : c.detail + "; " + counts;
  return c;
}

}  // namespace detail

// Runs criteria 1-9. Criterion 9 builds the selftest artifacts twice; the
// first build is handed back through `artifacts` when given.
inline std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {},
                                                   Artifacts* artifacts = nullptr) {
  std::vector<CriterionResult> out;
  // limit: wall-clock budget in seconds, part of the criterion
  auto timed = [&](int id, const std::string& name, double limit, const std::function<void(CriterionResult&)>& body) {
    CriterionResult c{id, name, false, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds >= limit) {
      c.pass = false;
      c.detail += "; over the " + std::to_string(static_cast<int>(limit)) + " s budget";
    }
    out.push_back(c);
    if (on_result) on_result(out.back());
  };

  timed(1, "golden pair list n=4", 1, [](CriterionResult& c) {
    auto got = lefschetz_pairs(wiring_from_arrangement(lex_arrangement(4)));
    c.pass = got == golden::pairs4();
    c.detail = format_pairs(got);
  });

  auto golden_check = [](CriterionResult& c, int n, const Presentation& want) {
    auto got = detail::lex_presentation(n);
    auto vs_list = presentations_match(got, want);
    auto vs_target = presentations_match(got, modified_artin_presentation(n));
    c.pass = vs_list.match && vs_target.match;
    c.detail = std::to_string(got.relators.size()) + " relators, " + detail::counts_string(vs_list.family_counts);
    if (!vs_list.match)
      c.detail += ", unmatched " + std::to_string(vs_list.unmatched_computed.size()) + "/" +
                  std::to_string(vs_list.unmatched_target.size());
  };
  timed(2, "golden presentation n=4", 1, [&](CriterionResult& c) {
    golden_check(c, 4, golden::presentation4());
  });
  timed(3, "golden presentation n=5", 5, [&](CriterionResult& c) {
    golden_check(c, 5, golden::presentation5());
  });

  timed(4, "presentation scaling n=6,7", 60, [](CriterionResult& c) {
    c.pass = true;
    for (int n : {6, 7}) {
      auto got = detail::lex_presentation(n);
      auto rep = presentations_match(got, modified_artin_presentation(n));
      bool counts = rep.family_counts[Family::r1] == 2 * binomial(n, 4) && rep.family_counts[Family::r2] == binomial(n, 4) &&
                    rep.family_counts[Family::r3] == 2 * binomial(n, 3) && rep.family_counts[Family::unknown] == 0;
      c.pass = c.pass && rep.match && counts;
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " " +
                  std::to_string(got.relators.size()) + " relators " + detail::counts_string(rep.family_counts) +
                  (rep.match ? "" : " MISMATCH");
    }
  });

  timed(5, "oracle soundness n=3..7", 120, [](CriterionResult& c) {
    std::size_t total = 0, passed = 0;
    for (int n = 3; n <= 7; ++n) {
      for (auto& r : detail::lex_presentation(n).relators) {
        ++total;
        passed += artin_oracle_check(r, n);
      }
      for (auto& r : modified_artin_presentation(n).relators) {
        ++total;
        passed += artin_oracle_check(r.word, n);
      }
    }
    c.pass = total > 0 && passed == total;
    c.detail = std::to_string(passed) + "/" + std::to_string(total) + " relators (pipeline and target)";
  });

  std::vector<WiringDiagram> wirings;
  timed(6, "property suite", 600, [&](CriterionResult& c) {
    for (int n = 3; n <= 7; ++n) wirings.push_back(wiring_from_arrangement(lex_arrangement(n)));
    wirings.push_back(run_ms52(default_base()).wiring);
    c = detail::property_suite(wirings);
  });

  timed(7, "lexicographic validity n=3..7", 600, [](CriterionResult& c) {
    c.pass = true;
    for (int n = 3; n <= 7; ++n) {
      auto arr = lex_arrangement(n);
      auto scan = validate_scan_position(arr);
      auto fam = check_inequality_families(arr);
      auto props = verify_properties(arr);
      auto predicted = trace_normal_form(script_pairs(predicted_transitions(n)));
      auto geometric = trace_normal_form(lefschetz_pairs(wiring_from_arrangement(arr)));
      bool agree = predicted == geometric;
      std::size_t checked = 0;
      for (auto& [f, k] : fam.checked) checked += k;
      std::string d = "n=" + std::to_string(n) + " (I)-(V) " + std::to_string(checked) + (fam.ok() ? " ok" : " FAIL") +
                      " P1-P3 " + (props.ok() ? "ok" : "FAIL") + " script " + (agree ? "agrees" : "DIFFERS");
      c.pass = c.pass && scan.ok && fam.ok() && props.ok() && agree;
      c.detail += (c.detail.empty() ? "" : "; ") + d;
    }
  });

  timed(8, "MS(5,2) section and presentation", 120, [&](CriterionResult& c) {
    auto r = run_ms52(default_base());
    auto& rep = r.search.report;
    auto count = [&](MsFamily f) {
      auto it = r.counts.find(f);
      return it == r.counts.end() ? std::size_t{0} : it->second;
    };
    bool abelian = true;
    for (auto& w : r.presentation.relators) abelian = abelian && w.exponent_sums().empty();
    c.pass = r.search.arrangement.lines.size() == 10 && rep.ok() && rep.quadruples == 5 && rep.doubles == 15 &&
             r.presentation.generators.size() == 10 && r.presentation.relators.size() == 30 &&
             count(MsFamily::unknown) == 0 && count(MsFamily::R4) == 15 && abelian;
    c.detail = "quadruple=" + std::to_string(rep.quadruples) + " double=" + std::to_string(rep.doubles) +
               " generators=" + std::to_string(r.presentation.generators.size()) +
               " relators=" + std::to_string(r.presentation.relators.size()) + " R-I=" + std::to_string(count(MsFamily::R1)) +
               " R-II=" + std::to_string(count(MsFamily::R2)) + " R-III=" + std::to_string(count(MsFamily::R3)) +
               " R-IV=" + std::to_string(count(MsFamily::R4)) + " unknown=" + std::to_string(count(MsFamily::unknown)) +
               " (coordinate rule: unknown=" + std::to_string(r.unknown_coordinate) + ")";
  });

  timed(9, "deterministic artifacts", 600, [&](CriterionResult& c) {
    auto a = build_artifacts();
    if (artifacts) *artifacts = a;
    auto b = build_artifacts();
    std::size_t bytes = 0;
    for (auto& [k, v] : a) bytes += v.size();
    c.pass = a == b && !a.empty();
    c.detail = std::to_string(a.size()) + " files, " + std::to_string(bytes) + " bytes" + (c.pass ? "" : ", runs differ");
  });
  return out;
}

inline std::string format_result(const CriterionResult& c, bool with_time = true) {
  std::ostringstream os;
  os << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
  if (with_time) os << " [" << std::fixed << std::setprecision(2) << c.seconds << " s]";
  os << " | " << c.detail;
  return os.str();
}

}  // namespace bmono
