// braidmono: lexicographic sections of the braid arrangement, wiring
// diagrams, braid monodromy presentations and the MS(5,2) pipeline.

#include "CLI11.hpp"
#include "bmono/selftest.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace bmono;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitParse = 4;

int exit_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::mismatch: return kExitMismatch;
    case ErrorKind::search_exhausted: return kExitExhausted;
    case ErrorKind::parse: return kExitParse;
    default: return 1;
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid, "cannot write " + p.string());
  out << text;
}

// Writes to <out>/<name> when --out is set, otherwise to stdout.
void emit(const std::string& out_dir, const std::string& name, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / name, text);
}

// A pair-list file has an `l=` header; anything else is an arrangement.
bool looks_like_pairs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t");
    if (p == std::string::npos || line[p] == '#') continue;
    return line.compare(p, 2, "l=") == 0;
  }
  return false;
}

WiringDiagram wiring_from_text(const std::string& text) {
  std::istringstream in(text);
  if (looks_like_pairs(text)) return read_pairs(in);
  auto arr = read_arrangement(in);
  try {
    return wiring_from_arrangement(arr);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braid monodromy of lexicographic line arrangements"};
  app.require_subcommand(1);
  std::string orientation = "cw", second_form = "remark", out_dir;
  app.add_option("--orientation", orientation, "half-twist orientation (cw|ccw)")->check(CLI::IsMember({"cw", "ccw"}));
  app.add_option("--second-form", second_form, "crossing relator form of the target (original|remark)")
      ->check(CLI::IsMember({"original", "remark"}));
  app.add_option("--out", out_dir, "write outputs into this directory instead of stdout");

  int n = 0;
  bool params = false;
  auto* lex = app.add_subcommand("lex-arr", "lexicographic section of Br(n) as an arrangement file");
  lex->add_option("n", n, "number of strands")->required()->check(CLI::Range(3, 12));
  lex->add_flag("--params", params, "dump the section parameters instead");

  std::string input, render_fmt, render_out;
  bool no_order = false;
  auto* wiring = app.add_subcommand("wiring", "pair list of an arrangement");
  wiring->add_option("arrangement", input, "arrangement file, - for stdin")->required();
  wiring->add_option("--render", render_fmt, "also render the diagram (ascii|svg)")->check(CLI::IsMember({"ascii", "svg"}));
  wiring->add_option("--render-out", render_out, "file for the rendering (default: stdout after the pair list)");
  wiring->add_flag("--no-order", no_order, "omit the order= line");

  auto* pres = app.add_subcommand("presentation", "braid monodromy presentation");
  pres->add_option("input", input, "arrangement or pair-list file, - for stdin")->required();

  std::string pres_file;
  auto* verify = app.add_subcommand("verify-artin", "compare a presentation with the modified Artin presentation");
  verify->add_option("presentation", pres_file, "presentation file, - for stdin")->required();
  verify->add_option("n", n, "number of strands")->required()->check(CLI::Range(2, 12));

  std::string base_file, crossing = "complement";
  unsigned long long seed = 1;
  int budget = 200;
  auto* ms = app.add_subcommand("ms52", "MS(5,2) section, presentation and classification");
  ms->add_option("--base", base_file, "five base lines in arrangement format");
  ms->add_option("--seed", seed, "search seed");
  ms->add_option("--budget", budget, "number of search starts")->check(CLI::PositiveNumber);
  ms->add_option("--crossing", crossing, "crossing rule for R-I..R-III (complement|coordinate)")
      ->check(CLI::IsMember({"complement", "coordinate"}));

  auto* self = app.add_subcommand("selftest", "run the acceptance checks and write their artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "E_USAGE\n";
    app.exit(e);
    return kExitParse;
  }

  try {
    auto o = parse_orientation(orientation);
    auto form = parse_second_form(second_form);

    if (*lex) {
      std::ostringstream os;
      auto arr = lex_arrangement(n);
      if (params)
        write_params(os, lex_params_cached(n));
      else
        write_arrangement(os, arr);
      emit(out_dir, "lex-" + std::to_string(n) + (params ? ".params" : ".arr"), os.str());
      return 0;
    }

    if (*wiring) {
      auto wd = wiring_from_text(slurp(input));
      std::ostringstream os;
      write_pairs(os, wd, !no_order);
      emit(out_dir, "wiring.pairs", os.str());
      if (!render_fmt.empty()) {
        auto fmt = parse_render_format(render_fmt);
        auto pic = render(wd, fmt);
        if (!render_out.empty())
          write_file(render_out, pic);
        else
          emit(out_dir, fmt == RenderFormat::svg ? "wiring.svg" : "wiring.txt", pic);
      }
      return 0;
    }

    if (*pres) {
      auto wd = wiring_from_text(slurp(input));
      std::ostringstream os;
      write_presentation(os, presentation_of(wd, o));
      emit(out_dir, "presentation.txt", os.str());
      return 0;
    }

    if (*verify) {
      std::istringstream in(slurp(pres_file));
      auto p = read_presentation(in);
      std::ostringstream os;
      bool ok = verify_artin_report(os, p, n, form);
      emit(out_dir, "verify.txt", os.str());
      return ok ? 0 : kExitMismatch;
    }

    if (*ms) {
      auto base = default_base();
      if (!base_file.empty()) {
        std::istringstream in(slurp(base_file));
        base = read_base(in);
      }
      check_generic(base);
      auto r = run_ms52(base, seed, budget);
      if (parse_crossing_rule(crossing) == CrossingRule::coordinate) {
        r.counts.clear();
        r.classes.clear();
        for (auto& w : r.presentation.relators) {
          r.classes.push_back(classify_relation_ms(w, CrossingRule::coordinate));
          r.counts[r.classes.back().family]++;
        }
      }
      std::ostringstream ar, pw, pr, rp;
      write_arrangement(ar, r.search.arrangement);
      write_pairs(pw, r.wiring);
      write_presentation(pr, r.presentation);
      write_ms52_report(rp, r);
      if (out_dir.empty()) {
        std::cout << ar.str() << pw.str() << pr.str() << rp.str();
      } else {
        emit(out_dir, "ms52.arr", ar.str());
        emit(out_dir, "ms52.pairs", pw.str());
        emit(out_dir, "ms52.pres", pr.str());
        emit(out_dir, "ms52.report", rp.str());
      }
      return r.counts[MsFamily::unknown] == 0 ? 0 : kExitMismatch;
    }

    if (*self) {
      bool all = true;
      std::ostringstream summary;
      Artifacts files;
      run_acceptance(
          [&](const CriterionResult& c) {
            all = all && c.pass;
            std::cout << format_result(c) << std::endl;
            summary << format_result(c, false) << "\n";
          },
          &files);
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (auto& [name, text] : files) write_file(fs::path(out_dir) / name, text);
        write_file(fs::path(out_dir) / "acceptance.txt", summary.str());
      }
      return all ? 0 : kExitMismatch;
    }
  } catch (const Error& e) {
    std::cerr << error_code(e.kind) << "\n" << e.what() << "\n";
    return exit_status(e.kind);
  } catch (const std::exception& e) {
    std::cerr << "E_INTERNAL\n" << e.what() << "\n";
    return 1;
  }
  return 0;
}
