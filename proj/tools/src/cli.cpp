#include "parikh_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "parikh/errors.hpp"
#include "parikh/langfront.hpp"
#include "parikh/oracle.hpp"
#include "parikh/partition.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/series.hpp"
#include "parikh/system.hpp"

namespace parikh::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kPieceResidueLimit = 256;

struct RunConfig {
  std::string input;
  std::vector<std::int64_t> eval;
  bool verify = false;
  std::int64_t box = 15;
  std::int64_t maxlen = 24;
  std::int64_t regions_bound = 4;
  std::int64_t radius = 10;
  std::int64_t degree = 10;
  int depth_cap = 12;
  std::string format = "text";
  bool slender = false;
  bool series = false;
  bool coefficients = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::int64_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

json piece_json(const LazyQP& q) {
  json j;
  j["period"] = q->period();
  if (q->residue_count() > kPieceResidueLimit) {
    j["expanded"] = false;
    return j;
  }
  const QuasiPolynomial qp = q->materialize().canonicalize();
  j["period"] = qp.period();
  json pieces = json::object();
  for (const auto& [r, p] : qp.pieces()) pieces["(" + join(r, ",") + ")"] = p.to_string();
  j["pieces"] = pieces;
  return j;
}

json spline_json(const BoxSpline& b, std::int64_t bound) {
  json j;
  json planes = json::array();
  for (const auto& h : b.arrangement().planes()) planes.push_back(h.to_string());
  j["arrangement"] = planes;
  json regions = json::array();
  for (const auto& e : enumerate_regions(b, bound)) {
    regions.push_back({{"signs", e.signs.signs}, {"witness", e.witness}, {"piece", piece_json(e.piece)}});
  }
  j["regions_bound"] = bound;
  j["regions"] = regions;
  return j;
}

void print_spline(std::ostream& out, const json& s, const std::string& indent) {
  out << indent << "arrangement: " << s["arrangement"].size() << " planes\n";
  for (const auto& h : s["arrangement"]) out << indent << "  " << h.get<std::string>() << " = 0\n";
  out << indent << "regions met by [0," << s["regions_bound"].get<std::int64_t>() << "]^t: " << s["regions"].size()
      << "\n";
  for (const auto& r : s["regions"]) {
    out << indent << "  [" << r["signs"].get<std::string>() << "] at (" << join(r["witness"].get<std::vector<std::int64_t>>(), ",")
        << "): period " << r["piece"]["period"].get<std::int64_t>();
    if (!r["piece"].contains("pieces")) {
      out << " (not expanded)\n";
      continue;
    }
    out << "\n";
    if (r["piece"]["pieces"].empty()) out << indent << "    0\n";
    for (const auto& [res, poly] : r["piece"]["pieces"].items()) {
      out << indent << "    " << res << " " << poly.get<std::string>() << "\n";
    }
  }
}

json system_json(const DiophantineSystem& s) {
  return {{"rows", s.rows}, {"cols", s.cols}, {"a", s.a}, {"offset", s.offset.empty() ? NVec(s.rows, 0) : s.offset}};
}

void check_point(const std::vector<std::int64_t>& v, std::size_t t) {
  if (v.size() != t) throw ArgumentError("--eval needs " + std::to_string(t) + " coordinates");
  for (auto x : v) {
    if (x < 0) throw ArgumentError("--eval coordinates must be non-negative");
  }
}

struct Report {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::vector<std::string> mismatches;

  void record(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      ++matched;
    } else if (mismatches.size() < 10) {
      mismatches.push_back(what);
    }
  }
  bool ok() const { return matched == total; }
  json to_json() const { return {{"ok", ok()}, {"matched", matched}, {"total", total}, {"mismatches", mismatches}}; }
  void print(std::ostream& out, const std::string& noun = "points") const {
    out << (ok() ? "OK: " : "FAIL: ") << matched << "/" << total << " " << noun << " match\n";
    for (const auto& m : mismatches) out << "  mismatch " << m << "\n";
  }
};

int emit(std::ostream& out, const RunConfig& cfg, const json& doc, const std::function<void()>& text,
         bool success = true) {
  if (cfg.format == "structured") {
    out << doc.dump(2) << "\n";
  } else {
    text();
  }
  return success ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

int cmd_vpf(const RunConfig& cfg, std::ostream& out) {
  const DiophantineSystem sys = parse_system(read_file(cfg.input));
  const BoxSpline spline = box_spline_of_system(sys);
  if (!cfg.eval.empty()) {
    check_point(cfg.eval, sys.rows);
    const Integer v = bs_eval(spline, cfg.eval);
    return emit(out, cfg, {{"point", cfg.eval}, {"value", v.get_str()}}, [&] { out << v << "\n"; });
  }
  json doc;
  doc["system"] = system_json(sys);
  doc["spline"] = spline_json(spline, cfg.regions_bound);
  std::optional<Report> report;
  if (cfg.verify) {
    report.emplace();
    for_each_box_point(sys.rows, cfg.box, [&](const Point& x) {
      const Integer want = oracle::count_system_brute(sys, x);
      const Integer got = bs_eval(spline, x);
      report->record(got == want, "(" + join(x, ",") + "): spline " + got.get_str() + ", brute force " + want.get_str());
    });
    doc["verify"] = report->to_json();
  }
  return emit(
      out, cfg, doc,
      [&] {
        out << "system:\n" << sys.to_string();
        print_spline(out, doc["spline"], "");
        if (report) report->print(out);
      },
      !report || report->ok());
}

// ---------------------------------------------------------------------------

std::string word_text(const Grammar& g, const Word& w) { return g.spell(w); }

int cmd_lang(const RunConfig& cfg, std::ostream& out) {
  const GrammarFile file = parse_grammar(read_file(cfg.input));
  if (file.bounds.empty()) throw ArgumentError("grammar file needs a 'bounds:' line");
  const BoundedLanguage bl{file.grammar, file.bounds};
  const Morphism m = block_morphism(bl);
  if (auto w = containment_witness(bl.grammar, m)) {
    throw InvariantError("language is not contained in the bounding product; witness word: " + word_text(bl.grammar, *w));
  }
  const SemiSimpleSet index = index_set(bl, cfg.depth_cap);
  const auto systems = diophantine_systems(index, m);
  const CountingFunction f = CountingFunction::from_systems(bl.letters(), systems);
  const std::size_t t = bl.letters();

  if (!cfg.eval.empty()) {
    check_point(cfg.eval, t);
    const Integer v = f.eval(cfg.eval);
    return emit(out, cfg, {{"point", cfg.eval}, {"value", v.get_str()}}, [&] { out << v << "\n"; });
  }

  json doc;
  doc["terminals"] = bl.grammar.terminals;
  std::vector<std::string> bounds;
  for (const auto& w : bl.words) bounds.push_back(word_text(bl.grammar, w));
  doc["bounds"] = bounds;
  doc["index_set"] = index.to_string();
  json summands = json::array();
  for (const auto& s : f.summands()) {
    summands.push_back({{"offset", s.offset}, {"system", system_json(s.system)}, {"spline", spline_json(s.spline, cfg.regions_bound)}});
  }
  doc["summands"] = summands;

  bool success = true;
  std::optional<Report> report;
  if (cfg.verify) {
    report.emplace();
    const auto census = oracle::census_parikh(bl, std::vector<std::int64_t>(t, cfg.box));
    for (const auto& [v, want] : census) {
      std::int64_t len = 0;
      for (auto x : v) len += x;
      if (len > cfg.maxlen) continue;
      const Integer got = f.eval(v);
      report->record(got == want, "(" + join(v, ",") + "): counting function " + got.get_str() + ", census " + want.get_str());
    }
    doc["verify"] = report->to_json();
    success = report->ok();
  }
  std::optional<SlenderVerdict> verdict;
  if (cfg.slender) {
    verdict = decide_parikh_slender(f, cfg.radius);
    doc["slender"] = {{"slender", verdict->slender}, {"radius", cfg.radius}};
    if (verdict->bound) doc["slender"]["bound"] = verdict->bound->get_str();
  }
  std::optional<RationalSeriesExpr> series;
  if (cfg.series) {
    series = generating_function(systems);
    if (series->terms.empty()) series->vars = t;
    doc["series"] = series->to_string();
  }
  return emit(
      out, cfg, doc,
      [&] {
        out << "grammar:\n" << bl.grammar.to_string();
        out << "bounds:";
        for (std::size_t i = 0; i < bounds.size(); ++i) out << (i ? ", " : " ") << bounds[i];
        out << "\nindex set:\n" << index.to_string();
        for (std::size_t i = 0; i < f.summands().size(); ++i) {
          const auto& s = f.summands()[i];
          out << "summand " << i + 1 << ": offset (" << join(s.offset, ",") << ")\n";
          std::istringstream lines(s.system.to_string());
          for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
          print_spline(out, summands[i]["spline"], "  ");
        }
        if (report) report->print(out);
        if (verdict) {
          if (verdict->slender) {
            out << "slender (r = " << *verdict->bound << ")\n";
          } else {
            out << "not slender\n";
          }
        }
        if (series) out << "series: " << series->to_string() << "\n";
      },
      success);
}

// ---------------------------------------------------------------------------

int cmd_semisimple(const RunConfig& cfg, std::ostream& out) {
  const SemilinearSet input = parse_semilinear(read_file(cfg.input));
  const SemiSimpleSet result = decompose_semisimple(input, cfg.depth_cap);
  json doc;
  doc["dim"] = result.dim;
  json comps = json::array();
  for (const auto& c : result.components) comps.push_back({{"base", c.base}, {"periods", c.periods}});
  doc["components"] = comps;
  std::optional<Report> report;
  if (cfg.verify) {
    report.emplace();
    for (const auto& c : result.components) {
      report->record(is_simple(c), "component " + c.to_string() + " is not simple");
    }
    for_each_box_point(input.dim, cfg.box, [&](const Point& x) {
      const bool inside = sl_member(input, x);
      Integer reps = 0;
      for (const auto& c : result.components) reps += oracle::count_representations_brute(c, x);
      report->record(reps == (inside ? 1 : 0), "(" + join(x, ",") + "): input member " + std::string(inside ? "yes" : "no") +
                                                     ", representations " + reps.get_str());
    });
    doc["verify"] = report->to_json();
  }
  return emit(
      out, cfg, doc,
      [&] {
        if (!result.components.empty()) out << result.to_string();
        if (report) report->print(out, "checks");
      },
      !report || report->ok());
}

// ---------------------------------------------------------------------------

int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const std::string text = read_file(cfg.input);
  const bool is_grammar = text.find("->") != std::string::npos;
  RationalSeriesExpr expr;
  std::function<Integer(const Point&)> truth;
  std::optional<BoundedLanguage> bl;
  if (is_grammar) {
    const GrammarFile file = parse_grammar(text);
    if (file.bounds.empty()) throw ArgumentError("grammar file needs a 'bounds:' line");
    bl = BoundedLanguage{file.grammar, file.bounds};
    const Morphism m = block_morphism(*bl);
    if (auto w = containment_witness(bl->grammar, m)) {
      throw InvariantError("language is not contained in the bounding product; witness word: " + word_text(bl->grammar, *w));
    }
    expr = generating_function(diophantine_systems(index_set(*bl, cfg.depth_cap), m));
    expr.vars = bl->letters();
  } else {
    const DiophantineSystem sys = parse_system(text);
    expr = generating_function({sys});
    truth = [sys](const Point& x) { return oracle::count_system_brute(sys, x); };
  }
  json doc;
  doc["series"] = expr.to_string();
  std::optional<std::map<Monomial, Integer>> coeffs;
  if (cfg.coefficients || cfg.verify) coeffs = taylor_coefficients(expr, cfg.degree);
  if (cfg.coefficients) {
    json c = json::array();
    for (const auto& [mono, v] : *coeffs) {
      if (v != 0) c.push_back({{"exponent", mono}, {"coefficient", v.get_str()}});
    }
    doc["coefficients"] = c;
  }
  std::optional<Report> report;
  if (cfg.verify) {
    report.emplace();
    std::map<std::vector<std::int64_t>, Integer> census;
    if (bl) census = oracle::census_parikh(*bl, std::vector<std::int64_t>(expr.vars, cfg.degree));
    for (const auto& [mono, v] : *coeffs) {
      const Integer want = bl ? census.at(mono) : truth(mono);
      report->record(v == want, "(" + join(mono, ",") + "): coefficient " + v.get_str() + ", brute force " + want.get_str());
    }
    doc["verify"] = report->to_json();
  }
  return emit(
      out, cfg, doc,
      [&] {
        out << expr.to_string() << "\n";
        if (cfg.coefficients) {
          for (const auto& [mono, v] : *coeffs) {
            if (v != 0) out << "  [" << join(mono) << "] " << v << "\n";
          }
        }
        if (report) report->print(out, "coefficients");
      },
      !report || report->ok());
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("input", cfg.input, "Input file")->required();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->envname("PARIKH_FORMAT");
  sub->add_option("--depth-cap", cfg.depth_cap, "Case-split depth cap for semi-simple decomposition")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_DEPTH_CAP");
  sub->add_flag("--verify", cfg.verify, "Compare against brute-force oracles")->envname("PARIKH_VERIFY");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parikh counting functions of bounded context-free languages", "parikh"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* vpf = app.add_subcommand("vpf", "Counting function of a Diophantine system as a box spline");
  add_common(vpf, cfg);
  vpf->add_option("--eval", cfg.eval, "Print the value at this point")->expected(1, -1);
  vpf->add_option("--box", cfg.box, "Verification box bound")->check(CLI::NonNegativeNumber)->envname("PARIKH_BOX");
  vpf->add_option("--regions-bound", cfg.regions_bound, "List regions met by [0,B]^t")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_REGIONS_BOUND");

  auto* lang = app.add_subcommand("lang", "Parikh counting function of a bounded context-free language");
  add_common(lang, cfg);
  lang->add_option("--eval", cfg.eval, "Print the value at this point")->expected(1, -1);
  lang->add_option("--box", cfg.box, "Census box bound")->check(CLI::NonNegativeNumber)->envname("PARIKH_BOX");
  lang->add_option("--maxlen", cfg.maxlen, "Longest word compared by --verify")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_MAXLEN");
  lang->add_option("--regions-bound", cfg.regions_bound, "List regions met by [0,B]^t")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_REGIONS_BOUND");
  lang->add_option("--radius", cfg.radius, "Sampling radius for --slender")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_RADIUS");
  lang->add_flag("--slender", cfg.slender, "Decide Parikh slenderness");
  lang->add_flag("--series", cfg.series, "Print the generating function");

  auto* semi = app.add_subcommand("semisimple", "Semi-simple decomposition of a semi-linear set");
  add_common(semi, cfg);
  semi->add_option("--box", cfg.box, "Verification box bound")->check(CLI::NonNegativeNumber)->envname("PARIKH_BOX");

  auto* ser = app.add_subcommand("series", "Generating function of a system or bounded language");
  add_common(ser, cfg);
  ser->add_option("--degree", cfg.degree, "Total degree for coefficients and --verify")
      ->check(CLI::NonNegativeNumber)
      ->envname("PARIKH_DEGREE");
  ser->add_flag("--coefficients", cfg.coefficients, "Print Taylor coefficients");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*vpf) return cmd_vpf(cfg, out);
    if (*lang) return cmd_lang(cfg, out);
    if (*semi) return cmd_semisimple(cfg, out);
    return cmd_series(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << cfg.input << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const DepthExceeded& e) {
    err << "error: " << e.what() << " (raise --depth-cap)\n";
    return kDepthExceeded;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace parikh::cli
