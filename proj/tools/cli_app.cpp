#include "cli_app.hpp"

#include "superdual/schur_weyl.hpp"
#include "superdual/verify_suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace superdual::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string> kFull = {"hecke", "commuting", "descent", "qs-affine", "hopf", "double-centralizer", "functor-Mc", "reconstruct-y", "reducibility-grid"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

// n'^d, saturating above the guard so large d cannot overflow
std::size_t space_words(int nprime, int d) {
  std::size_t w = 1;
  for (int i = 0; i < d; ++i) {
    w *= static_cast<std::size_t>(nprime);
    if (w > (std::size_t{1} << 40)) break;
  }
  return w;
}

std::string q_str(const std::optional<Rational>& q0) { return q0 ? "rational:" + rational_str(*q0) : "symbolic"; }

Json c_json(const std::vector<Rational>& c) {
  Json a = Json::array();
  for (const auto& x : c) a.push_back(rational_str(x));
  return a;
}

// ------------------------------------------------------------ validation

void validate_common(const RunConfig& cfg, bool uses_space) {
  if (cfg.m < 1 || cfg.n < 1) throw UsageError("m and n must be >= 1");
  if (cfg.d < 1) throw UsageError("d must be >= 1");
  if (cfg.c.size() != static_cast<std::size_t>(cfg.d))
    throw UsageError("--c has " + std::to_string(cfg.c.size()) + " entries but d = " + std::to_string(cfg.d));
  for (const auto& x : cfg.c)
    if (sgn(x) == 0) throw UsageError("evaluation parameters must be nonzero");
  if (cfg.q0 && (*cfg.q0 == 0 || *cfg.q0 == 1 || *cfg.q0 == -1)) throw UsageError("q0 must avoid 0 and +-1");
  const int nprime = cfg.m + cfg.n;
  if (uses_space && !cfg.allow_large_d && space_words(nprime, cfg.d) > 4096)
    throw UsageError("n'^d = " + std::to_string(nprime) + "^" + std::to_string(cfg.d) + " exceeds 4096 basis words (pass --allow-large-d to run anyway)");
}

void refuse_m_equals_n(const RunConfig& cfg) {
  if (cfg.m == cfg.n && !cfg.allow_m_equals_n)
    throw SuiteRefused("m = n = " + std::to_string(cfg.m) +
                       " refused: the quantum Serre presentation assumes m != n; pass --allow-m-equals-n to run it anyway (the report is then marked incomplete)");
}

/// Empty when the suite can run at these parameters, else the reason it cannot.
std::string suite_precondition(const std::string& suite, const RunConfig& cfg) {
  const int nprime = cfg.m + cfg.n;
  if ((suite == "hecke" || suite == "commuting" || suite == "descent") && cfg.d < 2) return suite + " needs d >= 2";
  if (suite == "reconstruct-y" && cfg.d >= nprime) return "reconstruct-y needs d < n' = " + std::to_string(nprime);
  if (suite == "reducibility-grid" && (cfg.d < 2 || cfg.d >= nprime))
    return "reducibility-grid needs 2 <= d < n' = " + std::to_string(nprime);
  return "";
}

// ------------------------------------------------------------ suites

using SuiteFn = std::function<VerificationReport(const RunConfig&)>;

VerificationReport wrap(std::string suite, Json params, std::vector<CheckResult> checks) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.params = std::move(params);
  r.checks = std::move(checks);
  return r;
}

SpecPolicy dimension_policy(const RunConfig& cfg) {
  return cfg.q0 ? SpecPolicy::specialized({*cfg.q0}) : SpecPolicy{};
}

Rational grid_q0(const RunConfig& cfg) { return cfg.q0 ? *cfg.q0 : Rational(2); }

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table = {
      {"hecke", [](const RunConfig& c) { return run_hecke_suite(c.m, c.n, c.d); }},
      {"commuting", [](const RunConfig& c) { return run_commuting_suite(c.m, c.n, c.d); }},
      {"descent", [](const RunConfig& c) { return run_descent_suite(c.m, c.n, c.d); }},
      {"qs-affine",
       [](const RunConfig& c) {
         QsOptions opt;
         opt.q0 = c.q0;
         opt.allow_m_equals_n = c.allow_m_equals_n;
         return run_qs_affine_suite(c.m, c.n, c.c, opt);
       }},
      {"hopf", [](const RunConfig& c) { return run_hopf_suite(c.m, c.n); }},
      {"double-centralizer",
       [](const RunConfig& c) {
         auto dc = check_double_centralizer(c.m, c.n, c.d, dimension_policy(c));
         return wrap("double-centralizer", Json{{"m", c.m}, {"n", c.n}, {"d", c.d}}, {dc.check});
       }},
      {"functor-Mc", [](const RunConfig& c) { return wrap("functor-Mc", Json{{"m", c.m}, {"n", c.n}, {"c", c_json(c.c)}}, check_functor_Mc(c.m, c.n, c.c)); }},
      {"reconstruct-y",
       [](const RunConfig& c) { return wrap("reconstruct-y", Json{{"m", c.m}, {"n", c.n}, {"c", c_json(c.c)}}, reconstruct_y_mc(c.m, c.n, c.c).checks); }},
      {"reducibility-grid",
       [](const RunConfig& c) {
         const Rational q0 = grid_q0(c);
         return wrap("reducibility-grid", Json{{"m", c.m}, {"n", c.n}, {"d", c.d}, {"q0", rational_str(q0)}}, run_reducibility_grid(c.m, c.n, c.d, q0));
       }},
  };
  return table;
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested, bool& full) {
  std::vector<std::string> out;
  full = false;
  for (const auto& item : requested)
    for (const auto& s : split(item, ',')) {
      if (s.empty()) continue;
      if (s == "full") {
        full = true;
        for (const auto& f : kFull)
          if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        continue;
      }
      if (!suite_table().count(s)) throw UsageError("unknown suite '" + s + "'");
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  if (out.empty()) throw UsageError("no suite requested");
  return out;
}

// ------------------------------------------------------------ output

void print_human(const VerificationReport& r, std::ostream& out) {
  for (const auto& c : r.checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  residual_nnz=" << c.residual_nnz;
    if (c.witness) out << "  witness (" << c.witness->row << "," << c.witness->col << ") = " << c.witness->value;
    out << '\n';
  }
  if (!r.note.empty()) out << "note: " << r.note << '\n';
  out << "overall: " << r.overall() << " (" << r.checks.size() << " checks)\n";
}

int emit(const RunConfig& cfg, const VerificationReport& r, std::ostream& out, std::ostream& err) {
  const Json j = report_to_json(r, kToolVersion);
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "error: cannot write " << cfg.output << '\n';
      return kUsage;
    }
    f << j.dump(2) << '\n';
  }
  if (cfg.json)
    out << j.dump(2) << '\n';
  else
    print_human(r, out);
  const std::string overall = r.overall();
  if (overall == "pass") return kPass;
  return overall == "incomplete" ? kIncomplete : kFail;
}

// ------------------------------------------------------------ verbs

int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err) {
  bool full = false;
  const auto suites = expand_suites(cfg.suites, full);
  validate_common(cfg, true);
  if (std::find(suites.begin(), suites.end(), "qs-affine") != suites.end()) refuse_m_equals_n(cfg);

  VerificationReport merged;
  merged.suite = "verify";
  merged.params = Json{{"m", cfg.m}, {"n", cfg.n}, {"d", cfg.d}, {"c", c_json(cfg.c)}, {"q", q_str(cfg.q0)}, {"suites", suites}};
  std::vector<std::string> notes;
  std::vector<std::string> runnable;
  for (const auto& s : suites) {
    const std::string why = suite_precondition(s, cfg);
    if (why.empty()) {
      runnable.push_back(s);
    } else if (full) {
      merged.incomplete = true;
      notes.push_back(s + " skipped: " + why);
    } else {
      throw UsageError(why);
    }
  }
  for (const auto& s : runnable) {
    VerificationReport r = suite_table().at(s)(cfg);
    for (auto& c : r.checks) {
      c.name = s + "/" + c.name;
      merged.checks.push_back(std::move(c));
    }
    if (r.incomplete) merged.incomplete = true;
    if (!r.note.empty()) notes.push_back(s + ": " + r.note);
  }
  for (std::size_t i = 0; i < notes.size(); ++i) merged.note += (i ? "; " : "") + notes[i];
  return emit(cfg, merged, out, err);
}

int cmd_schurweyl(RunConfig cfg, std::ostream& out, std::ostream& err) {
  validate_common(cfg, true);
  VerificationReport r;
  r.suite = "schurweyl";
  r.params = Json{{"m", cfg.m}, {"n", cfg.n}, {"d", cfg.d}, {"check", cfg.check}};
  std::ostringstream summary;
  if (cfg.check == "centralizer") {
    auto dc = check_double_centralizer(cfg.m, cfg.n, cfg.d, dimension_policy(cfg));
    summary << "D1 = " << dc.commutant_dim << "  (commutant of the gl(m|n) generators)\n"
            << "D2 = " << dc.hecke_span_dim << "  (span of the Hecke action)\n"
            << "D3 = " << dc.hook_sum << "  (sum of f_lambda^2 over the hook set)\n"
            << "certification: " << dc.check.info.value("certification", std::string("exact")) << '\n';
    r.checks.push_back(dc.check);
  } else if (cfg.check == "census") {
    auto ws = highest_weight_census(cfg.m, cfg.n, cfg.d);
    std::size_t total = 0, expected = 0;
    for (const auto& w : ws) {
      summary << "weight (";
      for (std::size_t i = 0; i < w.weight.size(); ++i) summary << (i ? "," : "") << w.weight[i];
      summary << ")  multiplicity " << w.multiplicity << '\n';
      total += w.multiplicity;
    }
    for (const auto& p : hook_partitions(cfg.m, cfg.n, cfg.d)) expected += syt_count(p);
    CheckResult c;
    c.name = "highest weight vectors = sum of f_lambda";
    c.pass = total == expected;
    c.residual_nnz = c.pass ? 0 : 1;
    c.info = Json{{"highest_weight_vectors", total}, {"sum_f_lambda", expected}};
    r.checks.push_back(c);
  } else if (cfg.check == "reducibility") {
    if (cfg.d < 2 || cfg.d >= cfg.m + cfg.n) throw UsageError("reducibility needs 2 <= d < n'");
    auto red = check_evaluation_reducibility(cfg.m, cfg.n, cfg.c, grid_q0(cfg));
    summary << "generated algebra dimension " << red.dimension << " of " << red.full_dimension << "  ("
            << red.check.info.value("verdict", std::string()) << ")\n";
    r.params["c"] = c_json(cfg.c);
    r.params["q0"] = rational_str(grid_q0(cfg));
    r.checks.push_back(red.check);
  } else if (cfg.check == "functor") {
    r.params["c"] = c_json(cfg.c);
    r.checks = check_functor_Mc(cfg.m, cfg.n, cfg.c);
  } else if (cfg.check == "reconstruct") {
    if (cfg.d >= cfg.m + cfg.n) throw UsageError("reconstruct needs d < n'");
    auto rec = reconstruct_y_mc(cfg.m, cfg.n, cfg.c);
    summary << "signs:";
    for (int s : rec.signs) summary << ' ' << (s > 0 ? "+1" : "-1");
    summary << '\n';
    r.params["c"] = c_json(cfg.c);
    r.checks = rec.checks;
  } else {
    throw UsageError("unknown check '" + cfg.check + "' (centralizer, census, reducibility, functor, reconstruct)");
  }
  if (!cfg.json) out << summary.str();
  return emit(cfg, r, out, err);
}

int cmd_hecke(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  if (cfg.d < 1 || cfg.d > 8) throw UsageError("hecke needs 1 <= d <= 8");
  auto normal_form = [&](const std::string& w) { return bernstein_nf(parse_hecke_word(w, cfg.d), cfg.d).str(); };
  if (cfg.word) {
    out << normal_form(*cfg.word) << '\n';
    return kPass;
  }
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line == "quit" || line == "exit") break;
    try {
      out << normal_form(line) << '\n';
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
    }
  }
  return kPass;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  validate_common(cfg, true);
  CartanDatum cd({cfg.m, cfg.n});
  SuperOp op(cd.dim(), cfg.d, 0);
  if (cfg.gen.rfind("Rhat", 0) == 0) {
    int i = 0;
    try {
      i = std::stoi(cfg.gen.substr(4));
    } catch (const std::exception&) {
      throw UsageError("bad tag '" + cfg.gen + "'");
    }
    if (i < 1 || i >= cfg.d) throw UsageError("Rhat<i> needs 1 <= i < d");
    op = rhat_slot(i, cfg.d, cd);
  } else {
    GeneratorTag g;
    try {
      g = GeneratorTag::parse(cfg.gen, cd);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    op = g.affine() ? rho_d_affine(g, cfg.d, cfg.c, cd) : rho_d(g, cfg.d, cd);
  }
  out << "# " << cfg.gen << " m=" << cfg.m << " n=" << cfg.n << " d=" << cfg.d << " size=" << op.size() << " parity=" << op.parity() << " q="
      << q_str(cfg.q0) << '\n';
  if (cfg.q0) {
    const auto mat = op.specialize_matrix(*cfg.q0);
    for (std::size_t r = 0; r < mat.rows(); ++r)
      for (const auto& [col, v] : mat.row(r)) out << r << ' ' << col << ' ' << rational_str(v) << '\n';
  } else {
    for (const auto& t : op.triplets()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
  }
  return kPass;
}

}  // namespace

const std::vector<std::string>& full_preset() { return kFull; }

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_rational(item));
  return out;
}

std::optional<Rational> parse_q_policy(const std::string& s) {
  if (s == "symbolic") return std::nullopt;
  const std::string prefix = "rational:";
  if (s.rfind(prefix, 0) == 0) return parse_rational(s.substr(prefix.size()));
  throw std::invalid_argument("invalid q policy '" + s + "' (expected symbolic or rational:p/r)");
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of affine super Schur-Weyl duality over Q(q)", "superdual"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  std::string c_text, q_text = "symbolic";

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "even dimension m")->capture_default_str();
    sub->add_option("--n", cfg.n, "odd dimension n")->capture_default_str();
    sub->add_option("--d", cfg.d, "tensor degree d")->capture_default_str();
    sub->add_option("--c", c_text, "evaluation parameters, comma separated p/r (default 1,3,9,...)");
    sub->add_option("--q", q_text, "symbolic or rational:p/r")->capture_default_str();
    sub->add_flag("--allow-large-d", cfg.allow_large_d, "lift the n'^d <= 4096 guard");
    sub->add_option("--output,-o", cfg.output, "write the JSON report here");
    sub->add_flag("--json", cfg.json, "print the JSON report instead of text");
  };

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_space(verify);
  verify->add_option("--suite,-s", cfg.suites, "suite names (comma list or repeated); 'full' runs all")->required();
  verify->add_flag("--allow-m-equals-n", cfg.allow_m_equals_n, "run relation suites at m = n; the report is marked incomplete");

  auto* sw = app.add_subcommand("schurweyl", "double centralizer and module checks");
  add_space(sw);
  sw->add_option("--check", cfg.check, "centralizer | census | reducibility | functor | reconstruct")->capture_default_str();

  auto* hecke = app.add_subcommand("hecke", "Bernstein normal forms; reads one word per line from stdin");
  hecke->add_option("--d", cfg.d, "number of strands")->capture_default_str();
  hecke->add_option("--word", cfg.word, "normalize this word and exit");

  auto* exp = app.add_subcommand("export-matrix", "dump a generator matrix as row col value triplets");
  add_space(exp);
  exp->add_option("--gen", cfg.gen, "E<i>, F<i>, E0, F0, K0, Kalpha<i>, Keps<i>, sigma or Rhat<i>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    cfg.q0 = parse_q_policy(q_text);
    if (!c_text.empty()) {
      cfg.c = parse_rational_list(c_text);
      bool d_given = false;
      for (auto* sub : {verify, sw, exp})
        if (sub->parsed() && sub->count("--d")) d_given = true;
      if (!d_given) cfg.d = static_cast<int>(cfg.c.size());
    } else {
      Rational x(1);
      for (int j = 0; j < cfg.d; ++j, x *= 3) cfg.c.push_back(x);
    }
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (sw->parsed()) return cmd_schurweyl(cfg, out, err);
    if (hecke->parsed()) return cmd_hecke(cfg, in, out, err);
    return cmd_export(cfg, out);
  } catch (const SuiteRefused& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace superdual::cli
