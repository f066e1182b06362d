// plurisign command-line front end.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plurisign/catalog.hpp"
#include "plurisign/io.hpp"

using nlohmann::json;
using namespace plurisign;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kInadmissible = 3 };

struct Globals {
  bool json = false;
  bool timing = false;
  std::string out;
  std::uint64_t seed = 1;
};

struct Source {
  std::string family;
  std::string file;
  std::string set;
};

void add_globals(CLI::App* cmd, Globals& g) {
  cmd->add_flag("--json", g.json, "machine-readable output");
  cmd->add_option("--out", g.out, "write the output to this file");
  cmd->add_option("--seed", g.seed, "random seed");
  cmd->add_flag("--timing", g.timing, "include wall-clock timing");
}

void add_source(CLI::App* cmd, Source& s) {
  auto* fam = cmd->add_option("--family", s.family, "catalog family id");
  auto* file = cmd->add_option("--file", s.file, "AlgebraDocument JSON file");
  fam->excludes(file);
  cmd->add_option("--set", s.set, "structure parameter values, e.g. rho=1,D=1/2+i");
}

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Loaded {
  AlgebraDocument doc;
  StructureSpec spec;
  Assignment set;
};

Loaded load(const Source& s) {
  if (s.family.empty() == s.file.empty()) throw UsageError("exactly one of --family or --file is required");
  Loaded out;
  out.doc = s.family.empty() ? load_algebra(s.file) : family(s.family);
  out.set = parse_assignment(s.set);
  out.spec = out.set.empty() ? out.doc.spec : out.doc.spec.specialize(out.set);
  return out;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

bool wants_json(const Globals& g) {
  return g.json || (g.out.size() > 5 && g.out.compare(g.out.size() - 5, 5, ".json") == 0);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

int cmd_catalog_list(const Globals& g, const std::string& only) {
  json arr = json::array();
  std::ostringstream os;
  int shown = 0;
  for (const auto& d : catalog()) {
    if (!only.empty() && d.id != only) continue;
    ++shown;
    std::vector<std::string> discrete;
    std::vector<std::string> sig;
    for (const auto& p : d.spec.params()) {
      sig.push_back(p.signature());
      if (p.is_discrete()) discrete.push_back(p.name);
    }
    json j = {{"id", d.id},           {"label", d.spec.label()}, {"n", d.spec.n()},
              {"discrete", discrete}, {"parameters", sig},       {"anchor", d.anchor},
              {"metric", d.default_metric}, {"lie_algebras", d.lie_algebras}};
    arr.push_back(j);
    std::string params;
    for (const auto& x : sig) params += (params.empty() ? "" : ", ") + x;
    os << d.id << "  n=" << d.spec.n() << "  " << (params.empty() ? "(no parameters)" : params);
    if (!discrete.empty()) {
      std::string dd;
      for (const auto& x : discrete) dd += (dd.empty() ? "" : ",") + x;
      os << "  discrete: " << dd;
    }
    if (!d.lie_algebras.empty()) {
      std::string la;
      for (const auto& x : d.lie_algebras) la += (la.empty() ? "" : ",") + x;
      os << "  algebras: " << la;
    }
    if (!d.anchor.empty()) os << "  [" << d.anchor << "]";
    os << "\n";
    if (!only.empty()) {
      os << "  " << d.spec.label() << "\n";
      for (int j = 1; j <= d.spec.n(); ++j) {
        os << "  d phi" << j << " = " << render(d.spec.d_phi(j), FormStyle::Shorthand) << "\n";
      }
      if (!d.notes.empty()) os << "  " << d.notes << "\n";
    }
  }
  if (!only.empty() && shown == 0) throw UnknownFamily("unknown family '" + only + "'");
  emit(g, g.json ? arr.dump(2) : os.str());
  return kOk;
}

int cmd_classify(const Globals& g, const Source& src, const std::string& metric, const std::string& eps,
                 const std::string& mode) {
  const auto t0 = Clock::now();
  const Loaded in = load(src);
  const MetricSpec m = resolve_metric(in.doc, metric);
  ClassifyOptions opt;
  opt.mode = parse_mode(mode);
  opt.seed = g.seed;
  if (!eps.empty()) opt.epsilon = parse_rational(eps);
  RunReport rr;
  rr.inputs = {{"command", "classify"}, {"family", src.family}, {"file", src.file}, {"set", src.set},
               {"metric", metric},      {"eps", eps},            {"mode", mode},     {"seed", g.seed}};
  ClassificationReport r = classify(in.spec, m, opt);
  if (r.label.empty()) r.label = in.doc.id;
  rr.reports.push_back(r);
  for (const auto& [name, v] : r.fields()) {
    if (v->truth == Truth::Unknown) std::cerr << "warning: " << name << " is unknown: " << v->note << "\n";
  }
  if (g.timing) rr.seconds = seconds_since(t0);
  emit(g, wants_json(g) ? to_json(rr).dump(2) : to_markdown(rr));
  return kOk;
}

int cmd_ddc(const Globals& g, const Source& src, const std::string& metric, int k, const std::string& format) {
  const Loaded in = load(src);
  const MetricSpec m = resolve_metric(in.doc, metric);
  if (k < 1 || k > in.spec.n() - 1) throw UsageError("--power must be between 1 and n-1");
  in.spec.check_parameters(m.omega, m.params);
  const Form f = in.spec.reduce(ddc(in.spec, power(m, k)));
  if (format == "json" || g.json) {
    json terms = json::array();
    for (const auto& [mono, c] : f.terms()) terms.push_back({{"monomial", mono.code()}, {"coeff", render(c)}});
    emit(g, json{{"family", src.family}, {"file", src.file}, {"power", k}, {"terms", terms},
                 {"text", render(f, FormStyle::Shorthand)}}
                .dump(2));
  } else if (format == "latex") {
    emit(g, render(f, FormStyle::Latex));
  } else if (format == "text") {
    emit(g, render(f, FormStyle::Shorthand));
  } else {
    throw UsageError("--format must be text, latex or json");
  }
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& fam, const std::string& ledger_path) {
  const auto t0 = Clock::now();
  std::vector<LedgerEntry> entries;
  if (ledger_path.empty()) {
    entries = expected_ledger();
  } else {
    std::ifstream f(ledger_path);
    if (!f) throw UsageError("cannot read " + ledger_path);
    entries = parse_ledger(json::parse(f));
  }
  if (!fam.empty()) family(fam);
  ReplayOptions opt;
  opt.seed = g.seed;
  opt.family = fam;
  const auto outcomes = replay_ledger(entries, opt);
  int bad = 0;
  for (const auto& o : outcomes) {
    if (o.ok) continue;
    ++bad;
    std::cerr << "MISMATCH " << o.family << (o.discrete.empty() ? "" : " [" + o.discrete + "]") << " " << o.check
              << " " << o.property << ": expected " << o.expected << ", got " << o.actual << "\n";
  }
  if (wants_json(g)) {
    json arr = json::array();
    for (const auto& o : outcomes) {
      arr.push_back({{"family", o.family},     {"discrete", o.discrete}, {"check", o.check},
                     {"property", o.property}, {"expected", o.expected}, {"actual", o.actual},
                     {"citation", o.citation}, {"ok", o.ok}});
    }
    json j = {{"engine", {{"name", "plurisign"}, {"version", kEngineVersion}}},
              {"claims", outcomes.size()},
              {"mismatches", bad},
              {"outcomes", arr}};
    if (g.timing) j["timing"] = {{"seconds", seconds_since(t0)}};
    emit(g, j.dump(2));
  } else {
    std::string md = replay_markdown(outcomes);
    if (g.timing) md += "\nElapsed: " + std::to_string(seconds_since(t0)) + " s\n";
    emit(g, md);
  }
  if (!g.out.empty()) std::cout << outcomes.size() << " claims, " << bad << " mismatches\n";
  return bad == 0 ? kOk : kMismatch;
}

std::vector<Rational> grid_of(const std::string& range, int steps) {
  const auto dots = range.find("..");
  if (dots == std::string::npos) throw UsageError("--range must look like a..b");
  const Rational a = parse_rational(range.substr(0, dots));
  const Rational b = parse_rational(range.substr(dots + 2));
  if (steps < 1 || !(a < b)) throw UsageError("need a < b and --steps >= 1");
  std::vector<Rational> out;
  for (int j = 0; j <= steps; ++j) out.push_back(a + (b - a) * Rational(j) / Rational(steps));
  return out;
}

int cmd_epsilon_scan(const Globals& g, const Source& src, const std::string& metric, const std::string& range,
                     int steps) {
  const Loaded in = load(src);
  const MetricSpec m = resolve_metric(in.doc, metric);
  const CurvaturePack pack = curvature_pack(in.spec, m);
  if (!pack.structure.params().empty() || !pack.metric.params.empty()) {
    throw UsageError("epsilon-scan needs every parameter fixed via --set and --metric");
  }
  if (in.spec.n() < 4) throw UsageError("epsilon-scan needs n >= 4");
  ClassifyOptions opt;
  opt.seed = g.seed;
  json rows = json::array();
  std::ostringstream os;
  os << "eps | higher_dim\n---|---\n";
  for (const auto& eps : grid_of(range, steps)) {
    const Verdict v = higher_dim_condition(pack, {}, eps, opt);
    rows.push_back({{"eps", to_string(eps)}, {"verdict", to_string(v.truth)}});
    os << to_string(eps) << " | " << to_string(v.truth) << "\n";
  }
  const EpsilonBound b = epsilon_bound(pack, {}, opt);
  std::string sup = !b.feasible ? "infeasible" : (b.sup ? to_string(*b.sup) : "unbounded");
  os << "\nsupremal eps: " << sup << (b.feasible ? (b.exact ? " (exact)" : " (bisection)") : "") << "\n";
  if (g.json) {
    emit(g, json{{"family", src.family},
                 {"file", src.file},
                 {"set", src.set},
                 {"metric", metric},
                 {"grid", rows},
                 {"supremal", sup},
                 {"exact", b.exact}}
                .dump(2));
  } else {
    emit(g, os.str());
  }
  return kOk;
}

int cmd_check_structure(const Globals& g, const Source& src) {
  const Loaded in = load(src);
  const StructureReport r = check_structure(in.spec);
  if (g.json) {
    emit(g, json{{"integrable", r.integrable},
                 {"jacobi", r.jacobi},
                 {"unimodular", r.unimodular},
                 {"violations", r.violations}}
                .dump(2));
  } else {
    std::ostringstream os;
    os << "integrable: " << (r.integrable ? "yes" : "no") << "\nd^2 = 0: " << (r.jacobi ? "yes" : "no")
       << "\nunimodular: " << (r.unimodular ? "yes" : "no") << "\n";
    for (const auto& v : r.violations) os << "  " << v << "\n";
    emit(g, os.str());
  }
  return r.ok() ? kOk : kInadmissible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plurisign: dd^c curvature and metric classification on Lie algebras with complex structure"};
  app.require_subcommand(1);
  Globals g;

  auto* cat = app.add_subcommand("catalog", "built-in families");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "list families");
  std::string list_family;
  list->add_option("--family", list_family, "show one family in detail");
  add_globals(list, g);
  auto* exp_ledger = cat->add_subcommand("export-ledger", "print the expected-verdict ledger");
  add_globals(exp_ledger, g);
  auto* exp = cat->add_subcommand("export", "print a family as an AlgebraDocument");
  std::string export_family;
  exp->add_option("--family", export_family, "family id")->required();
  add_globals(exp, g);

  Source src;
  std::string metric = "default";
  std::string eps;
  std::string mode = "symbolic";
  auto* cls = app.add_subcommand("classify", "classify a metric");
  add_source(cls, src);
  cls->add_option("--metric", metric, "default|generic|diagonal|standard and/or name=value items");
  cls->add_option("--eps", eps, "epsilon for the higher-dimensional condition");
  cls->add_option("--mode", mode, "symbolic|numeric|sampled");
  add_globals(cls, g);

  int k = 1;
  std::string format = "text";
  auto* dd = app.add_subcommand("ddc", "print dd^c(omega^k)");
  add_source(dd, src);
  dd->add_option("--metric", metric, "metric kind and values");
  dd->add_option("--power", k, "k");
  dd->add_option("--format", format, "text|latex|json");
  add_globals(dd, g);

  std::string verify_family;
  std::string ledger_path;
  auto* ver = app.add_subcommand("verify-paper", "replay the expected-verdict ledger");
  ver->add_option("--family", verify_family, "replay one family only");
  ver->add_option("--ledger", ledger_path, "replay this ledger file instead of the built-in one");
  add_globals(ver, g);

  std::string range = "0..1";
  int steps = 8;
  auto* scan = app.add_subcommand("epsilon-scan", "higher-dimensional condition over an epsilon grid");
  add_source(scan, src);
  scan->add_option("--metric", metric, "metric kind and values");
  scan->add_option("--range", range, "a..b");
  scan->add_option("--steps", steps, "number of intervals");
  add_globals(scan, g);

  auto* chk = app.add_subcommand("check-structure", "integrability, d^2 = 0 and unimodularity");
  add_source(chk, src);
  add_globals(chk, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*list) return cmd_catalog_list(g, list_family);
    if (*exp_ledger) {
      emit(g, json::parse(ledger_resource()).dump(1));
      return kOk;
    }
    if (*exp) {
      emit(g, to_json(family(export_family)).dump(2));
      return kOk;
    }
    if (*cls) return cmd_classify(g, src, metric, eps, mode);
    if (*dd) return cmd_ddc(g, src, metric, k, format);
    if (*ver) return cmd_verify(g, verify_family, ledger_path);
    if (*scan) return cmd_epsilon_scan(g, src, metric, range, steps);
    if (*chk) return cmd_check_structure(g, src);
  } catch (const InadmissibleMetric& e) {
    std::cerr << "inadmissible metric: " << e.what() << "\n";
    return kInadmissible;
  } catch (const InadmissibleParameters& e) {
    std::cerr << "inadmissible parameters: " << e.what() << "\n";
    return kInadmissible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
