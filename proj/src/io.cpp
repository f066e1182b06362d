#include "plurisign/io.hpp"

#include <fstream>
#include <sstream>

#include "plurisign/expr.hpp"

namespace plurisign {

using nlohmann::json;

namespace {

Constraint constraint_from_json(const json& j) {
  using K = Constraint::Kind;
  Constraint c;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "positive") c.kind = K::Positive;
    else if (s == "nonneg") c.kind = K::Nonneg;
    else if (s == "binary") c.kind = K::Binary;
    else if (s == "sign") c.kind = K::Sign;
    else if (s == "unit_modulus") c.kind = K::UnitModulus;
    else if (s == "not_unit_modulus") c.kind = K::NotUnitModulus;
    else if (s == "im_nonneg") c.kind = K::ImNonneg;
    else throw DocumentError("unknown constraint '" + s + "'");
    return c;
  }
  if (!j.is_object() || j.size() != 1) throw DocumentError("constraint must be a string or a one-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "interval") {
    c.kind = K::Interval;
    c.lo = parse_rational(val.at(0).get<std::string>());
    c.hi = parse_rational(val.at(1).get<std::string>());
  } else if (key == "excluded") {
    c.kind = K::Excluded;
    for (const auto& v : val) c.values.push_back(parse_gaussian(v.get<std::string>()));
  } else if (key == "reciprocal") {
    c.kind = K::Reciprocal;
    c.other = val.at("of").get<std::string>();
    c.factor = parse_rational(val.value("factor", std::string("1")));
  } else {
    throw DocumentError("unknown constraint '" + key + "'");
  }
  return c;
}

json constraint_to_json(const Constraint& c) {
  using K = Constraint::Kind;
  switch (c.kind) {
    case K::Interval: return {{"interval", {to_string(c.lo), to_string(c.hi)}}};
    case K::Excluded: {
      json vals = json::array();
      for (const auto& v : c.values) vals.push_back(v.str());
      return {{"excluded", vals}};
    }
    case K::Reciprocal: return {{"reciprocal", {{"of", c.other}, {"factor", to_string(c.factor)}}}};
    default: return c.str();
  }
}

std::string phi_key(int j) { return "phi" + std::to_string(j); }

}  // namespace

Parameter parameter_from_json(const json& j) {
  Parameter p;
  p.name = j.at("name").get<std::string>();
  const std::string kind = j.value("kind", std::string("real"));
  if (kind == "real") p.kind = ParamKind::Real;
  else if (kind == "complex") p.kind = ParamKind::Complex;
  else throw DocumentError("parameter '" + p.name + "': kind must be real or complex");
  if (j.contains("constraints")) {
    for (const auto& c : j.at("constraints")) p.constraints.push_back(constraint_from_json(c));
  }
  return p;
}

json parameter_to_json(const Parameter& p) {
  json c = json::array();
  for (const auto& k : p.constraints) c.push_back(constraint_to_json(k));
  return {{"name", p.name}, {"kind", p.kind == ParamKind::Real ? "real" : "complex"}, {"constraints", c}};
}

AlgebraDocument parse_algebra(const json& doc) {
  try {
    if (doc.value("schema", kSchemaVersion) != kSchemaVersion) throw DocumentError("unsupported schema version");
    AlgebraDocument out;
    const int n = doc.at("n").get<int>();
    if (n < 1 || n > 9) throw DocumentError("n must be between 1 and 9");
    std::vector<Parameter> params;
    if (doc.contains("parameters")) {
      for (const auto& p : doc.at("parameters")) params.push_back(parameter_from_json(p));
    }
    std::vector<RewriteRule> rules;
    if (doc.contains("rewrites")) {
      for (const auto& r : doc.at("rewrites")) {
        const Scalar lhs = parse_expression(r.at("lhs").get<std::string>(), params);
        if (lhs.terms().size() != 1 || !(lhs.terms().begin()->second == GaussianRational(1))) {
          throw DocumentError("rewrite lhs must be a single monomial");
        }
        rules.push_back({lhs.terms().begin()->first, parse_expression(r.at("rhs").get<std::string>(), params)});
      }
    }
    std::vector<Form> d(static_cast<std::size_t>(n), Form(n));
    const json& dj = doc.at("d");
    for (const auto& [key, terms] : dj.items()) {
      int j = 0;
      if (key.rfind("phi", 0) == 0) j = std::atoi(key.c_str() + 3);
      if (j < 1 || j > n || key != phi_key(j)) throw DocumentError("bad key '" + key + "' in d");
      for (const auto& t : terms) {
        const BasisMonomial m = parse_monomial(t.at("monomial").get<std::string>(), n);
        d[j - 1].add_term(m, parse_expression(t.at("coeff").get<std::string>(), params));
      }
    }
    out.id = doc.value("id", doc.value("label", std::string()));
    out.spec = StructureSpec(n, std::move(d), std::move(params), RuleSet(std::move(rules)),
                             doc.value("label", out.id));
    if (doc.contains("nonvanishing")) {
      out.spec.set_nonvanishing(doc.at("nonvanishing").get<std::vector<std::vector<std::string>>>());
      for (const auto& g : out.spec.nonvanishing()) {
        for (const auto& name : g) {
          if (!out.spec.find_param(name)) throw DocumentError("nonvanishing names unknown parameter '" + name + "'");
        }
      }
    }
    out.default_metric = doc.value("metric", std::string("generic"));
    if (out.default_metric != "generic" && out.default_metric != "diagonal") {
      throw DocumentError("metric must be generic or diagonal");
    }
    if (doc.contains("lie_algebras")) out.lie_algebras = doc.at("lie_algebras").get<std::vector<std::string>>();
    out.anchor = doc.value("anchor", std::string());
    out.notes = doc.value("notes", std::string());
    return out;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed algebra document: ") + e.what());
  }
}

AlgebraDocument load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DocumentError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_algebra(doc);
}

json to_json(const AlgebraDocument& a) {
  json doc = to_json(a.spec);
  doc["id"] = a.id;
  doc["metric"] = a.default_metric;
  if (!a.lie_algebras.empty()) doc["lie_algebras"] = a.lie_algebras;
  if (!a.anchor.empty()) doc["anchor"] = a.anchor;
  if (!a.notes.empty()) doc["notes"] = a.notes;
  return doc;
}

json to_json(const StructureSpec& s) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["id"] = s.label();
  doc["label"] = s.label();
  doc["n"] = s.n();
  json params = json::array();
  for (const auto& p : s.params()) params.push_back(parameter_to_json(p));
  doc["parameters"] = params;
  json rules = json::array();
  // Conjugate rules are regenerated on load; export each pair once.
  std::vector<std::string> seen;
  for (const auto& r : s.rules().rules()) {
    const std::string lhs = render(Scalar(r.lhs, 1));
    const std::string lhs_conj = render(Scalar(r.lhs.conj(), 1));
    if (std::find(seen.begin(), seen.end(), lhs_conj) != seen.end()) continue;
    seen.push_back(lhs);
    rules.push_back({{"lhs", lhs}, {"rhs", render(r.rhs)}});
  }
  doc["rewrites"] = rules;
  if (!s.nonvanishing().empty()) doc["nonvanishing"] = s.nonvanishing();
  json d = json::object();
  for (int j = 1; j <= s.n(); ++j) {
    json terms = json::array();
    for (const auto& [m, c] : s.d_phi(j).terms()) terms.push_back({{"monomial", m.code()}, {"coeff", render(c)}});
    d[phi_key(j)] = terms;
  }
  doc["d"] = d;
  return doc;
}

Assignment parse_assignment(const std::string& text) {
  Assignment out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
    out[name] = parse_gaussian(item.substr(eq + 1));
  }
  return out;
}

std::string to_string(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) s += (s.empty() ? "" : ",") + k + "=" + v.str();
  return s;
}

json to_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v.str();
  return j;
}

json to_json(const ConditionSet& c) {
  json arr = json::array();
  for (const auto& x : c.conditions) {
    arr.push_back({{"poly", render(x.poly)}, {"pretty", render(x.poly, Style::Pretty)}, {"relation", to_string(x.rel)},
                   {"from", x.provenance}});
  }
  return {{"conditions", arr}, {"sufficient_only", c.sufficient_only}};
}

json to_json(const Verdict& v) {
  json j;
  j["verdict"] = to_string(v.truth);
  j["certificate"] = v.certificate;
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
  if (v.sign) j["sign"] = to_string(v.sign->tag);
  if (!v.conditions.empty()) j["conditions"] = to_json(v.conditions);
  if (v.samples > 0) {
    j["samples"] = v.samples;
    j["holds"] = v.holds;
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json to_json(const ClassificationReport& r) {
  json j;
  j["label"] = r.label;
  j["mode"] = to_string(r.mode);
  j["n"] = r.n;
  if (!r.values.empty()) j["values"] = to_json(r.values);
  j["epsilon"] = r.epsilon ? json(to_string(*r.epsilon)) : json(nullptr);
  for (const auto& [name, v] : r.fields()) j[name] = to_json(*v);
  if (!r.plurineg_parts.empty()) {
    json parts = json::array();
    for (const auto& p : r.plurineg_parts) parts.push_back(to_json(p));
    j["plurineg_n"]["parts"] = parts;
  }
  if (r.epsilon_bound) {
    const auto& b = *r.epsilon_bound;
    j["higher_dim"]["epsilon_bound"] = {{"feasible", b.feasible},
                                        {"sup", b.sup ? json(to_string(*b.sup)) : json("unbounded")},
                                        {"inf", to_string(b.inf)},
                                        {"exact", b.exact}};
  }
  return j;
}

std::string to_markdown(const ClassificationReport& r) {
  std::ostringstream os;
  os << "### " << (r.label.empty() ? "structure" : r.label) << " (" << to_string(r.mode) << ", n = " << r.n << ")\n\n";
  if (!r.values.empty()) os << "Values: `" << to_string(r.values) << "`\n\n";
  if (r.epsilon) os << "Epsilon: " << to_string(*r.epsilon) << "\n\n";
  os << "| property | verdict | certificate |\n|---|---|---|\n";
  for (const auto& [name, v] : r.fields()) {
    std::string cert = v->certificate;
    if (!v->note.empty()) cert += (cert.empty() ? "" : "; ") + v->note;
    for (auto& ch : cert) {
      if (ch == '|') ch = '/';
    }
    os << "| " << name << " | " << to_string(v->truth) << " | " << cert << " |\n";
  }
  if (r.epsilon_bound && r.epsilon_bound->feasible) {
    os << "\nSupremal epsilon: " << (r.epsilon_bound->sup ? to_string(*r.epsilon_bound->sup) : "unbounded")
       << (r.epsilon_bound->exact ? " (exact)" : " (bisection)") << "\n";
  }
  return os.str();
}

json to_json(const RunReport& r) {
  json j;
  j["engine"] = {{"name", "plurisign"}, {"version", kEngineVersion}};
  j["inputs"] = r.inputs;
  json reports = json::array();
  for (const auto& x : r.reports) reports.push_back(to_json(x));
  j["reports"] = reports;
  if (r.seconds) j["timing"] = {{"seconds", *r.seconds}};
  return j;
}

std::string to_markdown(const RunReport& r) {
  std::ostringstream os;
  os << "# plurisign " << kEngineVersion << "\n\nInputs: `" << r.inputs.dump() << "`\n\n";
  for (const auto& x : r.reports) os << to_markdown(x) << "\n";
  if (r.seconds) os << "Elapsed: " << *r.seconds << " s\n";
  return os.str();
}

}  // namespace plurisign
