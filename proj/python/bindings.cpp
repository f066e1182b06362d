#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "plurisign/catalog.hpp"
#include "plurisign/expr.hpp"
#include "plurisign/io.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace plurisign;

namespace {

AlgebraDocument document_of(const std::optional<std::string>& family_id, const std::optional<std::string>& doc) {
  if (family_id.has_value() == doc.has_value()) throw std::invalid_argument("pass exactly one of family or document");
  return family_id ? family(*family_id) : parse_algebra(json::parse(*doc));
}

StructureSpec structure_of(const AlgebraDocument& d, const std::string& set) {
  const Assignment a = parse_assignment(set);
  return a.empty() ? d.spec : d.spec.specialize(a);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact dd^c curvature and metric classification on Lie algebras with complex structure";
  m.attr("__version__") = kEngineVersion;

  py::register_exception<InadmissibleMetric>(m, "InadmissibleMetric", PyExc_ValueError);
  py::register_exception<InadmissibleParameters>(m, "InadmissibleParameters", PyExc_ValueError);
  py::register_exception<UnknownFamily>(m, "UnknownFamily", PyExc_KeyError);

  m.def("family_ids", &family_ids);
  m.def("family_document", [](const std::string& id) { return to_json(family(id)).dump(); });
  m.def("ledger_document", [] { return std::string(ledger_resource()); });

  m.def(
      "ddc",
      [](std::optional<std::string> fam, std::optional<std::string> doc, int k, const std::string& set,
         const std::string& metric, const std::string& format) {
        const AlgebraDocument d = document_of(fam, doc);
        const StructureSpec s = structure_of(d, set);
        const MetricSpec g = resolve_metric(d, metric);
        if (k < 1 || k > s.n() - 1) throw std::invalid_argument("power must be between 1 and n-1");
        s.check_parameters(g.omega, g.params);
        const Form f = s.reduce(ddc(s, power(g, k)));
        if (format == "latex") return render(f, FormStyle::Latex);
        if (format == "canonical") return render(f, FormStyle::Canonical);
        if (format == "json") {
          json terms = json::array();
          for (const auto& [mono, c] : f.terms()) terms.push_back({{"monomial", mono.code()}, {"coeff", render(c)}});
          return terms.dump();
        }
        return render(f, FormStyle::Shorthand);
      },
      py::arg("family") = py::none(), py::arg("document") = py::none(), py::arg("power") = 1, py::arg("set") = "",
      py::arg("metric") = "default", py::arg("format") = "text");

  m.def(
      "classify",
      [](std::optional<std::string> fam, std::optional<std::string> doc, const std::string& set,
         const std::string& metric, const std::string& mode, std::optional<std::string> eps, std::uint64_t seed,
         int samples) {
        const AlgebraDocument d = document_of(fam, doc);
        ClassifyOptions opt;
        opt.mode = parse_mode(mode);
        opt.seed = seed;
        opt.samples = samples;
        if (eps) opt.epsilon = parse_rational(*eps);
        ClassificationReport r;
        {
          py::gil_scoped_release release;
          r = classify(structure_of(d, set), resolve_metric(d, metric), opt);
        }
        if (r.label.empty()) r.label = d.id;
        return to_json(r).dump();
      },
      py::arg("family") = py::none(), py::arg("document") = py::none(), py::arg("set") = "",
      py::arg("metric") = "default", py::arg("mode") = "symbolic", py::arg("eps") = py::none(), py::arg("seed") = 1,
      py::arg("samples") = 200);

  m.def(
      "check_structure",
      [](std::optional<std::string> fam, std::optional<std::string> doc, const std::string& set) {
        const StructureReport r = check_structure(structure_of(document_of(fam, doc), set));
        return json{{"integrable", r.integrable},
                    {"jacobi", r.jacobi},
                    {"unimodular", r.unimodular},
                    {"violations", r.violations}}
            .dump();
      },
      py::arg("family") = py::none(), py::arg("document") = py::none(), py::arg("set") = "");

  m.def(
      "epsilon_bound",
      [](std::optional<std::string> fam, std::optional<std::string> doc, const std::string& set,
         const std::string& metric) {
        const AlgebraDocument d = document_of(fam, doc);
        const CurvaturePack pack = curvature_pack(structure_of(d, set), resolve_metric(d, metric));
        const EpsilonBound b = epsilon_bound(pack, {});
        return json{{"feasible", b.feasible},
                    {"sup", b.sup ? json(to_string(*b.sup)) : json(nullptr)},
                    {"exact", b.exact}}
            .dump();
      },
      py::arg("family") = py::none(), py::arg("document") = py::none(), py::arg("set") = "",
      py::arg("metric") = "default");

  m.def(
      "verify",
      [](const std::string& fam, std::uint64_t seed) {
        ReplayOptions opt;
        opt.family = fam;
        opt.seed = seed;
        std::vector<ClaimOutcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = replay_ledger(expected_ledger(), opt);
        }
        json arr = json::array();
        for (const auto& o : outcomes) {
          arr.push_back({{"family", o.family},     {"discrete", o.discrete}, {"check", o.check},
                         {"property", o.property}, {"expected", o.expected}, {"actual", o.actual},
                         {"ok", o.ok}});
        }
        return arr.dump();
      },
      py::arg("family") = "", py::arg("seed") = 1);

  m.def(
      "expression",
      [](const std::string& text, const std::string& doc_json) {
        const AlgebraDocument d = parse_algebra(json::parse(doc_json));
        return render(d.spec.reduce(parse_expression(text, d.spec.params())));
      },
      py::arg("text"), py::arg("document"), "Parses and re-renders a coefficient expression in a document's parameters.");
}
