#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plurisign/hermitian.hpp"
#include "plurisign/liecomplex.hpp"

namespace plurisign {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// JSON description of a Lie algebra with complex structure:
/// {"schema": 1, "n": 3, "parameters": [...], "rewrites": [...], "d": {"phi3": [...]}, "label": "..."}.
struct AlgebraDocument {
  std::string id;
  StructureSpec spec;
  /// "generic" or "diagonal".
  std::string default_metric = "generic";
  std::vector<std::string> lie_algebras;
  std::string anchor;
  std::string notes;
};

AlgebraDocument parse_algebra(const nlohmann::json& doc);
AlgebraDocument load_algebra(const std::string& path);
nlohmann::json to_json(const AlgebraDocument& doc);
/// Document for a bare structure (label used as id).
nlohmann::json to_json(const StructureSpec& s);

nlohmann::json parameter_to_json(const Parameter& p);
Parameter parameter_from_json(const nlohmann::json& j);

/// "rho=1,D=1/2+i" with values parsed as Gaussian rationals.
Assignment parse_assignment(const std::string& text);
std::string to_string(const Assignment& a);
nlohmann::json to_json(const Assignment& a);

nlohmann::json to_json(const ConditionSet& c);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ClassificationReport& r);
std::string to_markdown(const ClassificationReport& r);

struct RunReport {
  nlohmann::json inputs;
  std::vector<ClassificationReport> reports;
  std::optional<double> seconds;  // only emitted when timing was requested
};
nlohmann::json to_json(const RunReport& r);
std::string to_markdown(const RunReport& r);

}  // namespace plurisign
