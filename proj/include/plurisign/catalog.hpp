#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "plurisign/hermitian.hpp"
#include "plurisign/io.hpp"

namespace plurisign {

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Embedded resources.
std::string_view catalog_resource();
std::string_view ledger_resource();

/// The 18 built-in families, in catalog order.
const std::vector<AlgebraDocument>& catalog();
std::vector<std::string> family_ids();
const AlgebraDocument& family(const std::string& id);

/// Validated structure with the given discrete (or continuous) choices substituted.
/// Parameters not mentioned stay symbolic.
StructureSpec instantiate_family(const std::string& id, const Assignment& choices = {});

/// "default" (the family's preference), "generic", "diagonal" or "standard".
MetricSpec family_metric(const AlgebraDocument& doc, const std::string& kind = "default");
/// A metric kind and/or name=value items, e.g. "diagonal,a1=1,a2=1" or "u=0,v=0".
MetricSpec resolve_metric(const AlgebraDocument& doc, const std::string& text);

struct LedgerEntry {
  std::string family;
  Assignment discrete;
  std::string citation;
  nlohmann::json claims;  // array of claim objects, each with a "check" field
};

std::vector<LedgerEntry> parse_ledger(const nlohmann::json& doc);
std::vector<LedgerEntry> expected_ledger();

struct ClaimOutcome {
  std::string family;
  std::string discrete;
  std::string check;
  std::string property;
  std::string expected;
  std::string actual;
  std::string citation;
  bool ok = false;
};

struct ReplayOptions {
  std::uint64_t seed = 1;
  /// Replay only this family when non-empty.
  std::string family;
  int directions = 64;
};

std::vector<ClaimOutcome> replay_ledger(const std::vector<LedgerEntry>& entries, const ReplayOptions& opt = {});
std::string replay_markdown(const std::vector<ClaimOutcome>& outcomes);

/// Certificate that dd^c(omega^k) is a nonnegative combination of
/// i^{(k+1)^2} beta ^ conj(beta), beta = del(phi^J), for the standard metric.
struct ParallelCertificate {
  int k = 0;
  bool zero = false;
  bool certified = false;
  std::string detail;
};
std::vector<ParallelCertificate> proposition_parallel_check(const StructureSpec& s);

}  // namespace plurisign
