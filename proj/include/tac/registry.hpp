#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace tac {

inline constexpr int kReportVersion = 1;

/// Citation string attached to a check id ("" when unknown). Ids of the form
/// "family/dXnY" fall back to the family entry.
std::string reference_for(const std::string& check_id);

/// One specialized cancellation formula: which verifier to run, at which
/// (d, n), and the constants printed for it.
struct CorollarySpec {
  std::string id;
  std::string family;  // "even", "primed" or "odd"
  int d = 0;
  int n = 0;
  bool with_xi = true;
  std::string reference;
  nlohmann::json printed;
};

const std::vector<CorollarySpec>& corollary_registry();

/// Throws std::out_of_range for an unknown id.
const CorollarySpec& corollary(const std::string& id);

}  // namespace tac
