#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tac/graded_poly.hpp"

namespace tac {

enum class Status { Pass, Fail, PaperDiscrepancy, Skipped };

/// "pass", "fail", "paper-discrepancy", "skipped".
std::string to_string(Status s);

/// Where an expected value comes from.
enum class Provenance {
  Printed,   // a constant printed in the source formulas
  Derived,   // computed independently by the engine
  Identity,  // both sides of an exact identity
};

std::string to_string(Provenance p);

struct Detail {
  std::string name;
  std::string expected;
  std::string got;
  Provenance provenance = Provenance::Identity;
  bool ok = true;
};

struct CheckResult {
  std::string check_id;
  std::string reference;  // filled from the registry when empty
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Status status = Status::Pass;
  std::vector<Detail> details;
  std::string note;

  void add(Detail d) { details.push_back(std::move(d)); }
  void add_identity(std::string name, bool ok, std::string expected = "", std::string got = "");
  void add_printed(std::string name, const std::string& printed, const std::string& derived);

  /// Pass unless some identity or derived detail failed (Fail) or only
  /// printed constants disagree (PaperDiscrepancy). Skipped stays skipped.
  void settle();
};

CheckResult skipped_check(std::string check_id, nlohmann::ordered_json params, std::string why);

/// Collection of results; a plain value, merged after concurrent runs.
class VerificationReport {
 public:
  void add(CheckResult r);
  void merge(const VerificationReport& o);
  /// Stable order by check id.
  void sort();

  const std::vector<CheckResult>& checks() const { return checks_; }
  bool any_failed() const;
  int count(Status s) const;

  nlohmann::ordered_json to_json(const nlohmann::ordered_json& config) const;
  /// One block per check; failures show their first mismatching detail.
  std::string to_text() const;

 private:
  std::vector<CheckResult> checks_;
};

/// Polynomial as a {monomial: "p/q"} object.
nlohmann::ordered_json to_json(const GradedPoly& p);
/// Series as a {"k/2": coefficient} object.
nlohmann::ordered_json to_json(const RatSeries& s);
nlohmann::ordered_json to_json(const PolySeries& s);

}  // namespace tac
