#include "tac/report.hpp"

#include <algorithm>
#include <sstream>

#include "tac/registry.hpp"

namespace tac {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::PaperDiscrepancy: return "paper-discrepancy";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Printed: return "printed";
    case Provenance::Derived: return "derived";
    case Provenance::Identity: return "identity";
  }
  return "?";
}

void CheckResult::add_identity(std::string name, bool ok, std::string expected, std::string got) {
  details.push_back({std::move(name), std::move(expected), std::move(got), Provenance::Identity, ok});
}

void CheckResult::add_printed(std::string name, const std::string& printed, const std::string& derived) {
  details.push_back({std::move(name), printed, derived, Provenance::Printed, printed == derived});
}

void CheckResult::settle() {
  if (status == Status::Skipped) return;
  bool hard_fail = false, printed_mismatch = false;
  for (const Detail& d : details) {
    if (d.ok) continue;
    if (d.provenance == Provenance::Printed)
      printed_mismatch = true;
    else
      hard_fail = true;
  }
  status = hard_fail ? Status::Fail : printed_mismatch ? Status::PaperDiscrepancy : Status::Pass;
}

CheckResult skipped_check(std::string check_id, nlohmann::ordered_json params, std::string why) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.status = Status::Skipped;
  r.note = std::move(why);
  return r;
}

void VerificationReport::add(CheckResult r) {
  if (r.reference.empty()) r.reference = reference_for(r.check_id);
  checks_.push_back(std::move(r));
}

void VerificationReport::merge(const VerificationReport& o) {
  for (const CheckResult& r : o.checks_) add(r);
}

void VerificationReport::sort() {
  std::stable_sort(checks_.begin(), checks_.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
}

bool VerificationReport::any_failed() const { return count(Status::Fail) > 0; }

int VerificationReport::count(Status s) const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [s](const CheckResult& r) { return r.status == s; }));
}

nlohmann::ordered_json VerificationReport::to_json(const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json out;
  out["version"] = kReportVersion;
  out["config"] = config;
  out["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& r : checks_) {
    nlohmann::ordered_json c;
    c["check_id"] = r.check_id;
    c["paper_ref"] = r.reference;
    c["params"] = r.params;
    c["status"] = to_string(r.status);
    c["details"] = nlohmann::ordered_json::array();
    for (const Detail& d : r.details) {
      c["details"].push_back({{"name", d.name},
                              {"expected", d.expected},
                              {"got", d.got},
                              {"provenance", to_string(d.provenance)},
                              {"ok", d.ok}});
    }
    if (!r.note.empty()) c["note"] = r.note;
    out["checks"].push_back(std::move(c));
  }
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const CheckResult& r : checks_) {
    os << "[" << to_string(r.status) << "] " << r.check_id;
    if (!r.reference.empty()) os << "  (" << r.reference << ")";
    if (!r.params.empty()) os << "  " << r.params.dump();
    os << "\n";
    if (!r.note.empty()) os << "    " << r.note << "\n";
    for (const Detail& d : r.details) {
      bool show_values = !d.ok || d.provenance != Provenance::Identity;
      os << "    " << (d.ok ? "ok  " : "BAD ") << d.name;
      if (show_values) {
        os << ": expected " << (d.expected.empty() ? "-" : d.expected) << ", got " << (d.got.empty() ? "-" : d.got)
           << " [" << to_string(d.provenance) << "]";
      }
      os << "\n";
    }
  }
  os << "summary: " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, "
     << count(Status::PaperDiscrepancy) << " paper-discrepancy, " << count(Status::Skipped) << " skipped\n";
  return os.str();
}

nlohmann::ordered_json to_json(const GradedPoly& p) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    out[p.monomial_string(it->first)] = it->second.to_string();
  return out;
}

nlohmann::ordered_json to_json(const RatSeries& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [k, c] : s.terms()) out[k.to_string()] = c.to_string();
  return out;
}

nlohmann::ordered_json to_json(const PolySeries& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [k, c] : s.terms()) out[k.to_string()] = to_json(c);
  return out;
}

}  // namespace tac
