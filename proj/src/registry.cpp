#include "tac/registry.hpp"

#include <stdexcept>

#include "registry_data.hpp"

namespace tac {

namespace {

struct Registry {
  nlohmann::json references;
  std::vector<CorollarySpec> corollaries;
};

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    nlohmann::json doc = nlohmann::json::parse(detail::kRegistryJson);
    r.references = doc.at("references");
    for (const auto& c : doc.at("corollaries")) {
      CorollarySpec s;
      s.id = c.at("id").get<std::string>();
      s.family = c.at("family").get<std::string>();
      s.d = c.at("d").get<int>();
      s.n = c.at("n").get<int>();
      s.with_xi = c.value("with_xi", true);
      s.reference = c.at("reference").get<std::string>();
      s.printed = c.at("printed");
      r.corollaries.push_back(std::move(s));
    }
    return r;
  }();
  return reg;
}

}  // namespace

std::string reference_for(const std::string& check_id) {
  const Registry& r = registry();
  if (check_id.rfind("corollary/", 0) == 0) {
    std::string id = check_id.substr(10);
    for (const CorollarySpec& c : r.corollaries)
      if (c.id == id) return c.reference;
    return "";
  }
  if (r.references.contains(check_id)) return r.references.at(check_id).get<std::string>();
  auto slash = check_id.find('/');
  if (slash != std::string::npos && r.references.contains(check_id.substr(0, slash)))
    return r.references.at(check_id.substr(0, slash)).get<std::string>();
  return "";
}

const std::vector<CorollarySpec>& corollary_registry() { return registry().corollaries; }

const CorollarySpec& corollary(const std::string& id) {
  for (const CorollarySpec& c : corollary_registry())
    if (c.id == id) return c;
  throw std::out_of_range("unknown corollary id '" + id + "'");
}

}  // namespace tac
