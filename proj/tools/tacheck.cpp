// Command-line front end: expansions, single verifications and the full suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tac/modular_verify.hpp"

using namespace tac;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Settings {
  int d = 6;
  int n = 1;
  int order = 8;
  double tol = 1e-9;
  bool json = false;
  std::string out;
  bool serial = false;
  bool primed = false;
  bool no_xi = false;
  std::string id;
  std::string form = "q2";
  bool top = false;
  std::string tau = "0,2";
  std::string v = "0.3,0.1";
};

int default_order() {
  if (const char* env = std::getenv("TACHECK_ORDER")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring TACHECK_ORDER='" << env << "'\n";
    }
  }
  return 8;
}

std::complex<double> parse_complex(const std::string& text) {
  std::istringstream is(text);
  double re = 0, im = 0;
  char comma = 0;
  if (!(is >> re) || !(is >> comma) || comma != ',' || !(is >> im) || !is.eof())
    throw std::invalid_argument("expected re,im but got '" + text + "'");
  return {re, im};
}

nlohmann::ordered_json config_json(const std::string& command, const Settings& s) {
  nlohmann::ordered_json j = {{"command", command}};
  if (command == "expand" || command == "verify-even" || command == "verify-odd") {
    j["d"] = s.d;
    j["n"] = s.n;
  }
  j["order"] = s.order;
  j["tol"] = s.tol;
  if (command == "verify-even") {
    j["primed"] = s.primed;
    j["no_xi"] = s.no_xi;
  }
  if (command == "verify-corollary") j["id"] = s.id;
  if (command == "check-numeric") {
    j["tau"] = s.tau;
    j["v"] = s.v;
  }
  if (command == "expand") j["form"] = s.form;
  return j;
}

void emit(const std::string& text, const Settings& s) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out);
  if (!f) throw std::runtime_error("cannot write " + s.out);
  f << text;
}

int finish(const VerificationReport& report, const std::string& command, const Settings& s) {
  emit(s.json ? report.to_json(config_json(command, s)).dump(2) + "\n" : report.to_text(), s);
  return report.any_failed() ? kExitFail : 0;
}

PolySeries expand_form(const Settings& s, HalfInt order) {
  const std::string& f = s.form;
  QFormOptions qo;
  qo.with_xi = !s.no_xi;
  if (f == "q1") return q_form(QFormKind::Q1, s.d, s.n, order, qo);
  if (f == "q2") return q_form(QFormKind::Q2, s.d, s.n, order, qo);
  if (f == "q1p") return q_form(QFormKind::Q1Primed, s.d, s.n, order, qo);
  if (f == "q2p") return q_form(QFormKind::Q2Primed, s.d, s.n, order, qo);
  if (f == "cs-l") return cs_form(CSKind::L, s.d, s.n, order);
  if (f == "cs-w") return cs_form(CSKind::W, s.d, s.n, order);
  if (f == "cs-wp") return cs_form(CSKind::WPrimed, s.d, s.n, order);
  throw std::invalid_argument("unknown form '" + f + "'");
}

int run_expand(const Settings& s) {
  PolySeries p = expand_form(s, HalfInt::from_twice(s.order));
  if (s.top) p = top_component(p);
  if (s.json) {
    nlohmann::ordered_json j = {{"version", kReportVersion}, {"config", config_json("expand", s)}, {"series", to_json(p)}};
    emit(j.dump(2) + "\n", s);
    return 0;
  }
  std::ostringstream os;
  for (const auto& [k, c] : p.terms()) os << "q^" << k.to_string() << ": " << c.to_string() << "\n";
  os << "(known through q^" << p.order().to_string() << ")\n";
  emit(os.str(), s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of twisted anomaly cancellation formulas"};
  app.require_subcommand(1);
  Settings s;
  s.order = default_order();

  auto common = [&](CLI::App* sub, bool with_dn) {
    if (with_dn) {
      sub->add_option("--d", s.d, "half the manifold dimension (2d or 2d-1)")->capture_default_str();
      sub->add_option("--n", s.n, "twist parameter")->capture_default_str();
    }
    sub->add_option("--order", s.order, "truncation in half-powers of q (env TACHECK_ORDER)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol", s.tol, "numeric tolerance")->capture_default_str();
    sub->add_flag("--json", s.json, "machine-readable report");
    sub->add_option("--out", s.out, "write the report to a file");
  };

  CLI::App* expand = app.add_subcommand("expand", "print the q-expansion of a form");
  common(expand, true);
  expand->add_option("--form", s.form, "q1, q2, q1p, q2p, cs-l, cs-w or cs-wp")->capture_default_str();
  expand->add_flag("--top", s.top, "keep only the top-degree component");
  expand->add_flag("--no-xi", s.no_xi, "replace xi by a trivial bundle");

  CLI::App* even = app.add_subcommand("verify-even", "even-dimensional cancellation formula");
  common(even, true);
  even->add_flag("--primed", s.primed, "the variant with the extra xi factor");
  even->add_flag("--no-xi", s.no_xi, "replace xi by a trivial bundle");

  CLI::App* odd = app.add_subcommand("verify-odd", "transgressed (Chern-Simons) formula");
  common(odd, true);

  CLI::App* cor = app.add_subcommand("verify-corollary", "one registry entry");
  common(cor, false);
  cor->add_option("--id", s.id, "corollary id, e.g. 3.4")->required();

  CLI::App* numeric = app.add_subcommand("check-numeric", "transformation laws in floating point");
  common(numeric, false);
  numeric->add_option("--tau", s.tau, "tau as re,im")->capture_default_str();
  numeric->add_option("--v", s.v, "v as re,im")->capture_default_str();

  CLI::App* all = app.add_subcommand("all", "the full suite");
  common(all, false);
  all->add_flag("--serial", s.serial, "run checks one after another");

  CLI11_PARSE(app, argc, argv);

  const HalfInt order = HalfInt::from_twice(s.order);
  try {
    VerificationReport report;
    if (expand->parsed()) return run_expand(s);
    if (even->parsed()) {
      report.add(verify_even(s.d, s.n, order, {s.primed, !s.no_xi}));
      return finish(report, "verify-even", s);
    }
    if (odd->parsed()) {
      report.add(verify_odd(s.d, s.n, order));
      return finish(report, "verify-odd", s);
    }
    if (cor->parsed()) {
      report.add(verify_corollary(s.id, order));
      return finish(report, "verify-corollary", s);
    }
    if (numeric->parsed()) {
      report.add(verify_numeric_laws({parse_complex(s.tau)}, parse_complex(s.v), s.tol));
      return finish(report, "check-numeric", s);
    }
    RunAllOptions opts;
    opts.order = order;
    opts.tol = s.tol;
    opts.parallel = !s.serial;
    return finish(run_all(opts), "all", s);
  } catch (const BeyondTruncation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
