// rigicert: command-line front end for the certificate checkers.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 malformed input or arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rigicert/certify.hpp"
#include "rigicert/gallery.hpp"
#include "rigicert/io.hpp"
#include "rigicert/suite.hpp"

namespace {

using namespace rigicert;
using ojson = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError("bad value '" + text + "' for " + what);
  return v;
}

Tolerance resolve_tolerance(const std::vector<std::string>& specs) {
  Tolerance tol;
  if (const char* env = std::getenv("RIGICERT_TOL_REL_EIG")) tol.rel_eig = parse_real(env, "RIGICERT_TOL_REL_EIG");
  for (const auto& spec : specs) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const double v = parse_real(item.substr(eq + 1), key);
      if (key == "rel_eig")
        tol.rel_eig = v;
      else if (key == "abs_residual")
        tol.abs_residual = v;
      else
        throw UsageError("unknown tolerance '" + key + "' (use rel_eig or abs_residual)");
    }
  }
  try {
    tol.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return tol;
}

ojson tolerance_json(const Tolerance& tol) { return {{"rel_eig", tol.rel_eig}, {"abs_residual", tol.abs_residual}}; }

ojson condition_json(const Condition& c) {
  ojson numbers = ojson::object();
  for (const auto& [k, v] : c.numbers) numbers[k] = v;
  return {{"name", c.name}, {"pass", c.pass}, {"required", c.required}, {"diagnostic", c.diagnostic},
          {"numbers", numbers}};
}

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const ojson& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::cout << report["command"].get<std::string>();
  if (report.contains("input")) std::cout << " " << report["input"]["path"].get<std::string>();
  std::cout << "\n";
  if (report.contains("conditions")) {
    for (const auto& c : report["conditions"]) {
      const char* mark = c["pass"].get<bool>() ? "PASS" : (c["required"].get<bool>() ? "FAIL" : "info");
      std::printf("  %-20s %s  %s\n", c["name"].get<std::string>().c_str(), mark,
                  c["diagnostic"].get<std::string>().c_str());
    }
  }
  for (const auto& [key, value] : report.items()) {
    if (key == "command" || key == "input" || key == "conditions" || key == "overall" || key == "tolerance" ||
        key == "wall_time_ms" || key == "items" || key == "argv")
      continue;
    std::cout << "  " << key << ": " << value.dump() << "\n";
  }
  if (report.contains("items")) {
    for (const auto& i : report["items"])
      std::printf("  %-16s %-22s %s  %s\n", i["fixture"].get<std::string>().c_str(),
                  i["check"].get<std::string>().c_str(), i["pass"].get<bool>() ? "PASS" : "FAIL",
                  i["detail"].get<std::string>().c_str());
  }
  if (report.contains("overall")) std::cout << "overall: " << (report["overall"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

ojson header(const std::string& command, const std::vector<std::string>& argv) {
  ojson r;
  r["command"] = command;
  r["argv"] = argv;
  return r;
}

struct Loaded {
  Fixture fixture;
  std::string digest;
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  return {parse_fixture(text), hex_digest(text)};
}

std::string basis_digest(const std::vector<SymMatrix>& basis) {
  std::string bytes;
  char buf[32];
  for (const auto& b : basis)
    for (std::size_t i = 0; i < b.order(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double v = std::round(b(i, j) * 1e9) / 1e9;
        if (v == 0.0) v = 0.0;
        std::snprintf(buf, sizeof buf, "%.9f;", v);
        bytes += buf;
      }
  return hex_digest(bytes);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int cmd_verify(const std::string& path, const std::string& kind, const Tolerance& tol, bool as_json,
               const std::vector<std::string>& argv) {
  const Clock clock;
  const auto [fx, digest] = load(path);
  const Framework& f = fx.framework;
  const SymMatrix stress = fx.stress.value_or(SymMatrix::zero(f.node_count()));

  ojson r = header("verify", argv);
  r["input"] = {{"path", path}, {"digest_fnv1a", digest}, {"stress_present", fx.stress.has_value()}};
  r["kind"] = kind;
  r["tolerance"] = tolerance_json(tol);

  bool overall = false;
  ojson conditions = ojson::array();
  if (kind == "sap") {
    const auto sap = sap_check(f.graph(), stress, tol);
    const bool psd = psd_check(stress, tol);
    conditions.push_back(condition_json({"support", sap.supported, true, sap.supported ? "M vanishes on non-edges" :
                                                                                         sap.diagnostic, {}}));
    conditions.push_back(condition_json({"sap", sap.pass && sap.supported, true, sap.diagnostic,
                                         {{"dimension", static_cast<double>(sap.dimension)}}}));
    conditions.push_back(condition_json(
        {"span_route", sap.span_route_pass, false,
         "kernel span rank " + std::to_string(sap.span_route_rank) + " for corank " + std::to_string(sap.corank),
         {{"span_rank", static_cast<double>(sap.span_route_rank)}, {"corank", static_cast<double>(sap.corank)}}}));
    conditions.push_back(condition_json({"psd", psd, false, psd ? "M is psd" : "M is not psd", {}}));
    overall = sap.supported && sap.pass;
    if (const auto nu = nu_lower_bound(f.graph(), stress, tol)) r["nu_lower_bound"] = *nu;
  } else {
    Certificate c;
    if (kind == "completability")
      c = certify_universal_completability(f, stress, tol);
    else if (kind == "rigidity")
      c = certify_universal_rigidity(f, stress, tol);
    else
      c = certify_generic_universal_rigidity(f, stress, tol);
    for (const auto& cond : c.conditions) conditions.push_back(condition_json(cond));
    overall = c.overall;
    r["failing"] = c.failing();
    if (kind == "completability" && overall) r["gd_lower_bound"] = rank_corank(gram(f), tol).rank;
  }
  r["conditions"] = conditions;
  r["overall"] = overall;
  r["wall_time_ms"] = clock.ms();
  emit(r, as_json);
  return overall ? kPass : kFail;
}

std::pair<std::string, std::size_t> parse_h(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--graph expects family:size, e.g. cycle:5 or complete:4");
  const std::string family = text.substr(0, colon);
  const double size = parse_real(text.substr(colon + 1), "--graph size");
  if (size < 1 || size != std::floor(size)) throw UsageError("--graph size must be a positive integer");
  return {family, static_cast<std::size_t>(size)};
}

int cmd_generate(const std::string& example, std::optional<int> r, const std::string& h, const std::string& which,
                 const std::string& out) {
  auto need_r = [&](int fallback) -> std::size_t {
    const int v = r.value_or(fallback);
    if (v < 0) throw UsageError("--r must be nonnegative");
    return static_cast<std::size_t>(v);
  };
  Fixture fx = [&]() -> Fixture {
    if (example == "octahedron") return octahedron_fixture();
    if (example == "fr") return fr_fixture(need_r(3));
    if (example == "gr") return gr_fixture(need_r(3));
    if (example == "tensor") {
      const auto [family, size] = parse_h(h);
      TensegrityGraph hg;
      if (family == "cycle")
        hg = TensegrityGraph::cycle(size);
      else if (family == "complete")
        hg = TensegrityGraph::complete(size);
      else
        throw UsageError("unknown graph family '" + family + "' (use cycle or complete)");
      return tensor_fixture(need_r(2), hg);
    }
    if (example == "c5") {
      auto [first, second] = c5_fixtures();
      if (which == "first") return first;
      if (which == "second") return second;
      throw UsageError("--which must be first or second");
    }
    if (example == "four_node") return four_node_fixture();
    throw UsageError("unknown example '" + example + "'");
  }();
  write_output(out, serialize_fixture(fx));
  return kPass;
}

int cmd_stress(const std::string& path, const std::string& kind_text, bool find, const std::string& out,
               const Tolerance& tol, bool as_json, const std::vector<std::string>& argv) {
  const Clock clock;
  const auto [fx, digest] = load(path);
  const StressKind kind = kind_text == "equilibrium" ? StressKind::Equilibrium : StressKind::Spherical;
  const auto basis = stress_space(fx.framework, kind, tol);

  ojson r = header("stress", argv);
  r["input"] = {{"path", path}, {"digest_fnv1a", digest}};
  r["kind"] = kind_text;
  r["tolerance"] = tolerance_json(tol);
  r["dimension"] = basis.size();
  r["basis_digest"] = basis_digest(basis);

  int code = kPass;
  if (find) {
    const auto found = find_psd_stress(fx.framework, kind, {}, tol);
    r["found"] = found.has_value();
    if (found) {
      const auto rep = verify_stress(fx.framework, kind, *found, tol);
      r["found_corank"] = rep.corank;
      r["found_verified"] = rep.support_ok && rep.sign_ok && rep.psd_ok && rep.equilibrium_ok;
      r["found_min_eigenvalue"] = rep.min_eigenvalue;
      Fixture with = fx;
      with.stress = *found;
      with.stress_kind = kind;
      if (!out.empty()) {
        write_output(out, serialize_fixture(with));
        r["output"] = out;
      }
    } else {
      code = kFail;
    }
  }
  r["wall_time_ms"] = clock.ms();
  emit(r, as_json);
  return code;
}

int cmd_suite(const Tolerance& tol, bool as_json, std::uint64_t seed, std::size_t count,
              const std::vector<std::string>& argv) {
  const Clock clock;
  const auto report = run_suite(tol, seed, count);
  ojson r = header("suite", argv);
  r["tolerance"] = tolerance_json(tol);
  r["seed"] = seed;
  ojson items = ojson::array();
  for (const auto& i : report.items)
    items.push_back({{"fixture", i.fixture}, {"check", i.check}, {"pass", i.pass}, {"detail", i.detail}});
  r["items"] = items;
  r["overall"] = report.all_pass();
  r["wall_time_ms"] = clock.ms();
  emit(r, as_json);
  return report.all_pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for universal completability and universal rigidity of tensegrity frameworks.\n"
               "Node indices in fixture files are 0-based."};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);

  std::vector<std::string> tol_specs;
  bool as_json = false;

  auto* verify = app.add_subcommand("verify", "Check a certificate for a fixture file");
  std::string verify_path, verify_kind = "completability";
  verify->add_option("input", verify_path, "Fixture file")->required();
  verify->add_option("--kind", verify_kind, "Certificate kind")
      ->check(CLI::IsMember({"completability", "rigidity", "generic-rigidity", "sap"}));
  verify->add_option("--tol", tol_specs, "rel_eig=VALUE and/or abs_residual=VALUE");
  verify->add_flag("--json", as_json, "Emit the report as JSON");

  auto* generate = app.add_subcommand("generate", "Write a gallery fixture");
  std::string example, h = "cycle:5", which = "first", out;
  std::optional<int> r;
  generate->add_option("--example", example, "Gallery example")
      ->required()
      ->check(CLI::IsMember({"octahedron", "fr", "gr", "tensor", "c5", "four_node"}));
  generate->add_option("--r", r, "Family parameter r");
  generate->add_option("--graph", h, "Regular graph H for tensor: cycle:N or complete:N");
  generate->add_option("--which", which, "c5: first or second framework");
  generate->add_option("-o,--output", out, "Output path (default stdout)");

  auto* stress = app.add_subcommand("stress", "Stress space of a fixture file");
  std::string stress_path, stress_kind = "spherical", stress_out;
  bool find = false;
  stress->add_option("input", stress_path, "Fixture file")->required();
  stress->add_option("--kind", stress_kind, "Stress kind")->check(CLI::IsMember({"spherical", "equilibrium"}));
  stress->add_flag("--find", find, "Search for a psd stress");
  stress->add_option("-o,--output", stress_out, "Write the fixture with the found stress here");
  stress->add_option("--tol", tol_specs, "rel_eig=VALUE and/or abs_residual=VALUE");
  stress->add_flag("--json", as_json, "Emit the report as JSON");

  auto* suite = app.add_subcommand("suite", "Run all gallery expectations and cross-checks");
  std::uint64_t seed = 20120101;
  std::size_t count = 100;
  suite->add_option("--tol", tol_specs, "rel_eig=VALUE and/or abs_residual=VALUE");
  suite->add_flag("--json", as_json, "Emit the report as a single JSON document");
  suite->add_option("--seed", seed, "Seed for the random batch");
  suite->add_option("--random", count, "Size of the random batch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    const Tolerance tol = resolve_tolerance(tol_specs);
    if (*verify) return cmd_verify(verify_path, verify_kind, tol, as_json, args);
    if (*generate) return cmd_generate(example, r, h, which, out);
    if (*stress) return cmd_stress(stress_path, stress_kind, find, stress_out, tol, as_json, args);
    if (*suite) return cmd_suite(tol, as_json, seed, count, args);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kFail;
  }
  return kInputError;
}
