#include "rigicert/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rigicert {

namespace {

using json = nlohmann::json;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(sub(path, key), "missing field");
  return *it;
}
std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key())) throw InputError(sub(path, it.key()), "unknown field");
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw InputError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(path, "expected a finite number");
  return x;
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw InputError(path, "expected true or false");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path, "expected an array");
  return v;
}

Expectations parse_expected(const json& e, const std::string& path) {
  only_keys(e, path,
            {"corank", "completability", "rigidity", "rigidity_failing", "spherical_space_dim",
             "equilibrium_space_dim", "gd_lower_bound", "nu_lower_bound", "c5_completion_rank"});
  Expectations ex;
  auto count = [&](const char* key, std::optional<std::size_t>& slot) {
    if (e.contains(key)) slot = as_count(e.at(key), sub(path, key));
  };
  auto flag = [&](const char* key, std::optional<bool>& slot) {
    if (e.contains(key)) slot = as_bool(e.at(key), sub(path, key));
  };
  count("corank", ex.corank);
  flag("completability", ex.completability);
  flag("rigidity", ex.rigidity);
  if (e.contains("rigidity_failing")) {
    const std::string p = sub(path, "rigidity_failing");
    std::vector<std::string> names;
    const auto& arr = as_array(e.at("rigidity_failing"), p);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_string()) throw InputError(at(p, k), "expected a string");
      names.push_back(arr[k].get<std::string>());
    }
    ex.rigidity_failing = names;
  }
  count("spherical_space_dim", ex.spherical_space_dim);
  count("equilibrium_space_dim", ex.equilibrium_space_dim);
  count("gd_lower_bound", ex.gd_lower_bound);
  count("nu_lower_bound", ex.nu_lower_bound);
  count("c5_completion_rank", ex.c5_completion_rank);
  return ex;
}

json expected_json(const Expectations& ex) {
  json e = json::object();
  if (ex.corank) e["corank"] = *ex.corank;
  if (ex.completability) e["completability"] = *ex.completability;
  if (ex.rigidity) e["rigidity"] = *ex.rigidity;
  if (ex.rigidity_failing) e["rigidity_failing"] = *ex.rigidity_failing;
  if (ex.spherical_space_dim) e["spherical_space_dim"] = *ex.spherical_space_dim;
  if (ex.equilibrium_space_dim) e["equilibrium_space_dim"] = *ex.equilibrium_space_dim;
  if (ex.gd_lower_bound) e["gd_lower_bound"] = *ex.gd_lower_bound;
  if (ex.nu_lower_bound) e["nu_lower_bound"] = *ex.nu_lower_bound;
  if (ex.c5_completion_rank) e["c5_completion_rank"] = *ex.c5_completion_rank;
  return e;
}

std::string number_text(const json& v) {
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  const double x = v.get<double>();
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_scalar_array(const json& v) {
  for (const auto& x : v)
    if (x.is_array() || x.is_object()) return false;
  return true;
}

void write(std::ostringstream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (auto it = v.begin(); it != v.end(); ++it, ++k) {
      os << inner << json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 1);
      os << (k + 1 < v.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (v.is_array()) {
    if (is_scalar_array(v)) {
      os << "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) os << ", ";
        write(os, v[k], indent + 1);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      os << inner;
      write(os, v[k], indent + 1);
      os << (k + 1 < v.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else if (v.is_number()) {
    os << number_text(v);
  } else {
    os << v.dump();
  }
}

}  // namespace

Fixture parse_fixture(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  only_keys(doc, "", {"version", "name", "graph", "framework", "stress", "expected"});

  const auto version = as_count(field(doc, "", "version"), "version");
  if (version != static_cast<std::size_t>(kFixtureFormatVersion))
    throw InputError("version", "unsupported format version " + std::to_string(version));

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("name", "expected a string");
    name = doc["name"].get<std::string>();
  }

  const json& g = field(doc, "", "graph");
  only_keys(g, "graph", {"n", "edges"});
  const std::size_t n = as_count(field(g, "graph", "n"), "graph.n");
  if (n == 0) throw InputError("graph.n", "need at least one node");
  std::vector<Edge> edges;
  const auto& earr = as_array(field(g, "graph", "edges"), "graph.edges");
  for (std::size_t k = 0; k < earr.size(); ++k) {
    const std::string p = at("graph.edges", k);
    const auto& e = as_array(earr[k], p);
    if (e.size() != 3) throw InputError(p, "expected [i, j, kind]");
    if (!e[2].is_string()) throw InputError(at(p, 2), "expected \"bar\", \"cable\" or \"strut\"");
    Edge edge{as_count(e[0], at(p, 0)), as_count(e[1], at(p, 1)), EdgeKind::Bar};
    try {
      edge.kind = parse_edge_kind(e[2].get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw InputError(at(p, 2), err.what());
    }
    edges.push_back(edge);
  }
  TensegrityGraph graph;
  try {
    graph = TensegrityGraph(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw InputError("graph.edges", err.what());
  }

  const json& fw = field(doc, "", "framework");
  only_keys(fw, "framework", {"d", "positions", "generic"});
  const std::size_t d = as_count(field(fw, "framework", "d"), "framework.d");
  if (d == 0) throw InputError("framework.d", "dimension must be at least 1");
  const auto& parr = as_array(field(fw, "framework", "positions"), "framework.positions");
  if (parr.size() != n)
    throw InputError("framework.positions",
                     "expected " + std::to_string(n) + " positions, got " + std::to_string(parr.size()));
  Matrix pos(idx(n), idx(d));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = at("framework.positions", i);
    const auto& row = as_array(parr[i], p);
    if (row.size() != d)
      throw InputError(p, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < d; ++c) pos(idx(i), idx(c)) = as_real(row[c], at(p, c));
  }
  const bool generic = fw.contains("generic") ? as_bool(fw["generic"], "framework.generic") : false;

  Fixture fx{name, Framework(std::move(graph), std::move(pos), generic), std::nullopt, StressKind::Spherical, {}};

  if (doc.contains("stress")) {
    const json& s = doc["stress"];
    only_keys(s, "stress", {"kind", "order", "entries"});
    if (s.contains("kind")) {
      if (s["kind"] == "spherical")
        fx.stress_kind = StressKind::Spherical;
      else if (s["kind"] == "equilibrium")
        fx.stress_kind = StressKind::Equilibrium;
      else
        throw InputError("stress.kind", "expected \"spherical\" or \"equilibrium\"");
    }
    const std::size_t order = as_count(field(s, "stress", "order"), "stress.order");
    if (order != n)
      throw InputError("stress.order", "order " + std::to_string(order) + " does not match " + std::to_string(n) +
                                           " nodes");
    const auto& ent = as_array(field(s, "stress", "entries"), "stress.entries");
    if (ent.size() != svec_dim(n))
      throw InputError("stress.entries",
                       "expected " + std::to_string(svec_dim(n)) + " entries, got " + std::to_string(ent.size()));
    SymMatrix m(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j, ++k) m.set(i, j, as_real(ent[k], at("stress.entries", k)));
    fx.stress = m;
  }
  if (doc.contains("expected")) fx.expected = parse_expected(doc["expected"], "expected");
  return fx;
}

std::string serialize_fixture(const Fixture& fx) {
  const Framework& f = fx.framework;
  json doc = json::object();
  doc["version"] = kFixtureFormatVersion;
  if (!fx.name.empty()) doc["name"] = fx.name;

  json edges = json::array();
  for (const auto& e : f.graph().edges()) edges.push_back(json::array({e.i, e.j, std::string(to_string(e.kind))}));
  doc["graph"] = {{"n", f.node_count()}, {"edges", edges}};

  json positions = json::array();
  for (std::size_t i = 0; i < f.node_count(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < f.dimension(); ++c) row.push_back(f.positions()(idx(i), idx(c)));
    positions.push_back(row);
  }
  doc["framework"] = {{"d", f.dimension()}, {"positions", positions}, {"generic", f.generic()}};

  if (fx.stress) {
    json entries = json::array();
    for (std::size_t i = 0; i < fx.stress->order(); ++i)
      for (std::size_t j = 0; j <= i; ++j) entries.push_back((*fx.stress)(i, j));
    doc["stress"] = {{"kind", std::string(to_string(fx.stress_kind))},
                     {"order", fx.stress->order()},
                     {"entries", entries}};
  }
  const json expected = expected_json(fx.expected);
  if (!expected.empty()) doc["expected"] = expected;

  std::ostringstream os;
  write(os, doc, 0);
  os << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

}  // namespace rigicert
