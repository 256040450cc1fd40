#include "conorm/config.hpp"

#include <sstream>

#include "conorm/catalog.hpp"

namespace conorm {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path, "missing key \"" + key + "\"");
  return *it;
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t as_index(const json& j, const std::string& path) {
  auto v = as_int(j, path);
  if (v < 0) throw ConfigError(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

Vec int_vector(const json& j, const std::string& path) {
  Vec out;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_int(a[i], child(path, i)));
  return out;
}

std::vector<std::size_t> index_vector(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_index(a[i], child(path, i)));
  return out;
}

std::vector<Vec> matrix(const json& j, const std::string& path) {
  std::vector<Vec> rows;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows.push_back(int_vector(a[i], child(path, i)));
    if (rows.back().size() != rows.front().size()) throw ConfigError(child(path, i), "ragged matrix");
  }
  return rows;
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) throw ConfigError(child(path, it.key()), "unknown key");
  }
}

GroupSpec parse_group(const json& j, const std::string& path) {
  GroupSpec g;
  if (j.is_string()) {
    g.preset = j.get<std::string>();
    return g;
  }
  if (!j.is_object()) throw ConfigError(path, "expected a preset name or an object");
  if (j.contains("preset")) {
    reject_unknown(j, path, {"preset", "n"});
    std::string name = as_string(j["preset"], child(path, "preset"));
    if (j.contains("n")) name += std::to_string(as_index(j["n"], child(path, "n")));
    g.preset = name;
    return g;
  }
  reject_unknown(j, path, {"rank", "roots", "coroots", "simple"});
  ExplicitDatum d;
  d.rank = as_index(require(j, "rank", path), child(path, "rank"));
  d.roots = matrix(require(j, "roots", path), child(path, "roots"));
  d.coroots = matrix(require(j, "coroots", path), child(path, "coroots"));
  if (d.roots.size() != d.coroots.size()) throw ConfigError(child(path, "coroots"), "roots and coroots differ in number");
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (d.roots[i].size() != d.rank) throw ConfigError(child(child(path, "roots"), i), "length differs from rank");
    if (d.coroots[i].size() != d.rank) throw ConfigError(child(child(path, "coroots"), i), "length differs from rank");
  }
  if (j.contains("simple")) d.simple = index_vector(j["simple"], child(path, "simple"));
  g.datum = d;
  return g;
}

FiniteGroupSpec parse_finite_group(const json& j, const std::string& path) {
  FiniteGroupSpec g;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "S3" || s == "symmetric3") {
      g.kind = "symmetric3";
      g.order = 6;
      return g;
    }
    if (s == "trivial") return g;
    throw ConfigError(path, "unknown group \"" + s + "\"");
  }
  if (!j.is_object()) throw ConfigError(path, "expected a group description");
  reject_unknown(j, path, {"cyclic", "symmetric3", "table", "trivial"});
  if (j.contains("cyclic")) {
    g.kind = "cyclic";
    g.order = as_index(j["cyclic"], child(path, "cyclic"));
    if (g.order == 0) throw ConfigError(child(path, "cyclic"), "order must be positive");
  } else if (j.contains("symmetric3")) {
    g.kind = "symmetric3";
    g.order = 6;
  } else if (j.contains("table")) {
    g.kind = "table";
    const auto& t = as_array(j["table"], child(path, "table"));
    for (std::size_t i = 0; i < t.size(); ++i) g.table.push_back(index_vector(t[i], child(child(path, "table"), i)));
    g.order = g.table.size();
    try {
      FiniteGroup check(g.table);
    } catch (const Error& e) {
      throw ConfigError(child(path, "table"), e.what());
    }
  }
  return g;
}

ActionSpec parse_action(const json& j, const std::string& path) {
  ActionSpec a;
  if (j.is_string()) {
    a.preset = j.get<std::string>();
    return a;
  }
  if (!j.is_object()) throw ConfigError(path, "expected an action name or an object");
  if (j.contains("preset")) {
    reject_unknown(j, path, {"preset"});
    a.preset = as_string(j["preset"], child(path, "preset"));
    return a;
  }
  reject_unknown(j, path, {"group", "diagrams", "twists"});
  a.group = parse_finite_group(require(j, "group", path), child(path, "group"));
  const auto& d = as_array(require(j, "diagrams", path), child(path, "diagrams"));
  for (std::size_t i = 0; i < d.size(); ++i) a.diagrams.push_back(matrix(d[i], child(child(path, "diagrams"), i)));
  if (a.diagrams.size() != a.group.order)
    throw ConfigError(child(path, "diagrams"), "expected one diagram per group element");
  if (j.contains("twists")) {
    const auto& t = as_array(j["twists"], child(path, "twists"));
    for (std::size_t i = 0; i < t.size(); ++i) a.twists.push_back(torsion_from_json(t[i], child(child(path, "twists"), i)));
    if (a.twists.size() != a.group.order)
      throw ConfigError(child(path, "twists"), "expected one twist per group element");
  }
  return a;
}

json matrix_json(const std::vector<Vec>& m) {
  json out = json::array();
  for (const auto& r : m) out.push_back(r);
  return out;
}

LatticeMap to_map(const std::vector<Vec>& rows, std::size_t n) {
  if (rows.size() != n) throw InvalidArgument("matrix has the wrong number of rows");
  return LatticeMap::from_rows(rows, n);
}

FiniteGroup build_group(const FiniteGroupSpec& g) {
  if (g.kind == "cyclic") return FiniteGroup::cyclic(g.order);
  if (g.kind == "symmetric3") return FiniteGroup::symmetric3();
  if (g.kind == "table") return FiniteGroup(g.table);
  return FiniteGroup::trivial();
}

}  // namespace

json torsion_to_json(const TorsionVector& t) { return json{{"num", t.numerators()}, {"den", t.denominator()}}; }

TorsionVector torsion_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_point(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
  }
  reject_unknown(j, path, {"num", "den"});
  Vec num = int_vector(require(j, "num", path), child(path, "num"));
  std::int64_t den = as_int(require(j, "den", path), child(path, "den"));
  if (den <= 0) throw ConfigError(child(path, "den"), "denominator must be positive");
  return TorsionVector(num, den);
}

TorsionVector parse_point(const std::string& text) {
  RatVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto slash = item.find('/');
    try {
      std::int64_t n = std::stoll(item.substr(0, slash));
      std::int64_t d = slash == std::string::npos ? 1 : std::stoll(item.substr(slash + 1));
      if (d <= 0) throw InvalidArgument("nonpositive denominator in \"" + item + "\"");
      v.push_back(Rational(n, d));
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot read \"" + item + "\" as a fraction");
    }
  }
  if (v.empty()) throw InvalidArgument("empty point");
  return TorsionVector::from_rationals(v);
}

JobConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "expected an object");
  reject_unknown(doc, "", {"group", "action", "frobenius", "qs", "normal_subgroup", "points", "isogeny", "product",
                           "trivial_order"});
  JobConfig c;
  if (doc.contains("group")) c.group = parse_group(doc["group"], "/group");
  if (doc.contains("action")) c.action = parse_action(doc["action"], "/action");
  if (doc.contains("frobenius")) {
    const auto& f = doc["frobenius"];
    reject_unknown(f, "/frobenius", {"q", "tau", "source_tau"});
    FrobeniusSpec fs;
    fs.q = as_int(require(f, "q", "/frobenius"), "/frobenius/q");
    if (prime_of_prime_power(fs.q) == 0) throw ConfigError("/frobenius/q", "not a prime power");
    if (f.contains("tau")) fs.tau = matrix(f["tau"], "/frobenius/tau");
    if (f.contains("source_tau")) fs.source_tau = matrix(f["source_tau"], "/frobenius/source_tau");
    c.frobenius = fs;
  }
  if (doc.contains("qs")) {
    c.qs = int_vector(doc["qs"], "/qs");
    for (std::size_t i = 0; i < c.qs.size(); ++i)
      if (prime_of_prime_power(c.qs[i]) == 0) throw ConfigError(child("/qs", i), "not a prime power");
  }
  if (doc.contains("normal_subgroup")) c.normal_subgroup = index_vector(doc["normal_subgroup"], "/normal_subgroup");
  if (doc.contains("points")) {
    const auto& p = as_array(doc["points"], "/points");
    for (std::size_t i = 0; i < p.size(); ++i) c.points.push_back(torsion_from_json(p[i], child("/points", i)));
  }
  if (doc.contains("isogeny")) c.isogeny = as_string(doc["isogeny"], "/isogeny");
  if (doc.contains("product")) {
    const auto& p = doc["product"];
    reject_unknown(p, "/product", {"r", "m"});
    c.product = std::make_pair(as_index(require(p, "r", "/product"), "/product/r"),
                               as_index(require(p, "m", "/product"), "/product/m"));
  }
  if (doc.contains("trivial_order")) c.trivial_order = as_index(doc["trivial_order"], "/trivial_order");
  return c;
}

JobConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const JobConfig& c) {
  json out = json::object();
  if (c.group.preset) {
    out["group"] = json{{"preset", *c.group.preset}};
  } else if (c.group.datum) {
    const auto& d = *c.group.datum;
    json g{{"rank", d.rank}, {"roots", matrix_json(d.roots)}, {"coroots", matrix_json(d.coroots)}};
    if (d.simple) g["simple"] = *d.simple;
    out["group"] = g;
  }
  if (c.action) {
    const auto& a = *c.action;
    if (a.preset) {
      out["action"] = json{{"preset", *a.preset}};
    } else {
      json g;
      if (a.group.kind == "cyclic") g = json{{"cyclic", a.group.order}};
      else if (a.group.kind == "symmetric3") g = json{{"symmetric3", true}};
      else if (a.group.kind == "table") g = json{{"table", a.group.table}};
      else g = json{{"trivial", true}};
      json ds = json::array();
      for (const auto& d : a.diagrams) ds.push_back(matrix_json(d));
      json act{{"group", g}, {"diagrams", ds}};
      if (!a.twists.empty()) {
        json ts = json::array();
        for (const auto& t : a.twists) ts.push_back(torsion_to_json(t));
        act["twists"] = ts;
      }
      out["action"] = act;
    }
  }
  if (c.frobenius) {
    json f{{"q", c.frobenius->q}};
    if (c.frobenius->tau) f["tau"] = matrix_json(*c.frobenius->tau);
    if (c.frobenius->source_tau) f["source_tau"] = matrix_json(*c.frobenius->source_tau);
    out["frobenius"] = f;
  }
  if (!c.qs.empty()) out["qs"] = c.qs;
  if (c.normal_subgroup) out["normal_subgroup"] = *c.normal_subgroup;
  if (!c.points.empty()) {
    json ps = json::array();
    for (const auto& p : c.points) ps.push_back(torsion_to_json(p));
    out["points"] = ps;
  }
  if (c.isogeny) out["isogeny"] = *c.isogeny;
  if (c.product) out["product"] = json{{"r", c.product->first}, {"m", c.product->second}};
  if (c.trivial_order) out["trivial_order"] = *c.trivial_order;
  return out;
}

BasedRootDatum resolve_group(const JobConfig& c) {
  if (c.group.preset) {
    try {
      return preset(*c.group.preset).datum;
    } catch (const Error& e) {
      throw ConfigError("/group/preset", e.what());
    }
  }
  if (!c.group.datum) throw ConfigError("/group", "no group given");
  const auto& d = *c.group.datum;
  RootDatum rd(d.rank, d.roots, d.coroots);
  auto v = validate(rd);
  if (!v.ok()) throw ConfigError("/group", "not a root datum: " + v.violations.front());
  try {
    return d.simple ? BasedRootDatum(rd, *d.simple) : standard_base(rd);
  } catch (const Error& e) {
    throw ConfigError("/group/simple", e.what());
  }
}

GammaAction resolve_action(const JobConfig& c) {
  if (!c.action) return GammaAction::trivial(resolve_group(c), 1);
  const auto& a = *c.action;
  if (a.preset) {
    if (!c.group.preset) throw ConfigError("/action/preset", "a preset action needs a preset group");
    try {
      return preset_action(*c.group.preset, *a.preset);
    } catch (const Error& e) {
      throw ConfigError("/action/preset", e.what());
    }
  }
  BasedRootDatum b = resolve_group(c);
  const std::size_t n = b.rank();
  std::vector<LatticeMap> diagrams;
  for (std::size_t i = 0; i < a.diagrams.size(); ++i) {
    try {
      diagrams.push_back(to_map(a.diagrams[i], n));
    } catch (const Error& e) {
      throw ConfigError("/action/diagrams/" + std::to_string(i), e.what());
    }
  }
  std::vector<TorsionVector> twists = a.twists;
  if (twists.empty()) twists.assign(a.group.order, TorsionVector(n));
  for (std::size_t i = 0; i < twists.size(); ++i)
    if (twists[i].rank() != n) throw ConfigError("/action/twists/" + std::to_string(i), "wrong rank");
  GammaAction out;
  try {
    out = GammaAction(build_group(a.group), b, diagrams, twists, "config");
  } catch (const Error& e) {
    throw ConfigError("/action", e.what());
  }
  auto v = validate_action(out);
  if (!v.ok()) throw ConfigError("/action", "invalid action: " + v.violations.front());
  return out;
}

FrobeniusStructure resolve_frobenius(const JobConfig& c, std::size_t rank, bool source) {
  if (!c.frobenius) throw ConfigError("/frobenius", "no Frobenius given");
  const auto& tau = source ? c.frobenius->source_tau : c.frobenius->tau;
  const std::string path = source ? "/frobenius/source_tau" : "/frobenius/tau";
  if (!tau) return FrobeniusStructure::split(c.frobenius->q, rank);
  try {
    return FrobeniusStructure(c.frobenius->q, to_map(*tau, rank));
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace conorm
