// Command-line front end: fold, conorm, classes, lift and verify jobs
// described by flags or a JSON configuration.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "conorm/catalog.hpp"
#include "conorm/classes.hpp"
#include "conorm/config.hpp"

using namespace conorm;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct Options {
  std::string config_path;
  std::string preset_name;
  std::string action_name;
  std::int64_t q = 0;
  std::string format = "table";
  std::string budget = "full";
  std::vector<std::string> points;
  std::vector<std::size_t> normal;
  std::string isogeny;
  std::size_t r = 0, m = 0;
  std::string which;
};

struct Report {
  json data = json::object();
  std::ostringstream table;
  bool pass = true;
};

std::string pretty_type(const std::string& t) {
  std::string out;
  for (char c : t) out += c == 'x' ? std::string("×") : std::string(1, c);
  return out;
}

// Cartan type with the orthogonal names D2 = A1xA1 and D3 = A3 shown when
// the fixed group is semisimple of that type.
std::string type_line(const BasedRootDatum& b) {
  std::string t = cartan_type(b).to_string();
  std::string alias;
  if (b.semisimple_rank() == b.rank()) {
    if (t == "A1xA1") alias = "D2";
    if (t == "A3") alias = "D3";
  }
  if (alias.empty()) return pretty_type(t);
  return alias + " (=" + pretty_type(t) + ")";
}

std::string rows_to_string(const LatticeMap& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.codomain_rank(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.domain_rank(); ++j) os << (j ? " " : "") << m(i, j);
    os << "]\n";
  }
  return os.str();
}

json matrix_json(const LatticeMap& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.codomain_rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.domain_rank(); ++j) row.push_back(static_cast<std::int64_t>(m(i, j)));
    out.push_back(row);
  }
  return out;
}

JobConfig load(const Options& o) {
  JobConfig c;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("", "cannot open " + o.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    c = parse_config_text(ss.str());
  }
  if (!o.preset_name.empty()) c.group = GroupSpec{o.preset_name, std::nullopt};
  if (!o.action_name.empty()) {
    ActionSpec a;
    a.preset = o.action_name;
    c.action = a;
  }
  if (o.q) {
    if (prime_of_prime_power(o.q) == 0) throw ConfigError("--q", "not a prime power");
    if (!c.frobenius) c.frobenius = FrobeniusSpec{};
    c.frobenius->q = o.q;
    c.qs = {o.q};
  }
  for (const auto& p : o.points) {
    try {
      c.points.push_back(parse_point(p));
    } catch (const Error& e) {
      throw ConfigError("--point", e.what());
    }
  }
  if (!o.normal.empty()) c.normal_subgroup = o.normal;
  if (!o.isogeny.empty()) c.isogeny = o.isogeny;
  if (o.r || o.m) c.product = std::make_pair(o.r ? o.r : 2, o.m ? o.m : 1);
  if (o.m && !o.r) c.trivial_order = o.m;
  return c;
}

std::vector<std::int64_t> budget_qs(const JobConfig& c, const Options& o) {
  if (!c.qs.empty()) return c.qs;
  if (o.budget == "small") return {2};
  return {2, 3, 5};
}

std::string action_label(const GammaAction& a) {
  return (a.name().empty() ? std::string("action") : a.name()) + " (|Gamma| = " + std::to_string(a.group().size()) + ")";
}

// ---------------------------------------------------------------- commands

void cmd_fold(const JobConfig& c, Report& r) {
  GammaAction a = resolve_action(c);
  FoldedDatum f = fold(a);
  const auto& rd = f.fixed.datum();
  r.data["action"] = a.name();
  r.data["type"] = cartan_type(f.fixed).to_string();
  r.data["rank"] = rd.rank();
  r.data["restriction"] = matrix_json(f.restriction);
  json roots = json::array();
  for (std::size_t i = 0; i < rd.size(); ++i) {
    roots.push_back(json{{"root", rd.root(i)},
                         {"coroot", rd.coroot(i)},
                         {"positive", f.fixed.is_positive(i)},
                         {"multiplier", f.provenance[i].multiplier},
                         {"source_roots", f.provenance[i].source_roots}});
  }
  r.data["roots"] = roots;
  std::vector<std::size_t> simple = f.fixed.simple_indices();
  r.data["simple"] = simple;

  r.table << action_label(a) << "\n";
  r.table << "type " << type_line(f.fixed) << "\n";
  r.table << "rank " << rd.rank() << ", " << rd.size() << " roots, semisimple rank " << f.fixed.semisimple_rank()
          << "\n";
  r.table << "restriction X^*(T~) -> X^*(T):\n" << rows_to_string(f.restriction);
  r.table << "simple roots:\n";
  for (auto i : simple)
    r.table << "  " << to_string(rd.root(i)) << "  coroot " << to_string(rd.coroot(i)) << "  c = "
            << f.provenance[i].multiplier << "  from " << f.provenance[i].source_roots.size() << " source root(s)\n";
}

void cmd_conorm(const JobConfig& c, Report& r) {
  GammaAction a = resolve_action(c);
  ConormData cd = build_conorm(a);
  auto check = check_norm(cd.norm);
  r.pass = check.ok();
  r.data["conorm"] = matrix_json(cd.conorm_matrix);
  r.data["norm_on_cochar"] = matrix_json(cd.norm.norm_on_cochar);
  r.data["adjoint"] = check.ok();
  r.data["violations"] = check.violations;
  r.table << action_label(a) << "\n";
  r.table << "conorm X_v(T^*) -> X_v(T~^*) (" << cd.target_rank() << " x " << cd.source_rank() << "):\n"
          << rows_to_string(cd.conorm_matrix);
  r.table << "norm on X_v(T~):\n" << rows_to_string(cd.norm.norm_on_cochar);
  r.table << "adjointness: " << (check.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& v : check.violations) r.table << "  " << v << "\n";
}

void cmd_classes(const JobConfig& c, Report& r, bool lift) {
  if (!c.frobenius || c.frobenius->q == 0) throw ConfigError("/frobenius/q", "classes need q (--q)");
  GammaAction a = resolve_action(c);
  FoldedDatum f = fold(a);
  WeylOrbits small = dual_group_orbits(f.fixed.datum());
  FrobeniusStructure frob = resolve_frobenius(c, small.rank());
  auto classes = enumerate_stable_classes(small, frob);
  std::optional<ConormData> cd;
  std::optional<WeylOrbits> big;
  std::optional<FrobeniusStructure> big_frob;
  if (lift) {
    cd = build_conorm(f);
    big = dual_group_orbits(a.datum());
    big_frob = resolve_frobenius(c, a.rank(), true);
  }
  json rows = json::array();
  r.table << action_label(a) << ", fixed group " << type_line(f.fixed) << ", q = " << frob.q << "\n";
  r.table << classes.size() << " stable semisimple classes in the dual group\n";
  std::size_t k = 0;
  for (const auto& sc : classes) {
    const auto& x = sc.cls.representative;
    json row{{"representative", torsion_to_json(x)}, {"order", x.denominator()}, {"orbit_size", small.orbit(x).size()}};
    r.table << "  " << ++k << "  " << x.to_string() << "  order " << x.denominator() << "  orbit "
            << small.orbit(x).size();
    if (lift) {
      StableClass image = lift_stable_class(*cd, *big, sc, *big_frob);
      row["image"] = torsion_to_json(image.cls.representative);
      r.table << "  ->  " << image.cls.representative.to_string();
    }
    r.table << "\n";
    rows.push_back(row);
  }
  r.data["q"] = frob.q;
  r.data["classes"] = rows;
}

void emit_verify(const VerifyReport& v, Report& r) {
  r.pass = r.pass && v.pass;
  json entry{{"name", v.name}, {"pass", v.pass}, {"details", v.details}, {"witnesses", v.witnesses}};
  if (!r.data.contains("reports")) r.data["reports"] = json::array();
  r.data["reports"].push_back(entry);
  r.table << v.name << ": " << (v.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& d : v.details) r.table << "  " << d << "\n";
  for (const auto& w : v.witnesses) r.table << "  witness: " << w << "\n";
}

void cmd_verify(const JobConfig& c, const Options& o, Report& r) {
  const auto qs = budget_qs(c, o);
  const std::string& w = o.which;
  if (w == "product") {
    auto [rr, m] = c.product.value_or(std::make_pair<std::size_t, std::size_t>(2, 1));
    emit_verify(verify_product_conorm(rr, m, resolve_group(c)), r);
  } else if (w == "trivial") {
    emit_verify(verify_trivial_conorm(resolve_group(c), c.trivial_order.value_or(2), qs), r);
  } else if (w == "normal-subgroup") {
    GammaAction a = resolve_action(c);
    std::vector<std::size_t> normal;
    if (c.normal_subgroup) {
      normal = *c.normal_subgroup;
      if (!a.group().is_normal(normal)) throw ConfigError("/normal_subgroup", "not a normal subgroup");
    } else {
      // smallest nontrivial proper normal subgroup
      for (const auto& n : a.group().normal_subgroups())
        if (n.size() > 1 && n.size() < a.group().size() && (normal.empty() || n.size() < normal.size())) normal = n;
      if (normal.empty()) throw ConfigError("/normal_subgroup", "the group has no proper nontrivial normal subgroup");
    }
    emit_verify(verify_normal_subgroup_composition(a, normal, qs), r);
  } else if (w == "isogeny") {
    if (!c.isogeny) throw ConfigError("/isogeny", "name an isogeny (--isogeny)");
    std::string action = c.action && c.action->preset ? *c.action->preset : "";
    IsogenyPreset ip;
    try {
      ip = preset_isogeny(*c.isogeny, action);
    } catch (const InvalidArgument& e) {
      throw ConfigError("/isogeny", e.what());
    }
    emit_verify(verify_isogeny(ip.source_action, ip.target_action, ip.isogeny), r);
  } else if (w == "pinning") {
    emit_verify(verify_pinning_factorization(resolve_action(c), qs), r);
  } else if (w == "levi") {
    if (c.points.empty()) throw ConfigError("/points", "levi needs at least one point (--point)");
    GammaAction a = resolve_action(c);
    const std::size_t m = fold(a).fixed.rank();
    for (std::size_t i = 0; i < c.points.size(); ++i)
      if (c.points[i].rank() != m)
        throw ConfigError("/points/" + std::to_string(i), "point must have rank " + std::to_string(m));
    for (const auto& s : c.points) emit_verify(verify_levi_factorization(a, s), r);
  } else if (w == "root-inclusion") {
    emit_verify(verify_root_inclusion(resolve_action(c)), r);
  } else if (w == "long-roots") {
    emit_verify(verify_long_roots(resolve_action(c)), r);
  } else {
    throw ConfigError("verify", "unknown check \"" + w + "\"");
  }
  r.data["pass"] = r.pass;
}

void cmd_presets(Report& r) {
  json rows = json::array();
  for (const auto& [p, a] : catalog_actions()) {
    rows.push_back(json{{"preset", p}, {"action", a}});
    r.table << p << "  " << a << "\n";
  }
  r.data["actions"] = rows;
  json iso = json::array();
  r.table << "isogenies:\n";
  for (const auto& [n, a] : catalog_isogenies()) {
    iso.push_back(json{{"isogeny", n}, {"action", a}});
    r.table << "  " << n << "  " << a << "\n";
  }
  r.data["isogenies"] = iso;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folding, conorms and stable classes for finite group actions on reductive groups"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON job configuration");
    sub->add_option("--preset", o.preset_name, "group preset, e.g. GL4, E6ad, GL2xGL2");
    sub->add_option("--action", o.action_name, "action preset, e.g. outer-SO, triality");
    sub->add_option("--q", o.q, "field size (a prime power)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--budget", o.budget, "q values for verification: small {2} or full {2,3,5}")
        ->check(CLI::IsMember({"small", "full"}));
  };
  auto* fold_cmd = app.add_subcommand("fold", "fixed-group root datum");
  auto* conorm_cmd = app.add_subcommand("conorm", "conorm and norm matrices");
  auto* classes_cmd = app.add_subcommand("classes", "stable semisimple classes of the dual of the fixed group");
  auto* lift_cmd = app.add_subcommand("lift", "stable classes with their images under the conorm");
  auto* verify_cmd = app.add_subcommand("verify", "check a factorization property");
  auto* presets_cmd = app.add_subcommand("presets", "list catalog actions and isogenies");
  for (auto* s : {fold_cmd, conorm_cmd, classes_cmd, lift_cmd, verify_cmd, presets_cmd}) common(s);
  verify_cmd
      ->add_option("which", o.which,
                   "product | trivial | normal-subgroup | isogeny | pinning | levi | root-inclusion | long-roots")
      ->required();
  verify_cmd->add_option("--point", o.points, "torus point of the dual fixed group, e.g. 0,0,1/3,2/3");
  verify_cmd->add_option("--normal", o.normal, "elements of the normal subgroup");
  verify_cmd->add_option("--isogeny", o.isogeny, "isogeny preset, e.g. SL2-PGL2");
  verify_cmd->add_option("--r", o.r, "number of factors (product)");
  verify_cmd->add_option("--m", o.m, "stabilizer order (product) or group order (trivial)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  Report r;
  try {
    JobConfig c = presets_cmd->parsed() ? JobConfig{} : load(o);
    // an isogeny preset names both of its groups
    bool needs_group = !presets_cmd->parsed() && !(verify_cmd->parsed() && o.which == "isogeny");
    if (needs_group && !c.group.preset && !c.group.datum)
      throw ConfigError("/group", "no group given (--preset or --config)");
    if (fold_cmd->parsed()) cmd_fold(c, r);
    else if (conorm_cmd->parsed()) cmd_conorm(c, r);
    else if (classes_cmd->parsed()) cmd_classes(c, r, false);
    else if (lift_cmd->parsed()) cmd_classes(c, r, true);
    else if (verify_cmd->parsed()) cmd_verify(c, o, r);
    else cmd_presets(r);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (o.format == "json") {
      std::cout << json{{"pass", false}, {"error", e.what()}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kFail;
  }
  if (o.format == "json") std::cout << r.data.dump(2) << "\n";
  else std::cout << r.table.str();
  return r.pass ? kPass : kFail;
}
