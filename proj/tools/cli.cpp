#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "locfin/coalg.hpp"
#include "locfin/error.hpp"
#include "locfin/ext.hpp"
#include "locfin/frontier.hpp"
#include "locfin/gallery.hpp"
#include "locfin/io.hpp"
#include "locfin/lift.hpp"
#include "locfin/order.hpp"
#include "locfin/report.hpp"

namespace locfin::cli {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240611;

struct Options {
  std::string category;
  std::string window;
  std::string field = "Q";
  std::string module;
  std::string object;
  std::string to = "comodule";
  std::string part = "full";
  std::string kind = "contrafinite-left";
  std::string policy = "auto";
  std::string gallery_action = "list";
  std::string gallery_name;
  int trials = 200;
  long degree = 0;
  std::uint64_t seed = kDefaultSeed;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedPresentation, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedPresentation, path + ": " + e.what());
  }
}

FieldDescriptor field_of(const Options& o) { return field_from_json(o.field); }

std::shared_ptr<const Scope> load_scope(const Options& o) {
  if (o.category.empty()) throw Error(ErrorCode::Usage, "--category is required");
  if (o.category.rfind("gallery:", 0) == 0) return gallery_instantiate(o.category.substr(8), o.window, field_of(o));
  const json j = read_json(o.category);
  if (j.contains("objects")) return Scope::finite(category_from_json(j));
  return scope_from_reference(j, nullptr);
}

Module load_module(const Options& o) {
  if (o.module.empty()) throw Error(ErrorCode::Usage, "--module is required");
  if (o.module.rfind("gallery:", 0) == 0) return gallery_module_on(o.module.substr(8), o.window, field_of(o));
  return module_from_json(read_json(o.module), o.category.empty() ? nullptr : load_scope(o));
}

Index object_index(const LinCat& c, const std::string& id) {
  if (auto x = c.find(id)) return *x;
  try {
    std::size_t used = 0;
    const long v = std::stol(id, &used);
    if (used == id.size()) {
      if (auto x = c.find(CategoryGenerator::format_id(v))) return *x;
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::UnknownObject, "no object '" + id + "'");
}

std::vector<std::string> ids(const LinCat& c, const std::vector<Index>& s) {
  std::vector<std::string> out;
  for (Index x : s) out.push_back(c.object(x));
  return out;
}

int exit_for(const Verdict& v) {
  switch (v.status) {
    case Status::Certified:
      return kOk;
    case Status::Refuted:
      return kRefuted;
    case Status::Inconclusive:
      return kInconclusive;
  }
  return kInputError;
}

void emit(std::ostream& out, json j) {
  j["schema_version"] = kSchemaVersion;
  out << j.dump(2) << '\n';
}

int cmd_validate(const Options& o, std::ostream& out) {
  if (!o.module.empty()) {
    const Module m = load_module(o);
    const Verdict v = validate_module(m);
    emit(out, {{"kind", "module"}, {"verdict", v.to_json()}});
    return exit_for(v);
  }
  const auto s = load_scope(o);
  const Verdict v = validate_category(s->cat());
  emit(out, {{"kind", "category"}, {"scope", s->to_json()}, {"verdict", v.to_json()}});
  return exit_for(v);
}

SupportPolicy policy_of(const std::string& p) {
  if (p == "auto") return SupportPolicy::Auto;
  if (p == "declared") return SupportPolicy::Declared;
  if (p == "window") return SupportPolicy::Window;
  if (p == "continue") return SupportPolicy::Continue;
  throw Error(ErrorCode::Usage, "unknown policy '" + p + "'");
}

int cmd_analyze(const Options& o, std::ostream& out) {
  if (!o.module.empty()) {
    const Module m = load_module(o);
    const Verdict v = m.side() == Side::Left ? is_contrafinite(m, policy_of(o.policy)) : is_cofinite(m, policy_of(o.policy));
    emit(out, {{"kind", m.side() == Side::Left ? "contrafinite" : "cofinite"}, {"verdict", v.to_json()}});
    return exit_for(v);
  }
  const auto s = load_scope(o);
  const PreorderAnalysis a(s);
  json classes = json::array();
  for (const auto& cl : a.classes()) classes.push_back(ids(s->cat(), cl));
  const auto [upper, lower] = check_upper_lower_finite(a);
  emit(out, {{"scope", s->to_json()},
             {"classes", classes},
             {"longest_chain", a.longest_chain()},
             {"interval_finite", check_interval_finiteness(a).to_json()},
             {"upper_finite", upper.to_json()},
             {"lower_finite", lower.to_json()},
             {"left_strict", check_left_strict(a).verdict.to_json()}});
  return kOk;
}

int cmd_coalgebra(const Options& o, std::ostream& out) {
  const auto s = load_scope(o);
  GradedCoalgebra g = build_coalgebra(s);
  if (o.part == "short") {
    g = short_subcoalgebra(g);
  } else if (o.part == "long") {
    g = long_quotient(g);
  } else if (o.part != "full") {
    throw Error(ErrorCode::Usage, "--part is full, short or long");
  }
  const Verdict v = validate_coalgebra(g);
  json j = {{"coalgebra", coalgebra_to_json(g)}, {"verdict", v.to_json()}, {"part", o.part}};
  if (o.part == "long") {
    const auto idx = conilpotency_index(g);
    j["conilpotency_index"] = idx ? json(*idx) : json("unbounded");
  }
  emit(out, j);
  return exit_for(v);
}

json frontier_json(const LinCat& c, const Frontier& f) {
  return {{"target", c.object(f.target)}, {"members", ids(c, f.members)}, {"exception", ids(c, f.exception)}};
}

int cmd_frontier(const Options& o, std::ostream& out) {
  const auto s = load_scope(o);
  const PreorderAnalysis a(s);
  if (o.object.empty()) throw Error(ErrorCode::Usage, "--object is required");
  const Index y = object_index(s->cat(), o.object);
  if (o.degree > 0) {
    const LeftStrictReport r = check_left_strict(a);
    if (!r.tower) {
      emit(out, {{"object", s->cat().object(y)}, {"degree", o.degree}, {"verdict", r.verdict.to_json()}});
      return exit_for(r.verdict);
    }
    emit(out, {{"object", s->cat().object(y)},
               {"degree", o.degree},
               {"verdict", r.verdict.to_json()},
               {"frontier", frontier_json(s->cat(), degree_n_frontier(*r.tower, y, o.degree))}});
    return kOk;
  }
  const FrontierSearch f = find_standard_frontier(a, y);
  json j = {{"object", s->cat().object(y)}, {"scope", s->to_json()}, {"verdict", f.verdict.to_json()}};
  if (f.frontier) j["frontier"] = frontier_json(s->cat(), *f.frontier);
  emit(out, j);
  return exit_for(f.verdict);
}

int cmd_lift(const Options& o, std::ostream& out) {
  const Module m = load_module(o);
  LiftReport r;
  if (o.to == "comodule") {
    r = lift_to_comodule(m);
  } else if (o.to == "contramodule") {
    r = lift_to_contramodule(m);
  } else {
    throw Error(ErrorCode::Usage, "--to is comodule or contramodule");
  }
  emit(out, r.to_json());
  switch (r.decision) {
    case LiftDecision::Liftable:
      return kOk;
    case LiftDecision::NotLiftable:
      return kRefuted;
    case LiftDecision::WindowLeak:
      return kInconclusive;
  }
  return kInputError;
}

int cmd_dualize(const Options& o, std::ostream& out) {
  emit(out, module_to_json(dualize_module(load_module(o))));
  return kOk;
}

json graded_json(const Module& m, const Graded& g) {
  json out = json::object();
  for (Index x = 0; x < m.cat().size(); ++x) {
    const Subspace& s = g[static_cast<std::size_t>(x)];
    out[m.cat().object(x)] = to_json(s.basis(), m.field());
  }
  return out;
}

int cmd_bigmin(const Options& o, std::ostream& out) {
  const Module m = load_module(o);
  const Graded k = minimal_big_submodule(m);
  const Verdict q = is_contrafinite(quotient(m, k), SupportPolicy::Continue);
  emit(out, {{"submodule", graded_json(m, k)}, {"dim", graded_dim(k)}, {"quotient_contrafinite", q.to_json()}});
  return exit_for(q);
}

int cmd_exttest(const Options& o, std::ostream& out) {
  const ExtTrialSummary s = run_ext_trials(closure_kind_from_string(o.kind), o.trials, o.seed);
  json j = s.to_json();
  j["kind"] = o.kind;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  emit(out, j);
  return s.failed == 0 ? kOk : kRefuted;
}

int cmd_gallery(const Options& o, std::ostream& out) {
  if (o.gallery_action == "list") {
    json cats = json::array();
    for (const auto& e : gallery_entries()) {
      cats.push_back({{"name", e.name}, {"description", e.description}, {"default_window", e.default_window}});
    }
    json mods = json::array();
    for (const auto& e : gallery_module_entries()) {
      mods.push_back({{"name", e.name}, {"description", e.description}, {"parameter", e.parameter}});
    }
    emit(out, {{"categories", cats}, {"modules", mods}});
    return kOk;
  }
  if (o.gallery_name.empty()) throw Error(ErrorCode::Usage, "gallery " + o.gallery_action + " needs a name");
  if (o.gallery_action == "show") {
    const auto s = gallery_instantiate(o.gallery_name, o.window, field_of(o));
    const Verdict v = validate_category(s->cat());
    emit(out, {{"scope", s->to_json()}, {"category", category_to_json(s->cat())}, {"verdict", v.to_json()}});
    return exit_for(v);
  }
  if (o.gallery_action == "module") {
    emit(out, module_to_json(gallery_module_on(o.gallery_name, o.window, field_of(o))));
    return kOk;
  }
  throw Error(ErrorCode::Usage, "gallery takes list, show or module");
}

int cmd_report(std::ostream& out) {
  json j = claims_report();
  const bool ok = j.at("all_ok").get<bool>();
  emit(out, std::move(j));
  return ok ? kOk : kRefuted;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  emit(out, y_contrafinite_experiment(load_scope(o), o.seed, o.trials));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"locally finite k-linear categories: comodules, contramodules and frontiers", "locfin"};
  app.require_subcommand(1);
  Options o;

  auto scope_opts = [&](CLI::App* c) {
    c->add_option("--category", o.category, "gallery:<name> or a category JSON file");
    c->add_option("--window", o.window, "inclusive range lo..hi, or n for chainA");
    c->add_option("--field", o.field, "Q or F<p>");
  };
  auto module_opts = [&](CLI::App* c) {
    scope_opts(c);
    c->add_option("--module", o.module, "module JSON file or gallery:<category>/<module>[:param]");
  };
  auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed (LOCFIN_SEED overrides)"); };

  auto* validate = app.add_subcommand("validate", "check category or module axioms");
  module_opts(validate);
  auto* analyze = app.add_subcommand("analyze", "preorder and finiteness analysis, or contrafiniteness of a module");
  module_opts(analyze);
  analyze->add_option("--policy", o.policy, "auto, declared, window or continue");
  auto* coalgebra = app.add_subcommand("coalgebra", "the coalgebra of a category");
  scope_opts(coalgebra);
  coalgebra->add_option("--part", o.part, "full, short or long");
  auto* frontier = app.add_subcommand("frontier", "standard frontier of an object");
  scope_opts(frontier);
  frontier->add_option("--object", o.object, "object id or integer");
  frontier->add_option("--degree", o.degree, "degree n of an iterated frontier");
  auto* lift = app.add_subcommand("lift", "lift a module to a comodule or contramodule");
  module_opts(lift);
  lift->add_option("--to", o.to, "comodule or contramodule");
  auto* dualize = app.add_subcommand("dualize", "componentwise dual of a module");
  module_opts(dualize);
  auto* bigmin = app.add_subcommand("bigmin", "minimal big submodule");
  module_opts(bigmin);
  auto* exttest = app.add_subcommand("exttest", "random extension closure trials");
  exttest->add_option("--kind", o.kind, "contrafinite-left, cofinite-right or comodule-image-right");
  exttest->add_option("--trials", o.trials, "number of trials");
  seed_opt(exttest);
  auto* gallery = app.add_subcommand("gallery", "built-in categories and modules");
  gallery->add_option("action", o.gallery_action, "list, show or module");
  gallery->add_option("name", o.gallery_name, "category name or module spec");
  gallery->add_option("--window", o.window, "window");
  gallery->add_option("--field", o.field, "Q or F<p>");
  auto* report = app.add_subcommand("report", "expected verdicts of the gallery, recomputed");
  auto* experiment = app.add_subcommand("experiment", "random search for infinite source sets on a window");
  scope_opts(experiment);
  experiment->add_option("--trials", o.trials, "number of random modules");
  seed_opt(experiment);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (const char* env = std::getenv("LOCFIN_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "LOCFIN_SEED must be an unsigned integer\n";
      return kUsage;
    }
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*coalgebra) return cmd_coalgebra(o, out);
    if (*frontier) return cmd_frontier(o, out);
    if (*lift) return cmd_lift(o, out);
    if (*dualize) return cmd_dualize(o, out);
    if (*bigmin) return cmd_bigmin(o, out);
    if (*exttest) return cmd_exttest(o, out);
    if (*gallery) return cmd_gallery(o, out);
    if (*report) return cmd_report(out);
    if (*experiment) return cmd_experiment(o, out);
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"schema_version", kSchemaVersion}}.dump()
        << '\n';
    return e.code() == ErrorCode::Usage ? kUsage : kInputError;
  }
  return kUsage;
}

}  // namespace locfin::cli
