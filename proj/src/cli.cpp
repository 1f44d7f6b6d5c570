#include "coarse/cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coarse/classifiers.hpp"
#include "coarse/error.hpp"
#include "coarse/geometry.hpp"
#include "coarse/report_json.hpp"
#include "coarse/structures.hpp"

namespace coarse {

using nlohmann::json;

namespace {

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    fail(ErrorCode::InvalidInput, what + " must be an integer, got '" + text + "'");
  return value;
}

// Numbers may arrive as JSON numbers or as strings.
std::string scalar_text(const json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  fail(ErrorCode::InvalidInput, "field '" + key + "' must be a string or an integer");
}

std::optional<std::string> opt_field(const json& spec, const std::string& key) {
  if (!spec.contains(key) || spec[key].is_null()) return std::nullopt;
  return scalar_text(spec[key], key);
}

std::string req_field(const json& spec, const std::string& key) {
  auto v = opt_field(spec, key);
  if (!v) fail(ErrorCode::InvalidInput, "set description is missing '" + key + "'");
  return *v;
}

std::int64_t int_field(const json& spec, const std::string& key) { return parse_int(req_field(spec, key), key); }

std::vector<Element> element_field(const GroupModel& group, const json& spec, const std::string& key) {
  if (!spec.contains(key)) fail(ErrorCode::InvalidInput, "set description is missing '" + key + "'");
  const json& v = spec[key];
  if (v.is_string()) return parse_element_list(group, v.get<std::string>());
  if (!v.is_array()) fail(ErrorCode::InvalidInput, "field '" + key + "' must be a list");
  std::vector<Element> out;
  for (const json& item : v) out.push_back(group.parse_element(scalar_text(item, key)));
  return out;
}

std::vector<std::int64_t> int_list_field(const json& spec, const std::string& key) {
  if (!spec.contains(key)) fail(ErrorCode::InvalidInput, "set description is missing '" + key + "'");
  const json& v = spec[key];
  std::vector<std::int64_t> out;
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(parse_int(item, key));
    return out;
  }
  if (!v.is_array()) fail(ErrorCode::InvalidInput, "field '" + key + "' must be a list");
  for (const json& item : v) out.push_back(parse_int(scalar_text(item, key), key));
  return out;
}

std::string kind_of(const json& spec) {
  if (!spec.is_object()) fail(ErrorCode::InvalidInput, "set description must be a JSON object");
  return req_field(spec, "kind");
}

Window padded_window(const GroupModel& group, std::span<const Element> elements, const Radius& margin) {
  Window w = group.bounding_window(elements);
  if (group.family() == Family::Z2Sum) return w;
  std::int64_t pad = 0;
  for (const Element& e : margin.elements()) pad = std::max(pad, group.word_length(e));
  w.extent += pad;
  return w;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

GroupModel spec_group(const json& spec) {
  const std::string kind = kind_of(spec);
  if (auto g = opt_field(spec, "group")) return GroupModel::parse(*g);
  if (kind == "cantor" || kind == "periodic") return GroupModel::integers();
  if (kind == "wn") return GroupModel::z2_sum(static_cast<int>(int_field(spec, "coordinates")));
  fail(ErrorCode::InvalidInput, "set description is missing 'group'");
}

FiniteSample resolve_set(const json& spec, const Radius& margin) {
  const std::string kind = kind_of(spec);
  const GroupModel group = spec_group(spec);
  std::optional<Window> window;
  if (auto w = opt_field(spec, "window")) {
    window = Window{parse_int(*w, "window")};
    if (window->extent < 0) fail(ErrorCode::InvalidInput, "window must be nonnegative");
  }

  if (kind == "periodic") {
    if (group.family() != Family::Z) fail(ErrorCode::InvalidInput, "periodic sets live in z");
    IntegerSet set = IntegerSet::periodic(int_field(spec, "modulus"), int_list_field(spec, "residues"));
    return set.sample(window ? window->extent : 100);
  }

  std::vector<Element> elements;
  json recipe;
  if (kind == "explicit") {
    elements = element_field(group, spec, "elements");
    recipe = {{"kind", "explicit"}, {"group", group.spec()}};
  } else if (kind == "ip") {
    FiniteSample s = gen_ip(group, element_field(group, spec, "generators"));
    elements.assign(s.elements().begin(), s.elements().end());
    recipe = s.recipe();
  } else if (kind == "pwip") {
    FiniteSample s = gen_pwip(group, element_field(group, spec, "generators"), element_field(group, spec, "shifts"));
    elements.assign(s.elements().begin(), s.elements().end());
    recipe = s.recipe();
  } else if (kind == "wn") {
    if (group.family() != Family::Z2Sum) fail(ErrorCode::InvalidInput, "wn sets live in z2sum:m");
    FiniteSample s = gen_wn(group.parameter(), static_cast<int>(int_field(spec, "support")));
    elements.assign(s.elements().begin(), s.elements().end());
    recipe = s.recipe();
  } else if (kind == "cantor") {
    if (group.family() != Family::Z) fail(ErrorCode::InvalidInput, "cantor sets live in z");
    FiniteSample s = gen_cantor_geodesic(static_cast<int>(int_field(spec, "levels")));
    elements.assign(s.elements().begin(), s.elements().end());
    recipe = s.recipe();
  } else {
    fail(ErrorCode::InvalidInput, "unknown set kind '" + kind + "'");
  }
  if (window) return FiniteSample::clipped(group, *window, std::move(elements), std::move(recipe));
  const Window w = padded_window(group, elements, margin);
  return FiniteSample(group, w, std::move(elements), std::move(recipe));
}

IntegerSet resolve_integer_set(const json& spec) {
  const std::string kind = kind_of(spec);
  if (kind == "periodic") return IntegerSet::periodic(int_field(spec, "modulus"), int_list_field(spec, "residues"));
  if (kind == "explicit" && !spec.contains("group")) return IntegerSet::explicit_set(int_list_field(spec, "elements"));
  if (kind == "generated") {
    if (!spec.contains("ref")) fail(ErrorCode::InvalidInput, "generated recipe is missing 'ref'");
    return IntegerSet::from_sample(resolve_set(spec["ref"], Radius()));
  }
  return IntegerSet::from_sample(resolve_set(spec, Radius()));
}

namespace {

struct Options {
  std::optional<std::string> elements;  // present but empty means the empty set
  std::string set_file, group, kind, generators, shifts, levels, support, modulus, residues;
  std::string window, radius, center, budget = "medium", out_file, map_file, translations;
  std::string universe = "sample", ambient_file;
  int depth = 3;
  std::int64_t n_max = 100000, step = 0;
};

struct Outcome {
  json body;
  bool negative = false;
};

json inline_spec(const Options& o) {
  json spec = json::object();
  auto put = [&](const char* key, const std::string& value) {
    if (!value.empty()) spec[key] = value;
  };
  put("group", o.group);
  put("kind", o.kind);
  if (o.elements) spec["elements"] = *o.elements;
  put("generators", o.generators);
  put("shifts", o.shifts);
  put("levels", o.levels);
  put("support", o.support);
  put("modulus", o.modulus);
  put("residues", o.residues);
  return spec;
}

json load_spec(const Options& o) {
  json spec = o.set_file.empty() ? inline_spec(o) : read_json_file(o.set_file);
  if (!spec.is_object()) fail(ErrorCode::InvalidInput, "set description must be a JSON object");
  if (!o.window.empty()) spec["window"] = o.window;
  if (!spec.contains("kind")) fail(ErrorCode::InvalidInput, "no set given: pass --set FILE or --kind with parameters");
  return spec;
}

struct Context {
  json spec;
  GroupModel group;
  Scale scale;
  FiniteSample set;
};

Context load_context(const Options& o) {
  json spec = load_spec(o);
  GroupModel group = spec_group(spec);
  Scale scale = make_scale(group, parse_budget(o.budget));
  FiniteSample set = resolve_set(spec, scale.margin(group));
  return Context{std::move(spec), group, std::move(scale), std::move(set)};
}

Radius require_radius(const GroupModel& group, const Options& o) {
  if (o.radius.empty()) fail(ErrorCode::InvalidInput, "--radius is required");
  return Radius::parse(group, o.radius);
}

Element require_center(const GroupModel& group, const Options& o) {
  if (o.center.empty() && group.family() != Family::Free) fail(ErrorCode::InvalidInput, "--center is required");
  return group.parse_element(o.center);
}

Outcome cmd_ball(const Options& o) {
  if (o.set_file.empty() && o.kind.empty()) {
    if (o.group.empty()) fail(ErrorCode::InvalidInput, "--group is required");
    const GroupModel group = GroupModel::parse(o.group);
    const Radius r = require_radius(group, o);
    const Element g = require_center(group, o);
    FiniteSample b = ball(group, g, r);
    return {json{{"group", group.spec()},
                 {"center", group.render(g)},
                 {"radius", radius_json(group, r)},
                 {"restricted", false},
                 {"size", std::to_string(b.size())},
                 {"elements", elements_json(group, b.elements())}}};
  }
  Context c = load_context(o);
  const Radius r = require_radius(c.group, o);
  const Element g = require_center(c.group, o);
  FiniteSample b = restricted_ball(c.set, g, r);
  return {json{{"group", c.group.spec()},
               {"center", c.group.render(g)},
               {"radius", radius_json(c.group, r)},
               {"restricted", true},
               {"size", std::to_string(b.size())},
               {"elements", elements_json(c.group, b.elements())}}};
}

Outcome cmd_chain(const Options& o) {
  Context c = load_context(o);
  const Radius k = require_radius(c.group, o);
  const Element a = require_center(c.group, o);
  ChainComponent comp = chain_component(c.set, a, k);
  return {json{{"group", c.group.spec()},
               {"start", c.group.render(a)},
               {"k", radius_json(c.group, k)},
               {"k_symmetrized", comp.symmetrized},
               {"size", std::to_string(comp.elements.size())},
               {"elements", elements_json(c.group, comp.elements)}}};
}

Outcome cmd_cellular(const Options& o) {
  Context c = load_context(o);
  CellularityReport r = cellularity_probe(c.set, require_radius(c.group, o), c.scale);
  json body = cellularity_json(c.group, r);
  body["scale"] = scale_json(c.group, c.scale);
  return {body, r.verdict != CellularVerdict::Cellular};
}

Outcome cmd_prec(const Options& o) {
  Context c = load_context(o);
  if (o.map_file.empty()) fail(ErrorCode::InvalidInput, "--map FILE is required");
  const json m = read_json_file(o.map_file);
  const GroupModel target = m.contains("codomain") ? GroupModel::parse(scalar_text(m["codomain"], "codomain")) : c.group;
  if (!m.contains("pairs") || !m["pairs"].is_array()) fail(ErrorCode::InvalidInput, "map file needs a 'pairs' list");
  std::vector<std::pair<Element, Element>> pairs;
  for (const json& p : m["pairs"]) {
    if (!p.is_array() || p.size() != 2) fail(ErrorCode::InvalidInput, "map pairs must be [x, f(x)]");
    pairs.emplace_back(c.group.parse_element(scalar_text(p[0], "pairs")), target.parse_element(scalar_text(p[1], "pairs")));
  }
  const Scale target_scale = make_scale(target, parse_budget(o.budget));
  FiniteMap f(c.set, target, std::move(pairs));
  PrecReport r = prec_mapping_check(f, require_radius(c.group, o), target_scale);
  json body = prec_json(c.group, target, r);
  body["codomain"] = target.spec();
  body["scale"] = scale_json(target, target_scale);
  return {body, r.verdict != PrecVerdict::Prec};
}

Outcome cmd_gen(const Options& o) {
  Context c = load_context(o);
  return {sample_json(c.set)};
}

Outcome cmd_detect(const Options& o) {
  Context c = load_context(o);
  PwipSearch s = detect_pwip(c.set, o.depth, c.scale);
  json body = search_json(c.group, o.depth, s);
  body["set"] = json{{"group", c.group.spec()}, {"size", std::to_string(c.set.size())}, {"window", window_json(c.set.window())}};
  body["scale"] = scale_json(c.group, c.scale);
  return {body, !s.witness};
}

Outcome cmd_classify(const Options& o) {
  Context c = load_context(o);
  return {classify_json(c.set, classify(c.set, c.scale), c.scale)};
}

Outcome cmd_thin(const Options& o) {
  Context c = load_context(o);
  ThinReport r = thin_degree(c.set, require_radius(c.group, o), c.scale);
  json body = thin_json(c.group, r);
  body["scale"] = scale_json(c.group, c.scale);
  return {body};
}

Outcome cmd_sparse(const Options& o) {
  Context c = load_context(o);
  std::vector<Element> x = o.translations.empty() ? sparse_probe(c.set, c.scale)
                                                  : parse_element_list(c.group, o.translations);
  SparseReport r = sparse_witness(c.set, x, c.scale);
  json body = sparse_json(c.group, r);
  body["scale"] = scale_json(c.group, c.scale);
  body["probe"] = o.translations.empty() ? "adversarial" : "given";
  return {body, r.verdict != SparseVerdict::WitnessFound};
}

Outcome cmd_scattered(const Options& o) {
  Context c = load_context(o);
  std::optional<FiniteSample> ambient;
  if (o.universe == "ambient") {
    if (o.ambient_file.empty()) fail(ErrorCode::InvalidInput, "--universe ambient needs --ambient FILE");
    json a = read_json_file(o.ambient_file);
    if (!o.window.empty()) a["window"] = o.window;
    ambient = resolve_set(a, c.scale.margin(c.group));
    if (!(ambient->group() == c.group)) fail(ErrorCode::FamilyMismatch, "ambient set lives in another group");
  } else if (o.universe != "sample") {
    fail(ErrorCode::InvalidInput, "--universe must be sample or ambient");
  }
  IsolatedBallsReport r = isolated_balls_verdict(c.set, c.scale, ambient ? &*ambient : nullptr);
  json body = isolated_json(c.group, r, c.scale);
  body["caveat"] = kScaleCaveat;
  return {body, r.verdict != IsolatedVerdict::HasIsolatedBalls};
}

IntegerSet density_set(const Options& o) {
  json spec = o.set_file.empty() ? inline_spec(o) : read_json_file(o.set_file);
  if (!spec.is_object() || !spec.contains("kind"))
    fail(ErrorCode::InvalidInput, "no set given: pass --set FILE or --kind with parameters");
  return resolve_integer_set(spec);
}

Outcome cmd_density(const Options& o) {
  IntegerSet a = density_set(o);
  const std::int64_t step = o.step > 0 ? o.step : std::max<std::int64_t>(1, o.n_max / 100);
  json body = density_json(upper_density_profile(a, o.n_max, step));
  body["recipe"] = a.recipe();
  return {body};
}

Outcome cmd_density_pwip(const Options& o) {
  IntegerSet a = density_set(o);
  const std::int64_t window = o.window.empty() ? 100 : parse_int(o.window, "window");
  const Scale scale = make_scale(GroupModel::integers(), parse_budget(o.budget));
  DensityPwipReport r = density_pwip_experiment(a, o.depth, window, scale);
  json body = density_pwip_json(r);
  body["recipe"] = a.recipe();
  body["scale"] = scale_json(GroupModel::integers(), scale);
  return {body, r.achieved_depth < r.requested_depth};
}

json error_json(const std::string& code, const std::string& message) {
  return json{{"schema", kSchemaVersion}, {"error", json{{"code", code}, {"message", message}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-scale coarse classification of subsets of groups", "coarse"};
  app.require_subcommand(1);
  Options o;

  auto set_options = [&](CLI::App* sub) {
    sub->add_option("--set", o.set_file, "set description JSON file");
    sub->add_option("--group", o.group, "group: z, z^d, z2sum:m, free:k");
    sub->add_option("--kind", o.kind, "explicit, ip, pwip, wn, cantor, periodic");
    sub->add_option("--elements", o.elements, "explicit elements");
    sub->add_option("--generators", o.generators, "IP generators");
    sub->add_option("--shifts", o.shifts, "pwIP shifts");
    sub->add_option("--levels", o.levels, "Cantor levels");
    sub->add_option("--support", o.support, "W_n support bound");
    sub->add_option("--modulus", o.modulus, "period of a periodic set");
    sub->add_option("--residues", o.residues, "residues of a periodic set");
    sub->add_option("--window", o.window, "window extent");
    sub->add_option("--budget", o.budget, "small, medium, large")->check(CLI::IsMember({"small", "medium", "large"}));
    sub->add_option("--out", o.out_file, "write the report here instead of stdout");
  };

  using Handler = std::function<Outcome(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    set_options(sub);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  auto* ball_cmd = add("ball", "ball B(g,F), or B_Y(g,F) when a set is given", cmd_ball);
  ball_cmd->add_option("--center", o.center, "centre g");
  ball_cmd->add_option("--radius", o.radius, "element list or wordball:r");
  auto* chain_cmd = add("chain", "K-chain component of a point", cmd_chain);
  chain_cmd->add_option("--center", o.center, "start point a");
  chain_cmd->add_option("--radius", o.radius, "K");
  add("cellular", "cellularity probe", cmd_cellular)->add_option("--radius", o.radius, "K");
  auto* prec_cmd = add("prec", "check a finite map is a prec-mapping", cmd_prec);
  prec_cmd->add_option("--map", o.map_file, "map JSON: {\"codomain\": ..., \"pairs\": [[x, y], ...]}");
  prec_cmd->add_option("--radius", o.radius, "F");
  add("gen", "generate a set", cmd_gen);
  add("detect-pwip", "search for a piecewise shifted IP witness", cmd_detect)
      ->add_option("--depth", o.depth, "witness depth");
  add("classify", "all classifiers at one scale", cmd_classify);
  add("thin", "thin degree for a radius", cmd_thin)->add_option("--radius", o.radius, "F");
  add("sparse", "translate-intersection witness", cmd_sparse)
      ->add_option("--translations", o.translations, "translation set X");
  auto* scat_cmd = add("scattered", "isolated balls verdict", cmd_scattered);
  scat_cmd->add_option("--universe", o.universe, "sample or ambient");
  scat_cmd->add_option("--ambient", o.ambient_file, "ambient set description JSON file");
  auto* dens_cmd = add("density", "upper density profile of a subset of Z", cmd_density);
  dens_cmd->add_option("--n-max", o.n_max, "largest n");
  dens_cmd->add_option("--step", o.step, "sampling step");
  add("density-pwip", "density paired with the deepest pwIP witness", cmd_density_pwip)
      ->add_option("--depth", o.depth, "witness depth (1..4)");

  std::vector<std::string> argv_store{"coarse"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      Outcome outcome = handler(o);
      json doc = std::move(outcome.body);
      doc["schema"] = kSchemaVersion;
      doc["command"] = sub->get_name();
      const std::string text = doc.dump(2) + "\n";
      if (o.out_file.empty()) {
        out << text;
      } else {
        std::ofstream file(o.out_file, std::ios::binary);
        if (!file) fail(ErrorCode::InvalidInput, "cannot write '" + o.out_file + "'");
        file << text;
      }
      return outcome.negative ? 1 : 0;
    } catch (const Error& e) {
      err << error_json(std::string(to_string(e.code())), e.what()).dump(2) << "\n";
      return 2;
    } catch (const json::exception& e) {
      err << error_json("invalid_input", e.what()).dump(2) << "\n";
      return 2;
    }
  }
  return 2;
}

}  // namespace coarse
