#include "coarse/report_json.hpp"

#include <cstdio>

namespace coarse {

using nlohmann::json;

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  return buf;
}

std::string to_string(CellularVerdict verdict) {
  return verdict == CellularVerdict::Cellular ? "CELLULAR" : "NOT_CELLULAR_AT_SCALE";
}
std::string to_string(PrecVerdict verdict) { return verdict == PrecVerdict::Prec ? "PREC" : "NOT_PREC"; }
std::string to_string(SparseVerdict verdict) {
  return verdict == SparseVerdict::WitnessFound ? "WITNESS_FOUND" : "NO_WITNESS_AT_SCALE";
}
std::string to_string(IsolatedVerdict verdict) {
  return verdict == IsolatedVerdict::HasIsolatedBalls ? "HAS_ISOLATED_BALLS" : "NO_ISOLATED_BALLS_AT_SCALE";
}
std::string to_string(Universe universe) { return universe == Universe::Sample ? "SAMPLE" : "AMBIENT"; }

json elements_json(const GroupModel& group, std::span<const Element> elements) {
  json out = json::array();
  for (const Element& e : elements) out.push_back(group.render(e));
  return out;
}

json window_json(const Window& window) { return json{{"extent", std::to_string(window.extent)}}; }

json sample_json(const FiniteSample& sample) {
  json out{{"group", sample.group().spec()},
           {"window", window_json(sample.window())},
           {"size", std::to_string(sample.size())},
           {"elements", elements_json(sample.group(), sample.elements())}};
  if (!sample.recipe().is_null()) out["recipe"] = sample.recipe();
  return out;
}

json radius_json(const GroupModel& group, const Radius& radius) {
  return json{{"label", describe(group, radius)},
              {"size", std::to_string(radius.size())},
              {"elements", elements_json(group, radius.elements())}};
}

namespace {

json radius_family(const GroupModel& group, const std::vector<Radius>& family) {
  json out = json::array();
  for (const Radius& r : family) out.push_back(describe(group, r));
  return out;
}

json preview(const GroupModel& group, std::span<const Element> elements) {
  return elements_json(group, elements.subspan(0, std::min(elements.size(), kListPreview)));
}

}  // namespace

json scale_json(const GroupModel& group, const Scale& scale) {
  return json{{"name", scale.name},
              {"f_family", radius_family(group, scale.f_family)},
              {"h_family", radius_family(group, scale.h_family)},
              {"pool_cap", std::to_string(scale.pool_cap)},
              {"subset_cap", std::to_string(scale.subset_cap)},
              {"max_depth", std::to_string(scale.max_depth)},
              {"probe_size", std::to_string(scale.probe_size)}};
}

json witness_json(const GroupModel& group, const PwipWitness& witness) {
  json products = json::array();
  for (const PwipProduct& p : witness.products) {
    json indices = json::array();
    for (int i : p.indices) indices.push_back(std::to_string(i));
    products.push_back(json{{"indices", indices}, {"value", group.render(p.value)}});
  }
  return json{{"depth", std::to_string(witness.depth)},
              {"generators", elements_json(group, witness.generators)},
              {"shifts", elements_json(group, witness.shifts)},
              {"products", products}};
}

json cellularity_json(const GroupModel& group, const CellularityReport& report) {
  json rejected = json::array();
  for (const auto& r : report.rejected)
    rejected.push_back(json{{"candidate", describe(group, r.candidate)},
                            {"offender", group.render(r.offender)},
                            {"escaped", group.render(r.escaped)}});
  json out{{"verdict", to_string(report.verdict)},
           {"k", radius_json(group, report.k)},
           {"k_symmetrized", report.k_symmetrized},
           {"k_prime", report.k_prime ? radius_json(group, *report.k_prime) : json(nullptr)},
           {"rejected", rejected},
           {"interior_size", std::to_string(report.interior_size)},
           {"component_count", std::to_string(report.component_count)},
           {"largest_component", std::to_string(report.largest_component)},
           {"window", window_json(report.window)}};
  return out;
}

json prec_json(const GroupModel& source, const GroupModel& target, const PrecReport& report) {
  return json{{"verdict", to_string(report.verdict)},
              {"f", radius_json(source, report.f)},
              {"k", report.k ? radius_json(target, *report.k) : json(nullptr)},
              {"offender", report.offender ? json(source.render(*report.offender)) : json(nullptr)},
              {"offender_neighbor",
               report.offender_neighbor ? json(source.render(*report.offender_neighbor)) : json(nullptr)},
              {"interior_size", std::to_string(report.interior_size)}};
}

json search_json(const GroupModel& group, int depth, const PwipSearch& search) {
  json out{{"verdict", search.witness ? "FOUND" : "NOT_FOUND"},
           {"depth", std::to_string(depth)},
           {"witness", search.witness ? witness_json(group, *search.witness) : json(nullptr)},
           {"pool_size", std::to_string(search.pool_size)},
           {"pool_truncated", search.pool_truncated},
           {"nodes", std::to_string(search.nodes)}};
  if (!search.note.empty()) out["note"] = search.note;
  return out;
}

json thin_json(const GroupModel& group, const ThinReport& report) {
  return json{{"f", describe(group, report.f)},
              {"degree", std::to_string(report.degree)},
              {"exceptional", elements_json(group, report.exceptional)},
              {"stable", report.stable},
              {"interior_size", std::to_string(report.interior_size)},
              {"window", window_json(report.window)},
              {"inner_window", window_json(report.inner_window)}};
}

json sparse_json(const GroupModel& group, const SparseReport& report) {
  return json{{"verdict", to_string(report.verdict)},
              {"translations", preview(group, report.translations)},
              {"translation_count", std::to_string(report.translations.size())},
              {"f", elements_json(group, report.f)},
              {"intersection", elements_json(group, report.intersection)},
              {"intersection_size", std::to_string(report.intersection.size())},
              {"inner_size", std::to_string(report.inner_size)},
              {"subsets_tried", std::to_string(report.subsets_tried)},
              {"budget_exhausted", report.budget_exhausted},
              {"window", window_json(report.window)},
              {"inner_window", window_json(report.inner_window)}};
}

json isolated_json(const GroupModel& group, const IsolatedBallsReport& report, const Scale& scale) {
  json cells = json::array();
  for (const auto& c : report.cells)
    cells.push_back(json{{"h", describe(group, scale.h_family[c.h_index])},
                         {"isolated", preview(group, c.isolated)},
                         {"isolated_count", std::to_string(c.isolated.size())}});
  json refutations = json::array();
  for (const auto& r : report.refutations)
    refutations.push_back(json{{"f", describe(group, scale.f_family[r.f_index])},
                               {"h", describe(group, scale.h_family[r.h_index])}});
  return json{{"verdict", to_string(report.verdict)},
              {"universe", to_string(report.universe)},
              {"winning_f", report.winning_f ? json(describe(group, scale.f_family[*report.winning_f])) : json(nullptr)},
              {"cells", cells},
              {"refutations", refutations},
              {"interior_size", std::to_string(report.interior_size)},
              {"window", window_json(report.window)},
              {"scale", scale_json(group, scale)}};
}

json classify_json(const FiniteSample& a_set, const ClassifyReport& report, const Scale& scale) {
  const GroupModel& group = a_set.group();
  json per_radius = json::array();
  for (const ThinReport& t : report.thin) per_radius.push_back(thin_json(group, t));
  json out{{"set", json{{"group", group.spec()},
                        {"size", std::to_string(a_set.size())},
                        {"window", window_json(a_set.window())}}},
           {"empty_set", report.empty_set},
           {"thin", json{{"degree", std::to_string(report.thin_degree)}, {"per_radius", per_radius}}},
           {"sparse", sparse_json(group, report.sparse)},
           {"isolated_balls", report.isolated ? isolated_json(group, *report.isolated, scale) : json(nullptr)},
           {"pwip", json{{"max_depth", std::to_string(report.pwip_depth)},
                         {"depth_budget", std::to_string(scale.max_depth)},
                         {"witness", report.pwip_witness ? witness_json(group, *report.pwip_witness)
                                                         : json(nullptr)}}},
           {"consistent", report.consistent},
           {"caveat", report.caveat},
           {"scale", scale_json(group, scale)}};
  if (!a_set.recipe().is_null()) out["set"]["recipe"] = a_set.recipe();
  return out;
}

json density_json(const DensityProfile& profile) {
  json points = json::array();
  for (const DensityPoint& p : profile.points)
    points.push_back(json{{"n", std::to_string(p.n)},
                          {"count", std::to_string(p.count)},
                          {"ratio", format_ratio(p.ratio)}});
  return json{{"n_max", std::to_string(profile.n_max)},
              {"step", std::to_string(profile.step)},
              {"tail_start", std::to_string(profile.tail_start)},
              {"estimate", format_ratio(profile.estimate)},
              {"points", points}};
}

json density_pwip_json(const DensityPwipReport& report) {
  const GroupModel z = GroupModel::integers();
  return json{{"verdict", report.achieved_depth == report.requested_depth ? "FOUND" : "NOT_FOUND"},
              {"density_estimate", format_ratio(report.density_estimate)},
              {"requested_depth", std::to_string(report.requested_depth)},
              {"achieved_depth", std::to_string(report.achieved_depth)},
              {"witness", report.witness ? witness_json(z, *report.witness) : json(nullptr)},
              {"window", window_json(Window{report.window})},
              {"sample_size", std::to_string(report.sample_size)}};
}

}  // namespace coarse
