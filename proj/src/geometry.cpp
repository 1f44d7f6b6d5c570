#include "coarse/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "coarse/error.hpp"

namespace coarse {

namespace {

constexpr std::size_t kUnlabelled = std::numeric_limits<std::size_t>::max();

void check_same_group(const GroupModel& group, const Radius& radius) {
  for (const Element& e : radius.elements()) group.check(e);
}

// Indices of elements of A adjacent to A[i] under the symmetric radius k.
template <typename Visit>
void for_each_neighbor(const FiniteSample& a_set, std::size_t i, const Radius& k, Visit&& visit) {
  const GroupModel& group = a_set.group();
  for (const Element& step : k.elements()) {
    if (auto j = a_set.index_of(group.mul(step, a_set[i]))) visit(*j);
  }
}

}  // namespace

FiniteSample ball(const GroupModel& group, const Element& g, const Radius& radius) {
  group.check(g);
  check_same_group(group, radius);
  std::vector<Element> out;
  out.reserve(radius.size() + 1);
  out.push_back(g);
  for (const Element& f : radius.elements()) out.push_back(group.mul(f, g));
  return FiniteSample::bounded(group, std::move(out));
}

FiniteSample restricted_ball(const FiniteSample& y, const Element& g, const Radius& radius) {
  const GroupModel& group = y.group();
  group.check(g);
  check_same_group(group, radius);
  std::vector<Element> out;
  if (y.contains(g)) out.push_back(g);
  for (const Element& f : radius.elements()) {
    Element p = group.mul(f, g);
    if (y.contains(p)) out.push_back(std::move(p));
  }
  return FiniteSample(group, y.window(), std::move(out));
}

ChainComponent chain_component(const FiniteSample& a_set, const Element& a, const Radius& k) {
  const GroupModel& group = a_set.group();
  group.check(a);
  check_same_group(group, k);
  const auto start = a_set.index_of(a);
  if (!start) fail(ErrorCode::Precondition, "chain start " + group.render(a) + " is not in A");

  const Radius sym = k.symmetrized(group);
  std::vector<char> seen(a_set.size(), 0);
  std::deque<std::size_t> queue{*start};
  seen[*start] = 1;
  std::vector<Element> members;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    members.push_back(a_set[i]);
    for_each_neighbor(a_set, i, sym, [&](std::size_t j) {
      if (!seen[j]) {
        seen[j] = 1;
        queue.push_back(j);
      }
    });
  }
  std::sort(members.begin(), members.end());
  return ChainComponent{std::move(members), !k.symmetric()};
}

std::vector<std::size_t> chain_components(const FiniteSample& a_set, const Radius& k) {
  const GroupModel& group = a_set.group();
  check_same_group(group, k);
  const Radius sym = k.symmetrized(group);
  std::vector<std::size_t> label(a_set.size(), kUnlabelled);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < a_set.size(); ++s) {
    if (label[s] != kUnlabelled) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for_each_neighbor(a_set, i, sym, [&](std::size_t j) {
        if (label[j] == kUnlabelled) {
          label[j] = next;
          stack.push_back(j);
        }
      });
    }
    ++next;
  }
  return label;
}

CellularityReport cellularity_probe(const FiniteSample& a_set, const Radius& k, const Scale& budget) {
  if (a_set.empty()) fail(ErrorCode::Precondition, "cellularity probe needs a nonempty set");
  const GroupModel& group = a_set.group();
  validate(group, budget);
  check_same_group(group, k);

  CellularityReport report;
  report.k = k;
  report.k_symmetrized = !k.symmetric();
  report.window = a_set.window();

  const std::vector<std::size_t> label = chain_components(a_set, k);
  std::size_t count = 0;
  for (std::size_t l : label) count = std::max(count, l + 1);
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t i = 0; i < label.size(); ++i) members[label[i]].push_back(i);
  report.component_count = count;
  for (const auto& m : members) report.largest_component = std::max(report.largest_component, m.size());

  const std::vector<std::size_t> interior = interior_indices(a_set, budget.margin(group));
  report.interior_size = interior.size();

  std::vector<Radius> candidates{Radius(group, {})};
  candidates.insert(candidates.end(), budget.h_family.begin(), budget.h_family.end());

  for (const Radius& candidate : candidates) {
    std::optional<CellularityReport::Rejection> rejection;
    for (std::size_t i : interior) {
      const Element& a = a_set[i];
      const Element a_inv = group.inv(a);
      for (std::size_t j : members[label[i]]) {
        if (j == i) continue;
        if (!candidate.contains(group.mul(a_set[j], a_inv))) {
          rejection = CellularityReport::Rejection{candidate, a, a_set[j]};
          break;
        }
      }
      if (rejection) break;
    }
    if (!rejection) {
      report.verdict = CellularVerdict::Cellular;
      report.k_prime = candidate;
      return report;
    }
    report.rejected.push_back(std::move(*rejection));
  }
  report.verdict = CellularVerdict::NotCellularAtScale;
  return report;
}

FiniteMap::FiniteMap(FiniteSample domain, GroupModel codomain,
                     std::vector<std::pair<Element, Element>> pairs)
    : domain_(std::move(domain)), codomain_(codomain) {
  const GroupModel& group = domain_.group();
  std::vector<std::optional<Element>> slots(domain_.size());
  for (auto& [x, y] : pairs) {
    group.check(x);
    codomain_.check(y);
    auto i = domain_.index_of(x);
    if (!i) fail(ErrorCode::Precondition, "map point " + group.render(x) + " lies outside the declared domain");
    if (slots[*i] && *slots[*i] != y)
      fail(ErrorCode::InvalidInput, "map assigns two images to " + group.render(x));
    slots[*i] = std::move(y);
  }
  images_.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) fail(ErrorCode::Precondition, "map has no image for " + group.render(domain_[i]));
    images_.push_back(std::move(*slots[i]));
  }
}

const Element& FiniteMap::operator()(const Element& x) const {
  auto i = domain_.index_of(x);
  if (!i) fail(ErrorCode::Precondition, "point " + domain_.group().render(x) + " is outside the map domain");
  return images_[*i];
}

PrecReport prec_mapping_check(const FiniteMap& f, const Radius& radius, const Scale& budget) {
  const FiniteSample& domain = f.domain();
  const GroupModel& source = domain.group();
  const GroupModel& target = f.codomain();
  check_same_group(source, radius);
  validate(target, budget);

  PrecReport report;
  report.f = radius;
  const Radius margin = radius.united(source, Radius(source, {source.identity()}));

  struct Requirement {
    std::size_t x;
    std::vector<std::pair<std::size_t, Element>> offsets;  // neighbour index, f(x') f(x)^-1
  };
  std::vector<Requirement> requirements;
  std::vector<Element> needed;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!is_interior(source, domain.window(), domain[i], margin)) continue;
    Requirement req{i, {}};
    const Element fx_inv = target.inv(f.image_of_index(i));
    for (const Element& step : radius.elements()) {
      auto j = domain.index_of(source.mul(step, domain[i]));
      if (!j) continue;
      Element offset = target.mul(f.image_of_index(*j), fx_inv);
      if (offset == target.identity()) continue;
      needed.push_back(offset);
      req.offsets.emplace_back(*j, std::move(offset));
    }
    requirements.push_back(std::move(req));
  }
  report.interior_size = requirements.size();
  canonicalize(needed);

  std::vector<Radius> candidates{Radius(target, {})};
  candidates.insert(candidates.end(), budget.h_family.begin(), budget.h_family.end());
  for (const Radius& candidate : candidates) {
    const bool covers = std::all_of(needed.begin(), needed.end(),
                                    [&](const Element& e) { return candidate.contains(e); });
    if (covers) {
      report.verdict = PrecVerdict::Prec;
      report.k = candidate;
      return report;
    }
  }

  report.verdict = PrecVerdict::NotPrec;
  auto escapes = [&](const Radius& candidate) {
    for (const Requirement& req : requirements)
      for (const auto& [j, offset] : req.offsets)
        if (!candidate.contains(offset)) {
          report.offender = domain[req.x];
          report.offender_neighbor = domain[j];
          return true;
        }
    return false;
  };
  if (!escapes(candidates.back())) escapes(candidates.front());
  return report;
}

}  // namespace coarse
