#include "coarse/classifiers.hpp"

#include <algorithm>
#include <unordered_set>

#include "coarse/error.hpp"

namespace coarse {

namespace {

using ElementSet = std::unordered_set<Element, ElementHash>;

std::size_t restricted_ball_size(const FiniteSample& y_set, const Element& y, const Radius& f) {
  const GroupModel& group = y_set.group();
  std::size_t size = 1;
  for (const Element& step : f.elements())
    if (step != group.identity() && y_set.contains(group.mul(step, y))) ++size;
  return size;
}

struct RingAnalysis {
  std::size_t degree = 0;
  std::vector<Element> exceptional;
  std::size_t interior_size = 0;
};

// Degree read off the interior points of `outer` that are not interior to the
// next window down.
std::optional<RingAnalysis> analyse_ring(const FiniteSample& y_set, const Radius& f, const Radius& margin,
                                         const Window& outer) {
  const GroupModel& group = y_set.group();
  const Window inner = group.inner_window(outer);
  std::vector<std::pair<Element, std::size_t>> interior;
  for (const Element& y : y_set.elements())
    if (group.in_window(y, outer) && is_interior(group, outer, y, margin))
      interior.emplace_back(y, restricted_ball_size(y_set, y, f));
  if (interior.empty()) return std::nullopt;

  RingAnalysis out;
  out.interior_size = interior.size();
  std::size_t ring_max = 0, all_max = 0;
  bool ring_seen = false;
  for (const auto& [y, size] : interior) {
    all_max = std::max(all_max, size);
    if (!is_interior(group, inner, y, margin)) {
      ring_seen = true;
      ring_max = std::max(ring_max, size);
    }
  }
  out.degree = std::max<std::size_t>(1, ring_seen ? ring_max : all_max);
  for (const auto& [y, size] : interior)
    if (size > out.degree) out.exceptional.push_back(y);
  return out;
}

}  // namespace

ThinReport thin_degree(const FiniteSample& y_set, const Radius& f, const Scale& scale) {
  if (y_set.empty()) fail(ErrorCode::Precondition, "thin degree needs a nonempty set");
  const GroupModel& group = y_set.group();
  validate(group, scale);
  for (const Element& e : f.elements()) group.check(e);

  const Radius margin = scale.margin(group).united(group, f);
  ThinReport report;
  report.f = f;
  report.window = y_set.window();
  report.inner_window = group.inner_window(report.window);

  auto outer = analyse_ring(y_set, f, margin, report.window);
  if (!outer) fail(ErrorCode::Precondition, "window too small for the interior margin: no interior points");
  report.degree = outer->degree;
  report.exceptional = std::move(outer->exceptional);
  report.interior_size = outer->interior_size;

  auto inner = analyse_ring(y_set, f, margin, report.inner_window);
  report.stable = inner && inner->degree == report.degree && inner->exceptional == report.exceptional;
  return report;
}

std::vector<Element> translate_intersection(const FiniteSample& a_set, std::span<const Element> f,
                                            const Window& w) {
  const GroupModel& group = a_set.group();
  if (f.empty()) return {};
  std::vector<Element> inverses;
  for (const Element& g : f) inverses.push_back(group.inv(g));
  std::vector<Element> out;
  // x in gA iff g^-1 x in A; candidates come from the first translate.
  for (const Element& a : a_set.elements()) {
    if (!group.in_window(a, w)) continue;
    Element x = group.mul(f[0], a);
    if (!group.in_window(x, w)) continue;
    bool keep = true;
    for (std::size_t i = 1; i < f.size() && keep; ++i) {
      Element pre = group.mul(inverses[i], x);
      keep = group.in_window(pre, w) && a_set.contains(pre);
    }
    if (keep) out.push_back(std::move(x));
  }
  canonicalize(out);
  return out;
}

SparseReport sparse_witness(const FiniteSample& a_set, std::span<const Element> x, const Scale& budget) {
  const GroupModel& group = a_set.group();
  validate(group, budget);
  if (x.empty()) fail(ErrorCode::Precondition, "sparse witness needs a nonempty translation set X");
  for (const Element& g : x) group.check(g);

  SparseReport report;
  report.translations.assign(x.begin(), x.end());
  canonicalize(report.translations);
  report.window = a_set.window();
  report.inner_window = group.inner_window(report.window);

  const std::vector<Element>& xs = report.translations;
  const std::size_t max_size = std::min(xs.size(), static_cast<std::size_t>(std::max(2, budget.probe_size)));
  std::vector<Element> f;
  for (std::size_t k = 1; k <= max_size; ++k) {
    // Index combinations in lexicographic order.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (report.subsets_tried >= budget.subset_cap) {
        report.budget_exhausted = true;
        return report;
      }
      ++report.subsets_tried;
      f.clear();
      for (std::size_t i : idx) f.push_back(xs[i]);
      std::vector<Element> outer = translate_intersection(a_set, f, report.window);
      std::vector<Element> inner = translate_intersection(a_set, f, report.inner_window);
      if (outer == inner) {
        report.verdict = SparseVerdict::WitnessFound;
        report.f = f;
        report.intersection = std::move(outer);
        report.inner_size = inner.size();
        return report;
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == xs.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return report;
}

IsolatedBallsReport isolated_balls_verdict(const FiniteSample& y_set, const Scale& scale,
                                           const FiniteSample* ambient) {
  const GroupModel& group = y_set.group();
  validate(group, scale);
  if (ambient) {
    if (!(ambient->group() == group)) fail(ErrorCode::FamilyMismatch, "ambient set lives in another group");
    if (!y_set.subset_of(*ambient)) fail(ErrorCode::Precondition, "Y must be a subset of the ambient set A");
  }
  const FiniteSample& universe = ambient ? *ambient : y_set;

  IsolatedBallsReport report;
  report.universe = ambient ? Universe::Ambient : Universe::Sample;
  report.window = universe.window();

  const Radius margin = scale.margin(group);
  std::vector<Element> interior;
  for (const Element& y : y_set.elements())
    if (is_interior(group, report.window, y, margin)) interior.push_back(y);
  report.interior_size = interior.size();
  if (interior.empty()) fail(ErrorCode::Precondition, "no interior points at the requested margin");

  Radius h_union(group, {});
  for (const Radius& h : scale.h_family) h_union = h_union.united(group, h);

  // Offsets u y^-1 (u in the universe, u != y) that some H can see.
  std::vector<std::vector<Element>> offsets(interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const Element& y = interior[i];
    if (h_union.size() <= universe.size()) {
      for (const Element& h : h_union.elements())
        if (h != group.identity() && universe.contains(group.mul(h, y))) offsets[i].push_back(h);
    } else {
      const Element y_inv = group.inv(y);
      for (const Element& u : universe.elements()) {
        if (u == y) continue;
        Element off = group.mul(u, y_inv);
        if (h_union.contains(off)) offsets[i].push_back(std::move(off));
      }
    }
  }

  auto isolated_set = [&](const Radius& f, const Radius& h) {
    std::vector<Element> out;
    for (std::size_t i = 0; i < interior.size(); ++i) {
      const bool isolated = std::all_of(offsets[i].begin(), offsets[i].end(), [&](const Element& o) {
        return !h.contains(o) || f.contains(o);
      });
      if (isolated) out.push_back(interior[i]);
    }
    return out;
  };

  for (std::size_t fi = 0; fi < scale.f_family.size(); ++fi) {
    const Radius& f = scale.f_family[fi];
    std::vector<IsolatedBallsReport::Cell> cells;
    std::optional<std::size_t> refuting;
    for (std::size_t hi = 0; hi < scale.h_family.size(); ++hi) {
      const Radius& h = scale.h_family[hi];
      if (!f.subset_of(h)) continue;
      std::vector<Element> isolated = isolated_set(f, h);
      if (isolated.empty()) {
        refuting = hi;
        break;
      }
      cells.push_back({hi, std::move(isolated)});
    }
    if (!refuting) {
      report.verdict = IsolatedVerdict::HasIsolatedBalls;
      report.winning_f = fi;
      report.cells = std::move(cells);
      return report;
    }
    report.refutations.push_back({fi, *refuting});
  }
  report.verdict = IsolatedVerdict::NoIsolatedBallsAtScale;
  return report;
}

std::vector<Element> sparse_probe(const FiniteSample& a_set, const Scale& scale) {
  const GroupModel& group = a_set.group();
  Radius h_union(group, {});
  for (const Radius& h : scale.h_family) h_union = h_union.united(group, h);

  const std::vector<Element> all = translation_pool(a_set, scale.pool_cap);
  std::vector<Element> pool;
  for (const Element& g : all)
    if (h_union.contains(g)) pool.push_back(g);
  if (pool.empty()) pool = all;
  if (pool.empty()) return {group.identity()};

  const Window outer = a_set.window();
  const Window inner = group.inner_window(outer);
  std::vector<Element> chosen;
  for (const Element& g : pool) {
    if (chosen.size() >= static_cast<std::size_t>(scale.probe_size)) break;
    chosen.push_back(g);
    if (translate_intersection(a_set, chosen, outer) == translate_intersection(a_set, chosen, inner))
      chosen.pop_back();
  }
  if (chosen.size() >= static_cast<std::size_t>(scale.probe_size)) return chosen;
  return pool;
}

ClassifyReport classify(const FiniteSample& a_set, const Scale& scale) {
  const GroupModel& group = a_set.group();
  validate(group, scale);
  ClassifyReport report;
  if (a_set.empty()) {
    report.empty_set = true;
    report.sparse.verdict = SparseVerdict::WitnessFound;
    report.sparse.window = a_set.window();
    report.sparse.inner_window = group.inner_window(a_set.window());
    report.consistent = true;
    return report;
  }

  for (const Radius& f : scale.f_family) {
    report.thin.push_back(thin_degree(a_set, f, scale));
    report.thin_degree = std::max(report.thin_degree, report.thin.back().degree);
  }

  const std::vector<Element> probe = sparse_probe(a_set, scale);
  report.sparse = sparse_witness(a_set, probe, scale);
  report.isolated = isolated_balls_verdict(a_set, scale);

  for (int d = 1; d <= scale.max_depth; ++d) {
    PwipSearch search = detect_pwip(a_set, d, scale);
    if (!search.witness) break;
    report.pwip_depth = d;
    report.pwip_witness = std::move(search.witness);
  }

  const bool no_isolated = report.isolated->verdict == IsolatedVerdict::NoIsolatedBallsAtScale;
  report.consistent = no_isolated ? report.pwip_depth == scale.max_depth : report.pwip_depth < scale.max_depth;
  return report;
}

}  // namespace coarse
