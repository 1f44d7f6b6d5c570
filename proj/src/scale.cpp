#include "coarse/scale.hpp"

#include <algorithm>
#include <cstdlib>

#include "coarse/error.hpp"

namespace coarse {

Radius Scale::margin(const GroupModel& group) const {
  std::int64_t widest = 0;
  bool all_word_balls = true;
  for (const auto* family : {&f_family, &h_family})
    for (const Radius& r : *family) {
      all_word_balls = all_word_balls && r.word_radius() >= 0;
      widest = std::max(widest, r.word_radius());
    }
  if (all_word_balls) return Radius::word_ball(group, widest);
  Radius out(group, {group.identity()});
  for (const Radius& r : f_family) out = out.united(group, r);
  for (const Radius& r : h_family) out = out.united(group, r);
  return out;
}

BudgetPreset parse_budget(std::string_view name) {
  if (name == "small") return BudgetPreset::Small;
  if (name == "medium") return BudgetPreset::Medium;
  if (name == "large") return BudgetPreset::Large;
  fail(ErrorCode::InvalidInput, "unknown budget preset '" + std::string(name) + "'");
}

std::string_view to_string(BudgetPreset preset) {
  switch (preset) {
    case BudgetPreset::Small: return "small";
    case BudgetPreset::Medium: return "medium";
    case BudgetPreset::Large: return "large";
  }
  return "?";
}

Scale make_scale(const GroupModel& group, BudgetPreset preset) {
  struct Params {
    int r_max;
    std::size_t pool, subsets;
    int depth, probe;
  };
  const Params p = [&] {
    switch (preset) {
      case BudgetPreset::Small: return Params{3, 64, 1024, 3, 2};
      case BudgetPreset::Medium: return Params{5, 512, 8192, 3, 3};
      case BudgetPreset::Large: return Params{8, 4096, 65536, 4, 4};
    }
    return Params{5, 512, 8192, 3, 3};
  }();

  Scale s;
  s.name = std::string(to_string(preset));
  s.pool_cap = p.pool;
  s.subset_cap = p.subsets;
  s.max_depth = p.depth;
  s.probe_size = p.probe;

  auto push_unique = [](std::vector<Radius>& family, Radius r) {
    if (std::none_of(family.begin(), family.end(), [&](const Radius& x) { return x == r; }))
      family.push_back(std::move(r));
  };
  for (int r = 0; r <= p.r_max; ++r) push_unique(s.f_family, Radius::word_ball(group, r));

  std::vector<std::int64_t> h_radii;
  for (int r = 1; r <= p.r_max; ++r) h_radii.push_back(r);
  for (int j = 1; j <= 3; ++j) h_radii.push_back(static_cast<std::int64_t>(p.r_max) << j);
  for (std::int64_t r : h_radii) {
    if (group.word_ball_size(r) > kRadiusCap) continue;
    push_unique(s.h_family, Radius::word_ball(group, r));
  }
  validate(group, s);
  return s;
}

void validate(const GroupModel& group, const Scale& scale) {
  if (scale.f_family.empty() || scale.h_family.empty())
    fail(ErrorCode::InvalidInput, "scale families must be nonempty");
  for (const auto* family : {&scale.f_family, &scale.h_family})
    for (const Radius& r : *family)
      for (const Element& e : r.elements()) group.check(e);
  for (const Radius& f : scale.f_family) {
    const bool covered = std::any_of(scale.h_family.begin(), scale.h_family.end(),
                                     [&](const Radius& h) { return f.subset_of(h); });
    if (!covered)
      fail(ErrorCode::InvalidInput,
           "F-family member " + describe(group, f) + " is not contained in any H-family member");
  }
  if (scale.pool_cap == 0 || scale.max_depth < 1 || scale.probe_size < 1)
    fail(ErrorCode::InvalidInput, "scale caps must be positive");
}

bool is_interior(const GroupModel& group, const Window& window, const Element& y,
                 const Radius& margin) {
  if (!group.in_window(y, window)) return false;
  if (const std::int64_t r = margin.word_radius(); r >= 0) {
    switch (group.family()) {
      case Family::Z:
      case Family::ZPowD:
        return std::all_of(y.payload().begin(), y.payload().end(),
                           [&](std::int64_t x) { return std::abs(x) + r <= window.extent; });
      case Family::Z2Sum: return r == 0 || window.extent >= group.parameter();
      case Family::Free: return static_cast<std::int64_t>(y.size()) + r <= window.extent;
    }
  }
  return std::all_of(margin.elements().begin(), margin.elements().end(),
                     [&](const Element& h) { return group.in_window(group.mul(h, y), window); });
}

std::vector<std::size_t> interior_indices(const FiniteSample& sample, const Radius& margin) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (is_interior(sample.group(), sample.window(), sample[i], margin)) out.push_back(i);
  return out;
}

}  // namespace coarse
