#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coarse/radius.hpp"
#include "coarse/sample.hpp"

namespace coarse {

/// Search budget for every at-scale verdict.
///
/// `f_family` and `h_family` are ordered by size, then lexicographically.
/// Verdicts quantified over "all y" only look at interior elements: those
/// whose ball of radius `margin()` stays inside the sample window.
struct Scale {
  std::string name;
  std::vector<Radius> f_family;
  std::vector<Radius> h_family;
  std::size_t pool_cap = 512;     // candidate translations for searches
  std::size_t subset_cap = 8192;  // translate sets tried by the sparse search
  int max_depth = 3;              // deepest piecewise shifted IP witness sought
  int probe_size = 3;             // size of the adversarial translation set

  /// Union of every radius in both families, plus the identity.
  Radius margin(const GroupModel& group) const;
};

enum class BudgetPreset { Small, Medium, Large };

BudgetPreset parse_budget(std::string_view name);
std::string_view to_string(BudgetPreset preset);

/// Word-ball families for a preset. F radii run 0..r, H radii run 1..r and
/// then double three times; H radii whose balls exceed kRadiusCap are dropped.
Scale make_scale(const GroupModel& group, BudgetPreset preset);

/// Throws unless both families are nonempty, homogeneous, and every F member
/// lies inside some H member.
void validate(const GroupModel& group, const Scale& scale);

/// Is the ball of radius `margin` around y contained in the window?
bool is_interior(const GroupModel& group, const Window& window, const Element& y,
                 const Radius& margin);

/// Indices of interior elements of the sample, ascending.
std::vector<std::size_t> interior_indices(const FiniteSample& sample, const Radius& margin);

}  // namespace coarse
