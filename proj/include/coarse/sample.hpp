#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "coarse/group.hpp"

namespace coarse {

/// An explicit finite subset of a group, the window it was sampled from and
/// the recipe that produced it. Elements are kept sorted and unique, and all
/// of them lie inside the window.
class FiniteSample {
 public:
  FiniteSample(GroupModel group, Window window, std::vector<Element> elements,
               nlohmann::json recipe = nullptr);

  /// Sample with the smallest window that contains every element.
  static FiniteSample bounded(GroupModel group, std::vector<Element> elements,
                              nlohmann::json recipe = nullptr);
  /// Keeps only the elements that fall inside `window`.
  static FiniteSample clipped(GroupModel group, Window window, std::vector<Element> elements,
                              nlohmann::json recipe = nullptr);

  const GroupModel& group() const noexcept { return group_; }
  const Window& window() const noexcept { return window_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const nlohmann::json& recipe() const noexcept { return recipe_; }

  bool contains(const Element& e) const;
  std::optional<std::size_t> index_of(const Element& e) const;

  /// The sample intersected with a smaller window.
  FiniteSample restricted(const Window& window) const;

  /// True when every element of this sample is in `other` (same group).
  bool subset_of(const FiniteSample& other) const;

 private:
  GroupModel group_;
  Window window_;
  std::vector<Element> elements_;
  nlohmann::json recipe_;
};

/// Every carrier element of the window, exactly once.
FiniteSample enumerate_window(const GroupModel& group, const Window& window,
                              std::uint64_t cap = kDefaultEnumerationCap);

/// Sorts and removes duplicates in place.
void canonicalize(std::vector<Element>& elements);

}  // namespace coarse
