#include "coarse/sample.hpp"

#include <algorithm>

#include "coarse/error.hpp"

namespace coarse {

void canonicalize(std::vector<Element>& elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
}

FiniteSample::FiniteSample(GroupModel group, Window window, std::vector<Element> elements,
                           nlohmann::json recipe)
    : group_(group), window_(window), elements_(std::move(elements)), recipe_(std::move(recipe)) {
  if (window_.extent < 0) fail(ErrorCode::InvalidInput, "window extent must be non-negative");
  if (group_.family() == Family::Z2Sum && window_.extent > group_.parameter())
    fail(ErrorCode::InvalidInput, "z2sum window exceeds the coordinate count");
  for (const Element& e : elements_) {
    group_.check(e);
    if (!group_.in_window(e, window_))
      fail(ErrorCode::Precondition, "sample element " + group_.render(e) + " lies outside its window");
  }
  canonicalize(elements_);
}

FiniteSample FiniteSample::bounded(GroupModel group, std::vector<Element> elements,
                                   nlohmann::json recipe) {
  const Window w = group.bounding_window(elements);
  return FiniteSample(group, w, std::move(elements), std::move(recipe));
}

FiniteSample FiniteSample::clipped(GroupModel group, Window window, std::vector<Element> elements,
                                   nlohmann::json recipe) {
  std::erase_if(elements, [&](const Element& e) { return !group.in_window(e, window); });
  return FiniteSample(group, window, std::move(elements), std::move(recipe));
}

bool FiniteSample::contains(const Element& e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

std::optional<std::size_t> FiniteSample::index_of(const Element& e) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

FiniteSample FiniteSample::restricted(const Window& window) const {
  return clipped(group_, window, elements_, recipe_);
}

bool FiniteSample::subset_of(const FiniteSample& other) const {
  if (!(group_ == other.group_)) return false;
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

FiniteSample enumerate_window(const GroupModel& group, const Window& window, std::uint64_t cap) {
  return FiniteSample(group, window, group.enumerate_window(window, cap),
                      nlohmann::json{{"kind", "window"}, {"extent", std::to_string(window.extent)}});
}

}  // namespace coarse
