#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coarse/group.hpp"

namespace coarse {

inline constexpr std::uint64_t kRadiusCap = 200'000;

/// A finite subset F of one group, used as the "radius" of a ball
/// B(g, F) = Fg u {g}. Elements are sorted and unique.
class Radius {
 public:
  Radius() = default;
  Radius(const GroupModel& group, std::vector<Element> elements, std::string label = {});

  /// All elements of word length <= r.
  static Radius word_ball(const GroupModel& group, std::int64_t r, std::uint64_t cap = kRadiusCap);

  /// "wordball:r", or an explicit element list. Elements are separated by
  /// ';', or by ',' for groups whose element syntax has no commas.
  static Radius parse(const GroupModel& group, std::string_view literal);

  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(const Element& e) const;
  bool subset_of(const Radius& other) const;

  bool symmetric() const noexcept { return symmetric_; }
  bool contains_identity() const noexcept { return has_identity_; }

  /// F u F^-1 (label gains a "sym:" prefix when anything was added).
  Radius symmetrized(const GroupModel& group) const;
  /// Union of two radii of the same group.
  Radius united(const GroupModel& group, const Radius& other) const;

  /// "wordball:r" for word balls, empty for explicit radii.
  const std::string& label() const noexcept { return label_; }
  /// Word radius r when this is a word ball, -1 otherwise.
  std::int64_t word_radius() const noexcept { return word_radius_; }

  friend bool operator==(const Radius& a, const Radius& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Element> elements_;
  std::string label_;
  std::int64_t word_radius_ = -1;
  bool symmetric_ = true;
  bool has_identity_ = false;
};

/// Elements separated by ';', or by ',' when the group's element syntax has
/// no commas and no ';' appears. Blank items are skipped.
std::vector<Element> parse_element_list(const GroupModel& group, std::string_view text);

/// Render a radius as its label, or as its explicit element list.
std::string describe(const GroupModel& group, const Radius& radius);

}  // namespace coarse
