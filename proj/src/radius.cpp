#include "coarse/radius.hpp"

#include <algorithm>
#include <charconv>

#include "coarse/error.hpp"
#include "coarse/sample.hpp"

namespace coarse {

Radius::Radius(const GroupModel& group, std::vector<Element> elements, std::string label)
    : elements_(std::move(elements)), label_(std::move(label)) {
  for (const Element& e : elements_) group.check(e);
  canonicalize(elements_);
  has_identity_ = contains(group.identity());
  symmetric_ = std::all_of(elements_.begin(), elements_.end(),
                           [&](const Element& e) { return contains(group.inv(e)); });
}

Radius Radius::word_ball(const GroupModel& group, std::int64_t r, std::uint64_t cap) {
  Radius out(group, group.word_ball(r, cap), "wordball:" + std::to_string(r));
  out.word_radius_ = r;
  return out;
}

std::vector<Element> parse_element_list(const GroupModel& group, std::string_view text) {
  const bool commas_in_elements = group.family() == Family::ZPowD;
  const char sep = (commas_in_elements || text.find(';') != std::string_view::npos) ? ';' : ',';
  std::vector<Element> elements;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) elements.push_back(group.parse_element(item));
    start = end + 1;
  }
  return elements;
}

Radius Radius::parse(const GroupModel& group, std::string_view literal) {
  if (literal.starts_with("wordball:")) {
    std::string_view digits = literal.substr(9);
    std::int64_t r = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || r < 0)
      fail(ErrorCode::InvalidInput, "malformed radius literal '" + std::string(literal) + "'");
    return word_ball(group, r);
  }
  return Radius(group, parse_element_list(group, literal));
}

bool Radius::contains(const Element& e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

bool Radius::subset_of(const Radius& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

Radius Radius::symmetrized(const GroupModel& group) const {
  if (symmetric_) return *this;
  std::vector<Element> all = elements_;
  for (const Element& e : elements_) all.push_back(group.inv(e));
  Radius out(group, std::move(all), label_.empty() ? std::string{} : "sym:" + label_);
  return out;
}

Radius Radius::united(const GroupModel& group, const Radius& other) const {
  if (other.subset_of(*this)) return *this;
  if (subset_of(other)) return other;
  std::vector<Element> all = elements_;
  all.insert(all.end(), other.elements_.begin(), other.elements_.end());
  return Radius(group, std::move(all));
}

std::string describe(const GroupModel& group, const Radius& radius) {
  if (!radius.label().empty()) return radius.label();
  std::string out = "{";
  for (std::size_t i = 0; i < radius.size(); ++i) {
    if (i) out += group.family() == Family::ZPowD ? ";" : ",";
    out += group.render(radius.elements()[i]);
  }
  return out + "}";
}

}  // namespace coarse
