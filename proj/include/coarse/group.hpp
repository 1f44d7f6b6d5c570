#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coarse {

enum class Family { Z, ZPowD, Z2Sum, Free };

std::string_view to_string(Family family);

/// A group element in canonical encoding.
///
/// The payload layout depends on the family:
///   Z      one integer
///   ZPowD  d integers
///   Z2Sum  m entries, each 0 or 1
///   Free   reduced word; letter i (1-based) is +i, its inverse is -i
///
/// Elements carry only the family tag; the GroupModel that owns them checks
/// the payload length and letter range.
class Element {
 public:
  Element() = default;
  Element(Family family, std::vector<std::int64_t> payload)
      : family_(family), payload_(std::move(payload)) {}

  Family family() const noexcept { return family_; }
  std::span<const std::int64_t> payload() const noexcept { return payload_; }
  std::size_t size() const noexcept { return payload_.size(); }
  std::int64_t operator[](std::size_t i) const { return payload_[i]; }

  friend bool operator==(const Element&, const Element&) = default;

  /// Canonical total order: numeric-lexicographic for the Z families and
  /// bit vectors, shortlex for free words (letters ordered a < A < b < B ...).
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  Family family_ = Family::Z;
  std::vector<std::int64_t> payload_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Finite truncation of the carrier. The extent means:
///   Z, ZPowD  max-norm radius (elements with every |coordinate| <= extent)
///   Z2Sum     coordinate bound (support inside the first `extent` coordinates)
///   Free      word-length bound
struct Window {
  std::int64_t extent = 0;
  friend bool operator==(const Window&, const Window&) = default;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class GroupModel {
 public:
  static GroupModel integers();
  static GroupModel lattice(int dimension);
  static GroupModel z2_sum(int coordinates);
  static GroupModel free_group(int rank);

  /// "z", "z^2", "z2sum:16", "free:2".
  static GroupModel parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  /// d for ZPowD, m for Z2Sum, k for Free, 1 for Z.
  int parameter() const noexcept { return param_; }
  std::string spec() const;

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;

  Element parse_element(std::string_view text) const;
  std::string render(const Element& e) const;

  /// Throws FamilyMismatch unless `e` is a canonical element of this group.
  void check(const Element& e) const;
  bool is_member(const Element& e) const noexcept;

  /// Word length with respect to the default generators.
  std::int64_t word_length(const Element& e) const;

  /// Default generators: +-1, +-unit vectors, coordinate vectors, letters and
  /// their inverses. Returned sorted in canonical order.
  std::vector<Element> generators() const;

  /// All elements of word length <= r, sorted.
  std::vector<Element> word_ball(std::int64_t r,
                                 std::uint64_t cap = kDefaultEnumerationCap) const;
  /// Closed-form size of word_ball(r); saturates at UINT64_MAX.
  std::uint64_t word_ball_size(std::int64_t r) const;

  bool in_window(const Element& e, const Window& w) const;
  /// Every element of the window exactly once, sorted.
  std::vector<Element> enumerate_window(const Window& w,
                                        std::uint64_t cap = kDefaultEnumerationCap) const;
  /// Closed-form size of the window; saturates at UINT64_MAX.
  std::uint64_t window_size(const Window& w) const;
  /// Smallest window containing all of `elements` (full carrier for Z2Sum).
  Window bounding_window(std::span<const Element> elements) const;
  /// The nested inner window used for window-stability checks.
  Window inner_window(const Window& w) const;

  friend bool operator==(const GroupModel&, const GroupModel&) = default;

 private:
  GroupModel(Family family, int param) : family_(family), param_(param) {}

  Family family_ = Family::Z;
  int param_ = 1;
};

/// Number of non-zero coordinates of a Z2Sum element.
std::int64_t support_size(const Element& e);

}  // namespace coarse
