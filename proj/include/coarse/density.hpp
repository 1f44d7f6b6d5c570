#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "coarse/sample.hpp"
#include "coarse/scale.hpp"
#include "coarse/structures.hpp"

namespace coarse {

inline constexpr std::int64_t kMaxDensityN = 10'000'000;

/// A subset of Z that can be counted on any symmetric interval.
class IntegerSet {
 public:
  /// {x : x mod q in residues}. Residues are reduced mod q.
  static IntegerSet periodic(std::int64_t modulus, std::vector<std::int64_t> residues);
  static IntegerSet explicit_set(std::vector<std::int64_t> elements);
  /// The elements of a finite sample of Z, taken as-is.
  static IntegerSet from_sample(const FiniteSample& sample);

  bool contains(std::int64_t x) const;
  /// |A n {-n, ..., n}|
  std::int64_t count(std::int64_t n) const;
  /// A n {-n, ..., n} as a sample of Z with window n.
  FiniteSample sample(std::int64_t n) const;
  const nlohmann::json& recipe() const noexcept { return recipe_; }

 private:
  IntegerSet() = default;

  bool periodic_ = false;
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> values_;  // residues, or sorted elements
  nlohmann::json recipe_;
};

struct DensityPoint {
  std::int64_t n = 0;
  std::int64_t count = 0;
  double ratio = 0;
};

struct DensityProfile {
  std::vector<DensityPoint> points;
  std::int64_t n_max = 0;
  std::int64_t step = 0;
  std::int64_t tail_start = 0;  // first n counted in the estimate
  double estimate = 0;          // largest ratio over n >= n_max / 2
};

/// Exact counts at n = step, 2 step, ..., and always at n_max.
DensityProfile upper_density_profile(const IntegerSet& a_set, std::int64_t n_max, std::int64_t step);

struct DensityPwipReport {
  double density_estimate = 0;
  int requested_depth = 0;
  int achieved_depth = 0;
  std::optional<PwipWitness> witness;  // at achieved_depth
  std::int64_t window = 0;
  std::size_t sample_size = 0;
};

/// Runs the detector on A n [-window, window] at depths 1..depth (depth <= 4)
/// and pairs the deepest witness with the density estimate at that window.
DensityPwipReport density_pwip_experiment(const IntegerSet& a_set, int depth, std::int64_t window,
                                          const Scale& budget);

}  // namespace coarse
