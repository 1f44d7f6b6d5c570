#include "coarse/density.hpp"

#include <algorithm>

#include "coarse/error.hpp"

namespace coarse {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

nlohmann::json string_array(const std::vector<std::int64_t>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (std::int64_t v : values) out.push_back(std::to_string(v));
  return out;
}

}  // namespace

IntegerSet IntegerSet::periodic(std::int64_t modulus, std::vector<std::int64_t> residues) {
  if (modulus < 1) fail(ErrorCode::InvalidInput, "modulus must be positive");
  if (modulus > 1'000'000) fail(ErrorCode::CapExceeded, "modulus above 10^6");
  for (std::int64_t& r : residues) r = ((r % modulus) + modulus) % modulus;
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  IntegerSet out;
  out.periodic_ = true;
  out.modulus_ = modulus;
  out.values_ = std::move(residues);
  out.recipe_ = {{"kind", "periodic"}, {"modulus", std::to_string(modulus)}, {"residues", string_array(out.values_)}};
  return out;
}

IntegerSet IntegerSet::explicit_set(std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  IntegerSet out;
  out.values_ = std::move(elements);
  out.recipe_ = {{"kind", "explicit"}, {"elements", string_array(out.values_)}};
  return out;
}

IntegerSet IntegerSet::from_sample(const FiniteSample& sample) {
  if (sample.group().family() != Family::Z)
    fail(ErrorCode::FamilyMismatch, "density is defined for subsets of Z only");
  std::vector<std::int64_t> values;
  for (const Element& e : sample.elements()) values.push_back(e[0]);
  IntegerSet out = explicit_set(std::move(values));
  out.recipe_ = {{"kind", "generated"}, {"ref", sample.recipe()}};
  return out;
}

bool IntegerSet::contains(std::int64_t x) const {
  if (periodic_) {
    const std::int64_t r = ((x % modulus_) + modulus_) % modulus_;
    return std::binary_search(values_.begin(), values_.end(), r);
  }
  return std::binary_search(values_.begin(), values_.end(), x);
}

std::int64_t IntegerSet::count(std::int64_t n) const {
  if (n < 0) fail(ErrorCode::InvalidInput, "count needs n >= 0");
  if (periodic_) {
    std::int64_t total = 0;
    for (std::int64_t r : values_)
      total += floor_div(n - r, modulus_) - floor_div(-n - 1 - r, modulus_);
    return total;
  }
  auto lo = std::lower_bound(values_.begin(), values_.end(), -n);
  auto hi = std::upper_bound(values_.begin(), values_.end(), n);
  return hi - lo;
}

FiniteSample IntegerSet::sample(std::int64_t n) const {
  if (n < 0) fail(ErrorCode::InvalidInput, "window must be nonnegative");
  if (static_cast<std::uint64_t>(count(n)) > kDefaultEnumerationCap)
    fail(ErrorCode::CapExceeded, "sample would exceed the enumeration cap");
  std::vector<Element> out;
  if (periodic_) {
    for (std::int64_t x = -n; x <= n; ++x)
      if (contains(x)) out.emplace_back(Family::Z, std::vector<std::int64_t>{x});
  } else {
    for (auto it = std::lower_bound(values_.begin(), values_.end(), -n); it != values_.end() && *it <= n; ++it)
      out.emplace_back(Family::Z, std::vector<std::int64_t>{*it});
  }
  return FiniteSample(GroupModel::integers(), Window{n}, std::move(out), recipe_);
}

DensityProfile upper_density_profile(const IntegerSet& a_set, std::int64_t n_max, std::int64_t step) {
  if (n_max < 1 || n_max > kMaxDensityN) fail(ErrorCode::InvalidInput, "n_max must be in 1..10^7");
  if (step < 1) fail(ErrorCode::InvalidInput, "step must be positive");
  DensityProfile profile;
  profile.n_max = n_max;
  profile.step = step;
  profile.tail_start = n_max / 2;
  auto record = [&](std::int64_t n) {
    const std::int64_t c = a_set.count(n);
    const double ratio = static_cast<double>(c) / static_cast<double>(2 * n + 1);
    profile.points.push_back({n, c, ratio});
    if (n >= profile.tail_start) profile.estimate = std::max(profile.estimate, ratio);
  };
  for (std::int64_t n = step; n < n_max; n += step) record(n);
  record(n_max);
  return profile;
}

DensityPwipReport density_pwip_experiment(const IntegerSet& a_set, int depth, std::int64_t window,
                                          const Scale& budget) {
  if (depth < 1 || depth > 4) fail(ErrorCode::InvalidInput, "experiment depth must be in 1..4");
  if (window < 1) fail(ErrorCode::InvalidInput, "window must be positive");
  DensityPwipReport report;
  report.requested_depth = depth;
  report.window = window;
  report.density_estimate = upper_density_profile(a_set, window, std::max<std::int64_t>(1, window / 64)).estimate;

  const FiniteSample sample = a_set.sample(window);
  report.sample_size = sample.size();
  for (int d = 1; d <= depth; ++d) {
    PwipSearch search = detect_pwip(sample, d, budget);
    if (!search.witness) break;
    report.achieved_depth = d;
    report.witness = std::move(search.witness);
  }
  return report;
}

}  // namespace coarse
