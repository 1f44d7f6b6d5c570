#include "coarse/structures.hpp"

#include <algorithm>
#include <unordered_set>

#include "coarse/error.hpp"

namespace coarse {

namespace {

constexpr int kMaxGenerators = 20;
constexpr int kMaxDepth = 16;
constexpr std::size_t kAllPairsLimit = 4'000'000;
constexpr std::uint64_t kSphereLookupBudget = 50'000'000;

void check_generators(const GroupModel& group, std::span<const Element> generators) {
  if (generators.empty()) fail(ErrorCode::InvalidInput, "generator list is empty");
  if (generators.size() > static_cast<std::size_t>(kMaxGenerators))
    fail(ErrorCode::CapExceeded, "at most 20 generators are supported");
  std::vector<Element> seen;
  for (const Element& g : generators) {
    group.check(g);
    if (g == group.identity()) fail(ErrorCode::InvalidInput, "generators must not be the identity");
    if (std::find(seen.begin(), seen.end(), g) != seen.end())
      fail(ErrorCode::InvalidInput, "generators must be injective; " + group.render(g) + " repeats");
    seen.push_back(g);
  }
}

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

// Ordered products g_S for every subset S of the first n generators, by mask.
std::vector<Element> subset_products(const GroupModel& group, std::span<const Element> gens, int n) {
  std::vector<Element> prod(std::size_t{1} << n);
  prod[0] = group.identity();
  for (std::uint32_t mask = 1; mask < prod.size(); ++mask) {
    // Strip the highest index: g_S = g_{S \ {max}} g_max.
    int top = 31 - __builtin_clz(mask);
    prod[mask] = group.mul(prod[mask & ~(1u << top)], gens[top]);
  }
  return prod;
}

bool ternary_digits_even(std::int64_t i) {
  for (; i > 0; i /= 3)
    if (i % 3 == 1) return false;
  return true;
}

bool by_length_then_canonical(const GroupModel& group, const Element& a, const Element& b) {
  const auto la = group.word_length(a), lb = group.word_length(b);
  return la != lb ? la < lb : a < b;
}

}  // namespace

FiniteSample gen_ip(const GroupModel& group, std::span<const Element> generators) {
  check_generators(group, generators);
  const int k = static_cast<int>(generators.size());
  std::vector<Element> prod = subset_products(group, generators, k);
  prod.erase(prod.begin());
  nlohmann::json recipe{{"kind", "ip"}, {"group", group.spec()}, {"generators", nlohmann::json::array()}};
  for (const Element& g : generators) recipe["generators"].push_back(group.render(g));
  return FiniteSample::bounded(group, std::move(prod), std::move(recipe));
}

std::vector<PwipProduct> pwip_products(const GroupModel& group, std::span<const Element> generators,
                                       std::span<const Element> shifts) {
  if (generators.size() != shifts.size())
    fail(ErrorCode::InvalidInput, "generators and shifts must have the same length");
  const int k = static_cast<int>(generators.size());
  if (k > kMaxGenerators) fail(ErrorCode::CapExceeded, "at most 20 generators are supported");
  for (const Element& b : shifts) group.check(b);
  const std::vector<Element> prod = subset_products(group, generators, k);
  std::vector<PwipProduct> out;
  out.reserve(prod.size() - 1);
  for (std::uint32_t mask = 1; mask < prod.size(); ++mask) {
    const int top = 31 - __builtin_clz(mask);
    out.push_back({mask_indices(mask), group.mul(prod[mask], shifts[top])});
  }
  return out;
}

FiniteSample gen_pwip(const GroupModel& group, std::span<const Element> generators,
                      std::span<const Element> shifts) {
  if (generators.size() != shifts.size())
    fail(ErrorCode::InvalidInput, "generators and shifts must have the same length");
  check_generators(group, generators);
  std::vector<Element> values;
  for (PwipProduct& p : pwip_products(group, generators, shifts)) values.push_back(std::move(p.value));
  nlohmann::json recipe{{"kind", "pwip"},
                        {"group", group.spec()},
                        {"generators", nlohmann::json::array()},
                        {"shifts", nlohmann::json::array()}};
  for (const Element& g : generators) recipe["generators"].push_back(group.render(g));
  for (const Element& b : shifts) recipe["shifts"].push_back(group.render(b));
  return FiniteSample::bounded(group, std::move(values), std::move(recipe));
}

FiniteSample gen_wn(int coordinates, int support) {
  if (coordinates < 1 || coordinates > 24) fail(ErrorCode::InvalidInput, "W_n needs 1 <= m <= 24");
  if (support < 0 || support > coordinates) fail(ErrorCode::InvalidInput, "W_n needs 0 <= n <= m");
  const GroupModel group = GroupModel::z2_sum(coordinates);
  return FiniteSample(group, Window{coordinates}, group.word_ball(support),
                      nlohmann::json{{"kind", "wn"},
                                     {"group", group.spec()},
                                     {"support", std::to_string(support)}});
}

std::int64_t cantor_offset(int level) {
  if (level < 1) fail(ErrorCode::InvalidInput, "Cantor levels start at 1");
  std::int64_t offset = 0, pow = 3;  // pow = 3^n
  for (int n = 1; n < level; ++n) {
    offset += pow + 2 * (3 * pow);
    pow *= 3;
  }
  return offset;
}

FiniteSample gen_cantor_geodesic(int levels) {
  if (levels < 1 || levels > 12) fail(ErrorCode::InvalidInput, "Cantor levels must be in 1..12");
  const GroupModel group = GroupModel::integers();
  std::vector<Element> out;
  std::int64_t pow = 3;
  for (int n = 1; n <= levels; ++n, pow *= 3) {
    const std::int64_t offset = cantor_offset(n);
    for (std::int64_t i = 0; i <= pow; ++i)
      if (ternary_digits_even(i)) out.emplace_back(Family::Z, std::vector<std::int64_t>{offset + i});
  }
  return FiniteSample::bounded(group, std::move(out),
                               nlohmann::json{{"kind", "cantor"}, {"levels", std::to_string(levels)}});
}

std::optional<std::string> witness_defect(const FiniteSample& target, const PwipWitness& w) {
  const GroupModel& group = target.group();
  if (w.depth < 1) return "depth must be at least 1";
  if (w.generators.size() != static_cast<std::size_t>(w.depth) ||
      w.shifts.size() != static_cast<std::size_t>(w.depth))
    return "generator or shift count differs from the depth";
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    if (!group.is_member(w.generators[i]) || !group.is_member(w.shifts[i])) return "foreign element";
    if (w.generators[i] == group.identity()) return "identity generator";
    for (std::size_t j = 0; j < i; ++j)
      if (w.generators[i] == w.generators[j]) return "generators are not injective";
  }
  const auto expected = pwip_products(group, w.generators, w.shifts);
  if (expected.size() != w.products.size()) return "wrong number of products";
  std::vector<Element> values;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i].indices != w.products[i].indices || expected[i].value != w.products[i].value)
      return "product " + std::to_string(i + 1) + " does not match its generators and shifts";
    if (!target.contains(expected[i].value)) return "product " + group.render(expected[i].value) + " is outside the set";
    values.push_back(expected[i].value);
  }
  canonicalize(values);
  if (values.size() != expected.size()) return "products are not pairwise distinct";
  return std::nullopt;
}

PwipWitness restrict_witness(const GroupModel& group, const PwipWitness& w, int depth) {
  if (depth < 1 || depth > w.depth) fail(ErrorCode::InvalidInput, "restriction depth out of range");
  PwipWitness out;
  out.depth = depth;
  out.generators.assign(w.generators.begin(), w.generators.begin() + depth);
  out.shifts.assign(w.shifts.begin(), w.shifts.begin() + depth);
  out.products = pwip_products(group, out.generators, out.shifts);
  return out;
}

std::vector<Element> translation_pool(const FiniteSample& a_set, std::size_t cap, bool* truncated) {
  const GroupModel& group = a_set.group();
  const std::size_t n = a_set.size();
  auto order = [&](const Element& a, const Element& b) { return by_length_then_canonical(group, a, b); };
  std::vector<Element> pool;
  bool cut = false;

  if (n * n <= kAllPairsLimit) {
    std::vector<Element> inverses;
    inverses.reserve(n);
    for (const Element& x : a_set.elements()) inverses.push_back(group.inv(x));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pool.push_back(group.mul(a_set[j], inverses[i]));
    canonicalize(pool);
    std::sort(pool.begin(), pool.end(), order);
    if (pool.size() > cap) {
      pool.resize(cap);
      cut = true;
    }
  } else {
    // Large samples: walk word spheres outward and keep every g with g x in A
    // for some x, until the pool is full or the lookup budget runs out.
    std::uint64_t lookups = 0;
    std::uint64_t previous_size = 1;
    for (std::int64_t r = 1; pool.size() < cap; ++r) {
      const std::uint64_t ball_size = group.word_ball_size(r);
      if (ball_size > kDefaultEnumerationCap || ball_size == previous_size) {
        cut = ball_size != previous_size;
        break;
      }
      previous_size = ball_size;
      std::vector<Element> sphere;
      for (Element& g : group.word_ball(r))
        if (group.word_length(g) == r) sphere.push_back(std::move(g));
      for (const Element& g : sphere) {
        for (const Element& x : a_set.elements()) {
          ++lookups;
          if (a_set.contains(group.mul(g, x))) {
            pool.push_back(g);
            break;
          }
        }
        if (pool.size() >= cap || lookups > kSphereLookupBudget) break;
      }
      if (lookups > kSphereLookupBudget) {
        cut = true;
        break;
      }
    }
    if (pool.size() >= cap) cut = true;
  }
  if (truncated) *truncated = cut;
  return pool;
}

namespace {

class PwipSearcher {
 public:
  PwipSearcher(const FiniteSample& a_set, int depth, std::vector<Element> pool)
      : a_(a_set), group_(a_set.group()), depth_(depth), pool_(std::move(pool)) {}

  std::optional<PwipWitness> run() {
    std::vector<std::size_t> all(a_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    levels_.reserve(depth_);  // choose_generator holds references into levels_
    levels_.push_back(std::move(all));
    if (!choose_generator(0)) return std::nullopt;
    return build_witness();
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Picks g_j for j < depth - 1; the last generator never enters a product
  // except through its own shift, so it is chosen freely at the end.
  bool choose_generator(int j) {
    if (j == depth_ - 1) return choose_bases();
    const std::vector<std::size_t>& current = levels_[j];
    std::vector<char> in_level(a_.size(), 0);
    for (std::size_t i : current) in_level[i] = 1;

    for (const Element& g : pool_) {
      if (std::find(gens_.begin(), gens_.end(), g) != gens_.end()) continue;
      ++nodes_;
      std::vector<std::size_t> next;
      for (std::size_t i : current) {
        auto t = a_.index_of(group_.mul(g, a_[i]));
        if (t && in_level[*t]) next.push_back(i);
      }
      if (next.empty()) continue;
      gens_.push_back(g);
      if (cube_is_faithful()) {
        levels_.push_back(std::move(next));
        if (choose_generator(j + 1)) return true;
        levels_.pop_back();
      }
      gens_.pop_back();
    }
    return false;
  }

  // All g_S over the chosen generators are pairwise distinct, so every cube
  // has 2^j distinct corners.
  bool cube_is_faithful() const {
    std::vector<Element> prod = subset_products(group_, gens_, static_cast<int>(gens_.size()));
    canonicalize(prod);
    return prod.size() == (std::size_t{1} << gens_.size());
  }

  bool choose_bases() {
    products_ = subset_products(group_, gens_, static_cast<int>(gens_.size()));
    used_.assign(a_.size(), 0);
    bases_.assign(depth_, 0);
    if (!choose_base(depth_ - 1)) return false;
    last_generator_ = free_generator();
    return last_generator_.has_value();
  }

  // Block j is the cube {g_S c_j : S subset of {0..j-1}}.
  bool choose_base(int j) {
    if (j < 0) return true;
    const std::size_t corners = std::size_t{1} << j;
    for (std::size_t c : levels_[j]) {
      ++nodes_;
      std::vector<std::size_t> points;
      points.reserve(corners);
      bool clash = false;
      for (std::size_t mask = 0; mask < corners && !clash; ++mask) {
        const std::size_t p = *a_.index_of(group_.mul(products_[mask], a_[c]));
        clash = used_[p] != 0;
        points.push_back(p);
      }
      if (clash) continue;
      for (std::size_t p : points) used_[p] = 1;
      bases_[j] = c;
      if (choose_base(j - 1)) return true;
      for (std::size_t p : points) used_[p] = 0;
    }
    return false;
  }

  std::optional<Element> free_generator() const {
    auto usable = [&](const Element& g) {
      return g != group_.identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end();
    };
    for (const Element& g : pool_)
      if (usable(g)) return g;
    for (std::int64_t r = 1; r <= 3; ++r) {
      if (group_.word_ball_size(r) > kRadiusCap) break;
      for (const Element& g : group_.word_ball(r))
        if (usable(g)) return g;
    }
    return std::nullopt;
  }

  PwipWitness build_witness() const {
    PwipWitness w;
    w.depth = depth_;
    w.generators = gens_;
    w.generators.push_back(*last_generator_);
    for (int j = 0; j < depth_; ++j) {
      // c_j = g_j b_j
      w.shifts.push_back(group_.mul(group_.inv(w.generators[j]), a_[bases_[j]]));
    }
    w.products = pwip_products(group_, w.generators, w.shifts);
    return w;
  }

  const FiniteSample& a_;
  const GroupModel& group_;
  int depth_;
  std::vector<Element> pool_;
  std::vector<Element> gens_;
  std::vector<std::vector<std::size_t>> levels_;  // levels_[j]: valid bases of block j
  std::vector<Element> products_;
  std::vector<char> used_;
  std::vector<std::size_t> bases_;
  std::optional<Element> last_generator_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

PwipSearch detect_pwip(const FiniteSample& a_set, int depth, const Scale& budget) {
  if (depth < 1 || depth > kMaxDepth)
    fail(ErrorCode::InvalidInput, "detector depth must be in 1..16");
  PwipSearch result;
  const std::uint64_t needed = (std::uint64_t{1} << depth) - 1;
  if (a_set.size() < needed) {
    result.note = "set has fewer elements than the " + std::to_string(needed) + " distinct products required";
    return result;
  }
  std::vector<Element> pool = translation_pool(a_set, budget.pool_cap, &result.pool_truncated);
  result.pool_size = pool.size();
  PwipSearcher searcher(a_set, depth, std::move(pool));
  result.witness = searcher.run();
  result.nodes = searcher.nodes();
  if (!result.witness) result.note = "search over the budgeted pool found no witness";
  return result;
}

Extraction extract_pwip_from_chain(const NestedChain& chain, const Scale& budget) {
  const std::size_t k = chain.translations.size();
  if (k == 0) fail(ErrorCode::InvalidInput, "nested chain needs at least one translation");
  if (chain.sets.size() != k + 1 || chain.representatives.size() != k)
    fail(ErrorCode::InvalidInput, "nested chain needs k+1 sets, k translations and k representatives");
  const GroupModel& group = chain.sets.front().group();
  for (const FiniteSample& s : chain.sets)
    if (!(s.group() == group)) fail(ErrorCode::FamilyMismatch, "nested chain mixes groups");
  for (std::size_t n = 0; n < k; ++n) {
    const Element& g = chain.translations[n];
    group.check(g);
    for (std::size_t m = 0; m < n; ++m)
      if (chain.translations[m] == g) fail(ErrorCode::Precondition, "chain translations must be injective");
    const FiniteSample& outer = chain.sets[n];
    const FiniteSample& inner = chain.sets[n + 1];
    if (!inner.subset_of(outer))
      fail(ErrorCode::Precondition, "nesting violated at n=" + std::to_string(n) + ": A_{n+1} is not inside A_n");
    for (const Element& a : inner.elements()) {
      Element moved = group.mul(g, a);
      if (group.in_window(moved, outer.window()) && !outer.contains(moved))
        fail(ErrorCode::Precondition, "nesting violated at n=" + std::to_string(n) + ": g_n " +
                                          group.render(a) + " = " + group.render(moved) + " is not in A_n");
    }
    if (!inner.contains(chain.representatives[n]))
      fail(ErrorCode::Precondition, "representative x_" + std::to_string(n) + " is not in A_{n+1}");
  }

  const FiniteSample& first = chain.sets.front();
  std::vector<Element> out;
  for (std::size_t n = 0; n < k; ++n) {
    const auto products = subset_products(group, chain.translations, static_cast<int>(n + 1));
    for (const Element& p : products) {
      Element v = group.mul(p, chain.representatives[n]);
      if (group.in_window(v, first.window())) out.push_back(std::move(v));
    }
  }
  Extraction result{FiniteSample(group, first.window(), std::move(out), nlohmann::json{{"kind", "extracted"}}),
                    false, 0, std::nullopt};
  result.contained_in_first = result.set.subset_of(first);
  if (!result.contained_in_first)
    fail(ErrorCode::Precondition, "extracted set leaves A_0; the chain windows are inconsistent");
  result.checked_depth = static_cast<int>(std::min<std::size_t>(k, 3));
  result.witness = detect_pwip(result.set, result.checked_depth, budget).witness;
  return result;
}

}  // namespace coarse
