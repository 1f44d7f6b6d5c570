#include <doctest.h>

#include <random>

#include "coarse/error.hpp"
#include "coarse/geometry.hpp"
#include "coarse/structures.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

const GroupModel Z = GroupModel::integers();

Element z(std::int64_t n) { return Element(Family::Z, {n}); }

std::vector<Element> zs(std::vector<std::int64_t> values) {
  std::vector<Element> out;
  for (auto v : values) out.push_back(z(v));
  return out;
}

std::vector<std::int64_t> ints(const FiniteSample& s) {
  std::vector<std::int64_t> out;
  for (const Element& e : s.elements()) out.push_back(e[0]);
  return out;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

Scale roomy(const GroupModel& g) {
  Scale s = make_scale(g, BudgetPreset::Medium);
  s.pool_cap = 1u << 20;
  return s;
}

}  // namespace

TEST_CASE("IP sets") {
  CHECK(ints(gen_ip(Z, zs({1, 2, 4, 8, 16}))) == range(1, 31));
  CHECK(ints(gen_ip(Z, zs({5}))) == std::vector<std::int64_t>{5});
  CHECK_THROWS_AS(gen_ip(Z, zs({0})), Error);
  CHECK_THROWS_AS(gen_ip(Z, zs({3, 3})), Error);
  CHECK_THROWS_AS(gen_ip(Z, {}), Error);
  CHECK_THROWS_AS(gen_ip(Z, zs(range(1, 21))), Error);

  const GroupModel f2 = GroupModel::free_group(2);
  const FiniteSample ab = gen_ip(f2, std::vector<Element>{f2.parse_element("a"), f2.parse_element("b")});
  std::vector<std::string> names;
  for (const Element& e : ab.elements()) names.push_back(f2.render(e));
  CHECK(names == std::vector<std::string>{"a", "b", "ab"});
}

TEST_CASE("IP sets grow along generator prefixes") {
  std::mt19937 rng(8);
  for (int i = 0; i < 30; ++i) {
    std::vector<Element> gens;
    while (gens.size() < 7) {
      Element g = z(std::uniform_int_distribution<std::int64_t>(-50, 50)(rng));
      if (g != z(0) && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    const std::span<const Element> all(gens);
    for (std::size_t k = 1; k < gens.size(); ++k)
      CHECK(gen_ip(Z, all.first(k)).subset_of(gen_ip(Z, all.first(k + 1))));
  }
}

TEST_CASE("piecewise shifted IP sets") {
  CHECK(ints(gen_pwip(Z, zs({10, 100, 1000}), zs({1, 2, 3}))) ==
        std::vector<std::int64_t>{11, 102, 112, 1003, 1013, 1103, 1113});
  CHECK(ints(gen_pwip(Z, zs({1, 2}), zs({0, 10}))) == std::vector<std::int64_t>{1, 12, 13});
  CHECK_THROWS_AS(gen_pwip(Z, zs({1, 2}), zs({0})), Error);

  const GroupModel f2 = GroupModel::free_group(2);
  std::vector<Element> gens{f2.parse_element("a"), f2.parse_element("ba")};
  std::vector<Element> ids(2, f2.identity());
  CHECK(gen_pwip(f2, gens, ids).elements().size() == gen_ip(f2, gens).size());
}

TEST_CASE("identity shifts reproduce the IP set") {
  std::mt19937 rng(21);
  for (const GroupModel& g : {GroupModel::integers(), GroupModel::lattice(2), GroupModel::free_group(2)}) {
    for (int i = 0; i < 20; ++i) {
      std::vector<Element> gens;
      while (gens.size() < 5) {
        Element c = oracle::random_element(g, rng, 4);
        if (c != g.identity() && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
      }
      std::vector<Element> shifts(gens.size(), g.identity());
      const FiniteSample ip = gen_ip(g, gens);
      const FiniteSample pw = gen_pwip(g, gens, shifts);
      CHECK(std::equal(ip.elements().begin(), ip.elements().end(), pw.elements().begin(), pw.elements().end()));
    }
  }
}

TEST_CASE("W_n sets") {
  CHECK(gen_wn(3, 2).size() == 7);
  const FiniteSample w0 = gen_wn(4, 0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0] == GroupModel::z2_sum(4).identity());
  CHECK(gen_wn(4, 2).size() == 11);
  CHECK(gen_wn(10, 2).size() == 56);
  CHECK_THROWS_AS(gen_wn(3, 4), Error);
  CHECK_THROWS_AS(gen_wn(25, 1), Error);
  const FiniteSample w3 = gen_wn(8, 3);
  for (const Element& e : w3.elements()) CHECK(support_size(e) <= 3);
}

TEST_CASE("Cantor-geodesic blocks") {
  CHECK(cantor_offset(1) == 0);
  CHECK(cantor_offset(2) == 21);
  CHECK(cantor_offset(3) == 84);
  CHECK(cantor_offset(5) == 840);
  CHECK(ints(gen_cantor_geodesic(1)) == std::vector<std::int64_t>{0, 2});
  CHECK(ints(gen_cantor_geodesic(2)) == std::vector<std::int64_t>{0, 2, 21, 23, 27, 29});
  CHECK_THROWS_AS(gen_cantor_geodesic(0), Error);
  CHECK_THROWS_AS(gen_cantor_geodesic(13), Error);

  const FiniteSample y = gen_cantor_geodesic(5);
  CHECK(y.size() == 2 + 4 + 8 + 16 + 32);
  for (int n = 1; n <= 5; ++n) {
    std::int64_t pow = 1;
    for (int i = 0; i < n; ++i) pow *= 3;
    const std::int64_t o = cantor_offset(n);
    std::size_t count = 0;
    for (const Element& e : y.elements()) count += e[0] >= o && e[0] <= o + pow;
    CHECK(count == (std::size_t{1} << n));
    if (n < 5) CHECK(cantor_offset(n + 1) - (o + pow) >= 2 * 3 * pow);
  }
}

TEST_CASE("witnesses validate by substitution") {
  const FiniteSample a = gen_pwip(Z, zs({10, 100, 1000}), zs({1, 2, 3}));
  PwipWitness w;
  w.depth = 3;
  w.generators = zs({10, 100, 1000});
  w.shifts = zs({1, 2, 3});
  w.products = pwip_products(Z, w.generators, w.shifts);
  CHECK_FALSE(witness_defect(a, w));

  PwipWitness bad = w;
  bad.products[0].value = z(12);
  CHECK(witness_defect(a, bad));
  bad = w;
  bad.generators[1] = z(10);
  CHECK(witness_defect(a, bad));
  bad = w;
  bad.shifts[2] = z(4);
  CHECK(witness_defect(a, bad));
}

TEST_CASE("detector examples") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  const FiniteSample a = gen_pwip(Z, zs({10, 100, 1000}), zs({1, 2, 3}));
  PwipSearch s = detect_pwip(a, 3, scale);
  REQUIRE(s.witness);
  CHECK_FALSE(witness_defect(a, *s.witness));

  PwipSearch single = detect_pwip(FiniteSample::bounded(Z, zs({0})), 2, scale);
  CHECK_FALSE(single.witness);
  CHECK_FALSE(single.note.empty());

  CHECK_THROWS_AS(detect_pwip(a, 0, scale), Error);
  CHECK_THROWS_AS(detect_pwip(a, 17, scale), Error);
}

TEST_CASE("depth two is always reachable with three points") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) {
    std::vector<Element> pts;
    std::uniform_int_distribution<std::int64_t> coord(-100000, 100000);
    std::uniform_int_distribution<int> size(3, 12);
    for (int k = size(rng); k > 0; --k) pts.push_back(z(coord(rng)));
    const FiniteSample a = FiniteSample::bounded(Z, pts);
    if (a.size() < 3) continue;
    PwipSearch s = detect_pwip(a, 2, scale);
    REQUIRE(s.witness);
    CHECK_FALSE(witness_defect(a, *s.witness));
  }
}

TEST_CASE("detector agrees with the slot oracle") {
  std::mt19937 rng(99);
  const std::vector<GroupModel> groups{GroupModel::integers(), GroupModel::lattice(2), GroupModel::z2_sum(4),
                                       GroupModel::free_group(2)};
  std::vector<Scale> scales;
  for (const GroupModel& g : groups) scales.push_back(roomy(g));
  int found = 0, missing = 0;
  for (int i = 0; i < 80; ++i) {
    const GroupModel& g = groups[i % groups.size()];
    const std::int64_t spread = g.family() == Family::Z ? (i % 3 ? 12 : 400) : 2;
    const FiniteSample a = oracle::random_sample(g, rng, 24, spread);
    const Scale& scale = scales[i % groups.size()];
    for (int d = 1; d <= 3; ++d) {
      PwipSearch s = detect_pwip(a, d, scale);
      const bool expected = oracle::SlotOracle(a, d).exists();
      REQUIRE(s.witness.has_value() == expected);
      if (s.witness) {
        ++found;
        CHECK_FALSE(witness_defect(a, *s.witness));
      } else {
        ++missing;
      }
    }
  }
  CHECK(found > 0);
  CHECK(missing > 0);
}

TEST_CASE("restricting a witness keeps it valid") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  const FiniteSample a = gen_pwip(Z, zs({3, 50, 700, 9000}), zs({-1, 5, 2, 0}));
  PwipSearch s = detect_pwip(a, 4, scale);
  REQUIRE(s.witness);
  for (int d = 1; d < 4; ++d) {
    CHECK_FALSE(witness_defect(a, restrict_witness(Z, *s.witness, d)));
    CHECK(detect_pwip(a, d, scale).witness);
  }
}

TEST_CASE("detector output is deterministic") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  const FiniteSample a = enumerate_window(Z, Window{30});
  PwipSearch s1 = detect_pwip(a, 3, scale);
  PwipSearch s2 = detect_pwip(a, 3, scale);
  REQUIRE(s1.witness);
  CHECK(s1.witness->generators == s2.witness->generators);
  CHECK(s1.witness->shifts == s2.witness->shifts);
}

namespace {

NestedChain dyadic_chain(int k, std::int64_t window) {
  NestedChain chain;
  for (int n = 0; n <= k; ++n) {
    std::vector<Element> elems;
    const std::int64_t step = std::int64_t{1} << n;
    for (std::int64_t x = -window - (-window % step); x <= window; x += step)
      if (x >= -window) elems.push_back(z(x));
    chain.sets.emplace_back(Z, Window{window}, elems);
  }
  for (int n = 0; n < k; ++n) {
    chain.translations.push_back(z(std::int64_t{1} << n));
    chain.representatives.push_back(z(0));
  }
  return chain;
}

}  // namespace

TEST_CASE("extraction from a nested chain") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  Extraction ex = extract_pwip_from_chain(dyadic_chain(5, 64), scale);
  CHECK(ints(ex.set) == range(0, 31));
  CHECK(ex.contained_in_first);
  CHECK(ex.checked_depth == 3);
  REQUIRE(ex.witness);
  CHECK_FALSE(witness_defect(ex.set, *ex.witness));

  Extraction clipped = extract_pwip_from_chain(dyadic_chain(5, 20), scale);
  CHECK(ints(clipped.set) == range(0, 20));

  NestedChain one;
  one.sets = {FiniteSample(Z, Window{20}, zs({0, 1, 2, 3})), FiniteSample(Z, Window{20}, zs({2, 3}))};
  one.translations = zs({-2});
  one.representatives = zs({3});
  CHECK(ints(extract_pwip_from_chain(one, scale).set) == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("nesting violations are reported") {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  NestedChain bad = dyadic_chain(3, 32);
  bad.translations[1] = z(3);
  try {
    extract_pwip_from_chain(bad, scale);
    FAIL("expected a nesting violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
    CHECK(std::string(e.what()).find("n=1") != std::string::npos);
  }
  NestedChain rep = dyadic_chain(3, 32);
  rep.representatives[0] = z(1);
  CHECK_THROWS_AS(extract_pwip_from_chain(rep, scale), Error);
}
