// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "coarse/classifiers.hpp"
#include "coarse/cli.hpp"
#include "coarse/density.hpp"
#include "coarse/geometry.hpp"
#include "coarse/report_json.hpp"
#include "coarse/structures.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

const GroupModel Z = GroupModel::integers();

Element z(std::int64_t n) { return Element(Family::Z, {n}); }

std::vector<Element> vec(const FiniteSample& a) { return {a.elements().begin(), a.elements().end()}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Criterion body: returns an empty string on success, else the first failure.
using Check = std::function<std::string(std::string& detail)>;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1 ----
std::string group_axioms(std::string& detail) {
  std::mt19937 rng(1001);
  const std::vector<GroupModel> families{GroupModel::integers(), GroupModel::lattice(3), GroupModel::z2_sum(8),
                                         GroupModel::free_group(2), GroupModel::free_group(3)};
  const int triples = 10000;
  for (const GroupModel& g : families) {
    const Element e = g.identity();
    for (int i = 0; i < triples; ++i) {
      const Element a = oracle::random_element(g, rng, 7);
      const Element b = oracle::random_element(g, rng, 7);
      const Element c = oracle::random_element(g, rng, 7);
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return "associativity fails in " + g.spec();
      if (g.mul(a, e) != a || g.mul(e, a) != a) return "identity law fails in " + g.spec();
      if (g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e) return "inverse law fails in " + g.spec();
    }
  }
  // reduction: parsing an arbitrary letter string, then its rendering, is stable
  const GroupModel f2 = GroupModel::free_group(2);
  std::uniform_int_distribution<int> letter(0, 3), len(0, 24);
  const char* letters = "aAbB";
  for (int i = 0; i < triples; ++i) {
    std::string s;
    for (int k = 0, n = len(rng); k < n; ++k) s += letters[letter(rng)];
    const Element once = f2.parse_element(s);
    const Element twice = f2.parse_element(f2.render(once));
    if (once != twice || !f2.is_member(once)) return "free reduction not idempotent on '" + s + "'";
  }
  detail = fmt("%d triples x %zu families, %d reductions", triples, families.size(), triples);
  return {};
}

// ---- 2 ----
std::string ball_law(std::string& detail) {
  std::mt19937 rng(1002);
  const std::vector<GroupModel> families{GroupModel::integers(), GroupModel::lattice(2), GroupModel::z2_sum(6),
                                         GroupModel::free_group(2)};
  int pairs = 0;
  for (const GroupModel& g : families) {
    const FiniteSample y = oracle::random_sample(g, rng, 300, 6);
    for (int i = 0; i < 2500; ++i, ++pairs) {
      const Element c = oracle::random_element(g, rng, 6);
      const Radius f = oracle::random_radius(g, rng, 10, 4);
      const FiniteSample b = ball(g, c, f);
      if (b.size() > f.size() + 1) return "ball larger than |F|+1 in " + g.spec();
      if (!b.contains(c)) return "centre missing from its ball in " + g.spec();
      const FiniteSample by = restricted_ball(y, c, f);
      if (vec(by) != oracle::restricted_ball_set(y, c, f)) return "restricted ball differs from Y n B in " + g.spec();
    }
  }
  detail = fmt("%d (g, F) pairs", pairs);
  return {};
}

// ---- 3 ----
std::string chain_oracle(std::string& detail) {
  std::mt19937 rng(1003);
  std::size_t largest = 0;
  for (int round = 0; round < 100; ++round) {
    const GroupModel g = round % 3 == 0 ? GroupModel::lattice(2) : GroupModel::integers();
    const std::int64_t spread = g.family() == Family::Z ? (round % 2 ? 20000 : 6000) : 70;
    const FiniteSample a = oracle::random_sample(g, rng, 10000, spread);
    const Radius k = oracle::random_radius(g, rng, 4, 4);
    largest = std::max(largest, a.size());
    const auto label = chain_components(a, k);
    const auto root = oracle::union_find_components(a, k);
    std::map<std::size_t, std::size_t> l2r, r2l;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto [it, fresh] = l2r.emplace(label[i], root[i]);
      auto [jt, fresh2] = r2l.emplace(root[i], label[i]);
      if (it->second != root[i] || jt->second != label[i]) return fmt("partition mismatch in round %d", round);
    }
    if (!a.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
      const std::size_t i = pick(rng);
      const auto comp = chain_component(a, a[i], k).elements;
      std::vector<Element> expect;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (root[j] == root[i]) expect.push_back(a[j]);
      if (comp != expect) return fmt("chain_component mismatch in round %d", round);
    }
  }
  detail = fmt("100 samples, largest %zu elements", largest);
  return {};
}

// ---- 4 ----
std::string generators(std::string& detail) {
  std::vector<Element> g5;
  for (int k = 0; k < 5; ++k) g5.push_back(z(std::int64_t{1} << k));
  std::vector<Element> expect;
  for (int x = 1; x <= 31; ++x) expect.push_back(z(x));
  if (vec(gen_ip(Z, g5)) != expect) return "gen_ip(1,2,4,8,16) is not {1..31}";

  std::mt19937 rng(1004);
  const std::vector<GroupModel> families{GroupModel::integers(), GroupModel::lattice(2), GroupModel::z2_sum(6),
                                         GroupModel::free_group(2)};
  for (int i = 0; i < 50; ++i) {
    const GroupModel& g = families[i % families.size()];
    std::uniform_int_distribution<int> len(1, 5);
    std::vector<Element> gens, ids;
    for (int k = 0, n = len(rng); k < n; ++k) {
      Element x = oracle::random_element(g, rng, 9);
      while (x == g.identity() || std::find(gens.begin(), gens.end(), x) != gens.end())
        x = oracle::random_element(g, rng, 9);
      gens.push_back(x);
      ids.push_back(g.identity());
    }
    if (vec(gen_pwip(g, gens, ids)) != vec(gen_ip(g, gens))) return "identity shifts differ from gen_ip in " + g.spec();
  }

  const std::vector<Element> g3{z(10), z(100), z(1000)}, b3{z(1), z(2), z(3)};
  std::vector<Element> seven;
  for (int x : {11, 102, 112, 1003, 1013, 1103, 1113}) seven.push_back(z(x));
  if (vec(gen_pwip(Z, g3, b3)) != seven) return "pwIP example not reproduced";
  detail = "ip example, 50 identity-shift tuples, 7-element pwIP example";
  return {};
}

// ---- 5 ----
std::string detector_oracle(std::string& detail) {
  std::mt19937 rng(1005);
  const std::vector<GroupModel> families{GroupModel::integers(), GroupModel::lattice(2), GroupModel::z2_sum(5),
                                         GroupModel::free_group(2)};
  std::vector<Scale> scales;
  for (const GroupModel& g : families) {
    Scale s = make_scale(g, BudgetPreset::Medium);
    s.pool_cap = std::size_t{1} << 20;  // every difference of a 40-element set
    scales.push_back(std::move(s));
  }
  const auto t0 = std::chrono::steady_clock::now();
  int samples = 0, found = 0, runs = 0;
  for (int i = 0; i < 400; ++i, ++samples) {
    const std::size_t fi = i % families.size();
    const GroupModel& g = families[fi];
    const std::int64_t spread = g.family() == Family::Z ? (i % 3 ? 15 : 600) : (g.family() == Family::Free ? 3 : 2);
    const FiniteSample a = oracle::random_sample(g, rng, 40, spread);
    for (int d = 1; d <= 3; ++d, ++runs) {
      const PwipSearch s = detect_pwip(a, d, scales[fi]);
      if (s.pool_truncated) return "translation pool truncated";
      if (s.witness) {
        ++found;
        if (auto why = witness_defect(a, *s.witness)) return "unsound witness: " + *why;
      }
      if (s.witness.has_value() != oracle::SlotOracle(a, d).exists())
        return fmt("detector and oracle disagree: sample %d (%s), d=%d", i, g.spec().c_str(), d);
    }
  }
  const double secs = seconds_since(t0);
  if (secs > 300) return fmt("oracle suite took %.1fs", secs);
  detail = fmt("%d samples, %d runs, %d witnesses, %.2fs", samples, runs, found, secs);
  return {};
}

// ---- 6 ----
std::string depth_two(std::string& detail) {
  std::mt19937 rng(1006);
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  int done = 0;
  while (done < 100) {
    const FiniteSample a = oracle::random_sample(Z, rng, 60, 5000);
    if (a.size() < 3) continue;
    const PwipSearch s = detect_pwip(a, 2, scale);
    if (!s.witness) return fmt("no depth-2 witness for a set of size %zu", a.size());
    if (auto why = witness_defect(a, *s.witness)) return "unsound witness: " + *why;
    ++done;
  }
  detail = "100 samples with |A| >= 3";
  return {};
}

// ---- 7 ----
std::string cantor(std::string& detail) {
  const FiniteSample c = gen_cantor_geodesic(5);
  const Scale medium = make_scale(Z, BudgetPreset::Medium);
  const CellularityReport cell = cellularity_probe(c, Radius::word_ball(Z, 1), medium);
  if (cell.verdict != CellularVerdict::Cellular) return "Cantor set not cellular at wordball:1";
  const IsolatedBallsReport iso = isolated_balls_verdict(c, medium);
  if (iso.verdict != IsolatedVerdict::NoIsolatedBallsAtScale) return "Cantor set has isolated balls at medium";
  if (oracle::isolated_quantifier_loop(c, medium).has_isolated) return "oracle disagrees on the full window";

  const FiniteSample reduced = FiniteSample::clipped(Z, Window{c.window().extent / 2}, vec(c));
  const bool lib = isolated_balls_verdict(reduced, medium).verdict == IsolatedVerdict::HasIsolatedBalls;
  if (lib != oracle::isolated_quantifier_loop(reduced, medium).has_isolated)
    return "oracle disagrees on the reduced window";
  detail = fmt("K' = %s; NO_ISOLATED_BALLS_AT_SCALE; oracle agrees at windows %lld and %lld",
               describe(Z, *cell.k_prime).c_str(), static_cast<long long>(c.window().extent),
               static_cast<long long>(reduced.window().extent));
  return {};
}

// ---- 8 ----
std::string isolated_oracle(std::string& detail) {
  std::mt19937 rng(1008);
  const std::vector<GroupModel> families{GroupModel::integers(), GroupModel::lattice(2), GroupModel::free_group(2)};
  int samples = 0, has = 0;
  while (samples < 50) {
    const GroupModel& g = families[samples % families.size()];
    const std::int64_t spread = g.family() == Family::Z ? (samples % 2 ? 40 : 300) : 4;
    const FiniteSample y = oracle::random_sample(g, rng, 200, spread);
    std::uniform_int_distribution<int> nf(1, 6), nh(1, 6), wr(0, 3);
    std::vector<Radius> f, h;
    for (int i = 0, n = nf(rng); i < n; ++i)
      f.push_back(i % 2 ? oracle::random_radius(g, rng, 3, 2) : Radius::word_ball(g, wr(rng)));
    for (int i = 0, n = nh(rng); i < n; ++i)
      h.push_back(i % 2 ? oracle::random_radius(g, rng, 6, 3) : Radius::word_ball(g, 1 + wr(rng)));
    h.resize(std::min<std::size_t>(h.size(), 6 - std::min<std::size_t>(f.size(), 5)));
    for (std::size_t i = 0; i < f.size() && h.size() < 6; ++i) h.push_back(f[i].united(g, Radius::word_ball(g, 1)));
    bool covered = true;
    for (const Radius& fr : f)
      covered = covered && std::any_of(h.begin(), h.end(), [&](const Radius& x) { return fr.subset_of(x); });
    if (!covered) continue;
    Scale scale = make_scale(g, BudgetPreset::Small);
    scale.f_family = f;
    scale.h_family = h;
    if (interior_indices(y, scale.margin(g)).empty()) continue;
    const IsolatedBallsReport r = isolated_balls_verdict(y, scale);
    const oracle::QuantifierResult q = oracle::isolated_quantifier_loop(y, scale);
    if ((r.verdict == IsolatedVerdict::HasIsolatedBalls) != q.has_isolated || r.winning_f != q.winning_f)
      return fmt("verdict mismatch on sample %d (%s)", samples, g.spec().c_str());
    has += q.has_isolated;
    ++samples;
  }
  detail = fmt("50 samples, %d HAS / %d NO", has, 50 - has);
  return {};
}

// ---- 9 and 12 share the battery ----
struct BatteryEntry {
  std::string name;
  FiniteSample set;
};

std::vector<BatteryEntry> battery() {
  std::vector<BatteryEntry> out;
  std::vector<Element> p2, p4, ev;
  for (int n = 0; n <= 20; ++n) p2.push_back(z(std::int64_t{1} << n));
  for (int n = 0; n <= 10; ++n) p4.push_back(z(std::int64_t{1} << (2 * n)));
  for (std::int64_t x = -200; x <= 200; x += 2) ev.push_back(z(x));
  out.push_back({"{2^n}", FiniteSample(Z, Window{(1 << 20) + 64}, p2)});
  out.push_back({"{4^n}", FiniteSample(Z, Window{(1 << 20) + 64}, p4)});
  out.push_back({"W_2 in z2sum:10", gen_wn(10, 2)});
  out.push_back({"Cantor(5)", gen_cantor_geodesic(5)});
  out.push_back({"Z-window", enumerate_window(Z, Window{200})});
  out.push_back({"evens", FiniteSample(Z, Window{200}, ev)});
  const std::vector<Element> g3{z(10), z(100), z(1000)}, b3{z(1), z(2), z(3)};
  out.push_back({"pwip(10,100,1000;1,2,3)", FiniteSample(Z, Window{1113 + 48}, vec(gen_pwip(Z, g3, b3)))});
  std::vector<Element> g4{z(7), z(50), z(400), z(3000)}, b4{z(0), z(5), z(-11), z(9)};
  out.push_back({"pwip(7,50,400,3000;0,5,-11,9)", FiniteSample(Z, Window{3500}, vec(gen_pwip(Z, g4, b4)))});
  return out;
}

std::string hierarchy(std::string& detail) {
  for (const BatteryEntry& b : battery()) {
    const Scale scale = make_scale(b.set.group(), BudgetPreset::Medium);
    const ClassifyReport r = classify(b.set, scale);
    const bool thin1 = r.thin_degree == 1;
    const bool sparse = r.sparse.verdict == SparseVerdict::WitnessFound;
    const bool scattered = r.isolated && r.isolated->verdict == IsolatedVerdict::HasIsolatedBalls;
    if (thin1 && !sparse) return b.name + ": thin degree 1 without a sparse witness";
    if (sparse && !scattered) return b.name + ": sparse witness without isolated balls";
    if (b.name == "Z-window" && (thin1 || sparse || scattered)) return "Z-window passes a classifier";
    detail += fmt("%s%s=%d/%c/%c", detail.empty() ? "" : " ", b.name.c_str(), static_cast<int>(r.thin_degree),
                  sparse ? 'S' : '-', scattered ? 'H' : '-');
  }
  return {};
}

// ---- 10 ----
std::string density(std::string& detail) {
  double worst_time = 0, worst_err = 0;
  int sets = 0;
  for (std::int64_t q = 1; q <= 12; ++q)
    for (std::int64_t mask = 1; mask < (std::int64_t{1} << q); ++mask) {
      std::vector<std::int64_t> res;
      for (std::int64_t r = 0; r < q; ++r)
        if (mask >> r & 1) res.push_back(r);
      const auto t0 = std::chrono::steady_clock::now();
      const DensityProfile p = upper_density_profile(IntegerSet::periodic(q, res), 100000, 1000);
      worst_time = std::max(worst_time, seconds_since(t0));
      const double err = std::abs(p.estimate - static_cast<double>(res.size()) / static_cast<double>(q));
      worst_err = std::max(worst_err, err);
      if (err >= 1e-3) return fmt("q=%lld mask=%lld: error %.2e", static_cast<long long>(q), static_cast<long long>(mask), err);
      ++sets;
    }
  if (worst_time >= 1.0) return fmt("slowest profile took %.3fs", worst_time);

  const Scale scale = make_scale(Z, BudgetPreset::Small);
  const auto t0 = std::chrono::steady_clock::now();
  int witnessed = 0;
  for (std::int64_t q = 1; q <= 12; ++q)
    for (std::int64_t mask = 1; mask < (std::int64_t{1} << q); ++mask) {
      std::vector<std::int64_t> res;
      for (std::int64_t r = 0; r < q; ++r)
        if (mask >> r & 1) res.push_back(r);
      const DensityPwipReport r = density_pwip_experiment(IntegerSet::periodic(q, res), 3, 60, scale);
      if (r.achieved_depth != 3 || !r.witness)
        return fmt("no depth-3 witness for q=%lld mask=%lld", static_cast<long long>(q), static_cast<long long>(mask));
      ++witnessed;
    }
  detail = fmt("%d periodic sets, max error %.1e, slowest profile %.4fs; %d depth-3 witnesses in %.2fs", sets,
               worst_err, worst_time, witnessed, seconds_since(t0));
  return {};
}

// ---- 11 ----
std::string extraction(std::string& detail) {
  const Scale scale = make_scale(Z, BudgetPreset::Medium);
  for (const auto& [k, window] : std::vector<std::pair<int, std::int64_t>>{{5, 64}, {5, 20}, {4, 100}, {6, 40}}) {
    NestedChain chain;
    for (int n = 0; n <= k; ++n) {
      std::vector<Element> elems;
      const std::int64_t step = std::int64_t{1} << n;
      for (std::int64_t x = -window; x <= window; ++x)
        if (x % step == 0) elems.push_back(z(x));
      chain.sets.emplace_back(Z, Window{window}, elems);
    }
    for (int n = 0; n < k; ++n) {
      chain.translations.push_back(z(std::int64_t{1} << n));
      chain.representatives.push_back(z(0));
    }
    const Extraction ex = extract_pwip_from_chain(chain, scale);
    std::vector<Element> expect;
    for (std::int64_t x = 0; x < (std::int64_t{1} << k) && x <= window; ++x) expect.push_back(z(x));
    if (vec(ex.set) != expect) return fmt("k=%d window=%lld: wrong extracted set", k, static_cast<long long>(window));
    if (!ex.contained_in_first || !ex.set.subset_of(chain.sets[0])) return "extracted set escapes A_0";
    const PwipSearch s = detect_pwip(ex.set, 3, scale);
    if (!s.witness || witness_defect(ex.set, *s.witness)) return "no valid depth-3 witness in the extracted set";
  }
  detail = "k=4,5,6 at windows 20..100";
  return {};
}

// ---- 12 ----
std::string determinism(std::string& detail) {
  std::size_t bytes = 0;
  for (const BatteryEntry& b : battery()) {
    const Scale scale = make_scale(b.set.group(), BudgetPreset::Medium);
    const std::string first = classify_json(b.set, classify(b.set, scale), scale).dump(2);
    for (int rep = 0; rep < 2; ++rep)
      if (classify_json(b.set, classify(b.set, scale), scale).dump(2) != first) return b.name + ": library output differs";
    bytes += first.size();
  }
  const std::vector<std::vector<std::string>> commands{
      {"classify", "--group", "z", "--kind", "explicit", "--elements", "1,2,4,8,16,32,64,128,256,512,1024"},
      {"classify", "--group", "z", "--kind", "explicit", "--elements", "1,4,16,64,256,1024,4096"},
      {"classify", "--group", "z2sum:10", "--kind", "wn", "--support", "2"},
      {"classify", "--kind", "cantor", "--levels", "5"},
      {"classify", "--group", "z", "--kind", "periodic", "--modulus", "1", "--residues", "0", "--window", "200"},
      {"classify", "--group", "z", "--kind", "periodic", "--modulus", "2", "--residues", "0", "--window", "200"},
      {"classify", "--group", "z", "--kind", "pwip", "--generators", "10,100,1000", "--shifts", "1,2,3"},
  };
  for (const auto& c : commands) {
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out, err;
      const int code = run_cli(c, out, err);
      if (code == 2) return "CLI error: " + err.str();
      if (rep == 0) first = out.str();
      else if (out.str() != first) return "CLI output differs for " + c[4];
    }
    bytes += first.size();
  }
  detail = fmt("%zu battery sets via library and %zu via CLI, %zu bytes compared", battery().size(), commands.size(), bytes);
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria{
      {"group axioms and free reduction", group_axioms},
      {"ball law and restricted balls", ball_law},
      {"chain components match union-find", chain_oracle},
      {"IP and pwIP generators", generators},
      {"detector sound and complete against the slot oracle", detector_oracle},
      {"depth-2 witnesses for every |A| >= 3", depth_two},
      {"Cantor set cellular with no isolated balls", cantor},
      {"isolated balls match the quantifier loop", isolated_oracle},
      {"thin => sparse => scattered on the battery", hierarchy},
      {"periodic densities and their depth-3 witnesses", density},
      {"dyadic chain extraction", extraction},
      {"classify output is byte-identical", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail, why;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      why = criteria[i].second(detail);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (why.empty())
      std::printf("[PASS] AC%zu %s (%.2fs): %s\n", i + 1, criteria[i].first, secs, detail.c_str());
    else
      std::printf("[FAIL] AC%zu %s (%.2fs): %s\n", i + 1, criteria[i].first, secs, why.c_str());
    std::fflush(stdout);
    failed += !why.empty();
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
