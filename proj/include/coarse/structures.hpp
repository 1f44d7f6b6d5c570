#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarse/sample.hpp"
#include "coarse/scale.hpp"

namespace coarse {

/// Finite sums g_{i1} ... g_{in} over nonempty increasing index sets.
/// Generators must be injective, non-identity, and at most 20 long.
FiniteSample gen_ip(const GroupModel& group, std::span<const Element> generators);

/// Products g_{i1} ... g_{in} b_{in}: each IP product shifted on the right by
/// the shift of its largest index.
FiniteSample gen_pwip(const GroupModel& group, std::span<const Element> generators,
                      std::span<const Element> shifts);

/// W_n inside Z2SUM(m): bit vectors of length m with at most n ones.
FiniteSample gen_wn(int coordinates, int support);

/// Left end o_n of the level-n Cantor block (levels start at 1).
std::int64_t cantor_offset(int level);

/// Union over levels 1..levels of {o_n + i : 0 <= i <= 3^n, base-3 digits of
/// i in {0, 2}}. The gap after block n is 2 * 3^(n+1).
FiniteSample gen_cantor_geodesic(int levels);

struct PwipProduct {
  std::vector<int> indices;  // increasing
  Element value;
};

struct PwipWitness {
  int depth = 0;
  std::vector<Element> generators;
  std::vector<Element> shifts;
  std::vector<PwipProduct> products;  // ordered by index-set bitmask
};

/// The 2^d - 1 products realised by generator/shift data.
std::vector<PwipProduct> pwip_products(const GroupModel& group, std::span<const Element> generators,
                                       std::span<const Element> shifts);

/// Why `w` is not a valid witness inside `target`, or nullopt when it is.
std::optional<std::string> witness_defect(const FiniteSample& target, const PwipWitness& w);

/// The witness cut down to its first `depth` generators.
PwipWitness restrict_witness(const GroupModel& group, const PwipWitness& w, int depth);

struct PwipSearch {
  std::optional<PwipWitness> witness;
  std::size_t pool_size = 0;
  bool pool_truncated = false;
  std::uint64_t nodes = 0;
  std::string note;  // why the search ended without a witness, when it did
};

/// Candidate translations y x^-1 (x != y in A), ordered by word length then
/// canonical order and truncated to `cap`.
std::vector<Element> translation_pool(const FiniteSample& a_set, std::size_t cap, bool* truncated = nullptr);

/// Exhaustive search for a depth-d piecewise shifted IP witness inside A,
/// with generators drawn from translation_pool(A, budget.pool_cap).
PwipSearch detect_pwip(const FiniteSample& a_set, int depth, const Scale& budget);

/// A_0 >= A_1 >= ... >= A_k with g_n A_{n+1} inside A_n and x_n in A_{n+1}.
struct NestedChain {
  std::vector<FiniteSample> sets;
  std::vector<Element> translations;
  std::vector<Element> representatives;
};

struct Extraction {
  FiniteSample set;
  bool contained_in_first = false;
  int checked_depth = 0;
  std::optional<PwipWitness> witness;  // detector result at checked_depth
};

/// {g_0^e0 ... g_n^en x_n : n < k, e in {0,1}^(n+1)} clipped to the window of
/// A_0, followed by a detector run at depth min(k, 3).
Extraction extract_pwip_from_chain(const NestedChain& chain, const Scale& budget);

}  // namespace coarse
