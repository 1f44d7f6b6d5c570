#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/radius.hpp"
#include "coarse/sample.hpp"
#include "coarse/scale.hpp"
#include "coarse/structures.hpp"

namespace coarse {

/// Verdicts here are computed inside one finite window and are evidence about
/// the asymptotic class, never proof.
inline constexpr const char* kScaleCaveat =
    "verdicts are evaluated at a finite scale: window-stable quantities stand in for finite ones";

struct ThinReport {
  Radius f;
  std::size_t degree = 0;
  std::vector<Element> exceptional;  // interior y with |B_Y(y, F)| > degree
  bool stable = false;               // same degree and exceptional set one window down
  std::size_t interior_size = 0;
  Window window;
  Window inner_window;
};

/// Degree bound n with |B_Y(y, F)| <= n for interior y off a finite exceptional
/// set. n is read off the outer ring of the window (interior points outside the
/// inner window); the exceptional set is everything above n.
ThinReport thin_degree(const FiniteSample& y, const Radius& f, const Scale& scale);

enum class SparseVerdict { WitnessFound, NoWitnessAtScale };

struct SparseReport {
  SparseVerdict verdict = SparseVerdict::NoWitnessAtScale;
  std::vector<Element> translations;  // the probe set X
  std::vector<Element> f;             // chosen F inside X
  std::vector<Element> intersection;  // n_{g in F} gA inside the window
  std::size_t inner_size = 0;         // same intersection one window down
  std::size_t subsets_tried = 0;
  bool budget_exhausted = false;
  Window window;
  Window inner_window;
};

/// n_{g in F} gA inside window w, with A cut to w first.
std::vector<Element> translate_intersection(const FiniteSample& a_set, std::span<const Element> f,
                                            const Window& w);

/// Smallest F inside X (by size, then lexicographically) whose translate
/// intersection is the same in the sample window and in the inner window.
SparseReport sparse_witness(const FiniteSample& a_set, std::span<const Element> x, const Scale& budget);

enum class Universe { Sample, Ambient };
enum class IsolatedVerdict { HasIsolatedBalls, NoIsolatedBallsAtScale };

struct IsolatedBallsReport {
  struct Cell {
    std::size_t h_index = 0;
    std::vector<Element> isolated;  // interior y with B_U(y, H) \ B_U(y, F) empty
  };
  struct Refutation {
    std::size_t f_index = 0;
    std::size_t h_index = 0;  // H with no isolated interior point
  };

  IsolatedVerdict verdict = IsolatedVerdict::NoIsolatedBallsAtScale;
  Universe universe = Universe::Sample;
  std::optional<std::size_t> winning_f;
  std::vector<Cell> cells;               // one per H containing the winning F
  std::vector<Refutation> refutations;   // every F before the winner (or all of them)
  std::size_t interior_size = 0;
  Window window;
};

/// Finds the first F of the family such that every H containing F leaves an
/// interior y of Y whose H-ball inside the universe adds nothing to its F-ball.
/// The universe is Y itself, or `ambient` (which must contain Y).
IsolatedBallsReport isolated_balls_verdict(const FiniteSample& y, const Scale& scale,
                                           const FiniteSample* ambient = nullptr);

/// Adversarial probe set for sparse_witness: short translations of A that keep
/// translate intersections unstable, or the whole translation pool when no
/// such set of probe_size elements exists.
std::vector<Element> sparse_probe(const FiniteSample& a_set, const Scale& scale);

struct ClassifyReport {
  bool empty_set = false;
  std::vector<ThinReport> thin;  // one per F-family member
  std::size_t thin_degree = 0;   // largest of the per-radius degrees
  SparseReport sparse;
  std::optional<IsolatedBallsReport> isolated;
  int pwip_depth = 0;            // deepest witness found, up to scale.max_depth
  std::optional<PwipWitness> pwip_witness;
  bool consistent = true;
  std::string caveat = kScaleCaveat;
};

ClassifyReport classify(const FiniteSample& a_set, const Scale& scale);

}  // namespace coarse
