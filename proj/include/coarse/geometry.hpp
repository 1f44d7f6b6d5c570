#pragma once

#include <optional>
#include <vector>

#include "coarse/radius.hpp"
#include "coarse/sample.hpp"
#include "coarse/scale.hpp"

namespace coarse {

/// B(g, F) = Fg u {g}, with F acting by left translation.
FiniteSample ball(const GroupModel& group, const Element& g, const Radius& radius);

/// B_Y(g, F) = Y n B(g, F). The centre need not lie in Y.
FiniteSample restricted_ball(const FiniteSample& y, const Element& g, const Radius& radius);

struct ChainComponent {
  std::vector<Element> elements;  // sorted
  bool symmetrized = false;       // K was replaced by K u K^-1
};

/// Elements of A reachable from a by K-chains inside A.
ChainComponent chain_component(const FiniteSample& a_set, const Element& a, const Radius& k);

/// Component label for every element index of A, labels numbered in order of
/// first appearance.
std::vector<std::size_t> chain_components(const FiniteSample& a_set, const Radius& k);

enum class CellularVerdict { Cellular, NotCellularAtScale };

struct CellularityReport {
  struct Rejection {
    Radius candidate;
    Element offender;  // interior a with a chain component escaping B(a, candidate)
    Element escaped;   // a member of that component outside the ball
  };

  Radius k;
  bool k_symmetrized = false;
  CellularVerdict verdict = CellularVerdict::NotCellularAtScale;
  std::optional<Radius> k_prime;
  std::vector<Rejection> rejected;  // one entry per candidate tried before success
  std::size_t interior_size = 0;
  std::size_t component_count = 0;
  std::size_t largest_component = 0;
  Window window;
};

/// Smallest candidate K' (the empty radius, then the H-family) such that every
/// interior a has B_A^chain(a, K) inside B_A(a, K').
CellularityReport cellularity_probe(const FiniteSample& a_set, const Radius& k, const Scale& budget);

/// A map from a finite domain sample into another group, total on the domain.
class FiniteMap {
 public:
  FiniteMap(FiniteSample domain, GroupModel codomain,
            std::vector<std::pair<Element, Element>> pairs);

  const FiniteSample& domain() const noexcept { return domain_; }
  const GroupModel& codomain() const noexcept { return codomain_; }
  const Element& image_of_index(std::size_t i) const { return images_[i]; }
  const Element& operator()(const Element& x) const;

 private:
  FiniteSample domain_;
  GroupModel codomain_;
  std::vector<Element> images_;  // aligned with domain_.elements()
};

enum class PrecVerdict { Prec, NotPrec };

struct PrecReport {
  Radius f;
  PrecVerdict verdict = PrecVerdict::NotPrec;
  std::optional<Radius> k;          // minimal candidate from the budget family
  std::optional<Element> offender;  // interior x whose image ball escapes every candidate
  std::optional<Element> offender_neighbor;  // x' in B_X(x, F) with f(x') outside the ball
  std::size_t interior_size = 0;
};

/// Smallest candidate K (the empty radius, then the H-family) with
/// f(B_X(x, F)) inside B_Y(f(x), K) for every interior x.
PrecReport prec_mapping_check(const FiniteMap& f, const Radius& radius, const Scale& budget);

}  // namespace coarse
