#pragma once

// Concrete spaces: macrocubes, group spaces, permutation-generated spaces,
// the reversal gadget, and embeddings of cellular chains into macrocubes.

#include <optional>

#include "coarsekit/morphisms.hpp"

namespace coarsekit {

// kappa^{<gamma} with K_alpha-balls the points agreeing on every digit above
// alpha. gamma = nullopt gives the countable (finite-support) macrocube.
CoarseSpace macrocube(Point kappa, std::optional<unsigned> gamma);

// Colex order on base-kappa encodings, which is the natural order.
PointOrder colex_order(Point kappa);

// Swap of digits a and b in base kappa (an involution).
PointMap swap_digits_map(Point kappa, unsigned a, unsigned b);

struct GroupDesc {
  std::function<Point(Point, Point)> op;
  std::function<Point(Point)> inv;
  Point identity = 0;
  GroundSet ground;
  // F_0 ⊆ F_1 ⊆ ...: finite, symmetric, containing the identity.
  std::function<PointSet(std::size_t)> chain;
  std::optional<std::size_t> chain_length;
  CoarseSpace::Join join;
  json descriptor;
};

// Direct sum of countably many Z_2 under xor; F_n = [0, 2^n).
GroupDesc xor_group();
// Z_n; the chain is the single set F_0 = Z_n unless sets are given.
GroupDesc cyclic_group(Point n, std::optional<std::vector<PointSet>> chain = std::nullopt);
GroupDesc trivial_group();

// ball(E_n, x) = F_n x.
CoarseSpace group_space(const GroupDesc& g);

// Associativity, identity and inverses on window triples, and symmetry /
// identity / monotonicity of the tested chain sets.
Verdict check_group_axioms(const GroupDesc& g, const Window& w, std::size_t bound);

// ball(x) = {g(x) : g in perms}; the identity is added when absent.
Entourage perm_entourage(std::vector<Permutation> perms);

// Countable ground, E_i = E^{i+1} for E = perm_entourage(perms).
CoarseSpace perm_gen_space(std::vector<Permutation> perms);

// Countable ground, E_i = shift of radius r (i + 1).
CoarseSpace bounded_shift_space(Point radius);

// Base [Δ] on the given ground.
CoarseSpace delta_only_space(GroundSet ground = GroundSet::countable());

struct ReversalGadget {
  std::optional<Point> m;  // nullopt: every block reversed
  Permutation h;
  Entourage e_h;

  static Point block_start(Point n) { return n * n; }
  static Point block_length(Point n) { return 2 * n + 1; }
  // Points covered by T_0..T_m.
  Point covered() const;
};

ReversalGadget reversal_gadget(std::optional<Point> m);

// Countable ground with base [Δ, E_h].
CoarseSpace gadget_space(const ReversalGadget& g);

struct EmbeddingResult {
  Point kappa = 2;
  unsigned gamma = 1;
  std::vector<Point> codes;  // code of window point x
  CoarseSpace domain;        // S restricted to the window
  CoarseSpace image;         // macrocube(kappa, gamma) restricted to the codes
  PointMap to_image;         // domain index -> image index, with inverse

  json to_json() const;
};

// Coordinates of x: rank within its E_0-class, then for each level the rank
// of the E_alpha-class among those inside its E_{alpha+1}-class, then the
// rank of the top class among all window classes (omitted when there is only
// one). With `kappa` set the
// fan-out must fit, otherwise the least sufficient kappa is used.
EmbeddingResult cellular_embed(const CoarseSpace& s, const Window& w, std::size_t bound,
                               std::optional<Point> kappa = std::nullopt);

// Pullback of colex along cellular_embed; defined on window points.
PointOrder compatible_wellorder(const CoarseSpace& s, const Window& w, std::size_t bound);

struct SpreadReport {
  Point spread = 0;
  json witness;  // {"A":..., "C":..., "steps":1|2} or null

  json to_json() const;
};

// Largest |sel(A) - sel(C)| over window pairs A, C joined by at most two
// exp E-steps.
SpreadReport selector_spread(const SelectorFn& sel, const Entourage& e, const Window& w);
SpreadReport selector_spread(const SelectorFn& sel, const ReversalGadget& g, const Window& w);

// Compatibility clause for the natural order with F = interval_hull(E).
Verdict hull_witness_check(const Entourage& e, const Window& w);

}  // namespace coarsekit
