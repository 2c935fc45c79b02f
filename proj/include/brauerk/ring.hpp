#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brauerk/abelian_group.hpp"
#include "brauerk/config.hpp"

namespace brauerk {

  class FiniteCommRing;
  using RingPtr = std::shared_ptr<FiniteCommRing const>;

  // A finite commutative unital ring stored as dense operation tables over
  // element indices 0..order-1. Immutable after construction.
  class FiniteCommRing {
   public:
    using element = std::uint32_t;

    // Tables are row-major order*order. Every ring axiom is checked on every
    // element triple; the zero ring is rejected.
    FiniteCommRing(std::size_t              order,
                   std::vector<element>     add,
                   std::vector<element>     mul,
                   element                  zero,
                   element                  one,
                   std::string              descriptor,
                   std::vector<std::string> labels = {},
                   Limits const&            limits = default_limits());

    static RingPtr integers_mod(std::int64_t n, Limits const& limits = default_limits());
    static RingPtr galois_field(std::int64_t q, Limits const& limits = default_limits());
    static RingPtr product(std::vector<RingPtr> const& factors,
                           Limits const&               limits = default_limits());
    // base[x]/(f) for f = x^d + coeffs[d-1] x^{d-1} + ... + coeffs[0].
    static RingPtr polynomial_quotient(RingPtr const&              base,
                                       std::vector<element> const& coeffs,
                                       std::string                 descriptor = {},
                                       Limits const&               limits     = default_limits());
    // Sub-ring given by a set of elements closed under + and *, with its own
    // unit (e.g. eR for an idempotent e). Elements keep the order of `elements`.
    static RingPtr from_subset(FiniteCommRing const&       ring,
                               std::vector<element> const& elements,
                               element                     unit,
                               std::string                 descriptor);
    // R / I for an ideal given as an element list.
    static RingPtr quotient(FiniteCommRing const&       ring,
                            std::vector<element> const& ideal,
                            std::string                 descriptor);

    std::size_t order() const noexcept {
      return _order;
    }
    element zero() const noexcept {
      return _zero;
    }
    element one() const noexcept {
      return _one;
    }
    element add(element a, element b) const {
      return _add[a * _order + b];
    }
    element mul(element a, element b) const {
      return _mul[a * _order + b];
    }
    element neg(element a) const {
      return _neg[a];
    }
    element sub(element a, element b) const {
      return add(a, _neg[b]);
    }
    // n * a for an integer n (possibly negative).
    element times(std::int64_t n, element a) const;
    element power(element a, std::uint64_t k) const;
    element from_integer(std::int64_t n) const {
      return times(n, _one);
    }

    bool                   is_unit(element a) const;
    std::optional<element> inverse(element a) const;
    std::int64_t           characteristic() const noexcept {
      return _characteristic;
    }
    bool is_field() const;
    bool is_local() const;

    std::string const& descriptor() const noexcept {
      return _descriptor;
    }
    // How the ring was built, e.g. "Z/2[x]/(x^2+x+1)" for GF(4).
    std::string const& presentation() const noexcept {
      return _presentation;
    }
    std::string const& label(element a) const {
      return _labels[a];
    }
    std::vector<element> const& add_table() const noexcept {
      return _add;
    }
    std::vector<element> const& mul_table() const noexcept {
      return _mul;
    }

    // Cyclic decomposition of (R,+); coordinates of elements in it.
    FiniteAbelianGroup const& additive() const noexcept {
      return *_additive;
    }
    zmod::Vec const& coords(element a) const {
      return _additive->coordinates(a);
    }
    element from_coords(zmod::Vec const& c) const {
      return _additive->from_coordinates(c);
    }

    // Greedy minimal-ish set of ring generators (as a ring over Z).
    std::vector<element> const& ring_generators() const noexcept {
      return _generators;
    }

   private:
    std::size_t                         _order;
    std::vector<element>                _add;
    std::vector<element>                _mul;
    std::vector<element>                _neg;
    std::vector<std::int64_t>           _inv;  // -1 for non-units
    element                             _zero;
    element                             _one;
    std::string                         _descriptor;
    std::string                         _presentation;
    std::vector<std::string>            _labels;
    std::int64_t                        _characteristic = 0;
    std::shared_ptr<FiniteAbelianGroup> _additive;
    std::vector<element>                _generators;
  };

  // Ring spec grammar: atom := "Z/" nat | "GF(" q ")" | "table:" path;
  // spec := atom { " x " atom }.
  RingPtr parse_ring(std::string const& spec, Limits const& limits = default_limits());

  // Smallest subring containing the given elements (with 1).
  std::vector<bool> generated_subring(FiniteCommRing const&                        ring,
                                      std::vector<FiniteCommRing::element> const& gens);

  struct RingMap {
    RingPtr                              source;
    RingPtr                              target;
    std::vector<FiniteCommRing::element> image;

    // Throws ValidationError unless 0, 1, + and * are preserved.
    void validate() const;
    FiniteCommRing::element operator()(FiniteCommRing::element a) const {
      return image[a];
    }
  };

  RingMap identity_map(RingPtr const& ring);
  RingMap compose(RingMap const& g, RingMap const& f);  // g after f

  struct UnitGroup {
    std::vector<FiniteCommRing::element> elements;  // ascending ring indices
    FiniteAbelianGroup                   group;     // element i = elements[i]
  };
  UnitGroup units(FiniteCommRing const& ring);

  struct LocalDecomposition {
    RingPtr                              ring;
    std::vector<FiniteCommRing::element> primitive_idempotents;
    std::vector<RingPtr>                 local_factors;
    std::vector<RingPtr>                 residue_fields;
    std::vector<RingMap>                 projections;  // R -> e_i R
    // Maximal ideal of R lying over factor i: elements x with e_i x a non-unit of e_i R.
    std::vector<std::vector<FiniteCommRing::element>> maximal_ideals;

    std::size_t size() const noexcept {
      return local_factors.size();
    }
  };
  LocalDecomposition local_decomposition(RingPtr const& ring);

  // Every unital ring map source -> target (exhaustive, generator backtracking).
  std::vector<RingMap> ring_maps(RingPtr const& source,
                                 RingPtr const& target,
                                 std::uint64_t  node_budget = default_limits().iso_node_budget);

  // A ring isomorphism, or nothing; BudgetExceeded if the search is cut off.
  std::optional<RingMap> ring_isomorphism(RingPtr const& source,
                                          RingPtr const& target,
                                          std::uint64_t  node_budget = default_limits().iso_node_budget);

}  // namespace brauerk
