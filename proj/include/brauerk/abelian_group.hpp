#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "brauerk/zmod.hpp"

namespace brauerk {

  using Invariants = zmod::Vec;  // invariant factors d_1 | d_2 | ..., no 1s

  // A finite abelian group given by its full operation table. Used for unit
  // groups, Picard and Brauer groups and the inputs of the symmetric monoidal
  // constructions.
  class FiniteAbelianGroup {
   public:
    using element = std::uint32_t;

    // Validates the group axioms (including commutativity) exhaustively.
    FiniteAbelianGroup(std::vector<std::vector<element>> table,
                       element                           identity,
                       std::vector<std::string>          labels = {});

    static FiniteAbelianGroup trivial();
    // Z/d_1 + ... + Z/d_k with elements in mixed-radix order.
    static FiniteAbelianGroup from_cyclic_orders(zmod::Vec const& orders);
    // "0", "Z/4", "Z/2xZ/2", "Z/2 x Z/6".
    static FiniteAbelianGroup parse(std::string const& spec);

    std::size_t order() const noexcept {
      return _table.size();
    }
    element identity() const noexcept {
      return _identity;
    }
    element op(element a, element b) const {
      return _table[a][b];
    }
    element inverse(element a) const {
      return _inverse[a];
    }
    element power(element a, std::int64_t k) const;
    std::uint64_t element_order(element a) const;
    std::string const& label(element a) const {
      return _labels[a];
    }
    std::vector<std::vector<element>> const& table() const noexcept {
      return _table;
    }

    // Cyclic decomposition: orders, a basis, and coordinates of every element.
    zmod::Vec const& cyclic_orders() const noexcept {
      return _orders;
    }
    std::vector<element> const& basis() const noexcept {
      return _basis;
    }
    zmod::Vec const& coordinates(element a) const {
      return _coords[a];
    }
    element from_coordinates(zmod::Vec const& coords) const;

    Invariants invariant_factors() const;
    bool       is_trivial() const noexcept {
      return _table.size() == 1;
    }

   private:
    void decompose();

    std::vector<std::vector<element>> _table;
    element                           _identity;
    std::vector<element>              _inverse;
    std::vector<std::string>          _labels;
    zmod::Vec                         _orders;
    std::vector<element>              _basis;
    std::vector<zmod::Vec>            _coords;
    std::vector<element>              _by_code;  // encoded coordinates -> element
  };

  // Kernel, image and cokernel of an element map between table groups.
  struct HomomorphismData {
    zmod::Matrix  matrix;  // in the cyclic coordinates of source and target
    std::uint64_t kernel_order   = 0;
    std::uint64_t image_order    = 0;
    std::uint64_t cokernel_order = 0;
    Invariants    kernel;
    Invariants    image;
    Invariants    cokernel;
    std::vector<FiniteAbelianGroup::element> kernel_elements;
  };

  bool is_homomorphism(FiniteAbelianGroup const&                         source,
                       FiniteAbelianGroup const&                         target,
                       std::vector<FiniteAbelianGroup::element> const& map);

  // Throws ValidationError if map is not a homomorphism.
  HomomorphismData analyze_homomorphism(FiniteAbelianGroup const&                         source,
                                        FiniteAbelianGroup const&                         target,
                                        std::vector<FiniteAbelianGroup::element> const& map);

  std::string format_invariants(Invariants const& inv);

}  // namespace brauerk
