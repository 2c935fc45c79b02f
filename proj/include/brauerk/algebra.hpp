#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brauerk/module.hpp"

namespace brauerk {

  // An associative unital R-algebra on a finite module, given by the products
  // of the cyclic generators of the module (structure constants) and the
  // coordinates of 1.
  class StructuredAlgebra {
   public:
    // products[i * dim + j] = e_i e_j. Checks well-definedness, R-bilinearity,
    // associativity and unitality on generators, which is exhaustive by
    // bilinearity.
    StructuredAlgebra(FGModule module, std::vector<zmod::Vec> products, zmod::Vec one, std::string descriptor);

    FGModule const& module() const noexcept {
      return _module;
    }
    RingPtr const& ring() const noexcept {
      return _module.ring();
    }
    std::size_t dim() const noexcept {
      return _module.dim();
    }
    std::uint64_t order() const noexcept {
      return _module.order();
    }
    zmod::Vec const& orders() const noexcept {
      return _module.orders();
    }
    zmod::Vec const& one() const noexcept {
      return _one;
    }
    std::string const& descriptor() const noexcept {
      return _descriptor;
    }
    std::vector<zmod::Vec> const& products() const noexcept {
      return _products;
    }
    zmod::Vec const& product(std::size_t i, std::size_t j) const {
      return _products[i * dim() + j];
    }

    zmod::Vec    mul(zmod::Vec const& x, zmod::Vec const& y) const;
    zmod::Vec    add(zmod::Vec const& x, zmod::Vec const& y) const {
      return _module.add(x, y);
    }
    zmod::Matrix left_matrix(zmod::Vec const& x) const;   // y -> x y
    zmod::Matrix right_matrix(zmod::Vec const& x) const;  // y -> y x
    // r * 1 for a ring element r.
    zmod::Vec scalar(FiniteCommRing::element r) const {
      return _module.act(r, _one);
    }

    StructuredAlgebra with_descriptor(std::string d) const {
      StructuredAlgebra a = *this;
      a._descriptor       = std::move(d);
      return a;
    }

   private:
    FGModule               _module;
    std::vector<zmod::Vec> _products;
    zmod::Vec              _one;
    std::string            _descriptor;
  };

  // A map of algebras given by the images of the module generators.
  struct AlgebraMap {
    StructuredAlgebra source;
    StructuredAlgebra target;
    zmod::Matrix      matrix;

    zmod::Vec operator()(zmod::Vec const& x) const {
      return zmod::apply(matrix, x, target.orders());
    }
    bool is_homomorphism() const;  // R-linear, multiplicative, unital
    bool is_bijective() const;
  };

  StructuredAlgebra matrix_algebra(RingPtr const& ring, std::size_t n, Limits const& limits = default_limits());
  StructuredAlgebra opposite(StructuredAlgebra const& a);
  StructuredAlgebra algebra_tensor(StructuredAlgebra const& a, StructuredAlgebra const& b,
                                   Limits const& limits = default_limits());
  struct EndAlgebra {
    StructuredAlgebra algebra;
    HomModule         hom;  // elements are endomorphisms of the module
  };
  EndAlgebra end_algebra(FGModule const& m, Limits const& limits = default_limits());
  // The ring R as an algebra over itself.
  StructuredAlgebra unit_algebra(RingPtr const& ring);
  // An S-algebra viewed as an R-algebra along f : R -> S.
  StructuredAlgebra restrict_scalars(RingMap const& f, StructuredAlgebra const& a);
  // The module S viewed as an R-module along f.
  FGModule restrict_scalars(RingMap const& f, FGModule const& m);
  // S (x)_R A with the induced S-algebra structure.
  StructuredAlgebra base_change(RingMap const& f, StructuredAlgebra const& a, Limits const& limits = default_limits());
  // S (x)_R M as an S-module.
  FGModule base_change(RingMap const& f, FGModule const& m, Limits const& limits = default_limits());

  bool is_commutative(StructuredAlgebra const& a);
  // Order of the center, by a kernel computation.
  std::uint64_t center_order(StructuredAlgebra const& a);

  // Invariants used to prune isomorphism searches. The element counts are
  // only computed for algebras up to `enumeration_limit` elements.
  struct AlgebraInvariants {
    std::uint64_t              order = 0;
    zmod::Vec                  additive;  // invariant factors
    std::uint64_t              center = 0;
    bool                       commutative = false;
    std::optional<std::uint64_t> units;
    std::optional<std::uint64_t> idempotents;
    bool operator==(AlgebraInvariants const&) const = default;
  };
  AlgebraInvariants algebra_invariants(StructuredAlgebra const& a, std::uint64_t enumeration_limit = 4096);

  // Backtracking over images of algebra generators with invariant pruning.
  // Returns nothing if the algebras are not isomorphic; BudgetExceeded if
  // the node budget is exhausted first.
  std::optional<AlgebraMap> algebra_isomorphism(StructuredAlgebra const& a, StructuredAlgebra const& b,
                                                std::uint64_t node_budget = default_limits().iso_node_budget);

  // R-submodule spanned by all words in the given elements (with 1).
  zmod::Subgroup generated_subalgebra(StructuredAlgebra const& a, std::vector<zmod::Vec> const& gens);

}  // namespace brauerk
