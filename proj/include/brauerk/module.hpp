#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brauerk/ring.hpp"
#include "brauerk/zmod.hpp"

namespace brauerk {

  // A finite module over a FiniteCommRing. The additive group is a direct sum
  // of cyclic groups Z/orders[i] and elements are coordinate vectors. The
  // action is stored as one matrix per element of the additive basis of R
  // (column i = b_s * e_i); the action of any r is the corresponding integer
  // combination. This keeps modules of order 2^16 cheap while every axiom
  // stays exactly checkable.
  class FGModule {
   public:
    FGModule(RingPtr                   ring,
             zmod::Vec                 orders,
             std::vector<zmod::Matrix> basis_action,
             std::string               descriptor,
             Limits const&             limits = default_limits());

    RingPtr const& ring() const noexcept {
      return _ring;
    }
    zmod::Vec const& orders() const noexcept {
      return _orders;
    }
    std::size_t dim() const noexcept {
      return _orders.size();
    }
    std::uint64_t order() const noexcept {
      return zmod::group_order(_orders);
    }
    std::string const& descriptor() const noexcept {
      return _descriptor;
    }
    zmod::Matrix const& basis_action(std::size_t s) const {
      return _action[s];
    }
    std::vector<zmod::Matrix> const& basis_actions() const noexcept {
      return _action;
    }

    zmod::Matrix act_matrix(FiniteCommRing::element r) const;
    zmod::Vec    act(FiniteCommRing::element r, zmod::Vec const& x) const;
    zmod::Vec    add(zmod::Vec const& x, zmod::Vec const& y) const {
      return zmod::add(x, y, _orders);
    }
    zmod::Vec zero() const {
      return zmod::Vec(_orders.size(), 0);
    }
    zmod::Vec element(std::uint64_t index) const {
      return zmod::decode(index, _orders);
    }
    std::uint64_t index(zmod::Vec const& x) const {
      return zmod::encode(x, _orders);
    }
    zmod::Vec basis_vector(std::size_t i) const {
      auto v = zero();
      v[i]   = 1;
      return v;
    }

    FGModule with_descriptor(std::string d) const {
      FGModule m = *this;
      m._descriptor = std::move(d);
      return m;
    }

   private:
    RingPtr                   _ring;
    zmod::Vec                 _orders;
    std::vector<zmod::Matrix> _action;
    std::string               _descriptor;
  };

  struct ModuleMap {
    FGModule     source;
    FGModule     target;
    zmod::Matrix matrix;  // column i = image of source generator i

    zmod::Vec operator()(zmod::Vec const& x) const {
      return zmod::apply(matrix, x, target.orders());
    }
    // Throws ValidationError unless well-defined and R-linear.
    void validate() const;
    bool is_bijective() const;
  };

  // ---- generic constructions on cyclic decompositions -----------------------

  // Abelian group homomorphisms f : src -> tgt with f X = Y f for every pair
  // (X, Y). Elements are stored in the ambient group of all column tuples
  // (column i = f(e_i)), i.e. ambient orders are tgt repeated src.size() times.
  zmod::Subgroup intertwiners(zmod::Vec const&                                          src,
                              zmod::Vec const&                                          tgt,
                              std::vector<std::pair<zmod::Matrix, zmod::Matrix>> const& constraints);

  // Matrix of the map with ambient coordinates v (as produced by intertwiners).
  zmod::Matrix columns_to_matrix(zmod::Vec const& v, std::size_t src_dim, std::size_t tgt_dim);
  zmod::Vec    matrix_to_columns(zmod::Matrix const& m);

  // M (x)_Z N modulo (X m) (x) n = m (x) (Y n) for every pair (X, Y).
  struct BalancedTensor {
    zmod::Vec      left_orders;
    zmod::Vec      right_orders;
    zmod::Vec      ambient_orders;  // generator (i, j) at i * right + j
    zmod::Quotient quotient;

    zmod::Vec pure(zmod::Vec const& x, zmod::Vec const& y) const;
    // Operator on the tensor induced by X (x) Y (X on the left factor, Y on the
    // right); the caller guarantees compatibility with the relations.
    zmod::Matrix induced(zmod::Matrix const& x, zmod::Matrix const& y) const;
    std::uint64_t order() const noexcept {
      return zmod::group_order(quotient.orders);
    }
  };
  BalancedTensor balanced_tensor(zmod::Vec const&                                          left,
                                 zmod::Vec const&                                          right,
                                 std::vector<std::pair<zmod::Matrix, zmod::Matrix>> const& relations,
                                 Limits const&                                             limits = default_limits());

  // Matrix of an operator restricted to a subgroup it preserves, in the
  // subgroup's own coordinates. Throws if the subgroup is not invariant.
  zmod::Matrix restrict_operator(zmod::Subgroup const& sub, zmod::Matrix const& op);

  // ---- modules ----------------------------------------------------------------

  FGModule free_module(RingPtr const& ring, std::size_t n, Limits const& limits = default_limits());
  FGModule direct_sum(FGModule const& m, FGModule const& n, Limits const& limits = default_limits());
  // The ideal eR as a module, for an idempotent e.
  FGModule idempotent_module(RingPtr const& ring, FiniteCommRing::element e);

  // Submodule generated by the given vectors, as a subgroup of M.
  zmod::Subgroup submodule(FGModule const& m, std::vector<zmod::Vec> const& gens);
  FGModule       submodule_module(FGModule const& m, zmod::Subgroup const& sub, std::string descriptor);
  // M / <gens>_R with the projection.
  struct QuotientModule {
    FGModule       module;
    zmod::Quotient quotient;
  };
  QuotientModule quotient_module(FGModule const& m, std::vector<zmod::Vec> const& gens, std::string descriptor);

  struct HomModule {
    FGModule       module;
    zmod::Subgroup sub;  // inside the ambient group of column tuples
    std::size_t    source_dim;
    std::size_t    target_dim;

    zmod::Matrix matrix(zmod::Vec const& coords) const {
      return columns_to_matrix(sub.embed(coords), source_dim, target_dim);
    }
    std::optional<zmod::Vec> coordinates(zmod::Matrix const& f) const {
      return sub.coordinates(matrix_to_columns(f));
    }
  };
  HomModule hom_module(FGModule const& m, FGModule const& n, Limits const& limits = default_limits());

  struct TensorModule {
    FGModule       module;
    BalancedTensor data;

    zmod::Vec pure(zmod::Vec const& x, zmod::Vec const& y) const {
      return data.pure(x, y);
    }
  };
  TensorModule tensor_over_R(FGModule const& m, FGModule const& n, Limits const& limits = default_limits());

  // Z-span of r * gen over all r (the cyclic R-submodule) is folded into
  // submodule(); this one is the fiber M / m_i M at local factor i.
  std::uint64_t fiber_order(FGModule const& m, LocalDecomposition const& loc, std::size_t i);
  std::size_t   fiber_dimension(FGModule const& m, LocalDecomposition const& loc, std::size_t i);

  // A generating set of minimal size max_i dim(M / m_i M).
  std::vector<zmod::Vec> minimal_generators(FGModule const& m, LocalDecomposition const& loc);

  // Surjection R^n -> M sending the t-th free generator to gens[t].
  ModuleMap surjection_from_free(FGModule const& m, std::vector<zmod::Vec> const& gens,
                                 Limits const& limits = default_limits());

  struct ProjectivityReport {
    bool                    projective = false;
    std::size_t             n          = 0;  // size of the minimal generating set
    std::vector<zmod::Vec>  generators;
    std::optional<ModuleMap> splitting;  // sigma : M -> R^n with pi sigma = id
  };
  ProjectivityReport is_projective(FGModule const& m, Limits const& limits = default_limits());

  struct RankFunction {
    std::vector<std::size_t> values;  // indexed by local factors
  };
  // Throws ValidationError if M is not projective.
  RankFunction rank_function(FGModule const& m, Limits const& limits = default_limits());
  RankFunction rank_function(FGModule const& m, LocalDecomposition const& loc);

  // Explicit isomorphism R^n -> M if M is free of rank n.
  std::optional<ModuleMap> free_basis(FGModule const& m, Limits const& limits = default_limits());

  struct GeneratorReport {
    bool                     decision = false;   // criterion (2)
    RankFunction             rank;
    bool                     trace_contains_one = false;  // criterion (1)
    enum class Witness { found, absent, not_found_within_bound } witness = Witness::absent;  // criterion (3)
    std::vector<std::size_t> witness_multiplicities;  // Q = sum_i (e_i R)^{q_i}
    std::size_t              witness_rank = 0;        // P (x) Q = R^n
    std::string              note;

    bool agree() const {
      return witness == Witness::not_found_within_bound
          || (decision == trace_contains_one && decision == (witness == Witness::found));
    }
  };
  // Requires M projective (throws ValidationError otherwise).
  GeneratorReport is_generator(FGModule const& m, Limits const& limits = default_limits());

  // Exhaustive search over Hom_R(M, N) for a bijection; nothing if none,
  // BudgetExceeded if Hom is larger than the budget.
  std::optional<ModuleMap> module_isomorphism(FGModule const& m,
                                              FGModule const& n,
                                              std::uint64_t   budget = default_limits().iso_node_budget,
                                              Limits const&   limits = default_limits());

}  // namespace brauerk
