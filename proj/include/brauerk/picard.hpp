#pragma once

#include <cstdint>
#include <vector>

#include "brauerk/azumaya.hpp"
#include "brauerk/smc.hpp"

namespace brauerk {

  // An invertible R-module with its inverse data: L^v = Hom_R(L, R) and the
  // evaluation L (x) L^v -> R, both checked by bimodule_invertible.
  struct InvertibleModule {
    FGModule            module;
    InvertibilityReport witness;
  };

  struct InvertibleModules {
    std::vector<InvertibleModule> classes;  // classes[0] is R itself
    std::uint64_t                 bound = 0;
    std::uint64_t                 structures_examined = 0;  // module structures built
    std::uint64_t                 groups_examined     = 0;  // additive groups tried
  };
  // Every R-module structure on every abelian group of order <= bound whose
  // exponent divides char R, tested for invertibility and deduplicated up to
  // isomorphism. BudgetExceeded if the structure search exceeds the node budget.
  InvertibleModules invertible_modules(RingPtr const& ring, std::uint64_t bound,
                                       Limits const& limits = default_limits());

  struct PicardData {
    RingPtr            ring;
    InvertibleModules  modules;
    FiniteAbelianGroup pic;   // tensor classes of modules.classes, element i = class i
    FiniteAbelianGroup gl1;   // units(R), in the element order of units()
    std::vector<FiniteCommRing::element> unit_elements;
    bool               automorphisms_match = false;  // |Aut_R(L)| = |R^x| for every class
  };
  // Uses bound = |R|: an invertible module is locally free of rank one, so
  // it has the order of R.
  PicardData picard_data(RingPtr const& ring, Limits const& limits = default_limits());
  PicardData picard_data(RingPtr const& ring, std::uint64_t bound, Limits const& limits = default_limits());

  // Skeletal Picard groupoid: one object per class, Aut(L) = R^x acting by
  // multiplication; morphism (c, u) has id c * |R^x| + u.
  FiniteSymMonGroupoid picard_smc(PicardData const& data);
  FiniteSymMonGroupoid picard_smc(RingPtr const& ring, Limits const& limits = default_limits());

  // Base change S (x)_R - on Picard groupoids along f : R -> S.
  struct PicardFunctor {
    PicardData           source_data;
    PicardData           target_data;
    FiniteSymMonGroupoid source;
    FiniteSymMonGroupoid target;
    std::vector<std::size_t> pic_map;   // class -> class
    std::vector<std::size_t> unit_map;  // unit index -> unit index

    // Points into this object; do not outlive it.
    MonoidalFunctorData data() const;
  };
  PicardFunctor picard_functor(RingMap const& f, Limits const& limits = default_limits());

}  // namespace brauerk
