#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brauerk/azumaya.hpp"
#include "brauerk/picard.hpp"
#include "brauerk/smc.hpp"

namespace brauerk {

  // max(16, |R|): keeps M_2(F_2) in range and always admits R itself.
  std::uint64_t default_brauer_bound(FiniteCommRing const& r);

  // The 1-truncated Brauer groupoid up to a module-order bound. Objects are
  // the enumerated Azumaya algebras; a morphism A -> B is an iso-class of
  // invertible R-symmetric (A, B)-bimodules. Aut(R) is enumerated directly
  // from invertible bimodules; objects joined to R by a Morita witness P
  // (A = End_R(P)) get hom-sets P (x)_R L (x)_R Q^v, L in Aut(R).
  struct BrauerGroupoid {
    RingPtr                                   ring;
    std::uint64_t                             bound      = 0;
    bool                                      exhaustive = false;  // enumeration and every search conclusive
    std::vector<StructuredAlgebra>            objects;
    std::vector<AzumayaCertificate>           certificates;
    std::vector<std::optional<MoritaWitness>> witnesses;  // to R
    std::vector<InversePath>                  inverse_paths;
    std::size_t                               unit = 0;      // the object R
    std::vector<std::size_t>                  component;     // per object
    std::vector<Bimodule>                     unit_classes;  // Aut(R); unit_classes[0] = R
    FiniteAbelianGroup                        unit_automorphisms = FiniteAbelianGroup::trivial();

    std::size_t component_count() const;
    // Skeletal model on the component of R, one morphism per (A, B, L):
    // key {A, B, L}, composed by the product in Aut(R). Other components
    // contribute their objects with identities only.
    FiniteGroupoid groupoid() const;
  };
  BrauerGroupoid brauer_groupoid(RingPtr const& ring, std::uint64_t bound, Limits const& limits = default_limits());

  struct BrauerGroup {
    FiniteAbelianGroup       group = FiniteAbelianGroup::trivial();  // element i = component i
    std::vector<std::size_t> representatives;                        // object per element
    bool                     inverses_certified = false;  // every object has a certified inverse path
    bool                     all_witnessed      = false;  // every object carries a Morita witness
    bool                     exhaustive         = false;
  };
  // pi0 of the groupoid under (x)_R. Products of classes are located by a
  // Morita witness or an algebra isomorphism; Inconclusive if neither.
  BrauerGroup brauer_group(BrauerGroupoid const& g, Limits const& limits = default_limits());
  BrauerGroup brauer_group(RingPtr const& ring, std::uint64_t bound, Limits const& limits = default_limits());

  struct BrauerData {
    std::string        ring;
    std::uint64_t      bound = 0;
    FiniteAbelianGroup br    = FiniteAbelianGroup::trivial();
    FiniteAbelianGroup pic   = FiniteAbelianGroup::trivial();
    FiniteAbelianGroup gl1   = FiniteAbelianGroup::trivial();
    FiniteAbelianGroup unit_automorphisms = FiniteAbelianGroup::trivial();  // Aut of R in the groupoid
    bool               pic_identified = false;  // unit_automorphisms has the invariants of pic
    bool               pic_automorphisms_match = false;  // |Aut_R(L)| = |R^x| for every invertible L
    bool               exhaustive     = false;
    bool               inverses_certified = false;
    bool               all_witnessed      = false;
  };
  BrauerData brauer_data(RingPtr const& ring, Limits const& limits = default_limits());
  BrauerData brauer_data(RingPtr const& ring, std::uint64_t bound, Limits const& limits = default_limits());

  struct RelativeReport {
    std::string      source;
    std::string      target;
    std::vector<FiniteCommRing::element> map;  // element images
    HomomorphismData gl1_map;
    HomomorphismData pic_map;
    HomomorphismData br_map;
    FiniteAbelianGroup gl1_source = FiniteAbelianGroup::trivial(), gl1_target = FiniteAbelianGroup::trivial();
    FiniteAbelianGroup pic_source = FiniteAbelianGroup::trivial(), pic_target = FiniteAbelianGroup::trivial();
    FiniteAbelianGroup br_source  = FiniteAbelianGroup::trivial(), br_target  = FiniteAbelianGroup::trivial();

    // pi_2, pi_1, pi_0, pi_{-1} of the fiber, orders forced by exactness of
    // 0 -> pi2 F -> GL1 R -> GL1 S -> pi1 F -> Pic R -> Pic S -> pi0 F -> Br R -> Br S -> pi-1 F -> 0
    std::uint64_t fiber_orders[4] = {0, 0, 0, 0};
    bool          extension_ambiguous[4] = {false, false, false, false};
    bool          alternating_identity = false;  // the alternating order product is 1
    bool          boundary_relation    = false;  // |ker br| = |coker(Pic S -> pi0 F)|
    bool          consistent() const noexcept {
      return alternating_identity && boundary_relation;
    }
  };
  RelativeReport relative_report(RingMap const& f, Limits const& limits = default_limits());
  RelativeReport relative_report(RingMap const& f, std::uint64_t bound, Limits const& limits = default_limits());

}  // namespace brauerk
