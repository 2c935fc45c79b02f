#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "brauerk/config.hpp"
#include "brauerk/smc.hpp"
#include "brauerk/zmod.hpp"

namespace brauerk {

  // A pointed map m_+ -> n_+; image[0] = 0.
  struct PointedMap {
    std::size_t              source = 0;
    std::size_t              target = 0;
    std::vector<std::size_t> image;

    static PointedMap identity(std::size_t n);
    static PointedMap constant(std::size_t m, std::size_t n);  // everything to the basepoint
    // Sends i to 1 and everything else to the basepoint (a map n_+ -> 1_+).
    static PointedMap singleton_support(std::size_t n, std::size_t i);

    PointedMap after(PointedMap const& g) const;  // this after g
    // alpha^{-1}(I) for a bitmask I over {1..target}, as a bitmask over {1..source}
    unsigned preimage(unsigned mask) const;
    void     validate() const;
    bool     operator==(PointedMap const&) const = default;
  };
  std::vector<PointedMap> all_pointed_maps(std::size_t m, std::size_t n);

  // Structure maps of the simplicial circle, whose k-simplices are k_+.
  PointedMap circle_face(std::size_t k, std::size_t i);        // k_+ -> (k-1)_+
  PointedMap circle_degeneracy(std::size_t k, std::size_t i);  // k_+ -> (k+1)_+

  using SmcPtr = std::shared_ptr<FiniteSymMonGroupoid const>;

  // (V, p) over n_+: v[I] for every bitmask I (v[0] = unit), and the dense
  // table p[I * 2^n + J] : V(I u J) -> V(I) (x) V(J) for disjoint I, J (npos
  // elsewhere). Only the pairs 0 < I < J with I, J nonempty are free; the rest
  // are derived from unitors and symmetries.
  struct GammaObject {
    std::vector<std::size_t> v;
    std::vector<std::size_t> p;
    bool operator==(GammaObject const&) const = default;
  };

  // Violations of pointed / unital / associative / symmetric, one string each.
  std::vector<std::string> check_gamma_object(FiniteSymMonGroupoid const& v, std::size_t n, GammaObject const& x);

  struct GammaOptions {
    // Negative control: the structure map at this pair (bitmasks I < J) is
    // deleted; objects do not carry it and morphisms are not constrained by it.
    std::optional<std::pair<unsigned, unsigned>> drop_pair;
  };

  // The groupoid V(n_+). Objects are enumerated completely; a morphism is a
  // family f[I] : V_x(I) -> V_y(I) (f[0] the identity of the unit), and its
  // target is determined by its source, so morphisms are produced on demand.
  class GammaLevel {
   public:
    using Family = std::vector<std::size_t>;

    GammaLevel(SmcPtr v, std::size_t n, std::vector<GammaObject> objects, GammaOptions options = {});

    FiniteSymMonGroupoid const& smc() const noexcept {
      return *_v;
    }
    SmcPtr const& smc_ptr() const noexcept {
      return _v;
    }
    std::size_t n() const noexcept {
      return _n;
    }
    std::size_t subsets() const noexcept {
      return std::size_t{1} << _n;
    }
    GammaOptions const& options() const noexcept {
      return _options;
    }
    std::size_t object_count() const noexcept {
      return _objects.size();
    }
    GammaObject const& object(std::size_t x) const {
      return _objects[x];
    }
    std::vector<GammaObject> const& objects() const noexcept {
      return _objects;
    }
    std::optional<std::size_t> find(GammaObject const& x) const;
    std::size_t unit_object() const;  // constant at e with unitor-derived p

    bool        pair_free(unsigned i, unsigned j) const;  // stored, not derived or dropped
    // Target of the family out of x; npos if it is not an object of the level.
    std::size_t apply(std::size_t x, Family const& f) const;
    bool        is_morphism(std::size_t x, std::size_t y, Family const& f) const;
    Family      identity(std::size_t x) const;
    Family      compose(Family const& g, Family const& f) const;  // g after f
    Family      inverse(Family const& f) const;

    // Number of morphisms out of x: the product of out-degrees of the V(I).
    std::uint64_t out_degree(std::size_t x) const;
    // Every family out of x (all are morphisms); stops when fn returns false.
    void for_each_out(std::size_t x, std::function<bool(Family const&)> const& fn) const;
    std::vector<Family> hom(std::size_t x, std::size_t y) const;
    std::vector<Family> automorphisms(std::size_t x) const;

    // Components by orbit search along single-component moves.
    std::vector<std::size_t> const& components() const;
    std::size_t                     component_count() const;
    std::uint64_t                   morphism_count() const;  // sum of out-degrees (saturating)

    // Explicit groupoid; key = {source, f[1], ..., f[2^n - 1]}.
    FiniteGroupoid groupoid(std::uint64_t max_morphisms = 200000) const;

   private:
    SmcPtr                                    _v;
    std::size_t                               _n;
    std::vector<GammaObject>                  _objects;
    GammaOptions                              _options;
    std::unordered_map<std::string, std::size_t> _index;
    mutable std::vector<std::size_t>          _components;
    std::vector<std::vector<std::size_t>>     _out;  // V-morphisms out of each V-object

    std::string key(GammaObject const& x) const;
  };

  GammaLevel gamma_level(SmcPtr v, std::size_t n, Limits const& limits = default_limits(), GammaOptions options = {});
  GammaLevel gamma_level(FiniteSymMonGroupoid const& v, std::size_t n, Limits const& limits = default_limits());

  // A functor between levels, explicit on objects and computed on families.
  struct LevelFunctor {
    GammaLevel const*                                                          source = nullptr;
    GammaLevel const*                                                          target = nullptr;
    std::vector<std::size_t>                                                   objects;
    std::function<GammaLevel::Family(std::size_t, GammaLevel::Family const&)> family;  // (source object, family)
  };

  // alpha_* : V(M) -> V(N), (alpha_* x)(I) = x(alpha^{-1} I).
  LevelFunctor pushforward(PointedMap const& alpha, GammaLevel const& source, GammaLevel const& target);
  LevelFunctor compose_functors(LevelFunctor const& g, LevelFunctor const& f);  // g after f
  // Equal on every object and on every morphism out of every object; with
  // all_families false only identities and single-component families are
  // compared.
  bool functors_equal(LevelFunctor const& a, LevelFunctor const& b, bool all_families = true);

  struct SegalReport {
    std::size_t   n                      = 0;
    std::size_t   source_components      = 0;
    std::size_t   target_components      = 0;  // of the product of copies of V
    bool          pi0_bijective          = false;
    bool          automorphisms_bijective = false;
    bool          exhaustive_checked     = false;  // groupoid_equivalence on explicit groupoids
    bool          exhaustive_verdict     = false;
    std::string   detail;
    bool          special() const noexcept {
      return pi0_bijective && automorphisms_bijective && (!exhaustive_checked || exhaustive_verdict);
    }
  };
  // The Segal functor V(n_+) -> prod_i V(1_+) along the singleton-support
  // maps. Decided on components (pi0 bijection plus automorphism groups at
  // representatives); when both sides are small it is also run through
  // groupoid_equivalence on the explicit groupoids.
  SegalReport segal_check(GammaLevel const& level, Limits const& limits = default_limits());
  SegalReport segal_check(SmcPtr v, std::size_t n, Limits const& limits = default_limits());

  // Levels 0..k of V evaluated on the simplicial circle.
  struct CircleLevels {
    SmcPtr                  v;
    std::vector<GammaLevel> levels;
    // Face and degeneracy maps, checked against the simplicial identities.
    bool simplicial_identities = false;
  };
  CircleLevels circle_levels(SmcPtr v, std::size_t k, Limits const& limits = default_limits());
  GammaLevel   circle_level(SmcPtr v, std::size_t k, Limits const& limits = default_limits());

  // Cells in dimensions 0..3 with face maps (and degeneracies of dimensions
  // 0 and 1). Dimensions beyond `materialized` are only counted.
  struct TruncatedSimplicialSet {
    std::vector<std::uint64_t>                          counts;        // per dimension
    std::size_t                                         materialized = 0;
    std::vector<std::vector<std::vector<std::size_t>>>  faces;         // faces[d][cell] = d_0..d_d
    std::vector<std::vector<std::vector<std::size_t>>>  degeneracies;  // degeneracies[d][cell] = s_0..s_d
    std::vector<std::vector<std::string>>               labels;        // dimensions 0 and 1 only
    std::vector<std::size_t>                            edge_morphisms;  // diagonal nerve: edge -> V-morphism
    bool                                                identities_checked = false;
    std::vector<std::string>                            identity_violations;

    std::size_t vertices() const {
      return faces.empty() ? 0 : static_cast<std::size_t>(counts[0]);
    }
  };

  // Diagonal of the levelwise nerve: d-cells are chains of d composable
  // morphisms in level d. Needs levels 0..3.
  TruncatedSimplicialSet diagonal_nerve(CircleLevels const& levels, Limits const& limits = default_limits());
  // Nerve of a finite groupoid up to dimension `dim` (<= 3).
  TruncatedSimplicialSet groupoid_nerve(FiniteGroupoid const& g, std::size_t dim = 2);

  std::vector<std::size_t> pi0(TruncatedSimplicialSet const& x);  // component per vertex

  struct Pi1Result {
    std::size_t      generators = 0;
    std::size_t      relations  = 0;
    std::vector<std::size_t> tree;  // spanning tree edges
    zmod::Vec        invariants;    // abelian invariant factors (0 = Z)
    zmod::IntegerQuotient abelianization;
    std::vector<std::size_t> edge_generator;  // edge -> generator column, npos for tree edges
  };
  // Edge-path presentation of the 2-skeleton, abelianized. The spanning tree
  // is grown breadth-first; `seed` permutes the order in which edges are
  // tried (0 = natural order). Throws ValidationError when X is disconnected.
  Pi1Result pi1_invariants(TruncatedSimplicialSet const& x, std::size_t base = 0, std::uint64_t seed = 0);

  struct DeloopReport {
    zmod::Vec     pi0_invariants;  // of the pi0 monoid of V (a group)
    zmod::Vec     pi1_invariants;  // of the circle evaluation
    std::size_t   circle_pi0 = 0;  // components of the circle evaluation
    std::vector<std::uint64_t> cell_counts;
    bool          simplicial_identities = false;
    bool          ok() const noexcept {
      return circle_pi0 == 1 && pi0_invariants == pi1_invariants && simplicial_identities;
    }
  };
  // Requires V group-like (ValidationError otherwise).
  DeloopReport deloop_check(SmcPtr v, std::size_t max_level = 3, Limits const& limits = default_limits());

  // F_*(V, p) = (F V, Phi o F p) at level n.
  LevelFunctor induced_gamma_functor(MonoidalFunctorData const& f, GammaLevel const& source, GammaLevel const& target);

  // The map on abelianized pi1 of the diagonal nerves induced by F on edges
  // (level-1 morphisms), in the coordinates of the two abelianizations.
  struct Pi1Map {
    zmod::Matrix  matrix;  // target coordinates x source edges
    bool          well_defined = false;  // every source relation maps to 0
    std::uint64_t image_order  = 0;
    std::uint64_t target_order = 0;
    bool          surjective() const noexcept {
      return image_order == target_order;
    }
  };
  Pi1Map induced_pi1_map(MonoidalFunctorData const& f, TruncatedSimplicialSet const& source_nerve,
                         Pi1Result const& source_pi1, TruncatedSimplicialSet const& target_nerve,
                         Pi1Result const& target_pi1);

}  // namespace brauerk
