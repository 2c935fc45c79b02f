#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "brauerk/abelian_group.hpp"

namespace brauerk {

  inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // A finite groupoid whose morphisms are identified by integer keys.
  // Composition is computed on keys by a callback and looked up again, so the
  // large groupoids of the Gamma machine never need a composition table.
  class FiniteGroupoid {
   public:
    using Key       = std::vector<std::uint32_t>;
    using ComposeFn = std::function<Key(Key const& g, Key const& f)>;  // g after f

    std::size_t add_object(std::string label = {});
    // Returns the morphism id; the key must be new.
    std::size_t add_morphism(std::size_t source, std::size_t target, Key key);
    void        set_identity(std::size_t object, std::size_t morphism);
    void        set_compose(ComposeFn fn) {
      _compose = std::move(fn);
    }

    std::size_t object_count() const noexcept {
      return _labels.size();
    }
    std::size_t morphism_count() const noexcept {
      return _source.size();
    }
    std::string const& label(std::size_t object) const {
      return _labels[object];
    }
    std::size_t source(std::size_t m) const {
      return _source[m];
    }
    std::size_t target(std::size_t m) const {
      return _target[m];
    }
    Key const& key(std::size_t m) const {
      return _keys[m];
    }
    std::size_t identity(std::size_t object) const {
      return _identity[object];
    }
    std::vector<std::size_t> const& hom(std::size_t a, std::size_t b) const;
    std::optional<std::size_t>      find(Key const& key) const;
    // g after f; npos when not composable or the composite is missing.
    std::size_t compose(std::size_t g, std::size_t f) const;

    // Connected components (isomorphism classes), labelled 0.. in order of
    // first appearance.
    std::vector<std::size_t> components() const;

   private:
    struct KeyHash {
      std::size_t operator()(Key const& k) const noexcept;
    };
    std::vector<std::string>                                   _labels;
    std::vector<std::size_t>                                   _source, _target, _identity;
    std::vector<Key>                                           _keys;
    std::unordered_map<Key, std::size_t, KeyHash>              _index;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> _hom;
    ComposeFn                                                  _compose;
  };

  // A functor between finite groupoids, given on objects and morphisms.
  struct GroupoidFunctor {
    FiniteGroupoid const*    source = nullptr;
    FiniteGroupoid const*    target = nullptr;
    std::vector<std::size_t> objects;
    std::vector<std::size_t> morphisms;
  };

  struct EquivalenceReport {
    bool        functor_valid        = false;
    bool        essentially_surjective = false;
    bool        fully_faithful       = false;
    std::string detail;
    bool        equivalence() const noexcept {
      return functor_valid && essentially_surjective && fully_faithful;
    }
  };
  // Exhaustive: functoriality on all composable pairs, hom-set bijections on
  // all object pairs, and essential surjectivity on target components.
  EquivalenceReport groupoid_equivalence(GroupoidFunctor const& f);

  // A finite symmetric monoidal groupoid with explicit tables. Morphisms are
  // 0..M-1 with explicit composition (npos when not composable); coherence
  // cells are stored even when they are identities.
  struct FiniteSymMonGroupoid {
    std::vector<std::string>  objects;
    std::vector<std::string>  morphism_labels;
    std::vector<std::size_t>  source, target;
    std::vector<std::size_t>  identity;        // per object
    std::vector<std::size_t>  composition;     // M*M, [g*M + f] = g after f
    std::vector<std::size_t>  tensor_obj;      // O*O
    std::vector<std::size_t>  tensor_mor;      // M*M
    std::size_t               unit = 0;
    std::vector<std::size_t>  associator;      // O^3: (x y) z -> x (y z)
    std::vector<std::size_t>  left_unitor;     // e x -> x
    std::vector<std::size_t>  right_unitor;    // x e -> x
    std::vector<std::size_t>  symmetry;        // O^2: x y -> y x

    std::size_t object_count() const noexcept {
      return objects.size();
    }
    std::size_t morphism_count() const noexcept {
      return source.size();
    }
    std::size_t compose(std::size_t g, std::size_t f) const {
      return composition[g * morphism_count() + f];
    }
    std::size_t tensor(std::size_t x, std::size_t y) const {
      return tensor_obj[x * object_count() + y];
    }
    std::size_t tensor_morphisms(std::size_t f, std::size_t g) const {
      return tensor_mor[f * morphism_count() + g];
    }
    std::size_t assoc(std::size_t x, std::size_t y, std::size_t z) const {
      std::size_t const o = object_count();
      return associator[(x * o + y) * o + z];
    }
    std::size_t sym(std::size_t x, std::size_t y) const {
      return symmetry[x * object_count() + y];
    }
    std::size_t inverse(std::size_t f) const;  // npos if none
    std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;
    FiniteGroupoid           groupoid() const;  // morphism key = {id}
  };

  struct CoherenceReport {
    std::vector<std::string> violations;
    bool                     ok() const noexcept {
      return violations.empty();
    }
  };
  // Lists every violated instance (capped at `max_violations` entries).
  CoherenceReport check_coherence(FiniteSymMonGroupoid const& v, std::size_t max_violations = 64);

  struct Pi0Monoid {
    std::vector<std::size_t> class_of;         // object -> class
    std::vector<std::size_t> representatives;  // class -> least object
    std::vector<std::size_t> table;            // class product, C*C
    std::size_t              unit = 0;
    std::size_t              size() const noexcept {
      return representatives.size();
    }
  };
  Pi0Monoid pi0_monoid(FiniteSymMonGroupoid const& v);
  bool      is_group_like(FiniteSymMonGroupoid const& v);
  // pi0 as a finite abelian group; throws ValidationError if not group-like.
  FiniteAbelianGroup pi0_group(FiniteSymMonGroupoid const& v);
  // Automorphism group of the unit object.
  FiniteAbelianGroup unit_automorphisms(FiniteSymMonGroupoid const& v);

  FiniteSymMonGroupoid from_abelian_group(FiniteAbelianGroup const& a);
  FiniteSymMonGroupoid synthetic_picard(FiniteAbelianGroup const& pi0, FiniteAbelianGroup const& pi1);
  // Objects 0..n with x (x) y = x + y when x + y <= n; refused (npos) above.
  // Not a valid symmetric monoidal groupoid; used to exercise the monoid and
  // group-likeness code paths.
  FiniteSymMonGroupoid truncated_free_monoid(std::size_t n);

  // A strictly unital op-lax symmetric monoidal functor:
  // phi[x*O + y] : F(x (x) y) -> F(x) (x) F(y).
  struct MonoidalFunctorData {
    FiniteSymMonGroupoid const* source = nullptr;
    FiniteSymMonGroupoid const* target = nullptr;
    std::vector<std::size_t>    objects;
    std::vector<std::size_t>    morphisms;
    std::vector<std::size_t>    phi;
  };
  // Functoriality, naturality of phi, compatibility with associators,
  // unitors and symmetries, and F(e) = e on the nose.
  CoherenceReport check_monoidal_functor(MonoidalFunctorData const& f);

  // The strict functor induced by a group homomorphism (given as an element
  // map between the discrete groupoids of from_abelian_group).
  MonoidalFunctorData functor_from_homomorphism(FiniteSymMonGroupoid const& source,
                                                FiniteSymMonGroupoid const& target,
                                                std::vector<std::size_t> const& element_map);
  MonoidalFunctorData identity_functor(FiniteSymMonGroupoid const& v);

}  // namespace brauerk
