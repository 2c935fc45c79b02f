#include <algorithm>
#include <deque>

#include "brauerk/error.hpp"
#include "brauerk/ring.hpp"

namespace brauerk {

  namespace {

    using element = FiniteCommRing::element;
    constexpr std::int64_t unset = -1;

    // Partial map defined on a subring of the source, extended by closure.
    struct PartialMap {
      std::vector<std::int64_t> image;
      std::vector<std::int64_t> preimage;  // only maintained for injective searches
      std::vector<element>      known;
    };

    class MapSearch {
     public:
      MapSearch(FiniteCommRing const& source,
                FiniteCommRing const& target,
                bool                  injective,
                std::uint64_t         budget)
          : _r(source), _s(target), _injective(injective), _budget(budget) {}

      // Adds x -> y and closes under + and *; false on a conflict.
      bool extend(PartialMap& m, element x, element y) {
        if (++_nodes > _budget) {
          throw BudgetExceeded("ring-map search",
                               "ring map search exceeded node budget " + std::to_string(_budget));
        }
        std::deque<element> queue;
        auto assign = [&](element a, element b) {
          if (m.image[a] != unset) {
            return m.image[a] == static_cast<std::int64_t>(b);
          }
          if (_injective) {
            if (m.preimage[b] != unset) {
              return false;
            }
            m.preimage[b] = a;
          }
          m.image[a] = b;
          queue.push_back(a);
          return true;
        };
        if (!assign(x, y)) {
          return false;
        }
        while (!queue.empty()) {
          element a = queue.front();
          queue.pop_front();
          m.known.push_back(a);
          auto const fa = static_cast<element>(m.image[a]);
          for (std::size_t i = 0; i < m.known.size(); ++i) {
            element const c  = m.known[i];
            auto const    fc = static_cast<element>(m.image[c]);
            if (!assign(_r.add(a, c), _s.add(fa, fc)) || !assign(_r.mul(a, c), _s.mul(fa, fc))) {
              return false;
            }
          }
        }
        return true;
      }

      PartialMap start() {
        PartialMap m;
        m.image.assign(_r.order(), unset);
        m.preimage.assign(_s.order(), unset);
        if (!extend(m, _r.zero(), _s.zero()) || !extend(m, _r.one(), _s.one())) {
          m.image.clear();
        }
        return m;
      }

     private:
      FiniteCommRing const& _r;
      FiniteCommRing const& _s;
      bool                  _injective;
      std::uint64_t         _budget;
      std::uint64_t         _nodes = 0;
    };

    // Invariants preserved by isomorphisms: additive order, unit, the shape of
    // the power sequence, and the additive order of the square.
    struct ElementSignature {
      std::uint64_t add_order;
      bool          unit;
      std::uint64_t preperiod;
      std::uint64_t period;
      std::uint64_t square_order;
      bool operator==(ElementSignature const&) const = default;
    };

    ElementSignature signature(FiniteCommRing const& r, element x) {
      ElementSignature      s{};
      s.add_order    = r.additive().element_order(x);
      s.unit         = r.is_unit(x);
      s.square_order = r.additive().element_order(r.mul(x, x));
      std::vector<std::int64_t> seen(r.order(), -1);
      element                   y = x;
      for (std::uint64_t k = 1;; ++k) {
        if (seen[y] >= 0) {
          s.preperiod = static_cast<std::uint64_t>(seen[y]);
          s.period    = k - static_cast<std::uint64_t>(seen[y]);
          break;
        }
        seen[y] = static_cast<std::int64_t>(k);
        y       = r.mul(y, x);
      }
      return s;
    }

    template <class Visit>
    void backtrack(MapSearch&                   search,
                   PartialMap const&            m,
                   std::vector<element> const&  gens,
                   std::size_t                  i,
                   std::vector<std::vector<element>> const& candidates,
                   Visit&&                      visit) {
      if (i == gens.size()) {
        visit(m);
        return;
      }
      if (m.image[gens[i]] != unset) {
        backtrack(search, m, gens, i + 1, candidates, visit);
        return;
      }
      for (auto y : candidates[i]) {
        PartialMap next = m;
        if (search.extend(next, gens[i], y)) {
          backtrack(search, next, gens, i + 1, candidates, visit);
        }
      }
    }

    std::string factor_name(FiniteCommRing const& r, std::string const& fallback) {
      if (r.characteristic() == static_cast<std::int64_t>(r.order())) {
        return "Z/" + std::to_string(r.order());
      }
      if (r.is_field()) {
        return "GF(" + std::to_string(r.order()) + ")";
      }
      return fallback;
    }

  }  // namespace

  void RingMap::validate() const {
    if (!source || !target || image.size() != source->order()) {
      throw ValidationError("ring map has the wrong domain size");
    }
    auto const& r = *source;
    auto const& s = *target;
    for (auto y : image) {
      if (y >= s.order()) {
        throw ValidationError("ring map image out of range");
      }
    }
    if (image[r.zero()] != s.zero() || image[r.one()] != s.one()) {
      throw ValidationError("ring map does not preserve 0 and 1");
    }
    for (element a = 0; a < r.order(); ++a) {
      for (element b = 0; b < r.order(); ++b) {
        if (image[r.add(a, b)] != s.add(image[a], image[b])) {
          throw ValidationError("ring map does not preserve addition");
        }
        if (image[r.mul(a, b)] != s.mul(image[a], image[b])) {
          throw ValidationError("ring map does not preserve multiplication");
        }
      }
    }
  }

  RingMap identity_map(RingPtr const& ring) {
    RingMap m{ring, ring, {}};
    for (element a = 0; a < ring->order(); ++a) {
      m.image.push_back(a);
    }
    return m;
  }

  RingMap compose(RingMap const& g, RingMap const& f) {
    if (f.target.get() != g.source.get()) {
      throw ValidationError("ring maps are not composable");
    }
    RingMap m{f.source, g.target, {}};
    for (auto y : f.image) {
      m.image.push_back(g.image[y]);
    }
    return m;
  }

  UnitGroup units(FiniteCommRing const& ring) {
    std::vector<element>      elems;
    std::vector<std::int64_t> pos(ring.order(), -1);
    for (element a = 0; a < ring.order(); ++a) {
      if (ring.is_unit(a)) {
        pos[a] = static_cast<std::int64_t>(elems.size());
        elems.push_back(a);
      }
    }
    std::size_t const n = elems.size();
    std::vector<std::vector<FiniteAbelianGroup::element>> table(n, std::vector<FiniteAbelianGroup::element>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(ring.label(elems[i]));
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = static_cast<FiniteAbelianGroup::element>(pos[ring.mul(elems[i], elems[j])]);
      }
    }
    auto one = static_cast<FiniteAbelianGroup::element>(pos[ring.one()]);
    return UnitGroup{std::move(elems), FiniteAbelianGroup(std::move(table), one, std::move(labels))};
  }

  LocalDecomposition local_decomposition(RingPtr const& ring) {
    auto const&          r = *ring;
    std::vector<element> idempotents;
    for (element a = 0; a < r.order(); ++a) {
      if (a != r.zero() && r.mul(a, a) == a) {
        idempotents.push_back(a);
      }
    }
    LocalDecomposition d;
    d.ring = ring;
    for (auto e : idempotents) {
      bool primitive = true;
      for (auto f : idempotents) {
        if (f != e && r.mul(e, f) == f) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        d.primitive_idempotents.push_back(e);
      }
    }
    element sum = r.zero();
    for (std::size_t i = 0; i < d.primitive_idempotents.size(); ++i) {
      auto e = d.primitive_idempotents[i];
      sum    = r.add(sum, e);
      for (std::size_t j = i + 1; j < d.primitive_idempotents.size(); ++j) {
        if (r.mul(e, d.primitive_idempotents[j]) != r.zero()) {
          throw Error("primitive idempotents are not orthogonal");
        }
      }
    }
    if (sum != r.one()) {
      throw Error("primitive idempotents do not sum to 1");
    }

    for (std::size_t i = 0; i < d.primitive_idempotents.size(); ++i) {
      auto                 e = d.primitive_idempotents[i];
      std::vector<element> elems;
      std::vector<bool>    seen(r.order(), false);
      for (element x = 0; x < r.order(); ++x) {
        auto ex = r.mul(e, x);
        if (!seen[ex]) {
          seen[ex] = true;
          elems.push_back(ex);
        }
      }
      std::sort(elems.begin(), elems.end());
      std::string fallback = "e" + std::to_string(i) + "R";
      auto        tmp      = FiniteCommRing::from_subset(r, elems, e, fallback);
      auto        local    = FiniteCommRing::from_subset(r, elems, e, factor_name(*tmp, fallback));
      if (!local->is_local()) {
        throw Error("factor at a primitive idempotent is not local");
      }
      RingMap proj{ring, local, {}};
      for (element x = 0; x < r.order(); ++x) {
        auto ex = r.mul(e, x);
        proj.image.push_back(static_cast<element>(std::lower_bound(elems.begin(), elems.end(), ex) - elems.begin()));
      }

      std::vector<element> m_local;
      for (element y = 0; y < local->order(); ++y) {
        if (!local->is_unit(y)) {
          m_local.push_back(y);
        }
      }
      auto field = FiniteCommRing::quotient(
          *local, m_local, "GF(" + std::to_string(local->order() / m_local.size()) + ")");
      if (!field->is_field()) {
        throw Error("residue ring is not a field");
      }
      std::vector<element> m_global;
      for (element x = 0; x < r.order(); ++x) {
        if (!local->is_unit(proj.image[x])) {
          m_global.push_back(x);
        }
      }
      d.local_factors.push_back(local);
      d.residue_fields.push_back(field);
      d.projections.push_back(std::move(proj));
      d.maximal_ideals.push_back(std::move(m_global));
    }
    return d;
  }

  std::vector<RingMap> ring_maps(RingPtr const& source, RingPtr const& target, std::uint64_t node_budget) {
    MapSearch  search(*source, *target, false, node_budget);
    PartialMap m0 = search.start();
    std::vector<RingMap> result;
    if (m0.image.empty()) {
      return result;
    }
    auto const&                       gens = source->ring_generators();
    std::vector<std::vector<element>> candidates;
    for (auto g : gens) {
      auto                 o = source->additive().element_order(g);
      std::vector<element> c;
      for (element y = 0; y < target->order(); ++y) {
        if (o % target->additive().element_order(y) == 0) {
          c.push_back(y);
        }
      }
      candidates.push_back(std::move(c));
    }
    backtrack(search, m0, gens, 0, candidates, [&](PartialMap const& m) {
      RingMap f{source, target, {}};
      for (auto v : m.image) {
        f.image.push_back(static_cast<element>(v));
      }
      result.push_back(std::move(f));
    });
    return result;
  }

  std::optional<RingMap> ring_isomorphism(RingPtr const& source, RingPtr const& target, std::uint64_t node_budget) {
    if (source->order() != target->order()
        || source->additive().invariant_factors() != target->additive().invariant_factors()
        || units(*source).elements.size() != units(*target).elements.size()) {
      return std::nullopt;
    }
    MapSearch  search(*source, *target, true, node_budget);
    PartialMap m0 = search.start();
    if (m0.image.empty()) {
      return std::nullopt;
    }
    auto const&                   gens = source->ring_generators();
    std::vector<ElementSignature> target_sig;
    for (element y = 0; y < target->order(); ++y) {
      target_sig.push_back(signature(*target, y));
    }
    std::vector<std::vector<element>> candidates;
    for (auto g : gens) {
      auto                 sg = signature(*source, g);
      std::vector<element> c;
      for (element y = 0; y < target->order(); ++y) {
        if (target_sig[y] == sg) {
          c.push_back(y);
        }
      }
      candidates.push_back(std::move(c));
    }
    std::optional<RingMap> found;
    struct Done {};
    try {
      backtrack(search, m0, gens, 0, candidates, [&](PartialMap const& m) {
        RingMap f{source, target, {}};
        for (auto v : m.image) {
          if (v == unset) {
            return;
          }
          f.image.push_back(static_cast<element>(v));
        }
        found = std::move(f);
        throw Done{};
      });
    } catch (Done const&) {
    }
    if (found) {
      found->validate();
    }
    return found;
  }

}  // namespace brauerk
