#include "brauerk/picard.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "brauerk/error.hpp"

namespace brauerk {

  using zmod::Int;
  using zmod::Matrix;
  using zmod::Vec;
  using element = FiniteCommRing::element;

  namespace {

    Matrix reduced(Matrix m, Vec const& orders) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          m(i, j) = zmod::mod(m(i, j), orders[i]);
        }
      }
      return m;
    }

    Matrix plus(Matrix const& a, Matrix const& b, Vec const& orders) {
      Matrix c(a.rows(), a.cols());
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
          c(i, j) = zmod::mod(a(i, j) + b(i, j), orders[i]);
        }
      }
      return c;
    }

    // Invariant factor lists d_1 | d_2 | ... with d_i | n and product <= bound.
    void group_shapes(Int n, std::uint64_t bound, Vec& cur, std::uint64_t prod, std::vector<Vec>& out) {
      out.push_back(cur);
      Int const last = cur.empty() ? 1 : cur.back();
      for (Int d = last; d <= n; d += last) {
        if (d == 1 || n % d != 0 || prod * static_cast<std::uint64_t>(d) > bound) {
          continue;
        }
        cur.push_back(d);
        group_shapes(n, bound, cur, prod * static_cast<std::uint64_t>(d), out);
        cur.pop_back();
      }
    }

    // Extends 1 |-> id, g_t |-> X_t to all of R through + and right
    // multiplication by generators; nothing on a clash.
    std::optional<std::vector<Matrix>> derive_action(FiniteCommRing const& r, std::vector<Matrix> const& x,
                                                     Vec const& orders) {
      auto const&                        gens = r.ring_generators();
      std::vector<std::optional<Matrix>> phi(r.order());
      std::vector<element>               assigned;
      auto const                         k = orders.size();
      auto set = [&](element e, Matrix m) {
        if (phi[e]) {
          return *phi[e] == m;
        }
        phi[e] = std::move(m);
        assigned.push_back(e);
        return true;
      };
      set(r.zero(), Matrix(k, k));
      if (!set(r.one(), reduced(Matrix::identity(k), orders))) {
        return std::nullopt;  // zero ring acting on a nonzero group
      }
      for (std::size_t q = 1; q < assigned.size(); ++q) {
        auto const e = assigned[q];
        for (std::size_t t = 0; t < gens.size(); ++t) {
          if (!set(r.mul(e, gens[t]), zmod::multiply(*phi[e], x[t], orders))) {
            return std::nullopt;
          }
        }
        for (std::size_t p = 0; p <= q; ++p) {
          auto const s = assigned[p];
          if (!set(r.add(e, s), plus(*phi[e], *phi[s], orders))) {
            return std::nullopt;
          }
        }
      }
      if (assigned.size() != r.order()) {
        throw ValidationError("ring generators do not generate the ring");
      }
      std::vector<Matrix> basis;
      for (auto b : r.additive().basis()) {
        basis.push_back(*phi[b]);
      }
      return basis;
    }

    std::vector<Matrix> endomorphisms(Vec const& orders, Limits const& limits) {
      auto const          k   = orders.size();
      auto                sub = intertwiners(orders, orders, {});
      if (sub.order() > limits.iso_node_budget) {
        throw BudgetExceeded("invertible_modules", "End(G) is larger than the node budget");
      }
      std::vector<Matrix> out;
      for (std::uint64_t i = 0; i < sub.order(); ++i) {
        out.push_back(columns_to_matrix(sub.embed(zmod::decode(i, sub.orders)), k, k));
      }
      return out;
    }

    std::optional<std::size_t> find_class(std::vector<InvertibleModule> const& classes, FGModule const& m,
                                          Limits const& limits) {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].module.order() == m.order()
            && module_isomorphism(classes[c].module, m, limits.iso_node_budget, limits)) {
          return c;
        }
      }
      return std::nullopt;
    }

  }  // namespace

  InvertibleModules invertible_modules(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    auto const&       r = *ring;
    InvertibleModules out;
    out.bound = bound;

    auto rr = free_module(ring, 1, limits).with_descriptor(r.descriptor());
    auto w  = bimodule_invertible(symmetric_bimodule(rr), limits);
    if (!w.invertible) {
      throw ValidationError("R is not invertible over itself: " + w.failing_stage);
    }
    if (rr.order() <= bound) {
      out.classes.push_back({rr, std::move(w)});
    }

    std::vector<Vec> shapes;
    Vec              cur;
    group_shapes(r.characteristic(), bound, cur, 1, shapes);
    auto const&   gens  = r.ring_generators();
    std::uint64_t nodes = 0;
    for (auto const& orders : shapes) {
      if (orders.empty()) {
        continue;  // 0 (x) L = 0 is never R
      }
      ++out.groups_examined;
      // Z/n has no generators; its unique structure needs no End(G)
      auto const ends = gens.empty() ? std::vector<Matrix>{} : endomorphisms(orders, limits);
      std::vector<Matrix> x;
      std::function<void()> rec = [&]() {
        if (++nodes > limits.iso_node_budget) {
          throw BudgetExceeded("invertible_modules", "module structure search exceeded the node budget");
        }
        auto const t = x.size();
        if (t == gens.size()) {
          auto action = derive_action(r, x, orders);
          if (!action) {
            return;
          }
          std::optional<FGModule> m;
          try {
            m.emplace(ring, orders, std::move(*action), "L", limits);
          } catch (ValidationError const&) {
            return;
          }
          ++out.structures_examined;
          auto rep = bimodule_invertible(symmetric_bimodule(*m), limits);
          if (!rep.invertible || find_class(out.classes, *m, limits)) {
            return;
          }
          auto name = "L" + std::to_string(out.classes.size()) + "[" + format_invariants(orders) + "]";
          out.classes.push_back({m->with_descriptor(name), std::move(rep)});
          return;
        }
        for (auto const& cand : ends) {
          // the images of generators commute
          bool ok = true;
          for (std::size_t s = 0; s < t && ok; ++s) {
            ok = zmod::multiply(cand, x[s], orders) == zmod::multiply(x[s], cand, orders);
          }
          if (ok) {
            x.push_back(cand);
            rec();
            x.pop_back();
          }
        }
      };
      rec();
    }
    return out;
  }

  PicardData picard_data(RingPtr const& ring, Limits const& limits) {
    return picard_data(ring, ring->order(), limits);
  }

  PicardData picard_data(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    auto mods = invertible_modules(ring, bound, limits);
    auto const n = mods.classes.size();
    if (n == 0) {
      throw ValidationError("picard_data: bound is below |R|");
    }
    std::vector<std::vector<FiniteAbelianGroup::element>> table(n, std::vector<FiniteAbelianGroup::element>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(mods.classes[i].module.descriptor());
      for (std::size_t j = 0; j < n; ++j) {
        auto t = tensor_over_R(mods.classes[i].module, mods.classes[j].module, limits).module;
        auto c = find_class(mods.classes, t, limits);
        if (!c) {
          throw ValidationError("picard_data: tensor of invertible modules fell outside the enumerated classes");
        }
        table[i][j] = static_cast<FiniteAbelianGroup::element>(*c);
      }
    }
    auto u = units(*ring);
    bool aut_ok = true;
    for (auto const& c : mods.classes) {
      auto          h    = hom_module(c.module, c.module, limits);
      std::uint64_t auts = 0;
      for (std::uint64_t i = 0; i < h.module.order(); ++i) {
        auts += ModuleMap{c.module, c.module, h.matrix(h.module.element(i))}.is_bijective() ? 1 : 0;
      }
      aut_ok = aut_ok && auts == u.group.order();
    }
    return PicardData{ring,
                      std::move(mods),
                      FiniteAbelianGroup(std::move(table), 0, std::move(labels)),
                      u.group,
                      u.elements,
                      aut_ok};
  }

  FiniteSymMonGroupoid picard_smc(PicardData const& data) {
    // Aut(L) = R^x for invertible L, and every symmetry L (x) L' -> L' (x) L
    // is the identity after identifying both sides with one skeletal object
    auto v = synthetic_picard(data.pic, data.gl1);
    for (std::size_t c = 0; c < v.object_count(); ++c) {
      v.objects[c] = data.modules.classes[c].module.descriptor();
      for (std::size_t a = 0; a < data.gl1.order(); ++a) {
        v.morphism_labels[c * data.gl1.order() + a] =
            v.objects[c] + ":" + data.ring->label(data.unit_elements[a]);
      }
    }
    return v;
  }

  FiniteSymMonGroupoid picard_smc(RingPtr const& ring, Limits const& limits) {
    return picard_smc(picard_data(ring, limits));
  }

  PicardFunctor picard_functor(RingMap const& f, Limits const& limits) {
    PicardFunctor out{picard_data(f.source, limits), picard_data(f.target, limits), {}, {}, {}, {}};
    out.source = picard_smc(out.source_data);
    out.target = picard_smc(out.target_data);
    for (auto const& c : out.source_data.modules.classes) {
      auto bc = base_change(f, c.module, limits);
      auto t  = find_class(out.target_data.modules.classes, bc, limits);
      if (!t) {
        throw ValidationError("picard_functor: base change of an invertible module is not among the target classes");
      }
      out.pic_map.push_back(*t);
    }
    auto const& tu = out.target_data.unit_elements;
    for (auto u : out.source_data.unit_elements) {
      auto it = std::find(tu.begin(), tu.end(), f(u));
      out.unit_map.push_back(static_cast<std::size_t>(it - tu.begin()));
    }
    return out;
  }

  MonoidalFunctorData PicardFunctor::data() const {
    MonoidalFunctorData d{&source, &target, pic_map, {}, {}};
    auto const su = source_data.gl1.order(), tu = target_data.gl1.order();
    for (std::size_t m = 0; m < source.morphism_count(); ++m) {
      d.morphisms.push_back(pic_map[m / su] * tu + unit_map[m % su]);
    }
    for (auto xy : source.tensor_obj) {
      d.phi.push_back(target.identity[pic_map[xy]]);
    }
    return d;
  }

}  // namespace brauerk
