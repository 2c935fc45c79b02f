#include "brauerk/brauer.hpp"

#include <algorithm>

#include "brauerk/error.hpp"

namespace brauerk {

  std::uint64_t default_brauer_bound(FiniteCommRing const& r) {
    return std::max<std::uint64_t>(16, r.order());
  }

  namespace {

    std::optional<std::size_t> find_bimodule(std::vector<Bimodule> const& classes, Bimodule const& m,
                                             Limits const& limits) {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].module.order() == m.module.order()
            && bimodule_isomorphism(classes[c], m, limits.iso_node_budget)) {
          return c;
        }
      }
      return std::nullopt;
    }

    // Component of an Azumaya algebra among the objects of g: a Morita
    // witness puts it with R, otherwise an isomorphic object decides.
    std::size_t locate(BrauerGroupoid const& g, StructuredAlgebra const& a, Limits const& limits) {
      if (morita_trivialization(a, a.order(), limits)) {
        return g.component[g.unit];
      }
      for (std::size_t x = 0; x < g.objects.size(); ++x) {
        if (g.objects[x].order() == a.order() && algebra_isomorphism(a, g.objects[x], limits.iso_node_budget)) {
          return g.component[x];
        }
      }
      throw Inconclusive("brauer_group", "no Morita witness and no isomorphic object for " + a.descriptor());
    }

  }  // namespace

  std::size_t BrauerGroupoid::component_count() const {
    return component.empty() ? 0 : *std::max_element(component.begin(), component.end()) + 1;
  }

  FiniteGroupoid BrauerGroupoid::groupoid() const {
    FiniteGroupoid g;
    for (auto const& a : objects) {
      g.add_object(a.descriptor());
    }
    auto const c0 = component[unit];
    auto const l  = static_cast<std::uint32_t>(unit_automorphisms.order());
    for (std::size_t a = 0; a < objects.size(); ++a) {
      for (std::size_t b = 0; b < objects.size(); ++b) {
        bool const linked = component[a] == c0 && component[b] == c0;
        if (!linked && a != b) {
          continue;
        }
        for (std::uint32_t k = 0; k < (linked ? l : 1u); ++k) {
          auto m = g.add_morphism(a, b, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), k});
          if (a == b && k == unit_automorphisms.identity()) {
            g.set_identity(a, m);
          }
        }
      }
    }
    g.set_compose([aut = unit_automorphisms](FiniteGroupoid::Key const& h, FiniteGroupoid::Key const& f) {
      return FiniteGroupoid::Key{f[0], h[1], aut.op(f[2], h[2])};
    });
    return g;
  }

  BrauerGroupoid brauer_groupoid(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    if (bound < ring->order()) {
      throw ValidationError("brauer_groupoid: bound is below |R|");
    }
    BrauerGroupoid g;
    g.ring  = ring;
    g.bound = bound;
    auto en = enumerate_azumaya(ring, bound, limits);
    g.exhaustive = en.exhaustive;
    auto const r = unit_algebra(ring);
    std::optional<std::size_t> unit;
    for (auto& a : en.algebras) {
      auto cert = is_azumaya(a, limits);
      if (!cert.azumaya) {
        throw ValidationError("brauer_groupoid: enumerated algebra " + a.descriptor() + " is not Azumaya ("
                              + cert.failing_stage + ")");
      }
      std::optional<MoritaWitness> w;
      try {
        w = morita_trivialization(a, a.order(), limits);
      } catch (Inconclusive const&) {
        g.exhaustive = false;
      }
      if (!unit && a.order() == ring->order() && algebra_isomorphism(a, r, limits.iso_node_budget)) {
        unit = g.objects.size();
      }
      g.inverse_paths.push_back(inverse_path(a, limits));
      g.certificates.push_back(std::move(cert));
      g.witnesses.push_back(std::move(w));
      g.objects.push_back(std::move(a));
    }
    if (!unit) {
      throw ValidationError("brauer_groupoid: R is missing from the enumeration");
    }
    g.unit = *unit;

    // components: witnessed objects join R; the rest stay apart, which is
    // only a lower bound on the identifications, so exhaustiveness is lost
    std::size_t next = 1;
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      if (x == g.unit || g.witnesses[x]) {
        g.component.push_back(0);
      } else {
        g.component.push_back(next++);
        g.exhaustive = false;
      }
    }

    // Aut(R): invertible R-symmetric (R, R)-bimodules up to isomorphism
    auto mods = invertible_modules(ring, ring->order(), limits);
    for (auto const& c : mods.classes) {
      auto b   = symmetric_bimodule(c.module);
      auto rep = bimodule_invertible(b, limits);
      if (!rep.invertible) {
        throw ValidationError("brauer_groupoid: " + c.module.descriptor() + " is not an invertible bimodule");
      }
      if (!find_bimodule(g.unit_classes, b, limits)) {
        g.unit_classes.push_back(std::move(b));
      }
    }
    auto const n = g.unit_classes.size();
    std::vector<std::vector<FiniteAbelianGroup::element>> table(n, std::vector<FiniteAbelianGroup::element>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(g.unit_classes[i].module.descriptor());
      for (std::size_t j = 0; j < n; ++j) {
        auto t = bimodule_tensor(g.unit_classes[i], g.unit_classes[j], limits);
        auto c = find_bimodule(g.unit_classes, t, limits);
        if (!c) {
          throw ValidationError("brauer_groupoid: a composite of automorphisms of R fell outside the classes");
        }
        table[i][j] = static_cast<FiniteAbelianGroup::element>(*c);
      }
    }
    g.unit_automorphisms = FiniteAbelianGroup(std::move(table), 0, std::move(labels));
    return g;
  }

  BrauerGroup brauer_group(BrauerGroupoid const& g, Limits const& limits) {
    BrauerGroup out;
    auto const  n = g.component_count();
    out.representatives.assign(n, npos);
    out.representatives[g.component[g.unit]] = g.unit;
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      if (out.representatives[g.component[x]] == npos) {
        out.representatives[g.component[x]] = x;
      }
    }
    std::vector<std::vector<FiniteAbelianGroup::element>> table(n, std::vector<FiniteAbelianGroup::element>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("[" + g.objects[out.representatives[i]].descriptor() + "]");
      for (std::size_t j = 0; j < n; ++j) {
        if (n == 1) {
          continue;  // a single class multiplies to itself
        }
        auto t = algebra_tensor(g.objects[out.representatives[i]], g.objects[out.representatives[j]], limits);
        table[i][j] = static_cast<FiniteAbelianGroup::element>(locate(g, t, limits));
      }
    }
    out.group = FiniteAbelianGroup(std::move(table), static_cast<FiniteAbelianGroup::element>(g.component[g.unit]),
                                   std::move(labels));
    out.inverses_certified = std::all_of(g.inverse_paths.begin(), g.inverse_paths.end(),
                                         [](InversePath const& p) { return p.certified(); });
    out.all_witnessed = std::all_of(g.witnesses.begin(), g.witnesses.end(),
                                    [&](auto const& w) { return w.has_value() && verify_witness(*w, limits); });
    out.exhaustive = g.exhaustive;
    return out;
  }

  BrauerGroup brauer_group(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    return brauer_group(brauer_groupoid(ring, bound, limits), limits);
  }

  BrauerData brauer_data(RingPtr const& ring, Limits const& limits) {
    return brauer_data(ring, default_brauer_bound(*ring), limits);
  }

  BrauerData brauer_data(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    auto g   = brauer_groupoid(ring, bound, limits);
    auto br  = brauer_group(g, limits);
    auto pic = picard_data(ring, limits);
    BrauerData d;
    d.ring               = ring->descriptor();
    d.bound              = bound;
    d.br                 = br.group;
    d.pic                = pic.pic;
    d.gl1                = pic.gl1;
    d.unit_automorphisms = g.unit_automorphisms;
    d.pic_identified     = g.unit_automorphisms.invariant_factors() == pic.pic.invariant_factors();
    d.pic_automorphisms_match = pic.automorphisms_match;
    d.exhaustive         = br.exhaustive;
    d.inverses_certified = br.inverses_certified;
    d.all_witnessed      = br.all_witnessed;
    return d;
  }

  RelativeReport relative_report(RingMap const& f, Limits const& limits) {
    return relative_report(f, 0, limits);
  }

  RelativeReport relative_report(RingMap const& f, std::uint64_t bound, Limits const& limits) {
    f.validate();
    RelativeReport r;
    r.source = f.source->descriptor();
    r.target = f.target->descriptor();
    r.map    = f.image;

    // GL1
    auto su = units(*f.source), tu = units(*f.target);
    std::vector<FiniteAbelianGroup::element> gm;
    for (auto u : su.elements) {
      auto it = std::find(tu.elements.begin(), tu.elements.end(), f(u));
      gm.push_back(static_cast<FiniteAbelianGroup::element>(it - tu.elements.begin()));
    }
    r.gl1_source = su.group;
    r.gl1_target = tu.group;
    r.gl1_map    = analyze_homomorphism(su.group, tu.group, gm);

    // Pic, by base change of the invertible modules
    auto pf = picard_functor(f, limits);
    std::vector<FiniteAbelianGroup::element> pm(pf.pic_map.begin(), pf.pic_map.end());
    r.pic_source = pf.source_data.pic;
    r.pic_target = pf.target_data.pic;
    r.pic_map    = analyze_homomorphism(r.pic_source, r.pic_target, pm);

    // Br, by base change of class representatives
    auto sg = brauer_groupoid(f.source, std::max(bound, default_brauer_bound(*f.source)), limits);
    auto tg = brauer_groupoid(f.target, std::max(bound, default_brauer_bound(*f.target)), limits);
    auto sb = brauer_group(sg, limits);
    auto tb = brauer_group(tg, limits);
    std::vector<FiniteAbelianGroup::element> bm;
    for (auto x : sb.representatives) {
      auto a = base_change(f, sg.objects[x], limits);
      bm.push_back(static_cast<FiniteAbelianGroup::element>(locate(tg, a, limits)));
    }
    r.br_source = sb.group;
    r.br_target = tb.group;
    r.br_map    = analyze_homomorphism(sb.group, tb.group, bm);

    auto const& g = r.gl1_map;
    auto const& p = r.pic_map;
    auto const& b = r.br_map;
    r.fiber_orders[0] = g.kernel_order;
    r.fiber_orders[1] = g.cokernel_order * p.kernel_order;
    r.fiber_orders[2] = p.cokernel_order * b.kernel_order;
    r.fiber_orders[3] = b.cokernel_order;
    r.extension_ambiguous[1] = g.cokernel_order > 1 && p.kernel_order > 1;
    r.extension_ambiguous[2] = p.cokernel_order > 1 && b.kernel_order > 1;

    // terms t0..t9 of the display; even positions against odd ones
    std::uint64_t const terms[] = {r.fiber_orders[0], r.gl1_source.order(), r.gl1_target.order(), r.fiber_orders[1],
                                   r.pic_source.order(), r.pic_target.order(), r.fiber_orders[2], r.br_source.order(),
                                   r.br_target.order(), r.fiber_orders[3]};
    std::uint64_t even = 1, odd = 1;
    for (std::size_t i = 0; i < 10; ++i) {
      (i % 2 == 0 ? even : odd) *= terms[i];
    }
    r.alternating_identity = even == odd;

    // Pic S -> pi0 F has image Pic S / im(pic); its cokernel is what is left
    auto const image_in_fiber = r.pic_target.order() / p.image_order;
    r.boundary_relation = r.fiber_orders[2] % image_in_fiber == 0
                       && r.fiber_orders[2] / image_in_fiber == b.kernel_order;
    return r;
  }

}  // namespace brauerk
