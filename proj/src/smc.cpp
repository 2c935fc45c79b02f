#include "brauerk/smc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "brauerk/error.hpp"

namespace brauerk {

  namespace {

    std::vector<std::size_t> const empty_hom;

    std::string tuple(std::initializer_list<std::size_t> xs) {
      std::ostringstream out;
      out << '(';
      bool first = true;
      for (auto x : xs) {
        out << (first ? "" : ",") << x;
        first = false;
      }
      out << ')';
      return out.str();
    }

    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    };

    // Labels 0.. in order of first appearance.
    std::vector<std::size_t> relabel(UnionFind& uf) {
      std::vector<std::size_t> out(uf.parent.size()), seen(uf.parent.size(), npos);
      std::size_t              next = 0;
      for (std::size_t x = 0; x < out.size(); ++x) {
        auto r = uf.find(x);
        if (seen[r] == npos) {
          seen[r] = next++;
        }
        out[x] = seen[r];
      }
      return out;
    }

  }  // namespace

  // ---- FiniteGroupoid ----

  std::size_t FiniteGroupoid::KeyHash::operator()(Key const& k) const noexcept {
    std::size_t h = k.size();
    for (auto x : k) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::size_t FiniteGroupoid::add_object(std::string label) {
    _labels.push_back(std::move(label));
    _identity.push_back(npos);
    return _labels.size() - 1;
  }

  std::size_t FiniteGroupoid::add_morphism(std::size_t source, std::size_t target, Key key) {
    if (source >= object_count() || target >= object_count()) {
      throw ValidationError("groupoid: morphism endpoint out of range");
    }
    auto id = _source.size();
    if (!_index.emplace(key, id).second) {
      throw ValidationError("groupoid: duplicate morphism key");
    }
    _source.push_back(source);
    _target.push_back(target);
    _keys.push_back(std::move(key));
    _hom[{source, target}].push_back(id);
    return id;
  }

  void FiniteGroupoid::set_identity(std::size_t object, std::size_t morphism) {
    if (_source.at(morphism) != object || _target.at(morphism) != object) {
      throw ValidationError("groupoid: identity is not an endomorphism");
    }
    _identity.at(object) = morphism;
  }

  std::vector<std::size_t> const& FiniteGroupoid::hom(std::size_t a, std::size_t b) const {
    auto it = _hom.find({a, b});
    return it == _hom.end() ? empty_hom : it->second;
  }

  std::optional<std::size_t> FiniteGroupoid::find(Key const& key) const {
    auto it = _index.find(key);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t FiniteGroupoid::compose(std::size_t g, std::size_t f) const {
    if (_target[f] != _source[g] || !_compose) {
      return npos;
    }
    auto id = find(_compose(_keys[g], _keys[f]));
    return id ? *id : npos;
  }

  std::vector<std::size_t> FiniteGroupoid::components() const {
    UnionFind uf(object_count());
    for (std::size_t m = 0; m < morphism_count(); ++m) {
      uf.unite(_source[m], _target[m]);
    }
    return relabel(uf);
  }

  EquivalenceReport groupoid_equivalence(GroupoidFunctor const& f) {
    EquivalenceReport rep;
    auto const&       s = *f.source;
    auto const&       t = *f.target;
    if (f.objects.size() != s.object_count() || f.morphisms.size() != s.morphism_count()) {
      rep.detail = "functor tables have the wrong size";
      return rep;
    }
    for (std::size_t x = 0; x < s.object_count(); ++x) {
      if (f.objects[x] >= t.object_count()) {
        rep.detail = "object " + std::to_string(x) + " maps out of range";
        return rep;
      }
    }
    for (std::size_t m = 0; m < s.morphism_count(); ++m) {
      auto fm = f.morphisms[m];
      if (fm >= t.morphism_count() || t.source(fm) != f.objects[s.source(m)]
          || t.target(fm) != f.objects[s.target(m)]) {
        rep.detail = "morphism " + std::to_string(m) + " does not map to a morphism between the images";
        return rep;
      }
    }
    for (std::size_t x = 0; x < s.object_count(); ++x) {
      if (f.morphisms[s.identity(x)] != t.identity(f.objects[x])) {
        rep.detail = "identity of object " + std::to_string(x) + " is not preserved";
        return rep;
      }
    }
    // composable pairs, grouped by middle object
    for (std::size_t a = 0; a < s.object_count(); ++a) {
      for (std::size_t b = 0; b < s.object_count(); ++b) {
        for (auto fm : s.hom(a, b)) {
          for (std::size_t c = 0; c < s.object_count(); ++c) {
            for (auto gm : s.hom(b, c)) {
              auto gf = s.compose(gm, fm);
              if (gf == npos || f.morphisms[gf] != t.compose(f.morphisms[gm], f.morphisms[fm])) {
                rep.detail = "composition not preserved at " + tuple({gm, fm});
                return rep;
              }
            }
          }
        }
      }
    }
    rep.functor_valid = true;

    rep.fully_faithful = true;
    for (std::size_t a = 0; a < s.object_count() && rep.fully_faithful; ++a) {
      for (std::size_t b = 0; b < s.object_count(); ++b) {
        auto const& src = s.hom(a, b);
        auto const& tgt = t.hom(f.objects[a], f.objects[b]);
        std::vector<std::size_t> img;
        for (auto m : src) {
          img.push_back(f.morphisms[m]);
        }
        std::sort(img.begin(), img.end());
        bool inj = std::adjacent_find(img.begin(), img.end()) == img.end();
        if (!inj || img.size() != tgt.size()) {
          rep.fully_faithful = false;
          rep.detail = "hom" + tuple({a, b}) + " has " + std::to_string(src.size()) + " morphisms, target hom has "
                     + std::to_string(tgt.size()) + (inj ? "" : " (not injective)");
          break;
        }
      }
    }

    auto comp = t.components();
    std::vector<bool> hit(t.object_count() == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1, false);
    for (auto y : f.objects) {
      hit[comp[y]] = true;
    }
    rep.essentially_surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    if (!rep.essentially_surjective && rep.detail.empty()) {
      auto it    = std::find(hit.begin(), hit.end(), false);
      rep.detail = "target component " + std::to_string(it - hit.begin()) + " is not hit";
    }
    return rep;
  }

  // ---- FiniteSymMonGroupoid ----

  std::size_t FiniteSymMonGroupoid::inverse(std::size_t f) const {
    for (auto g : hom(target[f], source[f])) {
      if (compose(g, f) == identity[source[f]] && compose(f, g) == identity[target[f]]) {
        return g;
      }
    }
    return npos;
  }

  std::vector<std::size_t> FiniteSymMonGroupoid::hom(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < morphism_count(); ++m) {
      if (source[m] == a && target[m] == b) {
        out.push_back(m);
      }
    }
    return out;
  }

  FiniteGroupoid FiniteSymMonGroupoid::groupoid() const {
    FiniteGroupoid g;
    for (auto const& o : objects) {
      g.add_object(o);
    }
    for (std::size_t m = 0; m < morphism_count(); ++m) {
      g.add_morphism(source[m], target[m], {static_cast<std::uint32_t>(m)});
    }
    for (std::size_t x = 0; x < object_count(); ++x) {
      g.set_identity(x, identity[x]);
    }
    g.set_compose([table = composition, n = morphism_count()](auto const& a, auto const& b) -> FiniteGroupoid::Key {
      auto c = table[a[0] * n + b[0]];
      if (c == npos) {
        return {};
      }
      return {static_cast<std::uint32_t>(c)};
    });
    return g;
  }

  namespace {

    class Checker {
     public:
      Checker(FiniteSymMonGroupoid const& v, std::size_t cap) : v(v), cap(cap) {}

      void fail(std::string msg) {
        ++total;
        if (report.violations.size() < cap) {
          report.violations.push_back(std::move(msg));
        }
      }

      // npos-safe helpers; an undefined operand poisons the result
      std::size_t c(std::size_t g, std::size_t f) const {
        return g == npos || f == npos ? npos : v.compose(g, f);
      }
      std::size_t t(std::size_t f, std::size_t g) const {
        return f == npos || g == npos ? npos : v.tensor_morphisms(f, g);
      }
      std::size_t to(std::size_t x, std::size_t y) const {
        return x == npos || y == npos ? npos : v.tensor(x, y);
      }
      std::size_t id(std::size_t x) const {
        return x == npos ? npos : v.identity[x];
      }
      std::size_t a(std::size_t x, std::size_t y, std::size_t z) const {
        return x == npos || y == npos || z == npos ? npos : v.assoc(x, y, z);
      }
      bool endpoints(std::size_t m, std::size_t s, std::size_t tg) const {
        return m != npos && m < v.morphism_count() && v.source[m] == s && v.target[m] == tg;
      }

      bool shapes() {
        auto const o = v.object_count(), m = v.morphism_count();
        bool ok = v.target.size() == m && v.identity.size() == o && v.composition.size() == m * m
               && v.tensor_obj.size() == o * o && v.tensor_mor.size() == m * m && v.associator.size() == o * o * o
               && v.left_unitor.size() == o && v.right_unitor.size() == o && v.symmetry.size() == o * o
               && v.unit < o;
        if (!ok) {
          fail("tables have inconsistent sizes");
        }
        return ok;
      }

      void groupoid() {
        auto const o = v.object_count(), m = v.morphism_count();
        for (std::size_t x = 0; x < o; ++x) {
          if (!endpoints(v.identity[x], x, x)) {
            fail("identity of object " + std::to_string(x) + " is not an endomorphism");
          }
        }
        for (std::size_t g = 0; g < m; ++g) {
          for (std::size_t f = 0; f < m; ++f) {
            auto gf = v.compose(g, f);
            if (v.target[f] != v.source[g]) {
              if (gf != npos) {
                fail("composite defined for non-composable pair " + tuple({g, f}));
              }
              continue;
            }
            if (!endpoints(gf, v.source[f], v.target[g])) {
              fail("composite " + tuple({g, f}) + " has wrong endpoints");
            }
          }
          if (c(g, id(v.source[g])) != g || c(id(v.target[g]), g) != g) {
            fail("identity law fails for morphism " + std::to_string(g));
          }
          if (v.inverse(g) == npos) {
            fail("morphism " + std::to_string(g) + " is not invertible");
          }
        }
        for (std::size_t f = 0; f < m; ++f) {
          for (std::size_t g = 0; g < m; ++g) {
            if (v.source[g] != v.target[f]) {
              continue;
            }
            for (std::size_t h = 0; h < m; ++h) {
              if (v.source[h] == v.target[g] && c(h, c(g, f)) != c(c(h, g), f)) {
                fail("composition not associative at " + tuple({h, g, f}));
              }
            }
          }
        }
      }

      void tensor() {
        auto const o = v.object_count(), m = v.morphism_count();
        for (std::size_t x = 0; x < o; ++x) {
          for (std::size_t y = 0; y < o; ++y) {
            if (v.tensor(x, y) >= o) {
              fail("tensor of objects " + tuple({x, y}) + " is undefined");
            } else if (t(id(x), id(y)) != id(v.tensor(x, y))) {
              fail("tensor of identities " + tuple({x, y}) + " is not an identity");
            }
          }
        }
        for (std::size_t f = 0; f < m; ++f) {
          for (std::size_t g = 0; g < m; ++g) {
            auto fg = v.tensor_morphisms(f, g);
            if (!endpoints(fg, to(v.source[f], v.source[g]), to(v.target[f], v.target[g]))) {
              fail("tensor of morphisms " + tuple({f, g}) + " has wrong endpoints");
            }
          }
        }
        // interchange law over pairs of composable pairs
        for (std::size_t f = 0; f < m; ++f) {
          for (std::size_t g = 0; g < m; ++g) {
            if (v.source[g] != v.target[f]) {
              continue;
            }
            for (std::size_t f2 = 0; f2 < m; ++f2) {
              for (std::size_t g2 = 0; g2 < m; ++g2) {
                if (v.source[g2] == v.target[f2] && t(c(g, f), c(g2, f2)) != c(t(g, g2), t(f, f2))) {
                  fail("interchange law fails at " + tuple({g, f, g2, f2}));
                }
              }
            }
          }
        }
      }

      void cells() {
        auto const o = v.object_count(), m = v.morphism_count();
        auto const e = v.unit;
        for (std::size_t x = 0; x < o; ++x) {
          if (!endpoints(v.left_unitor[x], to(e, x), x)) {
            fail("left unitor at " + std::to_string(x) + " has wrong endpoints");
          }
          if (!endpoints(v.right_unitor[x], to(x, e), x)) {
            fail("right unitor at " + std::to_string(x) + " has wrong endpoints");
          }
          for (std::size_t y = 0; y < o; ++y) {
            if (!endpoints(v.sym(x, y), to(x, y), to(y, x))) {
              fail("symmetry at " + tuple({x, y}) + " has wrong endpoints");
            }
            for (std::size_t z = 0; z < o; ++z) {
              if (!endpoints(v.assoc(x, y, z), to(to(x, y), z), to(x, to(y, z)))) {
                fail("associator " + tuple({x, y, z}) + " has wrong endpoints");
              }
            }
          }
        }
        // naturality
        for (std::size_t f = 0; f < m; ++f) {
          auto sf = v.source[f], tf = v.target[f];
          if (c(v.left_unitor[tf], t(id(e), f)) != c(f, v.left_unitor[sf])) {
            fail("left unitor not natural at morphism " + std::to_string(f));
          }
          if (c(v.right_unitor[tf], t(f, id(e))) != c(f, v.right_unitor[sf])) {
            fail("right unitor not natural at morphism " + std::to_string(f));
          }
          for (std::size_t g = 0; g < m; ++g) {
            auto sg = v.source[g], tg = v.target[g];
            if (c(v.sym(tf, tg), t(f, g)) != c(t(g, f), v.sym(sf, sg))) {
              fail("symmetry not natural at " + tuple({f, g}));
            }
            for (std::size_t h = 0; h < m; ++h) {
              auto sh = v.source[h], th = v.target[h];
              if (c(a(tf, tg, th), t(t(f, g), h)) != c(t(f, t(g, h)), a(sf, sg, sh))) {
                fail("associator not natural at " + tuple({f, g, h}));
              }
            }
          }
        }
      }

      void axioms() {
        auto const o = v.object_count();
        auto const e = v.unit;
        std::vector<std::size_t> blame(o * o * o, 0);
        std::size_t              pentagons = 0;
        for (std::size_t w = 0; w < o; ++w) {
          for (std::size_t x = 0; x < o; ++x) {
            for (std::size_t y = 0; y < o; ++y) {
              for (std::size_t z = 0; z < o; ++z) {
                auto lhs = c(a(w, x, to(y, z)), a(to(w, x), y, z));
                auto rhs = c(t(id(w), a(x, y, z)), c(a(w, to(x, y), z), t(a(w, x, y), id(z))));
                if (lhs == npos || lhs != rhs) {
                  ++pentagons;
                  std::size_t cells[5][3] = {{w, x, to(y, z)}, {to(w, x), y, z}, {x, y, z}, {w, to(x, y), z}, {w, x, y}};
                  std::ostringstream msg;
                  msg << "pentagon fails at " << tuple({w, x, y, z}) << "; associator cells";
                  for (auto const& cell : cells) {
                    msg << ' ' << tuple({cell[0], cell[1], cell[2]});
                    if (cell[1] != npos && cell[0] != npos && cell[2] != npos) {
                      ++blame[(cell[0] * o + cell[1]) * o + cell[2]];
                    }
                  }
                  fail(msg.str());
                }
              }
            }
          }
        }
        if (pentagons > 0) {
          for (std::size_t i = 0; i < blame.size(); ++i) {
            if (blame[i] == pentagons) {
              fail("associator cell " + tuple({i / (o * o), i / o % o, i % o}) + " occurs in every failing pentagon");
            }
          }
        }
        for (std::size_t x = 0; x < o; ++x) {
          for (std::size_t y = 0; y < o; ++y) {
            if (c(t(id(x), v.left_unitor[y]), a(x, e, y)) != t(v.right_unitor[x], id(y))) {
              fail("triangle fails at " + tuple({x, y}));
            }
            if (c(v.sym(y, x), v.sym(x, y)) != id(to(x, y))) {
              fail("symmetry is not involutive at " + tuple({x, y}));
            }
            for (std::size_t z = 0; z < o; ++z) {
              auto lhs = c(a(y, z, x), c(v.sym(x, to(y, z)), a(x, y, z)));
              auto rhs = c(t(id(y), v.sym(x, z)), c(a(y, x, z), t(v.sym(x, y), id(z))));
              if (lhs == npos || lhs != rhs) {
                fail("hexagon fails at " + tuple({x, y, z}));
              }
            }
          }
        }
        if (v.left_unitor[e] != v.right_unitor[e]) {
          fail("left and right unitors differ at the unit");
        }
      }

      FiniteSymMonGroupoid const& v;
      std::size_t                 cap;
      std::size_t                 total = 0;
      CoherenceReport             report;
    };

  }  // namespace

  CoherenceReport check_coherence(FiniteSymMonGroupoid const& v, std::size_t max_violations) {
    Checker ch(v, max_violations);
    if (!ch.shapes()) {
      return ch.report;
    }
    ch.groupoid();
    ch.tensor();
    ch.cells();
    ch.axioms();
    if (ch.total > ch.report.violations.size()) {
      ch.report.violations.push_back(std::to_string(ch.total - ch.report.violations.size()) + " further violations");
    }
    return ch.report;
  }

  // ---- pi0 ----

  Pi0Monoid pi0_monoid(FiniteSymMonGroupoid const& v) {
    UnionFind uf(v.object_count());
    for (std::size_t m = 0; m < v.morphism_count(); ++m) {
      uf.unite(v.source[m], v.target[m]);
    }
    Pi0Monoid p;
    p.class_of = relabel(uf);
    for (std::size_t x = 0; x < v.object_count(); ++x) {
      if (p.class_of[x] == p.representatives.size()) {
        p.representatives.push_back(x);
      }
    }
    auto const n = p.size();
    p.table.assign(n * n, npos);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto xy = v.tensor(p.representatives[i], p.representatives[j]);
        if (xy != npos) {
          p.table[i * n + j] = p.class_of[xy];
        }
      }
    }
    p.unit = p.class_of[v.unit];
    return p;
  }

  bool is_group_like(FiniteSymMonGroupoid const& v) {
    auto p = pi0_monoid(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
      bool inv = false;
      for (std::size_t j = 0; j < p.size() && !inv; ++j) {
        inv = p.table[i * p.size() + j] == p.unit;
      }
      if (!inv) {
        return false;
      }
    }
    return true;
  }

  FiniteAbelianGroup pi0_group(FiniteSymMonGroupoid const& v) {
    if (!is_group_like(v)) {
      throw ValidationError("pi0 is not a group");
    }
    auto p = pi0_monoid(v);
    std::vector<std::vector<FiniteAbelianGroup::element>> table(p.size(), std::vector<FiniteAbelianGroup::element>(p.size()));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < p.size(); ++i) {
      labels.push_back(v.objects[p.representatives[i]]);
      for (std::size_t j = 0; j < p.size(); ++j) {
        table[i][j] = static_cast<FiniteAbelianGroup::element>(p.table[i * p.size() + j]);
      }
    }
    return FiniteAbelianGroup(std::move(table), static_cast<FiniteAbelianGroup::element>(p.unit), std::move(labels));
  }

  FiniteAbelianGroup unit_automorphisms(FiniteSymMonGroupoid const& v) {
    auto aut = v.hom(v.unit, v.unit);
    std::vector<std::size_t> pos(v.morphism_count(), npos);
    for (std::size_t i = 0; i < aut.size(); ++i) {
      pos[aut[i]] = i;
    }
    std::vector<std::vector<FiniteAbelianGroup::element>> table(aut.size(), std::vector<FiniteAbelianGroup::element>(aut.size()));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < aut.size(); ++i) {
      labels.push_back(v.morphism_labels.empty() ? std::to_string(aut[i]) : v.morphism_labels[aut[i]]);
      for (std::size_t j = 0; j < aut.size(); ++j) {
        table[i][j] = static_cast<FiniteAbelianGroup::element>(pos[v.compose(aut[i], aut[j])]);
      }
    }
    return FiniteAbelianGroup(std::move(table), static_cast<FiniteAbelianGroup::element>(pos[v.identity[v.unit]]),
                              std::move(labels));
  }

  // ---- constructions ----

  FiniteSymMonGroupoid synthetic_picard(FiniteAbelianGroup const& pi0, FiniteAbelianGroup const& pi1) {
    // morphism (x, u) : x -> x has id x * |pi1| + u
    FiniteSymMonGroupoid v;
    auto const o = pi0.order(), u = pi1.order(), m = o * u;
    auto mor = [u](std::size_t x, std::size_t a) { return x * u + a; };
    for (std::size_t x = 0; x < o; ++x) {
      v.objects.push_back(pi0.label(static_cast<FiniteAbelianGroup::element>(x)));
      v.identity.push_back(mor(x, pi1.identity()));
      for (std::size_t a = 0; a < u; ++a) {
        v.morphism_labels.push_back("(" + v.objects.back() + "," + pi1.label(static_cast<FiniteAbelianGroup::element>(a)) + ")");
        v.source.push_back(x);
        v.target.push_back(x);
      }
    }
    v.composition.assign(m * m, npos);
    v.tensor_mor.assign(m * m, npos);
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t g = 0; g < m; ++g) {
        auto x = f / u, y = g / u;
        auto a = static_cast<FiniteAbelianGroup::element>(f % u), b = static_cast<FiniteAbelianGroup::element>(g % u);
        if (x == y) {
          v.composition[f * m + g] = mor(x, pi1.op(a, b));
        }
        v.tensor_mor[f * m + g] = mor(pi0.op(static_cast<FiniteAbelianGroup::element>(x), static_cast<FiniteAbelianGroup::element>(y)),
                                      pi1.op(a, b));
      }
    }
    v.tensor_obj.resize(o * o);
    for (std::size_t x = 0; x < o; ++x) {
      for (std::size_t y = 0; y < o; ++y) {
        v.tensor_obj[x * o + y] = pi0.op(static_cast<FiniteAbelianGroup::element>(x), static_cast<FiniteAbelianGroup::element>(y));
      }
    }
    v.unit = pi0.identity();
    v.associator.resize(o * o * o);
    for (std::size_t i = 0; i < v.associator.size(); ++i) {
      auto x = i / (o * o), y = i / o % o, z = i % o;
      v.associator[i] = v.identity[v.tensor(v.tensor(x, y), z)];
    }
    v.left_unitor  = v.identity;
    v.right_unitor = v.identity;
    v.symmetry.resize(o * o);
    for (std::size_t i = 0; i < o * o; ++i) {
      v.symmetry[i] = v.identity[v.tensor_obj[i]];
    }
    return v;
  }

  FiniteSymMonGroupoid from_abelian_group(FiniteAbelianGroup const& a) {
    auto v = synthetic_picard(a, FiniteAbelianGroup::trivial());
    for (std::size_t x = 0; x < v.object_count(); ++x) {
      v.morphism_labels[x] = "id_" + v.objects[x];
    }
    return v;
  }

  FiniteSymMonGroupoid truncated_free_monoid(std::size_t n) {
    FiniteSymMonGroupoid v;
    auto const o = n + 1;
    for (std::size_t x = 0; x < o; ++x) {
      v.objects.push_back(std::to_string(x));
      v.morphism_labels.push_back("id_" + std::to_string(x));
      v.source.push_back(x);
      v.target.push_back(x);
      v.identity.push_back(x);
    }
    v.composition.assign(o * o, npos);
    v.tensor_mor.assign(o * o, npos);
    v.tensor_obj.assign(o * o, npos);
    v.symmetry.assign(o * o, npos);
    for (std::size_t x = 0; x < o; ++x) {
      v.composition[x * o + x] = x;
      for (std::size_t y = 0; x + y < o; ++y) {
        v.tensor_obj[x * o + y] = x + y;
        v.tensor_mor[x * o + y] = x + y;
        v.symmetry[x * o + y]   = x + y;
      }
    }
    v.associator.assign(o * o * o, npos);
    for (std::size_t x = 0; x < o; ++x) {
      for (std::size_t y = 0; x + y < o; ++y) {
        for (std::size_t z = 0; x + y + z < o; ++z) {
          v.associator[(x * o + y) * o + z] = x + y + z;
        }
      }
    }
    v.left_unitor  = v.identity;
    v.right_unitor = v.identity;
    return v;
  }

  // ---- monoidal functors ----

  CoherenceReport check_monoidal_functor(MonoidalFunctorData const& f) {
    CoherenceReport rep;
    auto const&     s = *f.source;
    auto const&     t = *f.target;
    auto const      o = s.object_count(), m = s.morphism_count();
    auto fail = [&](std::string msg) {
      if (rep.violations.size() < 64) {
        rep.violations.push_back(std::move(msg));
      }
    };
    if (f.objects.size() != o || f.morphisms.size() != m || f.phi.size() != o * o) {
      fail("functor tables have inconsistent sizes");
      return rep;
    }
    auto F  = [&](std::size_t x) { return f.objects[x]; };
    auto Fm = [&](std::size_t g) { return f.morphisms[g]; };
    auto c  = [&](std::size_t g, std::size_t h) { return g == npos || h == npos ? npos : t.compose(g, h); };
    auto tm = [&](std::size_t g, std::size_t h) { return g == npos || h == npos ? npos : t.tensor_morphisms(g, h); };
    auto ok_mor = [&](std::size_t g, std::size_t a, std::size_t b) {
      return g < t.morphism_count() && t.source[g] == a && t.target[g] == b;
    };

    if (F(s.unit) != t.unit) {
      fail("F(e) is not the unit");
    }
    for (std::size_t g = 0; g < m; ++g) {
      if (!ok_mor(Fm(g), F(s.source[g]), F(s.target[g]))) {
        fail("F(" + std::to_string(g) + ") has wrong endpoints");
      }
    }
    for (std::size_t x = 0; x < o; ++x) {
      if (Fm(s.identity[x]) != t.identity[F(x)]) {
        fail("F does not preserve the identity of " + std::to_string(x));
      }
    }
    if (!rep.ok()) {
      return rep;
    }
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = 0; h < m; ++h) {
        if (s.target[h] == s.source[g] && Fm(s.compose(g, h)) != c(Fm(g), Fm(h))) {
          fail("F does not preserve composition at " + tuple({g, h}));
        }
      }
    }
    auto phi = [&](std::size_t x, std::size_t y) { return f.phi[x * o + y]; };
    for (std::size_t x = 0; x < o; ++x) {
      for (std::size_t y = 0; y < o; ++y) {
        if (!ok_mor(phi(x, y), F(s.tensor(x, y)), t.tensor(F(x), F(y)))) {
          fail("phi" + tuple({x, y}) + " has wrong endpoints");
        }
      }
    }
    if (!rep.ok()) {
      return rep;
    }
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = 0; h < m; ++h) {
        auto lhs = c(phi(s.target[g], s.target[h]), Fm(s.tensor_morphisms(g, h)));
        auto rhs = c(tm(Fm(g), Fm(h)), phi(s.source[g], s.source[h]));
        if (lhs != rhs) {
          fail("phi is not natural at " + tuple({g, h}));
        }
      }
    }
    for (std::size_t x = 0; x < o; ++x) {
      if (c(t.left_unitor[F(x)], phi(s.unit, x)) != Fm(s.left_unitor[x])) {
        fail("left unit compatibility fails at " + std::to_string(x));
      }
      if (c(t.right_unitor[F(x)], phi(x, s.unit)) != Fm(s.right_unitor[x])) {
        fail("right unit compatibility fails at " + std::to_string(x));
      }
      for (std::size_t y = 0; y < o; ++y) {
        if (c(t.sym(F(x), F(y)), phi(x, y)) != c(phi(y, x), Fm(s.sym(x, y)))) {
          fail("symmetry compatibility fails at " + tuple({x, y}));
        }
        for (std::size_t z = 0; z < o; ++z) {
          auto lhs = c(tm(t.identity[F(x)], phi(y, z)), c(phi(x, s.tensor(y, z)), Fm(s.assoc(x, y, z))));
          auto rhs = c(t.assoc(F(x), F(y), F(z)), c(tm(phi(x, y), t.identity[F(z)]), phi(s.tensor(x, y), z)));
          if (lhs == npos || lhs != rhs) {
            fail("associativity compatibility fails at " + tuple({x, y, z}));
          }
        }
      }
    }
    return rep;
  }

  MonoidalFunctorData functor_from_homomorphism(FiniteSymMonGroupoid const& source,
                                                FiniteSymMonGroupoid const& target,
                                                std::vector<std::size_t> const& element_map) {
    MonoidalFunctorData f{&source, &target, element_map, {}, {}};
    if (element_map.size() != source.object_count()) {
      throw ValidationError("functor_from_homomorphism: map has the wrong size");
    }
    for (std::size_t g = 0; g < source.morphism_count(); ++g) {
      if (source.identity[source.source[g]] != g) {
        throw ValidationError("functor_from_homomorphism: source is not discrete");
      }
      f.morphisms.push_back(target.identity.at(element_map[source.source[g]]));
    }
    auto const o = source.object_count();
    for (std::size_t x = 0; x < o; ++x) {
      for (std::size_t y = 0; y < o; ++y) {
        f.phi.push_back(target.identity.at(element_map[source.tensor(x, y)]));
      }
    }
    return f;
  }

  MonoidalFunctorData identity_functor(FiniteSymMonGroupoid const& v) {
    MonoidalFunctorData f{&v, &v, {}, {}, {}};
    for (std::size_t x = 0; x < v.object_count(); ++x) {
      f.objects.push_back(x);
    }
    for (std::size_t g = 0; g < v.morphism_count(); ++g) {
      f.morphisms.push_back(g);
    }
    for (auto xy : v.tensor_obj) {
      f.phi.push_back(v.identity.at(xy));
    }
    return f;
  }

}  // namespace brauerk
