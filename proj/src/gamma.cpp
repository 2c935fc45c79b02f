#include "brauerk/gamma.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <map>
#include <set>

#include "brauerk/error.hpp"

namespace brauerk {

  using Family = GammaLevel::Family;

  // ---- pointed maps and the simplicial circle ----

  PointedMap PointedMap::identity(std::size_t n) {
    PointedMap m{n, n, {}};
    for (std::size_t i = 0; i <= n; ++i) {
      m.image.push_back(i);
    }
    return m;
  }

  PointedMap PointedMap::constant(std::size_t m, std::size_t n) {
    return PointedMap{m, n, std::vector<std::size_t>(m + 1, 0)};
  }

  PointedMap PointedMap::singleton_support(std::size_t n, std::size_t i) {
    auto m     = constant(n, 1);
    m.image[i] = 1;
    return m;
  }

  PointedMap PointedMap::after(PointedMap const& g) const {
    if (g.target != source) {
      throw ValidationError("pointed maps are not composable");
    }
    PointedMap out{g.source, target, {}};
    for (auto x : g.image) {
      out.image.push_back(image[x]);
    }
    return out;
  }

  unsigned PointedMap::preimage(unsigned mask) const {
    unsigned out = 0;
    for (std::size_t s = 1; s <= source; ++s) {
      if (image[s] != 0 && (mask >> (image[s] - 1) & 1u)) {
        out |= 1u << (s - 1);
      }
    }
    return out;
  }

  void PointedMap::validate() const {
    if (image.size() != source + 1 || image[0] != 0) {
      throw ValidationError("pointed map must fix the basepoint");
    }
    for (auto x : image) {
      if (x > target) {
        throw ValidationError("pointed map value out of range");
      }
    }
  }

  std::vector<PointedMap> all_pointed_maps(std::size_t m, std::size_t n) {
    std::vector<PointedMap> out;
    auto                    cur = PointedMap::constant(m, n);
    for (;;) {
      out.push_back(cur);
      std::size_t i = 1;
      while (i <= m && cur.image[i] == n) {
        cur.image[i++] = 0;
      }
      if (i > m) {
        return out;
      }
      ++cur.image[i];
    }
  }

  // The k-simplices of Delta^1 / boundary other than the base point are the
  // sequences 0^j 1^(k+1-j), 1 <= j <= k; d_i deletes and s_i repeats entry i.
  PointedMap circle_face(std::size_t k, std::size_t i) {
    if (k == 0 || i > k) {
      throw ValidationError("circle face out of range");
    }
    PointedMap m{k, k - 1, {0}};
    for (std::size_t j = 1; j <= k; ++j) {
      std::size_t t = i < j ? j - 1 : j;
      m.image.push_back(t > k - 1 ? 0 : t);
    }
    return m;
  }

  PointedMap circle_degeneracy(std::size_t k, std::size_t i) {
    if (i > k) {
      throw ValidationError("circle degeneracy out of range");
    }
    PointedMap m{k, k + 1, {0}};
    for (std::size_t j = 1; j <= k; ++j) {
      m.image.push_back(i < j ? j + 1 : j);
    }
    return m;
  }

  // ---- objects ----

  namespace {

    std::size_t dense(std::size_t n, unsigned i, unsigned j) {
      return (std::size_t{i} << n) + j;
    }

    // Composition that propagates npos.
    std::size_t cmp(FiniteSymMonGroupoid const& v, std::size_t g, std::size_t f) {
      return g == npos || f == npos ? npos : v.compose(g, f);
    }
    std::size_t tns(FiniteSymMonGroupoid const& v, std::size_t f, std::size_t g) {
      return f == npos || g == npos ? npos : v.tensor_morphisms(f, g);
    }

    std::vector<std::size_t> inverses(FiniteSymMonGroupoid const& v) {
      std::vector<std::size_t> inv(v.morphism_count());
      for (std::size_t m = 0; m < inv.size(); ++m) {
        inv[m] = v.inverse(m);
      }
      return inv;
    }

    // Fills every derived entry of p from the free ones already present.
    void derive(FiniteSymMonGroupoid const& v, std::vector<std::size_t> const& inv, std::size_t n,
                GammaObject& x, std::optional<std::pair<unsigned, unsigned>> const& drop) {
      unsigned const s = 1u << n;
      for (unsigned i = 0; i < s; ++i) {
        auto rho_inv = inv[v.right_unitor[x.v[i]]];
        x.p[dense(n, i, 0)] = rho_inv;
        x.p[dense(n, 0, i)] = cmp(v, v.sym(x.v[i], v.unit), rho_inv);
        for (unsigned j = i + 1; j < s; ++j) {
          if (i == 0 || (i & j) != 0) {
            continue;
          }
          if (drop && drop->first == i && drop->second == j) {
            x.p[dense(n, i, j)] = npos;
            x.p[dense(n, j, i)] = npos;
            continue;
          }
          x.p[dense(n, j, i)] = cmp(v, v.sym(x.v[i], x.v[j]), x.p[dense(n, i, j)]);
        }
      }
    }

    bool has_endpoints(FiniteSymMonGroupoid const& v, std::size_t m, std::size_t s, std::size_t t) {
      return m < v.morphism_count() && v.source[m] == s && v.target[m] == t;
    }

    // a o (p(I,J) (x) 1) o p(IJ, K) == (1 (x) p(J,K)) o p(I, JK)
    bool associative_at(FiniteSymMonGroupoid const& v, std::size_t n, GammaObject const& x, unsigned i, unsigned j,
                        unsigned k) {
      auto const& p   = x.p;
      auto        lhs = cmp(v, v.assoc(x.v[i], x.v[j], x.v[k]),
                            cmp(v, tns(v, p[dense(n, i, j)], v.identity[x.v[k]]), p[dense(n, i | j, k)]));
      auto        rhs = cmp(v, tns(v, v.identity[x.v[i]], p[dense(n, j, k)]), p[dense(n, i, j | k)]);
      return lhs == rhs;
    }

  }  // namespace

  std::vector<std::string> check_gamma_object(FiniteSymMonGroupoid const& v, std::size_t n, GammaObject const& x) {
    std::vector<std::string> bad;
    unsigned const           s = 1u << n;
    if (x.v.size() != s || x.p.size() != std::size_t{s} * s) {
      bad.push_back("shape");
      return bad;
    }
    if (x.v[0] != v.unit) {
      bad.push_back("pointed: V(0) is not the unit");
    }
    auto inv = inverses(v);
    for (unsigned i = 0; i < s; ++i) {
      if (x.p[dense(n, i, 0)] != inv[v.right_unitor[x.v[i]]]) {
        bad.push_back("unital at " + std::to_string(i));
      }
      for (unsigned j = 0; j < s; ++j) {
        if ((i & j) != 0 || x.p[dense(n, i, j)] == npos) {
          continue;
        }
        if (!has_endpoints(v, x.p[dense(n, i, j)], x.v[i | j], v.tensor(x.v[i], x.v[j]))) {
          bad.push_back("p(" + std::to_string(i) + "," + std::to_string(j) + ") has wrong endpoints");
          continue;
        }
        if (x.p[dense(n, j, i)] != cmp(v, v.sym(x.v[i], x.v[j]), x.p[dense(n, i, j)])) {
          bad.push_back("symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
    for (unsigned i = 0; i < s; ++i) {
      for (unsigned j = 0; j < s; ++j) {
        for (unsigned k = 0; k < s; ++k) {
          if ((i & j) || (i & k) || (j & k)) {
            continue;
          }
          auto const& p = x.p;
          if (p[dense(n, i, j)] == npos || p[dense(n, i | j, k)] == npos || p[dense(n, j, k)] == npos
              || p[dense(n, i, j | k)] == npos) {
            continue;  // a deleted structure map
          }
          if (!associative_at(v, n, x, i, j, k)) {
            bad.push_back("associative at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
          }
        }
      }
    }
    return bad;
  }

  // ---- levels ----

  GammaLevel::GammaLevel(SmcPtr v, std::size_t n, std::vector<GammaObject> objects, GammaOptions options)
      : _v(std::move(v)), _n(n), _objects(std::move(objects)), _options(options) {
    if (n > 4) {
      throw ValidationError("gamma levels are limited to n <= 4");
    }
    _out.resize(_v->object_count());
    for (std::size_t m = 0; m < _v->morphism_count(); ++m) {
      _out[_v->source[m]].push_back(m);
    }
    auto const inv = inverses(*_v);
    for (std::size_t x = 0; x < _objects.size(); ++x) {
      if (_objects[x].v.size() != subsets() || _objects[x].p.size() != subsets() * subsets()) {
        throw ValidationError("gamma object has the wrong shape for this level");
      }
      derive(*_v, inv, _n, _objects[x], _options.drop_pair);
      if (!_index.emplace(key(_objects[x]), x).second) {
        throw ValidationError("gamma level: duplicate object");
      }
    }
  }

  bool GammaLevel::pair_free(unsigned i, unsigned j) const {
    return i != 0 && j != 0 && i < j && (i & j) == 0
        && !(_options.drop_pair && _options.drop_pair->first == i && _options.drop_pair->second == j);
  }

  std::string GammaLevel::key(GammaObject const& x) const {
    std::vector<std::uint32_t> k;
    unsigned const             s = static_cast<unsigned>(subsets());
    for (unsigned i = 1; i < s; ++i) {
      k.push_back(static_cast<std::uint32_t>(x.v[i]));
    }
    for (unsigned i = 1; i < s; ++i) {
      for (unsigned j = i + 1; j < s; ++j) {
        if (pair_free(i, j)) {
          k.push_back(static_cast<std::uint32_t>(x.p[dense(_n, i, j)]));
        }
      }
    }
    return std::string(reinterpret_cast<char const*>(k.data()), k.size() * sizeof(std::uint32_t));
  }

  std::optional<std::size_t> GammaLevel::find(GammaObject const& x) const {
    auto it = _index.find(key(x));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t GammaLevel::unit_object() const {
    GammaObject x{std::vector<std::size_t>(subsets(), _v->unit), std::vector<std::size_t>(subsets() * subsets(), npos)};
    auto const& v = *_v;
    // every free p is the inverse unitor e -> e (x) e
    auto inv = inverses(v);
    for (unsigned i = 1; i < subsets(); ++i) {
      for (unsigned j = i + 1; j < subsets(); ++j) {
        if (pair_free(i, j)) {
          x.p[dense(_n, i, j)] = inv[v.right_unitor[v.unit]];
        }
      }
    }
    derive(v, inv, _n, x, _options.drop_pair);
    auto f = find(x);
    if (!f) {
      throw ValidationError("gamma level has no unit object");
    }
    return *f;
  }

  std::size_t GammaLevel::apply(std::size_t x, Family const& f) const {
    auto const& v   = *_v;
    auto const& src = _objects[x];
    auto const  s   = static_cast<unsigned>(subsets());
    GammaObject y{std::vector<std::size_t>(s), std::vector<std::size_t>(std::size_t{s} * s, npos)};
    for (unsigned i = 0; i < s; ++i) {
      y.v[i] = v.target[f[i]];
    }
    for (unsigned i = 1; i < s; ++i) {
      for (unsigned j = i + 1; j < s; ++j) {
        if (pair_free(i, j)) {
          auto inv_fij = v.inverse(f[i | j]);
          y.p[dense(_n, i, j)] = cmp(v, tns(v, f[i], f[j]), cmp(v, src.p[dense(_n, i, j)], inv_fij));
        }
      }
    }
    auto it = _index.find(key(y));
    return it == _index.end() ? npos : it->second;
  }

  bool GammaLevel::is_morphism(std::size_t x, std::size_t y, Family const& f) const {
    auto const& v = *_v;
    if (f.size() != subsets() || f[0] != v.identity[v.unit]) {
      return false;
    }
    for (unsigned i = 0; i < subsets(); ++i) {
      if (f[i] >= v.morphism_count() || v.source[f[i]] != _objects[x].v[i] || v.target[f[i]] != _objects[y].v[i]) {
        return false;
      }
    }
    // (f(I) (x) f(J)) o p = p' o f(I u J) on every stored pair
    for (unsigned i = 1; i < subsets(); ++i) {
      for (unsigned j = i + 1; j < subsets(); ++j) {
        if (pair_free(i, j)
            && cmp(v, tns(v, f[i], f[j]), _objects[x].p[dense(_n, i, j)])
                   != cmp(v, _objects[y].p[dense(_n, i, j)], f[i | j])) {
          return false;
        }
      }
    }
    return true;
  }

  Family GammaLevel::identity(std::size_t x) const {
    Family f;
    for (auto o : _objects[x].v) {
      f.push_back(_v->identity[o]);
    }
    return f;
  }

  Family GammaLevel::compose(Family const& g, Family const& f) const {
    Family h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      h[i] = _v->compose(g[i], f[i]);
    }
    return h;
  }

  Family GammaLevel::inverse(Family const& f) const {
    Family h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      h[i] = _v->inverse(f[i]);
    }
    return h;
  }

  std::uint64_t GammaLevel::out_degree(std::size_t x) const {
    std::uint64_t d = 1;
    for (unsigned i = 1; i < subsets(); ++i) {
      d = zmod::saturating_mul(d, _out[_objects[x].v[i]].size());
    }
    return d;
  }

  void GammaLevel::for_each_out(std::size_t x, std::function<bool(Family const&)> const& fn) const {
    auto const&              obj = _objects[x];
    auto const               s   = subsets();
    Family                   f   = identity(x);
    std::vector<std::size_t> pos(s, 0);
    for (;;) {
      for (std::size_t i = 1; i < s; ++i) {
        f[i] = _out[obj.v[i]][pos[i]];
      }
      if (!fn(f)) {
        return;
      }
      std::size_t i = 1;
      while (i < s && ++pos[i] == _out[obj.v[i]].size()) {
        pos[i++] = 0;
      }
      if (i >= s) {
        return;
      }
    }
  }

  std::vector<Family> GammaLevel::hom(std::size_t x, std::size_t y) const {
    std::vector<Family> out;
    auto const&         v = *_v;
    auto const          s = subsets();
    std::vector<std::vector<std::size_t>> choices(s);
    for (std::size_t i = 1; i < s; ++i) {
      for (auto m : _out[_objects[x].v[i]]) {
        if (v.target[m] == _objects[y].v[i]) {
          choices[i].push_back(m);
        }
      }
      if (choices[i].empty()) {
        return out;
      }
    }
    Family                   f = identity(x);
    std::vector<std::size_t> pos(s, 0);
    for (;;) {
      for (std::size_t i = 1; i < s; ++i) {
        f[i] = choices[i][pos[i]];
      }
      if (is_morphism(x, y, f)) {
        out.push_back(f);
      }
      std::size_t i = 1;
      while (i < s && ++pos[i] == choices[i].size()) {
        pos[i++] = 0;
      }
      if (i >= s) {
        return out;
      }
    }
  }

  std::vector<Family> GammaLevel::automorphisms(std::size_t x) const {
    return hom(x, x);
  }

  std::vector<std::size_t> const& GammaLevel::components() const {
    if (!_components.empty() || _objects.empty()) {
      return _components;
    }
    std::vector<std::size_t> comp(_objects.size(), npos);
    std::size_t              next = 0;
    for (std::size_t start = 0; start < _objects.size(); ++start) {
      if (comp[start] != npos) {
        continue;
      }
      std::deque<std::size_t> queue{start};
      comp[start] = next;
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        auto f = identity(x);
        for (std::size_t i = 1; i < subsets(); ++i) {
          auto const keep = f[i];
          for (auto m : _out[_objects[x].v[i]]) {
            f[i]   = m;
            auto y = apply(x, f);
            if (y == npos) {
              throw ValidationError("gamma level is not closed under its morphisms");
            }
            if (comp[y] == npos) {
              comp[y] = next;
              queue.push_back(y);
            }
          }
          f[i] = keep;
        }
      }
      ++next;
    }
    _components = std::move(comp);
    return _components;
  }

  std::size_t GammaLevel::component_count() const {
    auto const& c = components();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  std::uint64_t GammaLevel::morphism_count() const {
    std::uint64_t total = 0;
    for (std::size_t x = 0; x < _objects.size(); ++x) {
      auto d = out_degree(x);
      total  = total + d < total ? UINT64_MAX : total + d;
    }
    return total;
  }

  FiniteGroupoid GammaLevel::groupoid(std::uint64_t max_morphisms) const {
    if (morphism_count() > max_morphisms) {
      throw BudgetExceeded("gamma_level", "level has too many morphisms to materialize");
    }
    FiniteGroupoid g;
    for (std::size_t x = 0; x < _objects.size(); ++x) {
      g.add_object(std::to_string(x));
    }
    for (std::size_t x = 0; x < _objects.size(); ++x) {
      for_each_out(x, [&](Family const& f) {
        FiniteGroupoid::Key k{static_cast<std::uint32_t>(x)};
        for (std::size_t i = 1; i < f.size(); ++i) {
          k.push_back(static_cast<std::uint32_t>(f[i]));
        }
        auto id = g.add_morphism(x, apply(x, f), std::move(k));
        if (f == identity(x)) {
          g.set_identity(x, id);
        }
        return true;
      });
    }
    g.set_compose([v = _v](FiniteGroupoid::Key const& a, FiniteGroupoid::Key const& b) {
      FiniteGroupoid::Key c{b[0]};
      for (std::size_t i = 1; i < a.size(); ++i) {
        c.push_back(static_cast<std::uint32_t>(v->compose(a[i], b[i])));
      }
      return c;
    });
    return g;
  }

  // ---- enumeration ----

  namespace {

    // Ordered triples of nonempty, pairwise disjoint masks with union k.
    template <class Fn>
    bool all_triples(unsigned k, Fn const& fn) {
      for (unsigned a = k; a != 0; a = (a - 1) & k) {
        unsigned const rest = k ^ a;
        for (unsigned b = rest; b != 0; b = (b - 1) & rest) {
          unsigned const c = rest ^ b;
          if (c != 0 && !fn(a, b, c)) {
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  GammaLevel gamma_level(SmcPtr vp, std::size_t n, Limits const& limits, GammaOptions options) {
    if (n > 4) {
      throw ValidationError("gamma levels are limited to n <= 4");
    }
    auto const&    v   = *vp;
    auto const     inv = inverses(v);
    auto const     o   = v.object_count();
    unsigned const s   = 1u << n;

    std::vector<std::vector<std::size_t>> homs(o * o);
    for (std::size_t m = 0; m < v.morphism_count(); ++m) {
      homs[v.source[m] * o + v.target[m]].push_back(m);
    }
    auto dropped = [&](unsigned i, unsigned j) {
      return options.drop_pair && options.drop_pair->first == i && options.drop_pair->second == j;
    };

    // vertex K, then the free pairs with union K, then the triples with union K
    struct Step {
      int      kind;
      unsigned k, i, j;
    };
    std::vector<Step> steps;
    for (unsigned k = 1; k < s; ++k) {
      steps.push_back({0, k, 0, 0});
      for (unsigned i = 1; i < k; ++i) {
        unsigned const j = k ^ i;
        if ((i & j) == 0 && (i | j) == k && i < j && !dropped(i, j)) {
          steps.push_back({1, k, i, j});
        }
      }
      steps.push_back({2, k, 0, 0});
    }

    GammaObject cur{std::vector<std::size_t>(s, v.unit), std::vector<std::size_t>(std::size_t{s} * s, npos)};
    cur.p[0] = inv[v.right_unitor[v.unit]];
    std::vector<GammaObject> objects;
    std::uint64_t            nodes      = 0;
    std::uint64_t const      node_limit = zmod::saturating_mul(200, limits.gamma_budget);

    std::function<void(std::size_t)> rec = [&](std::size_t at) {
      if (++nodes > node_limit) {
        throw BudgetExceeded("gamma_level", "object search exceeded the node budget");
      }
      if (at == steps.size()) {
        auto bad = check_gamma_object(v, n, cur);
        if (!bad.empty()) {
          throw ValidationError("gamma_level: enumerated object fails " + bad.front() + " (is V coherent?)");
        }
        if (objects.size() >= limits.gamma_budget) {
          throw BudgetExceeded("gamma_level", "level has more objects than the gamma budget");
        }
        objects.push_back(cur);
        return;
      }
      auto const& st = steps[at];
      if (st.kind == 0) {
        for (std::size_t x = 0; x < o; ++x) {
          cur.v[st.k]             = x;
          cur.p[dense(n, st.k, 0)] = inv[v.right_unitor[x]];
          cur.p[dense(n, 0, st.k)] = cmp(v, v.sym(x, v.unit), inv[v.right_unitor[x]]);
          rec(at + 1);
        }
      } else if (st.kind == 1) {
        auto const a = cur.v[st.i], b = cur.v[st.j];
        for (auto m : homs[cur.v[st.k] * o + v.tensor(a, b)]) {
          cur.p[dense(n, st.i, st.j)] = m;
          cur.p[dense(n, st.j, st.i)] = v.compose(v.sym(a, b), m);
          rec(at + 1);
        }
        cur.p[dense(n, st.i, st.j)] = npos;
        cur.p[dense(n, st.j, st.i)] = npos;
      } else {
        bool ok = all_triples(st.k, [&](unsigned a, unsigned b, unsigned c) {
          auto const& p = cur.p;
          if (p[dense(n, a, b)] == npos || p[dense(n, a | b, c)] == npos || p[dense(n, b, c)] == npos
              || p[dense(n, a, b | c)] == npos) {
            return true;
          }
          return associative_at(v, n, cur, a, b, c);
        });
        if (ok) {
          rec(at + 1);
        }
      }
    };
    rec(0);
    return GammaLevel(std::move(vp), n, std::move(objects), options);
  }

  GammaLevel gamma_level(FiniteSymMonGroupoid const& v, std::size_t n, Limits const& limits) {
    return gamma_level(std::make_shared<FiniteSymMonGroupoid const>(v), n, limits);
  }

  // ---- functors between levels ----

  namespace {

    // Full dense comparison; entries missing on either side are skipped.
    bool same_dense(GammaObject const& a, GammaObject const& b) {
      if (a.v != b.v) {
        return false;
      }
      for (std::size_t i = 0; i < a.p.size(); ++i) {
        if (a.p[i] != npos && b.p[i] != npos && a.p[i] != b.p[i]) {
          return false;
        }
      }
      return true;
    }

    std::size_t lookup(GammaLevel const& level, GammaObject const& y, char const* what) {
      auto f = level.find(y);
      if (!f || !same_dense(level.object(*f), y)) {
        throw ValidationError(std::string(what) + ": image object is not an object of the target level");
      }
      return *f;
    }

    std::vector<unsigned> preimages(PointedMap const& alpha) {
      std::vector<unsigned> pre(std::size_t{1} << alpha.target);
      for (unsigned i = 0; i < pre.size(); ++i) {
        pre[i] = alpha.preimage(i);
      }
      return pre;
    }

    GammaObject push_object(GammaObject const& x, std::vector<unsigned> const& pre, std::size_t source_n) {
      auto const  s = pre.size();
      GammaObject y{std::vector<std::size_t>(s), std::vector<std::size_t>(s * s, npos)};
      for (std::size_t i = 0; i < s; ++i) {
        y.v[i] = x.v[pre[i]];
        for (std::size_t j = 0; j < s; ++j) {
          if ((i & j) == 0) {
            y.p[(i * s) + j] = x.p[dense(source_n, pre[i], pre[j])];
          }
        }
      }
      return y;
    }

    Family push_family(Family const& f, std::vector<unsigned> const& pre) {
      Family g(pre.size());
      for (std::size_t i = 0; i < pre.size(); ++i) {
        g[i] = f[pre[i]];
      }
      return g;
    }

  }  // namespace

  LevelFunctor pushforward(PointedMap const& alpha, GammaLevel const& source, GammaLevel const& target) {
    alpha.validate();
    if (alpha.source != source.n() || alpha.target != target.n() || source.smc_ptr() != target.smc_ptr()) {
      throw ValidationError("pushforward: levels do not match the pointed map");
    }
    auto          pre = preimages(alpha);
    LevelFunctor  out{&source, &target, {}, {}};
    for (auto const& x : source.objects()) {
      out.objects.push_back(lookup(target, push_object(x, pre, source.n()), "pushforward"));
    }
    out.family = [pre](std::size_t, Family const& f) { return push_family(f, pre); };
    return out;
  }

  LevelFunctor compose_functors(LevelFunctor const& g, LevelFunctor const& f) {
    if (f.target != g.source) {
      throw ValidationError("level functors are not composable");
    }
    LevelFunctor out{f.source, g.target, {}, {}};
    for (auto y : f.objects) {
      out.objects.push_back(g.objects[y]);
    }
    out.family = [g, f](std::size_t x, Family const& h) { return g.family(f.objects[x], f.family(x, h)); };
    return out;
  }

  bool functors_equal(LevelFunctor const& a, LevelFunctor const& b, bool all_families) {
    if (a.source != b.source || a.target != b.target || a.objects != b.objects) {
      return false;
    }
    auto const& level = *a.source;
    bool        equal = true;
    for (std::size_t x = 0; x < level.object_count() && equal; ++x) {
      if (all_families) {
        level.for_each_out(x, [&](Family const& f) { return equal = a.family(x, f) == b.family(x, f); });
        continue;
      }
      auto f = level.identity(x);
      equal  = a.family(x, f) == b.family(x, f);
      // single-component families only
      auto const& v = level.smc();
      for (std::size_t i = 1; i < f.size() && equal; ++i) {
        for (std::size_t m = 0; m < v.morphism_count() && equal; ++m) {
          if (v.source[m] == level.object(x).v[i] && m != f[i]) {
            auto g = f;
            g[i]   = m;
            equal  = a.family(x, g) == b.family(x, g);
          }
        }
      }
    }
    return equal;
  }

  // ---- Segal condition ----

  SegalReport segal_check(GammaLevel const& level, Limits const&) {
    auto const& v = level.smc();
    auto const  n = level.n();
    SegalReport r;
    r.n = n;

    auto const vcomp = v.groupoid().components();
    std::size_t const nc = vcomp.empty() ? 0 : *std::max_element(vcomp.begin(), vcomp.end()) + 1;
    std::uint64_t     target = 1;
    for (std::size_t i = 0; i < n; ++i) {
      target = zmod::saturating_mul(target, nc);
    }
    r.target_components = static_cast<std::size_t>(target);

    // pi0: component of the level -> tuple of components of V
    auto const&                           comp = level.components();
    r.source_components                   = level.component_count();
    std::vector<std::size_t>              rep(r.source_components, npos);
    for (std::size_t x = 0; x < comp.size(); ++x) {
      if (rep[comp[x]] == npos) {
        rep[comp[x]] = x;
      }
    }
    std::set<std::vector<std::size_t>> tuples;
    for (auto x : rep) {
      std::vector<std::size_t> t;
      for (std::size_t i = 0; i < n; ++i) {
        t.push_back(vcomp[level.object(x).v[1u << i]]);
      }
      tuples.insert(std::move(t));
    }
    r.pi0_bijective = tuples.size() == r.source_components && r.source_components == target;
    if (!r.pi0_bijective) {
      r.detail = "pi0: " + std::to_string(r.source_components) + " components over " + std::to_string(target)
               + " in the product (" + std::to_string(tuples.size()) + " hit)";
    }

    // automorphism groups at representatives
    r.automorphisms_bijective = true;
    for (auto x : rep) {
      auto                               auts = level.automorphisms(x);
      std::set<std::vector<std::size_t>> images;
      std::uint64_t                      expected = 1;
      for (std::size_t i = 0; i < n; ++i) {
        auto o   = level.object(x).v[1u << i];
        expected = zmod::saturating_mul(expected, v.hom(o, o).size());
      }
      for (auto const& f : auts) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < n; ++i) {
          t.push_back(f[1u << i]);
        }
        images.insert(std::move(t));
      }
      if (images.size() != auts.size() || images.size() != expected) {
        r.automorphisms_bijective = false;
        if (r.detail.empty()) {
          r.detail = "Aut at object " + std::to_string(x) + ": " + std::to_string(auts.size()) + " automorphisms, "
                   + std::to_string(images.size()) + " distinct images, " + std::to_string(expected) + " in the product";
        }
        break;
      }
    }

    // exhaustive cross-check on explicit groupoids when both are small
    std::uint64_t product_morphisms = 1;
    for (std::size_t i = 0; i < n; ++i) {
      product_morphisms = zmod::saturating_mul(product_morphisms, v.morphism_count());
    }
    std::uint64_t const small = 20000;
    if (level.morphism_count() <= small && product_morphisms <= small) {
      auto           lg = level.groupoid(small);
      FiniteGroupoid pg;
      auto const     o  = v.object_count();
      std::uint64_t  po = 1;
      for (std::size_t i = 0; i < n; ++i) {
        po *= o;
      }
      for (std::uint64_t x = 0; x < po; ++x) {
        pg.add_object();
      }
      // tuples in base-o / base-M digits, coordinate 0 fastest
      for (std::uint64_t m = 0; m < product_morphisms; ++m) {
        FiniteGroupoid::Key k;
        std::uint64_t       rest = m, src = 0, tgt = 0, scale = 1;
        bool                id = true;
        for (std::size_t i = 0; i < n; ++i) {
          auto f = rest % v.morphism_count();
          rest /= v.morphism_count();
          k.push_back(static_cast<std::uint32_t>(f));
          src += scale * v.source[f];
          tgt += scale * v.target[f];
          id   = id && v.identity[v.source[f]] == f;
          scale *= o;
        }
        auto mid = pg.add_morphism(src, tgt, k);
        if (id) {
          pg.set_identity(src, mid);
        }
      }
      if (n == 0) {
        pg.set_identity(0, 0);
      }
      pg.set_compose([vp = level.smc_ptr()](FiniteGroupoid::Key const& a, FiniteGroupoid::Key const& b) {
        FiniteGroupoid::Key c;
        for (std::size_t i = 0; i < a.size(); ++i) {
          c.push_back(static_cast<std::uint32_t>(vp->compose(a[i], b[i])));
        }
        return c;
      });
      GroupoidFunctor f{&lg, &pg, {}, {}};
      for (std::size_t x = 0; x < level.object_count(); ++x) {
        std::uint64_t idx = 0, scale = 1;
        for (std::size_t i = 0; i < n; ++i) {
          idx += scale * level.object(x).v[1u << i];
          scale *= o;
        }
        f.objects.push_back(static_cast<std::size_t>(idx));
      }
      for (std::size_t m = 0; m < lg.morphism_count(); ++m) {
        auto const&         key = lg.key(m);  // {source, f[1], ..., f[2^n - 1]}
        FiniteGroupoid::Key k;
        for (std::size_t i = 0; i < n; ++i) {
          k.push_back(key[1u << i]);
        }
        f.morphisms.push_back(pg.find(k).value());
      }
      auto eq                = groupoid_equivalence(f);
      r.exhaustive_checked   = true;
      r.exhaustive_verdict   = eq.equivalence();
      if (!eq.equivalence() && r.detail.empty()) {
        r.detail = "exhaustive: " + eq.detail;
      }
    }
    return r;
  }

  SegalReport segal_check(SmcPtr v, std::size_t n, Limits const& limits) {
    return segal_check(gamma_level(std::move(v), n, limits), limits);
  }

  // ---- the circle ----

  namespace {

    // Simplicial identities for the circle maps up to degree k.
    bool circle_identities(std::size_t k) {
      auto d = [](std::size_t deg, std::size_t i) { return circle_face(deg, i); };
      auto s = [](std::size_t deg, std::size_t i) { return circle_degeneracy(deg, i); };
      // composites are written in simplicial-set order: (d_i d_j) = d_j, then d_i
      for (std::size_t deg = 2; deg <= k; ++deg) {
        for (std::size_t j = 1; j <= deg; ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            if (d(deg - 1, i).after(d(deg, j)) != d(deg - 1, j - 1).after(d(deg, i))) {
              return false;
            }
          }
        }
      }
      for (std::size_t deg = 0; deg + 1 <= k; ++deg) {
        for (std::size_t j = 0; j <= deg; ++j) {
          for (std::size_t i = 0; i <= j; ++i) {
            if (s(deg + 1, i).after(s(deg, j)) != s(deg + 1, j + 1).after(s(deg, i))) {
              return false;
            }
          }
          for (std::size_t i = 0; i <= deg + 1; ++i) {
            auto lhs = d(deg + 1, i).after(s(deg, j));
            if (i == j || i == j + 1) {
              if (lhs != PointedMap::identity(deg)) {
                return false;
              }
            } else if (i < j) {
              if (lhs != s(deg - 1, j - 1).after(d(deg, i))) {
                return false;
              }
            } else if (lhs != s(deg - 1, j).after(d(deg, i - 1))) {
              return false;
            }
          }
        }
      }
      return true;
    }

  }  // namespace

  CircleLevels circle_levels(SmcPtr v, std::size_t k, Limits const& limits) {
    CircleLevels out{v, {}, circle_identities(std::max<std::size_t>(k, 3))};
    for (std::size_t d = 0; d <= k; ++d) {
      out.levels.push_back(gamma_level(v, d, limits));
    }
    return out;
  }

  GammaLevel circle_level(SmcPtr v, std::size_t k, Limits const& limits) {
    return gamma_level(std::move(v), k, limits);
  }

  // ---- nerves ----

  namespace {

    struct Chain {
      std::size_t         x0 = 0;
      std::vector<Family> f;
    };

    std::string pack(Chain const& c) {
      std::vector<std::uint32_t> k{static_cast<std::uint32_t>(c.x0)};
      for (auto const& f : c.f) {
        for (std::size_t i = 1; i < f.size(); ++i) {
          k.push_back(static_cast<std::uint32_t>(f[i]));
        }
      }
      return std::string(reinterpret_cast<char const*>(k.data()), k.size() * sizeof(std::uint32_t));
    }

    // Per dimension: cells, their index, and the pushforward of objects along
    // each face and degeneracy of the circle.
    struct Dimension {
      std::vector<Chain>                           cells;
      std::unordered_map<std::string, std::size_t> index;
    };

    void chains(GammaLevel const& level, std::size_t d, std::function<void(Chain const&)> const& fn) {
      Chain c;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t x, std::size_t depth) {
        if (depth == d) {
          fn(c);
          return;
        }
        level.for_each_out(x, [&](Family const& f) {
          c.f.push_back(f);
          rec(level.apply(x, f), depth + 1);
          c.f.pop_back();
          return true;
        });
      };
      for (std::size_t x = 0; x < level.object_count(); ++x) {
        c.x0 = x;
        rec(x, 0);
      }
    }

    class Pusher {
     public:
      Pusher(PointedMap const& alpha, GammaLevel const& source, GammaLevel const& target)
          : _pre(preimages(alpha)) {
        for (auto const& x : source.objects()) {
          _objects.push_back(lookup(target, push_object(x, _pre, source.n()), "circle map"));
        }
      }
      Chain operator()(Chain const& c) const {
        Chain out{_objects[c.x0], {}};
        for (auto const& f : c.f) {
          out.f.push_back(push_family(f, _pre));
        }
        return out;
      }

     private:
      std::vector<unsigned>    _pre;
      std::vector<std::size_t> _objects;
    };

    Chain nerve_face(GammaLevel const& level, Chain const& c, std::size_t i) {
      auto const d = c.f.size();
      Chain      out{c.x0, {}};
      if (i == 0) {
        out.x0 = level.apply(c.x0, c.f[0]);
        out.f.assign(c.f.begin() + 1, c.f.end());
      } else if (i == d) {
        out.f.assign(c.f.begin(), c.f.end() - 1);
      } else {
        for (std::size_t t = 0; t < d; ++t) {
          if (t == i - 1) {
            out.f.push_back(level.compose(c.f[i], c.f[i - 1]));
            ++t;
          } else {
            out.f.push_back(c.f[t]);
          }
        }
      }
      return out;
    }

    Chain nerve_degeneracy(GammaLevel const& level, Chain const& c, std::size_t i) {
      Chain       out{c.x0, {}};
      std::size_t x = c.x0;
      for (std::size_t t = 0; t <= c.f.size(); ++t) {
        if (t == i) {
          out.f.push_back(level.identity(x));
        }
        if (t < c.f.size()) {
          out.f.push_back(c.f[t]);
          x = level.apply(x, c.f[t]);
        }
      }
      return out;
    }

    void check_identities(TruncatedSimplicialSet& x) {
      auto bad = [&](std::string s) {
        if (x.identity_violations.size() < 32) {
          x.identity_violations.push_back(std::move(s));
        }
      };
      auto const& F = x.faces;
      auto const& S = x.degeneracies;
      for (std::size_t d = 2; d <= x.materialized; ++d) {
        for (std::size_t c = 0; c < F[d].size(); ++c) {
          for (std::size_t j = 1; j <= d; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
              if (F[d - 1][F[d][c][j]][i] != F[d - 1][F[d][c][i]][j - 1]) {
                bad("d" + std::to_string(i) + " d" + std::to_string(j) + " in dimension " + std::to_string(d));
              }
            }
          }
        }
      }
      for (std::size_t d = 0; d < x.materialized; ++d) {
        for (std::size_t c = 0; c < S[d].size(); ++c) {
          for (std::size_t j = 0; j <= d; ++j) {
            auto const t = S[d][c][j];
            for (std::size_t i = 0; i <= d + 1; ++i) {
              auto const  face = F[d + 1][t][i];
              std::size_t want = c;
              if (i < j) {
                want = S[d - 1][F[d][c][i]][j - 1];
              } else if (i > j + 1) {
                want = S[d - 1][F[d][c][i - 1]][j];
              }
              if (face != want) {
                bad("d" + std::to_string(i) + " s" + std::to_string(j) + " in dimension " + std::to_string(d));
              }
            }
            if (d + 1 < x.materialized) {
              for (std::size_t i = 0; i <= j; ++i) {
                if (S[d + 1][t][i] != S[d + 1][S[d][c][i]][j + 1]) {
                  bad("s" + std::to_string(i) + " s" + std::to_string(j) + " in dimension " + std::to_string(d));
                }
              }
            }
          }
        }
      }
      x.identities_checked = true;
    }

  }  // namespace

  TruncatedSimplicialSet diagonal_nerve(CircleLevels const& levels, Limits const& limits) {
    auto const& L = levels.levels;
    if (L.size() < 3) {
      throw ValidationError("diagonal_nerve needs circle levels 0..2 at least");
    }
    TruncatedSimplicialSet out;
    auto const             top = std::min<std::size_t>(L.size() - 1, 3);
    for (std::size_t d = 0; d <= top; ++d) {
      std::uint64_t total = 0;
      for (std::size_t x = 0; x < L[d].object_count(); ++x) {
        std::uint64_t c = 1;
        for (std::size_t t = 0; t < d; ++t) {
          c = zmod::saturating_mul(c, L[d].out_degree(x));
        }
        total = total + c < total ? UINT64_MAX : total + c;
      }
      out.counts.push_back(total);
    }
    out.materialized = 2;
    if (top == 3 && out.counts[3] <= limits.nerve_cell_budget) {
      out.materialized = 3;
    }
    if (out.counts[2] > limits.nerve_cell_budget) {
      throw BudgetExceeded("diagonal_nerve", "2-cells exceed the nerve cell budget");
    }

    std::vector<Dimension> dims(out.materialized + 1);
    for (std::size_t d = 0; d <= out.materialized; ++d) {
      chains(L[d], d, [&](Chain const& c) {
        dims[d].index.emplace(pack(c), dims[d].cells.size());
        dims[d].cells.push_back(c);
      });
      if (dims[d].cells.size() != out.counts[d]) {
        throw ValidationError("diagonal_nerve: census disagrees with the enumeration");
      }
    }
    auto find = [&](std::size_t d, Chain const& c) {
      auto it = dims[d].index.find(pack(c));
      if (it == dims[d].index.end()) {
        throw ValidationError("diagonal_nerve: a face or degeneracy left the nerve");
      }
      return it->second;
    };

    out.faces.resize(out.materialized + 1);
    out.degeneracies.resize(out.materialized + 1);
    out.faces[0].assign(dims[0].cells.size(), {});
    for (std::size_t d = 1; d <= out.materialized; ++d) {
      std::vector<Pusher> push;
      for (std::size_t i = 0; i <= d; ++i) {
        push.emplace_back(circle_face(d, i), L[d], L[d - 1]);
      }
      for (auto const& c : dims[d].cells) {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i <= d; ++i) {
          f.push_back(find(d - 1, push[i](nerve_face(L[d], c, i))));
        }
        out.faces[d].push_back(std::move(f));
      }
    }
    for (std::size_t d = 0; d < out.materialized; ++d) {
      std::vector<Pusher> push;
      for (std::size_t i = 0; i <= d; ++i) {
        push.emplace_back(circle_degeneracy(d, i), L[d], L[d + 1]);
      }
      for (auto const& c : dims[d].cells) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i <= d; ++i) {
          s.push_back(find(d + 1, push[i](nerve_degeneracy(L[d], c, i))));
        }
        out.degeneracies[d].push_back(std::move(s));
      }
    }

    auto const& v = L[0].smc();
    out.labels.resize(2);
    for (auto const& c : dims[0].cells) {
      out.labels[0].push_back("x" + std::to_string(c.x0));
    }
    for (auto const& c : dims[1].cells) {
      out.edge_morphisms.push_back(c.f[0][1]);
      out.labels[1].push_back(v.morphism_labels[c.f[0][1]]);
    }
    check_identities(out);
    return out;
  }

  TruncatedSimplicialSet groupoid_nerve(FiniteGroupoid const& g, std::size_t dim) {
    if (dim < 1 || dim > 3) {
      throw ValidationError("groupoid_nerve: dimension must be 1, 2 or 3");
    }
    TruncatedSimplicialSet out;
    out.materialized = dim;
    // cells as chains of morphism ids; vertices are objects
    std::vector<std::vector<std::vector<std::size_t>>> cells(dim + 1);
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(dim + 1);
    for (std::size_t x = 0; x < g.object_count(); ++x) {
      cells[0].push_back({x});
    }
    for (std::size_t m = 0; m < g.morphism_count(); ++m) {
      cells[1].push_back({m});
    }
    for (std::size_t d = 2; d <= dim; ++d) {
      for (auto const& c : cells[d - 1]) {
        for (std::size_t m = 0; m < g.morphism_count(); ++m) {
          if (g.source(m) == g.target(c.back())) {
            auto e = c;
            e.push_back(m);
            cells[d].push_back(std::move(e));
          }
        }
      }
    }
    for (std::size_t d = 0; d <= dim; ++d) {
      for (std::size_t c = 0; c < cells[d].size(); ++c) {
        index[d].emplace(cells[d][c], c);
      }
      out.counts.push_back(cells[d].size());
    }
    auto at = [&](std::size_t d, std::vector<std::size_t> const& c) { return index[d].at(c); };
    out.faces.resize(dim + 1);
    out.degeneracies.resize(dim + 1);
    out.faces[0].assign(cells[0].size(), {});
    for (std::size_t d = 1; d <= dim; ++d) {
      for (auto const& c : cells[d]) {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i <= d; ++i) {
          if (d == 1) {
            f.push_back(i == 0 ? g.target(c[0]) : g.source(c[0]));
            continue;
          }
          std::vector<std::size_t> e;
          for (std::size_t t = 0; t < d; ++t) {
            if (i > 0 && i < d && t == i - 1) {
              e.push_back(g.compose(c[t + 1], c[t]));
              ++t;
            } else if (!(i == 0 && t == 0) && !(i == d && t == d - 1)) {
              e.push_back(c[t]);
            }
          }
          f.push_back(at(d - 1, e));
        }
        out.faces[d].push_back(std::move(f));
      }
    }
    for (std::size_t d = 0; d < dim; ++d) {
      for (auto const& c : cells[d]) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i <= d; ++i) {
          if (d == 0) {
            s.push_back(at(1, {g.identity(c[0])}));
            continue;
          }
          std::vector<std::size_t> e;
          for (std::size_t t = 0; t <= d; ++t) {
            if (t == i) {
              e.push_back(g.identity(t == 0 ? g.source(c[0]) : g.target(c[t - 1])));
            }
            if (t < d) {
              e.push_back(c[t]);
            }
          }
          s.push_back(at(d + 1, e));
        }
        out.degeneracies[d].push_back(std::move(s));
      }
    }
    out.labels.resize(2);
    for (std::size_t x = 0; x < g.object_count(); ++x) {
      out.labels[0].push_back(g.label(x));
    }
    for (std::size_t m = 0; m < g.morphism_count(); ++m) {
      out.labels[1].push_back(std::to_string(m));
    }
    check_identities(out);
    return out;
  }

  // ---- homotopy ----

  std::vector<std::size_t> pi0(TruncatedSimplicialSet const& x) {
    auto const               nv = x.vertices();
    std::vector<std::size_t> parent(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      parent[i] = i;
    }
    std::function<std::size_t(std::size_t)> root = [&](std::size_t a) {
      return parent[a] == a ? a : parent[a] = root(parent[a]);
    };
    if (x.faces.size() > 1) {
      for (auto const& e : x.faces[1]) {
        parent[root(e[0])] = root(e[1]);
      }
    }
    // relabel 0.. in order of first appearance
    std::vector<std::size_t> label(nv, npos), out(nv);
    std::size_t              next = 0;
    for (std::size_t i = 0; i < nv; ++i) {
      auto r = root(i);
      if (label[r] == npos) {
        label[r] = next++;
      }
      out[i] = label[r];
    }
    return out;
  }

  Pi1Result pi1_invariants(TruncatedSimplicialSet const& x, std::size_t base, std::uint64_t seed) {
    if (x.materialized < 2) {
      throw ValidationError("pi1_invariants needs the 2-skeleton");
    }
    auto const nv = x.vertices();
    auto const ne = x.faces[1].size();
    if (base >= nv) {
      throw ValidationError("pi1_invariants: base vertex out of range");
    }
    auto comp = pi0(x);
    if (std::any_of(comp.begin(), comp.end(), [](std::size_t c) { return c != 0; })) {
      throw ValidationError("pi1_invariants: the simplicial set is disconnected");
    }

    std::vector<std::size_t> order(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      order[e] = e;
    }
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    std::vector<std::vector<std::size_t>> adj(nv);
    for (auto e : order) {
      adj[x.faces[1][e][1]].push_back(e);
      adj[x.faces[1][e][0]].push_back(e);
    }
    Pi1Result         r;
    std::vector<bool> seen(nv, false), in_tree(ne, false);
    std::deque<std::size_t> queue{base};
    seen[base] = true;
    while (!queue.empty()) {
      auto a = queue.front();
      queue.pop_front();
      for (auto e : adj[a]) {
        auto b = x.faces[1][e][0] == a ? x.faces[1][e][1] : x.faces[1][e][0];
        if (!seen[b]) {
          seen[b]    = true;
          in_tree[e] = true;
          r.tree.push_back(e);
          queue.push_back(b);
        }
      }
    }

    r.edge_generator.assign(ne, npos);
    for (std::size_t e = 0; e < ne; ++e) {
      if (!in_tree[e]) {
        r.edge_generator[e] = r.generators++;
      }
    }
    zmod::IntegerLattice lattice(r.generators);
    std::set<zmod::Vec>  rows;
    auto add = [&](zmod::Vec row) {
      if (std::any_of(row.begin(), row.end(), [](zmod::Int c) { return c != 0; }) && rows.insert(row).second) {
        lattice.insert(std::move(row));
      }
    };
    for (std::size_t v = 0; v < nv && !x.degeneracies[0].empty(); ++v) {
      auto e = x.degeneracies[0][v][0];
      if (r.edge_generator[e] != npos) {
        zmod::Vec row(r.generators, 0);
        row[r.edge_generator[e]] = 1;
        add(std::move(row));
      }
    }
    for (auto const& f : x.faces[2]) {
      zmod::Vec row(r.generators, 0);
      // e(d2) + e(d0) - e(d1)
      std::pair<std::size_t, zmod::Int> const terms[] = {{f[2], 1}, {f[0], 1}, {f[1], -1}};
      for (auto [e, c] : terms) {
        if (r.edge_generator[e] != npos) {
          row[r.edge_generator[e]] += c;
        }
      }
      add(std::move(row));
    }
    r.relations      = rows.size();
    r.abelianization = zmod::integer_quotient(lattice);
    r.invariants     = zmod::invariant_factors(r.abelianization.orders);
    return r;
  }

  DeloopReport deloop_check(SmcPtr v, std::size_t max_level, Limits const& limits) {
    if (!is_group_like(*v)) {
      throw ValidationError("deloop_check: V is not group-like");
    }
    if (max_level < 2) {
      throw ValidationError("deloop_check needs circle levels up to at least 2");
    }
    DeloopReport r;
    r.pi0_invariants = pi0_group(*v).invariant_factors();
    auto levels      = circle_levels(v, max_level, limits);
    auto x           = diagonal_nerve(levels, limits);
    auto comp        = pi0(x);
    r.circle_pi0     = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    r.cell_counts    = x.counts;
    r.simplicial_identities = levels.simplicial_identities && x.identities_checked && x.identity_violations.empty();
    if (r.circle_pi0 == 1) {
      r.pi1_invariants = pi1_invariants(x).invariants;
    }
    return r;
  }

  // ---- induced functors ----

  LevelFunctor induced_gamma_functor(MonoidalFunctorData const& f, GammaLevel const& source, GammaLevel const& target) {
    auto const& sv = *f.source;
    auto const& tv = *f.target;
    if (&source.smc() != f.source && !(source.smc().objects == sv.objects && source.smc().composition == sv.composition)) {
      throw ValidationError("induced_gamma_functor: source level is not over F's source");
    }
    if (&target.smc() != f.target && !(target.smc().objects == tv.objects && target.smc().composition == tv.composition)) {
      throw ValidationError("induced_gamma_functor: target level is not over F's target");
    }
    if (source.n() != target.n()) {
      throw ValidationError("induced_gamma_functor: levels differ");
    }
    auto const   s = source.subsets();
    LevelFunctor out{&source, &target, {}, {}};
    for (auto const& x : source.objects()) {
      GammaObject y{std::vector<std::size_t>(s), std::vector<std::size_t>(s * s, npos)};
      for (std::size_t i = 0; i < s; ++i) {
        y.v[i] = f.objects[x.v[i]];
      }
      // every entry, derived ones included, so the dense check tests F too
      for (unsigned i = 0; i < s; ++i) {
        for (unsigned j = 0; j < s; ++j) {
          auto const m = x.p[dense(source.n(), i, j)];
          if ((i & j) == 0 && m != npos) {
            y.p[dense(target.n(), i, j)] = tv.compose(f.phi[x.v[i] * sv.object_count() + x.v[j]], f.morphisms[m]);
          }
        }
      }
      out.objects.push_back(lookup(target, y, "induced_gamma_functor"));
    }
    auto morphisms = f.morphisms;
    out.family     = [morphisms](std::size_t, Family const& g) {
      Family h;
      for (auto m : g) {
        h.push_back(morphisms[m]);
      }
      return h;
    };
    return out;
  }

  Pi1Map induced_pi1_map(MonoidalFunctorData const& f, TruncatedSimplicialSet const& source_nerve,
                         Pi1Result const& source_pi1, TruncatedSimplicialSet const& target_nerve,
                         Pi1Result const& target_pi1) {
    auto const& q = target_pi1.abelianization;
    if (std::any_of(q.orders.begin(), q.orders.end(), [](zmod::Int o) { return o == 0; })) {
      throw ValidationError("induced_pi1_map: target pi1 is infinite");
    }
    std::unordered_map<std::size_t, std::size_t> edge_of;  // V-morphism -> target edge
    for (std::size_t e = 0; e < target_nerve.edge_morphisms.size(); ++e) {
      edge_of.emplace(target_nerve.edge_morphisms[e], e);
    }
    auto const ne = source_nerve.edge_morphisms.size();
    auto const k  = q.orders.size();
    Pi1Map     out;
    out.matrix = zmod::Matrix(k, ne);
    for (std::size_t e = 0; e < ne; ++e) {
      auto it = edge_of.find(f.morphisms[source_nerve.edge_morphisms[e]]);
      if (it == edge_of.end()) {
        throw ValidationError("induced_pi1_map: F sends an edge outside the target nerve");
      }
      auto g = target_pi1.edge_generator[it->second];
      if (g != npos) {
        for (std::size_t i = 0; i < k; ++i) {
          out.matrix(i, e) = q.proj(g, i);
        }
      }
    }
    auto image = [&](std::size_t e) { return zmod::reduce(out.matrix.column(e), q.orders); };
    auto zero  = [&](zmod::Vec const& a) { return zmod::is_zero(a, q.orders); };

    out.well_defined = true;
    for (auto e : source_pi1.tree) {
      out.well_defined = out.well_defined && zero(image(e));
    }
    for (std::size_t c = 0; c < source_nerve.degeneracies[0].size(); ++c) {
      out.well_defined = out.well_defined && zero(image(source_nerve.degeneracies[0][c][0]));
    }
    for (auto const& fc : source_nerve.faces[2]) {
      if (!out.well_defined) {
        break;
      }
      auto sum = zmod::add(image(fc[2]), image(fc[0]), q.orders);
      out.well_defined = zero(zmod::add(sum, zmod::scale(-1, image(fc[1]), q.orders), q.orders));
    }

    std::vector<zmod::Vec> gens;
    for (std::size_t e = 0; e < ne; ++e) {
      if (source_pi1.edge_generator[e] != npos) {
        gens.push_back(image(e));
      }
    }
    out.target_order = zmod::group_order(q.orders);
    out.image_order  = gens.empty() ? 1 : zmod::subgroup(q.orders, gens).order();
    return out;
  }

}  // namespace brauerk
