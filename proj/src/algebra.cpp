#include "brauerk/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "brauerk/error.hpp"

namespace brauerk {

  using zmod::Int;
  using zmod::Matrix;
  using zmod::Vec;

  namespace {

    Vec accumulate(Vec acc, Int c, Vec const& v, Vec const& orders) {
      if (c == 0) {
        return acc;
      }
      for (std::size_t r = 0; r < acc.size(); ++r) {
        acc[r] = zmod::mod(acc[r] + c * v[r], orders[r]);
      }
      return acc;
    }

    // Structure constants of the tensor of two algebras on a balanced tensor
    // of their modules: (a (x) b)(a' (x) b') = aa' (x) bb'.
    std::pair<std::vector<Vec>, Vec> tensor_structure(BalancedTensor const& t, std::vector<Vec> const& left,
                                                      Vec const& left_one, std::vector<Vec> const& right,
                                                      Vec const& right_one) {
      std::size_t const                   k = t.left_orders.size();
      std::size_t const                   l = t.right_orders.size();
      std::size_t const                   q = t.quotient.orders.size();
      std::map<std::size_t, Vec>          cache;
      auto                                gen_product = [&](std::size_t g, std::size_t h) -> Vec const& {
        // (e_i (x) f_j)(e_a (x) f_b) for ambient generators g = (i, j), h = (a, b)
        std::size_t key = g * k * l + h;
        auto        it  = cache.find(key);
        if (it == cache.end()) {
          std::size_t i = g / l, j = g % l, a = h / l, b = h % l;
          it = cache.emplace(key, t.pure(left[i * k + a], right[j * l + b])).first;
        }
        return it->second;
      };
      std::vector<Vec> products(q * q);
      for (std::size_t x = 0; x < q; ++x) {
        auto const& wx = t.quotient.lift[x];
        for (std::size_t y = 0; y < q; ++y) {
          auto const& wy = t.quotient.lift[y];
          Vec         p(q, 0);
          for (std::size_t g = 0; g < wx.size(); ++g) {
            if (wx[g] == 0) {
              continue;
            }
            for (std::size_t h = 0; h < wy.size(); ++h) {
              if (wy[h] != 0) {
                p = accumulate(std::move(p), wx[g] * wy[h], gen_product(g, h), t.quotient.orders);
              }
            }
          }
          products[x * q + y] = std::move(p);
        }
      }
      return {std::move(products), t.pure(left_one, right_one)};
    }

    std::string wrap(std::string const& s) {
      return s.find(' ') == std::string::npos ? s : "(" + s + ")";
    }

  }  // namespace

  // ---- StructuredAlgebra --------------------------------------------------------

  StructuredAlgebra::StructuredAlgebra(FGModule module, std::vector<Vec> products, Vec one, std::string descriptor)
      : _module(std::move(module)), _products(std::move(products)), _one(std::move(one)),
        _descriptor(std::move(descriptor)) {
    std::size_t const k = dim();
    auto const&       o = orders();
    if (_products.size() != k * k || _one.size() != k) {
      throw ValidationError("algebra structure constants have the wrong shape");
    }
    for (auto& p : _products) {
      if (p.size() != k) {
        throw ValidationError("algebra structure constants have the wrong shape");
      }
      p = zmod::reduce(std::move(p), o);
    }
    _one = zmod::reduce(std::move(_one), o);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        auto const& c = product(i, j);
        if (!zmod::is_zero(zmod::scale(o[i], c, o), o) || !zmod::is_zero(zmod::scale(o[j], c, o), o)) {
          throw ValidationError("algebra product is not well defined on cyclic generators");
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      auto e = _module.basis_vector(i);
      if (mul(_one, e) != e || mul(e, _one) != e) {
        throw ValidationError("algebra unit is not a two-sided identity");
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        auto const& ab = product(a, b);
        for (std::size_t c = 0; c < k; ++c) {
          if (mul(ab, _module.basis_vector(c)) != mul(_module.basis_vector(a), product(b, c))) {
            throw ValidationError("algebra product is not associative");
          }
        }
      }
    }
    for (auto const& s : _module.basis_actions()) {
      for (std::size_t i = 0; i < k; ++i) {
        auto si = s.column(i);
        for (std::size_t j = 0; j < k; ++j) {
          auto sij = zmod::apply(s, product(i, j), o);
          if (mul(si, _module.basis_vector(j)) != sij || mul(_module.basis_vector(j), si) != zmod::apply(s, product(j, i), o)) {
            throw ValidationError("algebra product is not R-bilinear");
          }
        }
      }
    }
  }

  Vec StructuredAlgebra::mul(Vec const& x, Vec const& y) const {
    std::size_t const k = dim();
    auto const&       o = orders();
    Vec               r(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (x[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (y[j] != 0) {
          r = accumulate(std::move(r), x[i] * y[j], product(i, j), o);
        }
      }
    }
    return r;
  }

  Matrix StructuredAlgebra::left_matrix(Vec const& x) const {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < dim(); ++j) {
      cols.push_back(mul(x, _module.basis_vector(j)));
    }
    return Matrix::from_columns(dim(), cols);
  }

  Matrix StructuredAlgebra::right_matrix(Vec const& x) const {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < dim(); ++j) {
      cols.push_back(mul(_module.basis_vector(j), x));
    }
    return Matrix::from_columns(dim(), cols);
  }

  bool AlgebraMap::is_homomorphism() const {
    if (source.ring().get() != target.ring().get()) {
      return false;
    }
    std::size_t const k = source.dim();
    auto const&       o = target.orders();
    if (matrix.cols() != k || matrix.rows() != target.dim()) {
      return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (!zmod::is_zero(zmod::scale(source.orders()[i], matrix.column(i), o), o)) {
        return false;
      }
    }
    auto const& sa = source.module().basis_actions();
    auto const& ta = target.module().basis_actions();
    for (std::size_t s = 0; s < sa.size(); ++s) {
      if (zmod::multiply(matrix, sa[s], o) != zmod::multiply(ta[s], matrix, o)) {
        return false;
      }
    }
    if ((*this)(source.one()) != target.one()) {
      return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if ((*this)(source.product(i, j)) != target.mul(matrix.column(i), matrix.column(j))) {
          return false;
        }
      }
    }
    return true;
  }

  bool AlgebraMap::is_bijective() const {
    if (source.order() != target.order()) {
      return false;
    }
    auto ker = zmod::subgroup(source.orders(), zmod::kernel(matrix, source.orders(), target.orders()));
    return ker.order() == 1;
  }

  // ---- constructions -------------------------------------------------------------

  StructuredAlgebra matrix_algebra(RingPtr const& ring, std::size_t n, Limits const& limits) {
    auto const&       r     = *ring;
    auto const&       basis = r.additive().basis();
    std::size_t const d     = basis.size();
    auto              m     = free_module(ring, n * n, limits);
    std::size_t const k     = m.dim();
    std::vector<Vec>  products(k * k, Vec(k, 0));
    // generator (p*n + q)*d + u is E_pq b_u
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t u = 0; u < d; ++u) {
            for (std::size_t v = 0; v < d; ++v) {
              auto const& c   = r.coords(r.mul(basis[u], basis[v]));
              auto&       out = products[((p * n + q) * d + u) * k + (q * n + s) * d + v];
              std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>((p * n + s) * d));
            }
          }
        }
      }
    }
    Vec one(k, 0);
    for (std::size_t p = 0; p < n; ++p) {
      auto const& c = r.coords(r.one());
      std::copy(c.begin(), c.end(), one.begin() + static_cast<std::ptrdiff_t>((p * n + p) * d));
    }
    std::string desc = n == 1 ? r.descriptor() : "M_" + std::to_string(n) + "(" + r.descriptor() + ")";
    return StructuredAlgebra(m.with_descriptor(desc), std::move(products), std::move(one), desc);
  }

  StructuredAlgebra unit_algebra(RingPtr const& ring) {
    return matrix_algebra(ring, 1);
  }

  StructuredAlgebra opposite(StructuredAlgebra const& a) {
    std::size_t const k = a.dim();
    std::vector<Vec>  products(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        products[i * k + j] = a.product(j, i);
      }
    }
    return StructuredAlgebra(a.module(), std::move(products), a.one(), wrap(a.descriptor()) + "^op");
  }

  StructuredAlgebra algebra_tensor(StructuredAlgebra const& a, StructuredAlgebra const& b, Limits const& limits) {
    auto t = tensor_over_R(a.module(), b.module(), limits);
    auto [products, one] = tensor_structure(t.data, a.products(), a.one(), b.products(), b.one());
    std::string desc     = wrap(a.descriptor()) + " (x) " + wrap(b.descriptor());
    return StructuredAlgebra(t.module.with_descriptor(desc), std::move(products), std::move(one), desc);
  }

  EndAlgebra end_algebra(FGModule const& m, Limits const& limits) {
    auto              h = hom_module(m, m, limits);
    std::size_t const q = h.module.dim();
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q; ++a) {
      mats.push_back(h.matrix(h.module.basis_vector(a)));
    }
    std::vector<Vec> products;
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        auto c = h.coordinates(zmod::multiply(mats[a], mats[b], m.orders()));
        if (!c) {
          throw Error("End is not closed under composition");
        }
        products.push_back(std::move(*c));
      }
    }
    Matrix id = Matrix::identity(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
      id(i, i) = zmod::mod(1, m.orders()[i]);
    }
    auto one = h.coordinates(id);
    if (!one) {
      throw Error("identity is not an endomorphism");
    }
    std::string desc = "End(" + m.descriptor() + ")";
    StructuredAlgebra alg(h.module.with_descriptor(desc), std::move(products), std::move(*one), desc);
    return EndAlgebra{std::move(alg), std::move(h)};
  }

  FGModule restrict_scalars(RingMap const& f, FGModule const& m) {
    if (f.target.get() != m.ring().get()) {
      throw ValidationError("restriction of scalars along a map with the wrong target");
    }
    std::vector<Matrix> action;
    for (auto b : f.source->additive().basis()) {
      action.push_back(m.act_matrix(f(b)));
    }
    return FGModule(f.source, m.orders(), std::move(action), m.descriptor());
  }

  StructuredAlgebra restrict_scalars(RingMap const& f, StructuredAlgebra const& a) {
    return StructuredAlgebra(restrict_scalars(f, a.module()), a.products(), a.one(), a.descriptor());
  }

  namespace {

    struct BaseChange {
      FGModule       module;
      BalancedTensor data;
    };

    BaseChange base_change_module(RingMap const& f, FGModule const& m, Limits const& limits) {
      if (f.source.get() != m.ring().get()) {
        throw ValidationError("base change along a map with the wrong source");
      }
      auto s  = free_module(f.target, 1);
      auto sr = restrict_scalars(f, s);
      std::vector<std::pair<Matrix, Matrix>> rels;
      for (std::size_t t = 0; t < sr.basis_actions().size(); ++t) {
        rels.emplace_back(sr.basis_action(t), m.basis_action(t));
      }
      auto data = balanced_tensor(sr.orders(), m.orders(), rels, limits);
      if (data.order() > limits.max_module_order) {
        throw CapExceeded("base_change", "base_change: order " + std::to_string(data.order())
                                             + " exceeds max_module_order " + std::to_string(limits.max_module_order));
      }
      std::vector<Matrix> action;
      auto                id = Matrix::identity(m.dim());
      for (auto const& a : s.basis_actions()) {
        action.push_back(data.induced(a, id));
      }
      FGModule module(f.target, data.quotient.orders, std::move(action),
                      f.target->descriptor() + " (x) " + wrap(m.descriptor()), limits);
      return BaseChange{std::move(module), std::move(data)};
    }

  }  // namespace

  FGModule base_change(RingMap const& f, FGModule const& m, Limits const& limits) {
    return base_change_module(f, m, limits).module;
  }

  StructuredAlgebra base_change(RingMap const& f, StructuredAlgebra const& a, Limits const& limits) {
    auto bc = base_change_module(f, a.module(), limits);
    auto s  = unit_algebra(f.target);
    auto [products, one] = tensor_structure(bc.data, s.products(), s.one(), a.products(), a.one());
    std::string desc     = f.target->descriptor() + " (x) " + wrap(a.descriptor());
    return StructuredAlgebra(bc.module.with_descriptor(desc), std::move(products), std::move(one), desc);
  }

  bool is_commutative(StructuredAlgebra const& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = i + 1; j < a.dim(); ++j) {
        if (a.product(i, j) != a.product(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  std::uint64_t center_order(StructuredAlgebra const& a) {
    std::size_t const k = a.dim();
    auto const&       o = a.orders();
    Vec               tgt;
    for (std::size_t i = 0; i < k; ++i) {
      tgt.insert(tgt.end(), o.begin(), o.end());
    }
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < k; ++j) {
      Vec c;
      for (std::size_t i = 0; i < k; ++i) {
        auto d = zmod::add(a.product(j, i), zmod::scale(-1, a.product(i, j), o), o);
        c.insert(c.end(), d.begin(), d.end());
      }
      cols.push_back(std::move(c));
    }
    if (k == 0) {
      return 1;
    }
    auto map = Matrix::from_columns(tgt.size(), cols);
    return zmod::subgroup(o, zmod::kernel(map, o, tgt)).order();
  }

  zmod::Subgroup generated_subalgebra(StructuredAlgebra const& a, std::vector<Vec> const& gens) {
    std::vector<Vec> values{a.one()};
    auto             span = submodule(a.module(), values);
    bool             grew = true;
    while (grew) {
      grew = false;
      for (auto const& b : span.basis) {
        for (auto const& g : gens) {
          auto p = a.mul(b, g);
          if (!span.coordinates(p)) {
            values.push_back(std::move(p));
            span = submodule(a.module(), values);
            grew = true;
            break;
          }
        }
        if (grew) {
          break;
        }
      }
    }
    return span;
  }

  namespace {

    bool is_unit_element(StructuredAlgebra const& a, Vec const& x) {
      auto l = a.left_matrix(x);
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < a.dim(); ++j) {
        cols.push_back(l.column(j));
      }
      return zmod::subgroup(a.orders(), cols).order() == a.order();
    }

    // Isomorphism-invariant data of a single element.
    Vec element_signature(StructuredAlgebra const& a, Vec const& x) {
      auto const& o = a.orders();
      Int         add_order = 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        add_order = zmod::lcm(add_order, o[i] / zmod::gcd(o[i], x[i]));
      }
      auto span_order = [&](Matrix const& m) {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < m.cols(); ++j) {
          cols.push_back(m.column(j));
        }
        return static_cast<Int>(zmod::subgroup(o, cols).order());
      };
      // powers x, x^2, ... until a repeat, giving (preperiod, period), capped
      std::map<Vec, Int> seen;
      Vec                p = x;
      Int                pre = -1, period = -1;
      for (Int e = 1; e <= 64; ++e) {
        auto [it, fresh] = seen.emplace(p, e);
        if (!fresh) {
          pre    = it->second;
          period = e - it->second;
          break;
        }
        p = a.mul(p, x);
      }
      bool central = true;
      for (std::size_t i = 0; i < a.dim() && central; ++i) {
        auto e  = a.module().basis_vector(i);
        central = a.mul(x, e) == a.mul(e, x);
      }
      return {add_order, span_order(a.left_matrix(x)), span_order(a.right_matrix(x)), pre, period, central ? 1 : 0};
    }

  }  // namespace

  AlgebraInvariants algebra_invariants(StructuredAlgebra const& a, std::uint64_t enumeration_limit) {
    AlgebraInvariants inv;
    inv.order       = a.order();
    inv.additive    = zmod::invariant_factors(a.orders());
    inv.center      = center_order(a);
    inv.commutative = is_commutative(a);
    if (a.order() <= enumeration_limit) {
      std::uint64_t u = 0, e = 0;
      for (std::uint64_t i = 0; i < a.order(); ++i) {
        auto x = a.module().element(i);
        u += is_unit_element(a, x) ? 1 : 0;
        e += a.mul(x, x) == x ? 1 : 0;
      }
      inv.units       = u;
      inv.idempotents = e;
    }
    return inv;
  }

  namespace {

    // A word in the chosen generators: parent word times generator.
    struct Term {
      std::ptrdiff_t parent;  // -1 for the empty word
      std::size_t    gen;
      Vec            value;
    };

    struct Level {
      std::size_t      terms = 0;  // terms[0..terms) are in play at this level
      std::vector<Vec> relations;  // over (term, ring generator) pairs
    };

    std::vector<Vec> term_columns(StructuredAlgebra const& a, std::vector<Term> const& terms, std::size_t n) {
      std::vector<Vec> cols;
      for (std::size_t t = 0; t < n; ++t) {
        for (auto const& s : a.module().basis_actions()) {
          cols.push_back(zmod::apply(s, terms[t].value, a.orders()));
        }
      }
      return cols;
    }

    Vec term_orders(StructuredAlgebra const& a, std::size_t n) {
      auto const& ro = a.ring()->additive().cyclic_orders();
      Vec         v;
      for (std::size_t t = 0; t < n; ++t) {
        v.insert(v.end(), ro.begin(), ro.end());
      }
      return v;
    }

    Vec combine(StructuredAlgebra const& b, std::vector<Vec> const& images, Vec const& coeffs) {
      std::size_t const d = b.ring()->additive().basis().size();
      Vec               r = b.module().zero();
      for (std::size_t t = 0; t < images.size(); ++t) {
        for (std::size_t s = 0; s < d; ++s) {
          Int c = coeffs[t * d + s];
          if (c != 0) {
            r = zmod::add(r, zmod::scale(c, zmod::apply(b.module().basis_action(s), images[t], b.orders()), b.orders()),
                          b.orders());
          }
        }
      }
      return r;
    }

  }  // namespace

  std::optional<AlgebraMap> algebra_isomorphism(StructuredAlgebra const& a, StructuredAlgebra const& b,
                                                std::uint64_t node_budget) {
    if (a.ring().get() != b.ring().get()) {
      throw ValidationError("algebra isomorphism between algebras over different rings");
    }
    if (algebra_invariants(a) != algebra_invariants(b)) {
      return std::nullopt;
    }
    if (b.order() > 65536) {
      throw BudgetExceeded("algebra_isomorphism", "algebra_isomorphism: target too large to enumerate");
    }
    // candidate images grouped by element signature
    std::map<Vec, std::vector<Vec>> classes;
    for (std::uint64_t i = 0; i < b.order(); ++i) {
      auto y = b.module().element(i);
      classes[element_signature(b, y)].push_back(std::move(y));
    }
    auto class_size = [&](Vec const& x) -> std::size_t {
      auto it = classes.find(element_signature(a, x));
      return it == classes.end() ? 0 : it->second.size();
    };

    // greedy generators of A: largest subalgebra, then fewest candidates
    std::vector<Vec> gens;
    std::uint64_t    reached = generated_subalgebra(a, gens).order();
    while (reached < a.order()) {
      std::vector<Vec> pool;
      if (a.order() <= 4096) {
        for (std::uint64_t i = 0; i < a.order(); ++i) {
          pool.push_back(a.module().element(i));
        }
      } else {
        for (std::size_t i = 0; i < a.dim(); ++i) {
          pool.push_back(a.module().basis_vector(i));
        }
      }
      Vec           best;
      std::uint64_t best_order = reached;
      std::size_t   best_size  = 0;
      for (auto const& x : pool) {
        auto trial = gens;
        trial.push_back(x);
        auto ord = generated_subalgebra(a, trial).order();
        if (ord > best_order || (ord == best_order && ord > reached && class_size(x) < best_size)) {
          best       = x;
          best_order = ord;
          best_size  = class_size(x);
        }
      }
      if (best.empty()) {
        throw Error("could not find algebra generators");
      }
      gens.push_back(best);
      reached = best_order;
    }

    // words and relations for every prefix of the generator list
    std::vector<Term>  terms{{-1, 0, a.one()}};
    std::vector<Level> levels;
    std::vector<std::size_t> basis_terms{0};
    for (std::size_t t = 0; t < gens.size(); ++t) {
      std::vector<Vec> span_values;
      for (auto bt : basis_terms) {
        span_values.push_back(terms[bt].value);
      }
      auto span = submodule(a.module(), span_values);
      // extend: every basis term times every generator up to t
      std::vector<std::pair<std::size_t, std::size_t>> todo;
      for (auto bt : basis_terms) {
        todo.emplace_back(bt, t);
      }
      for (std::size_t q = 0; q < todo.size(); ++q) {
        auto [parent, g] = todo[q];
        terms.push_back({static_cast<std::ptrdiff_t>(parent), g, a.mul(terms[parent].value, gens[g])});
        std::size_t idx = terms.size() - 1;
        if (!span.coordinates(terms[idx].value)) {
          basis_terms.push_back(idx);
          span_values.push_back(terms[idx].value);
          span = submodule(a.module(), span_values);
          for (std::size_t h = 0; h <= t; ++h) {
            todo.emplace_back(idx, h);
          }
        }
      }
      Level lv;
      lv.terms = terms.size();
      auto cols = term_columns(a, terms, lv.terms);
      lv.relations = zmod::kernel(Matrix::from_columns(a.dim(), cols), term_orders(a, lv.terms), a.orders());
      levels.push_back(std::move(lv));
    }
    // coefficients of the module generators of A in terms of the final terms
    std::vector<Vec> expansions;
    {
      auto cols = term_columns(a, terms, terms.size());
      for (std::size_t i = 0; i < a.dim(); ++i) {
        auto y = zmod::solve(a.orders(), cols, a.module().basis_vector(i));
        if (!y) {
          throw Error("algebra generators do not span");
        }
        expansions.push_back(std::move(*y));
      }
    }

    std::vector<std::vector<Vec> const*> candidates;
    for (auto const& g : gens) {
      auto it = classes.find(element_signature(a, g));
      if (it == classes.end()) {
        return std::nullopt;
      }
      candidates.push_back(&it->second);
    }

    std::uint64_t    nodes = 0;
    std::vector<Vec> gen_images(gens.size());
    std::vector<Vec> images(terms.size());
    images[0] = b.one();
    std::optional<AlgebraMap> found;

    std::function<void(std::size_t)> search = [&](std::size_t t) {
      if (found) {
        return;
      }
      if (t == gens.size()) {
        std::vector<Vec> cols;
        for (auto const& e : expansions) {
          cols.push_back(combine(b, images, e));
        }
        AlgebraMap f{a, b, Matrix::from_columns(b.dim(), cols)};
        if (f.is_homomorphism() && f.is_bijective()) {
          found = std::move(f);
        }
        return;
      }
      std::size_t const from = t == 0 ? 1 : levels[t - 1].terms;
      for (auto const& y : *candidates[t]) {
        if (++nodes > node_budget) {
          throw BudgetExceeded("algebra_isomorphism", "algebra_isomorphism: node budget exhausted");
        }
        gen_images[t] = y;
        for (std::size_t i = from; i < levels[t].terms; ++i) {
          images[i] = b.mul(images[static_cast<std::size_t>(terms[i].parent)], gen_images[terms[i].gen]);
        }
        bool ok = true;
        std::vector<Vec> used(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(levels[t].terms));
        for (auto const& rel : levels[t].relations) {
          if (!zmod::is_zero(combine(b, used, rel), b.orders())) {
            ok = false;
            break;
          }
        }
        if (ok) {
          search(t + 1);
          if (found) {
            return;
          }
        }
      }
    };
    search(0);
    return found;
  }

}  // namespace brauerk
