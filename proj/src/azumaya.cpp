#include "brauerk/azumaya.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "brauerk/error.hpp"

namespace brauerk {

  using zmod::Int;
  using zmod::Matrix;
  using zmod::Vec;
  using element = FiniteCommRing::element;

  namespace {

    Matrix block_diagonal(Matrix const& a, Matrix const& b) {
      Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
          m(i, j) = a(i, j);
        }
      }
      for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
          m(a.rows() + i, a.cols() + j) = b(i, j);
        }
      }
      return m;
    }

    Matrix combination(std::vector<Matrix> const& mats, Vec const& coeffs, Vec const& orders, std::size_t dim) {
      Matrix r(dim, dim);
      for (std::size_t i = 0; i < mats.size(); ++i) {
        if (coeffs[i] == 0) {
          continue;
        }
        for (std::size_t a = 0; a < dim; ++a) {
          for (std::size_t b = 0; b < dim; ++b) {
            r(a, b) = zmod::mod(r(a, b) + coeffs[i] * mats[i](a, b), orders[a]);
          }
        }
      }
      return r;
    }

    Matrix reduced_identity(Vec const& orders) {
      Matrix id = Matrix::identity(orders.size());
      for (std::size_t i = 0; i < orders.size(); ++i) {
        id(i, i) = zmod::mod(1, orders[i]);
      }
      return id;
    }

    Vec repeat(Vec const& v, std::size_t times) {
      Vec r;
      for (std::size_t t = 0; t < times; ++t) {
        r.insert(r.end(), v.begin(), v.end());
      }
      return r;
    }

    bool same_algebra(StructuredAlgebra const& a, StructuredAlgebra const& b) {
      return a.ring().get() == b.ring().get() && a.orders() == b.orders() && a.products() == b.products()
          && a.one() == b.one();
    }

    std::vector<std::pair<Matrix, Matrix>> ring_relations(FGModule const& m, FGModule const& n) {
      std::vector<std::pair<Matrix, Matrix>> rels;
      for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
        rels.emplace_back(m.basis_action(s), n.basis_action(s));
      }
      return rels;
    }

    bool bijective(Matrix const& m, Vec const& src, Vec const& tgt) {
      return zmod::group_order(src) == zmod::group_order(tgt)
          && zmod::subgroup(src, zmod::kernel(m, src, tgt)).order() == 1;
    }

  }  // namespace

  // ---- constructions ------------------------------------------------------------

  StructuredAlgebra algebra_from_free_constants(RingPtr const& ring, std::size_t n,
                                                std::vector<std::vector<element>> constants, std::string descriptor,
                                                Limits const& limits) {
    auto const&       r     = *ring;
    auto const&       basis = r.additive().basis();
    std::size_t const d     = basis.size();
    if (constants.size() != n * n) {
      throw ValidationError("structure constants need n*n entries");
    }
    auto              m = free_module(ring, n, limits);
    std::size_t const k = m.dim();
    std::vector<Vec>  products(k * k, Vec(k, 0));
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t u = 0; u < d; ++u) {
        for (std::size_t t2 = 0; t2 < n; ++t2) {
          auto const& c = constants[t * n + t2];
          if (c.size() != n) {
            throw ValidationError("structure constant has the wrong length");
          }
          for (std::size_t v = 0; v < d; ++v) {
            auto  bb  = r.mul(basis[u], basis[v]);
            auto& out = products[(t * d + u) * k + t2 * d + v];
            for (std::size_t q = 0; q < n; ++q) {
              auto const& x = r.coords(r.mul(bb, c[q]));
              std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(q * d));
            }
          }
        }
      }
    }
    Vec         one(k, 0);
    auto const& c1 = r.coords(r.one());
    std::copy(c1.begin(), c1.end(), one.begin());
    return StructuredAlgebra(m.with_descriptor(descriptor), std::move(products), std::move(one), descriptor);
  }

  StructuredAlgebra algebra_product(StructuredAlgebra const& a, StructuredAlgebra const& b, Limits const& limits) {
    auto              m  = direct_sum(a.module(), b.module(), limits);
    std::size_t const ka = a.dim(), kb = b.dim(), k = ka + kb;
    std::vector<Vec>  products(k * k, Vec(k, 0));
    for (std::size_t i = 0; i < ka; ++i) {
      for (std::size_t j = 0; j < ka; ++j) {
        std::copy(a.product(i, j).begin(), a.product(i, j).end(), products[i * k + j].begin());
      }
    }
    for (std::size_t i = 0; i < kb; ++i) {
      for (std::size_t j = 0; j < kb; ++j) {
        std::copy(b.product(i, j).begin(), b.product(i, j).end(),
                  products[(ka + i) * k + ka + j].begin() + static_cast<std::ptrdiff_t>(ka));
      }
    }
    Vec one = a.one();
    one.insert(one.end(), b.one().begin(), b.one().end());
    std::string desc = a.descriptor() + " x " + b.descriptor();
    return StructuredAlgebra(m.with_descriptor(desc), std::move(products), std::move(one), desc);
  }

  // ---- sandwich map ---------------------------------------------------------------

  namespace {

    // Column tuple of x |-> e_i x e_j for every ambient tensor generator (i, j).
    std::vector<Vec> sandwich_columns(StructuredAlgebra const& a) {
      std::size_t const k = a.dim();
      std::vector<Vec>  out;
      out.reserve(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          Vec v;
          v.reserve(k * k);
          for (std::size_t c = 0; c < k; ++c) {
            auto x = a.mul(a.product(i, c), a.module().basis_vector(j));
            v.insert(v.end(), x.begin(), x.end());
          }
          out.push_back(std::move(v));
        }
      }
      return out;
    }

    std::vector<Vec> sandwich_images(StructuredAlgebra const& a, BalancedTensor const& t) {
      auto       gens = sandwich_columns(a);
      Vec const  amb  = repeat(a.orders(), a.dim());
      std::vector<Vec> imgs;
      for (auto const& w : t.quotient.lift) {
        Vec v(amb.size(), 0);
        for (std::size_t g = 0; g < w.size(); ++g) {
          if (w[g] == 0) {
            continue;
          }
          for (std::size_t r = 0; r < v.size(); ++r) {
            v[r] = zmod::mod(v[r] + w[g] * gens[g][r], amb[r]);
          }
        }
        imgs.push_back(std::move(v));
      }
      return imgs;
    }

  }  // namespace

  SandwichReport sandwich_report(StructuredAlgebra const& a) {
    auto const&    o = a.orders();
    SandwichReport rep;
    Limits         unlimited;
    unlimited.max_module_order = std::numeric_limits<std::uint64_t>::max();
    auto t   = balanced_tensor(o, o, ring_relations(a.module(), a.module()), unlimited);
    auto end = intertwiners(o, o, ring_relations(a.module(), a.module()));
    rep.tensor_order = t.order();
    rep.end_order    = end.order();
    if (rep.tensor_order == std::numeric_limits<std::uint64_t>::max()
        || rep.end_order == std::numeric_limits<std::uint64_t>::max()) {
      throw CapExceeded("sandwich", "sandwich: group orders overflow 64 bits");
    }
    Vec const amb = repeat(o, a.dim());
    if (t.quotient.orders.empty()) {
      rep.kernel_order = 1;
    } else {
      auto map         = Matrix::from_columns(amb.size(), sandwich_images(a, t));
      rep.kernel_order = zmod::subgroup(t.quotient.orders, zmod::kernel(map, t.quotient.orders, amb)).order();
    }
    rep.injective  = rep.kernel_order == 1;
    rep.surjective = rep.tensor_order / rep.kernel_order == rep.end_order;
    return rep;
  }

  SandwichMap sandwich_map(StructuredAlgebra const& a, Limits const& limits) {
    auto src  = algebra_tensor(a, opposite(a), limits);
    auto data = tensor_over_R(a.module(), a.module(), limits).data;
    auto end  = end_algebra(a.module(), limits);
    std::vector<Vec> cols;
    for (auto const& v : sandwich_images(a, data)) {
      auto c = end.hom.coordinates(columns_to_matrix(v, a.dim(), a.dim()));
      if (!c) {
        throw Error("sandwich image is not R-linear");
      }
      cols.push_back(std::move(*c));
    }
    AlgebraMap map{src, end.algebra, Matrix::from_columns(end.algebra.dim(), cols)};
    if (!map.is_homomorphism()) {
      throw Error("sandwich map is not an algebra homomorphism");
    }
    return SandwichMap{std::move(map), std::move(end)};
  }

  AzumayaCertificate is_azumaya(StructuredAlgebra const& a, Limits const& limits) {
    AzumayaCertificate cert;
    cert.algebra = a.descriptor();
    auto proj    = is_projective(a.module(), limits);
    cert.projective = proj.projective;
    if (!cert.projective) {
      cert.failing_stage = "projectivity";
      return cert;
    }
    cert.rank          = rank_function(a.module(), local_decomposition(a.ring()));
    cert.positive_rank = std::all_of(cert.rank.values.begin(), cert.rank.values.end(), [](auto v) { return v > 0; });
    if (!cert.positive_rank) {
      cert.failing_stage = "faithfulness";
      return cert;
    }
    cert.sandwich = sandwich_report(a);
    if (!cert.sandwich->injective) {
      cert.failing_stage = "sandwich_injectivity";
    } else if (!cert.sandwich->surjective) {
      cert.failing_stage = "sandwich_surjectivity";
    } else {
      cert.azumaya = true;
    }
    return cert;
  }

  // ---- bimodules ------------------------------------------------------------------

  Matrix Bimodule::left_matrix(Vec const& a) const {
    return combination(left_action, a, module.orders(), module.dim());
  }

  Matrix Bimodule::right_matrix(Vec const& b) const {
    return combination(right_action, b, module.orders(), module.dim());
  }

  void Bimodule::validate() const {
    auto const& o = module.orders();
    if (left.ring().get() != module.ring().get() || right.ring().get() != module.ring().get()) {
      throw ValidationError("bimodule over different rings");
    }
    if (left_action.size() != left.dim() || right_action.size() != right.dim()) {
      throw ValidationError("bimodule needs one action matrix per algebra generator");
    }
    auto check_shape = [&](std::vector<Matrix> const& acts, Vec const& gen_orders) {
      for (std::size_t i = 0; i < acts.size(); ++i) {
        auto const& m = acts[i];
        if (m.rows() != module.dim() || m.cols() != module.dim()) {
          throw ValidationError("bimodule action matrix has the wrong shape");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
          if (!zmod::is_zero(zmod::scale(o[c], m.column(c), o), o)
              || !zmod::is_zero(zmod::scale(gen_orders[i], m.column(c), o), o)) {
            throw ValidationError("bimodule action is not well defined");
          }
        }
      }
    };
    check_shape(left_action, left.orders());
    check_shape(right_action, right.orders());
    auto id = reduced_identity(o);
    if (left_matrix(left.one()) != id || right_matrix(right.one()) != id) {
      throw ValidationError("bimodule action is not unital");
    }
    for (std::size_t i = 0; i < left.dim(); ++i) {
      for (std::size_t j = 0; j < left.dim(); ++j) {
        if (zmod::multiply(left_action[i], left_action[j], o) != left_matrix(left.product(i, j))) {
          throw ValidationError("left action is not multiplicative");
        }
      }
    }
    for (std::size_t i = 0; i < right.dim(); ++i) {
      for (std::size_t j = 0; j < right.dim(); ++j) {
        if (zmod::multiply(right_action[j], right_action[i], o) != right_matrix(right.product(i, j))) {
          throw ValidationError("right action is not multiplicative");
        }
      }
    }
    for (auto const& l : left_action) {
      for (auto const& r : right_action) {
        if (zmod::multiply(l, r, o) != zmod::multiply(r, l, o)) {
          throw ValidationError("left and right actions do not commute");
        }
      }
    }
    auto const& basis = module.ring()->additive().basis();
    for (std::size_t s = 0; s < basis.size(); ++s) {
      auto const& own = module.basis_action(s);
      if (left_matrix(left.scalar(basis[s])) != own || right_matrix(right.scalar(basis[s])) != own) {
        throw ValidationError("bimodule is not R-symmetric");
      }
    }
  }

  Bimodule regular_bimodule(StructuredAlgebra const& a) {
    Bimodule b{a, a, a.module(), {}, {}};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      b.left_action.push_back(a.left_matrix(a.module().basis_vector(i)));
      b.right_action.push_back(a.right_matrix(a.module().basis_vector(i)));
    }
    return b;
  }

  Bimodule endomorphism_bimodule(EndAlgebra const& end, FGModule const& p) {
    Bimodule b{end.algebra, unit_algebra(p.ring()), p, {}, p.basis_actions()};
    for (std::size_t i = 0; i < end.algebra.dim(); ++i) {
      b.left_action.push_back(end.hom.matrix(end.algebra.module().basis_vector(i)));
    }
    return b;
  }

  Bimodule symmetric_bimodule(FGModule const& m) {
    auto r = unit_algebra(m.ring());
    return Bimodule{r, r, m, m.basis_actions(), m.basis_actions()};
  }

  namespace {

    struct TensorBimodule {
      Bimodule       bimodule;
      BalancedTensor data;
    };

    BalancedTensor middle_tensor(Bimodule const& m, Bimodule const& n) {
      if (!same_algebra(m.right, n.left)) {
        throw ValidationError("bimodule tensor over mismatched middle algebras");
      }
      std::vector<std::pair<Matrix, Matrix>> rels;
      for (std::size_t j = 0; j < m.right.dim(); ++j) {
        rels.emplace_back(m.right_action[j], n.left_action[j]);
      }
      Limits unlimited;
      unlimited.max_module_order = std::numeric_limits<std::uint64_t>::max();
      return balanced_tensor(m.module.orders(), n.module.orders(), rels, unlimited);
    }

    std::uint64_t middle_tensor_order(Bimodule const& m, Bimodule const& n) {
      return middle_tensor(m, n).order();
    }

    TensorBimodule tensor_bimodule(Bimodule const& m, Bimodule const& n, Limits const& limits) {
      auto data = middle_tensor(m, n);
      auto idm  = Matrix::identity(m.module.dim());
      auto idn  = Matrix::identity(n.module.dim());
      std::vector<Matrix> action, left, right;
      for (auto const& a : m.module.basis_actions()) {
        action.push_back(data.induced(a, idn));
      }
      for (auto const& a : m.left_action) {
        left.push_back(data.induced(a, idn));
      }
      for (auto const& b : n.right_action) {
        right.push_back(data.induced(idm, b));
      }
      FGModule module(m.module.ring(), data.quotient.orders, std::move(action),
                      m.module.descriptor() + " (x) " + n.module.descriptor(), limits);
      return TensorBimodule{Bimodule{m.left, n.right, std::move(module), std::move(left), std::move(right)},
                            std::move(data)};
    }

  }  // namespace

  Bimodule bimodule_tensor(Bimodule const& m, Bimodule const& n, Limits const& limits) {
    return tensor_bimodule(m, n, limits).bimodule;
  }

  Bimodule bimodule_direct_sum(Bimodule const& m, Bimodule const& n, Limits const& limits) {
    if (!same_algebra(m.left, n.left) || !same_algebra(m.right, n.right)) {
      throw ValidationError("direct sum of bimodules over different algebras");
    }
    Bimodule b{m.left, m.right, direct_sum(m.module, n.module, limits), {}, {}};
    for (std::size_t i = 0; i < m.left_action.size(); ++i) {
      b.left_action.push_back(block_diagonal(m.left_action[i], n.left_action[i]));
    }
    for (std::size_t i = 0; i < m.right_action.size(); ++i) {
      b.right_action.push_back(block_diagonal(m.right_action[i], n.right_action[i]));
    }
    return b;
  }

  std::optional<ModuleMap> bimodule_isomorphism(Bimodule const& m, Bimodule const& n, std::uint64_t budget) {
    if (m.module.order() != n.module.order()
        || zmod::invariant_factors(m.module.orders()) != zmod::invariant_factors(n.module.orders())) {
      return std::nullopt;
    }
    auto constraints = ring_relations(m.module, n.module);
    for (std::size_t i = 0; i < m.left_action.size(); ++i) {
      constraints.emplace_back(m.left_action[i], n.left_action[i]);
    }
    for (std::size_t i = 0; i < m.right_action.size(); ++i) {
      constraints.emplace_back(m.right_action[i], n.right_action[i]);
    }
    auto hom = intertwiners(m.module.orders(), n.module.orders(), constraints);
    if (hom.order() > budget) {
      throw BudgetExceeded("bimodule_isomorphism", "bimodule_isomorphism: Hom has " + std::to_string(hom.order())
                                                       + " elements, over the budget");
    }
    for (std::uint64_t i = 0; i < hom.order(); ++i) {
      auto f = columns_to_matrix(hom.embed(zmod::decode(i, hom.orders)), m.module.dim(), n.module.dim());
      if (bijective(f, m.module.orders(), n.module.orders())) {
        return ModuleMap{m.module, n.module, std::move(f)};
      }
    }
    return std::nullopt;
  }

  InvertibilityReport bimodule_invertible(Bimodule const& m, Limits const& limits) {
    m.validate();
    InvertibilityReport rep;
    auto const& a  = m.left;
    auto const& b  = m.right;
    auto const& mo = m.module.orders();
    std::size_t const km = m.module.dim();

    // N = Hom_A(M, A)
    std::vector<std::pair<Matrix, Matrix>> cons;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      cons.emplace_back(m.left_action[i], a.left_matrix(a.module().basis_vector(i)));
    }
    auto sub = intertwiners(mo, a.orders(), cons);
    if (sub.order() > limits.max_module_order) {
      throw CapExceeded("inverse", "inverse: Hom_A(M, A) has order " + std::to_string(sub.order()));
    }
    std::vector<Matrix> phis;
    for (auto const& h : sub.basis) {
      phis.push_back(columns_to_matrix(h, km, a.dim()));
    }
    auto on_n = [&](auto const& op) {
      std::vector<Vec> cols;
      for (auto const& phi : phis) {
        auto c = sub.coordinates(matrix_to_columns(op(phi)));
        if (!c) {
          throw Error("Hom_A(M, A) is not closed under the induced action");
        }
        cols.push_back(std::move(*c));
      }
      return Matrix::from_columns(sub.orders.size(), cols);
    };
    std::vector<Matrix> n_ring, n_left, n_right;
    for (auto const& s : a.module().basis_actions()) {
      n_ring.push_back(on_n([&](Matrix const& phi) { return zmod::multiply(s, phi, a.orders()); }));
    }
    for (auto const& rb : m.right_action) {  // (b phi)(x) = phi(x b)
      n_left.push_back(on_n([&](Matrix const& phi) { return zmod::multiply(phi, rb, a.orders()); }));
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {  // (phi a)(x) = phi(x) a
      auto ra = a.right_matrix(a.module().basis_vector(i));
      n_right.push_back(on_n([&](Matrix const& phi) { return zmod::multiply(ra, phi, a.orders()); }));
    }
    FGModule nmod(m.module.ring(), sub.orders, std::move(n_ring), "Hom_A(" + m.module.descriptor() + ", A)", limits);
    Bimodule n{b, a, std::move(nmod), std::move(n_left), std::move(n_right)};
    n.validate();
    rep.inverse = n;

    // evaluation M (x)_B N -> A, x (x) phi |-> phi(x); orders first, so that a
    // too large tensor is rejected before it is materialized
    if (middle_tensor_order(m, n) != a.order()) {
      rep.failing_stage = "evaluation";
      return rep;
    }
    auto t1 = tensor_bimodule(m, n, limits);
    std::vector<Vec> ev_cols;
    for (auto const& w : t1.data.quotient.lift) {
      Vec v = a.module().zero();
      for (std::size_t i = 0; i < km; ++i) {
        for (std::size_t h = 0; h < phis.size(); ++h) {
          Int c = w[i * phis.size() + h];
          if (c != 0) {
            v = a.add(v, zmod::scale(c, phis[h].column(i), a.orders()));
          }
        }
      }
      ev_cols.push_back(std::move(v));
    }
    Matrix ev = Matrix::from_columns(a.dim(), ev_cols);
    auto   t1o = t1.bimodule.module.orders();
    bool   ev_ok = bijective(ev, t1o, a.orders());
    for (std::size_t i = 0; ev_ok && i < a.dim(); ++i) {
      auto e = a.module().basis_vector(i);
      ev_ok  = zmod::multiply(ev, t1.bimodule.left_action[i], a.orders())
                  == zmod::multiply(a.left_matrix(e), ev, a.orders())
            && zmod::multiply(ev, t1.bimodule.right_action[i], a.orders())
                   == zmod::multiply(a.right_matrix(e), ev, a.orders());
    }
    if (!ev_ok) {
      rep.failing_stage = "evaluation";
      return rep;
    }
    auto ra = regular_bimodule(a);
    rep.evaluation = ModuleMap{t1.bimodule.module, ra.module, ev};

    // coevaluation N (x)_A M -> B through B -> End_A(M), b |-> (x |-> x b)
    Vec const        amb = repeat(mo, km);
    std::vector<Vec> beta;
    for (auto const& rb : m.right_action) {
      beta.push_back(matrix_to_columns(rb));
    }
    if (zmod::subgroup(b.orders(), zmod::kernel(Matrix::from_columns(amb.size(), beta), b.orders(), amb)).order()
        != 1) {
      rep.failing_stage = "coevaluation";
      return rep;
    }
    if (middle_tensor_order(n, m) != b.order()) {
      rep.failing_stage = "coevaluation";
      return rep;
    }
    auto t2 = tensor_bimodule(n, m, limits);
    std::vector<Vec> co_cols;
    for (auto const& w : t2.data.quotient.lift) {
      Vec theta(amb.size(), 0);
      for (std::size_t h = 0; h < phis.size(); ++h) {
        for (std::size_t i = 0; i < km; ++i) {
          Int c = w[h * km + i];
          if (c == 0) {
            continue;
          }
          // x |-> phi_h(x) m_i, column x = e_col
          for (std::size_t col = 0; col < km; ++col) {
            auto y = m.left_matrix(phis[h].column(col)).column(i);
            for (std::size_t r = 0; r < km; ++r) {
              auto& e = theta[col * km + r];
              e       = zmod::mod(e + c * y[r], mo[r]);
            }
          }
        }
      }
      auto y = zmod::solve(amb, beta, theta);
      if (!y) {
        rep.failing_stage = "coevaluation";
        return rep;
      }
      co_cols.push_back(zmod::reduce(std::move(*y), b.orders()));
    }
    Matrix co  = Matrix::from_columns(b.dim(), co_cols);
    auto   t2o = t2.bimodule.module.orders();
    bool   co_ok = bijective(co, t2o, b.orders());
    for (std::size_t j = 0; co_ok && j < b.dim(); ++j) {
      auto f = b.module().basis_vector(j);
      co_ok  = zmod::multiply(co, t2.bimodule.left_action[j], b.orders())
                  == zmod::multiply(b.left_matrix(f), co, b.orders())
            && zmod::multiply(co, t2.bimodule.right_action[j], b.orders())
                   == zmod::multiply(b.right_matrix(f), co, b.orders());
    }
    if (!co_ok) {
      rep.failing_stage = "coevaluation";
      return rep;
    }
    rep.coevaluation = ModuleMap{t2.bimodule.module, regular_bimodule(b).module, co};
    rep.invertible   = true;
    return rep;
  }

  // ---- Morita trivialization ---------------------------------------------------------

  std::optional<MoritaWitness> morita_trivialization(StructuredAlgebra const& a, std::uint64_t bound,
                                                     Limits const& limits) {
    auto const&       ring = a.ring();
    auto              loc  = local_decomposition(ring);
    std::size_t const f    = loc.size();
    std::vector<std::uint64_t> sizes;
    for (auto const& r : loc.local_factors) {
      sizes.push_back(r->order());
    }
    std::vector<std::size_t>     n(f, 1);
    std::optional<MoritaWitness> found;
    // |End(P)| = prod |R_i|^{n_i^2}, |P| = prod |R_i|^{n_i}
    std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t end_order,
                                                                             std::uint64_t p_order) {
      if (found) {
        return;
      }
      if (i == f) {
        if (end_order != a.order()) {
          return;
        }
        std::optional<FGModule> p;
        for (std::size_t j = 0; j < f; ++j) {
          auto piece = idempotent_module(ring, loc.primitive_idempotents[j]);
          for (std::size_t t = 0; t < n[j]; ++t) {
            p = p ? direct_sum(*p, piece, limits) : piece;
          }
        }
        auto end = end_algebra(*p, limits);
        auto iso = algebra_isomorphism(a, end.algebra, limits.iso_node_budget);
        if (iso) {
          found = MoritaWitness{a, *p, std::move(*iso), std::move(end)};
        }
        return;
      }
      for (std::size_t m = 1;; ++m) {
        std::uint64_t e = end_order, q = p_order;
        for (std::size_t t = 0; t < m * m; ++t) {
          e = zmod::saturating_mul(e, sizes[i]);
        }
        for (std::size_t t = 0; t < m; ++t) {
          q = zmod::saturating_mul(q, sizes[i]);
        }
        if (e > a.order() || q > bound) {
          break;
        }
        n[i] = m;
        rec(i + 1, e, q);
      }
    };
    rec(0, 1, 1);
    return found;
  }

  bool verify_witness(MoritaWitness const& w, Limits const& limits) {
    auto proj = is_projective(w.generator, limits);
    if (!proj.projective) {
      return false;
    }
    auto rank = rank_function(w.generator, local_decomposition(w.generator.ring()));
    if (std::any_of(rank.values.begin(), rank.values.end(), [](auto v) { return v == 0; })) {
      return false;
    }
    auto end = end_algebra(w.generator, limits);
    if (!same_algebra(end.algebra, w.iso.target) || !same_algebra(w.algebra, w.iso.source)) {
      return false;
    }
    return w.iso.is_homomorphism() && w.iso.is_bijective();
  }

  InversePath inverse_path(StructuredAlgebra const& a, Limits const& limits) {
    InversePath path;
    path.sandwich_bijective = sandwich_report(a).bijective();
    try {
      path.generator = is_generator(a.module(), limits).decision;
    } catch (ValidationError const&) {
      path.generator = false;  // not projective
      return path;
    }
    auto          end = end_algebra(a.module(), limits);
    MoritaWitness w{end.algebra, a.module(),
                    AlgebraMap{end.algebra, end.algebra, reduced_identity(end.algebra.orders())}, end};
    path.witness_valid = verify_witness(w, limits);
    return path;
  }

  // ---- enumeration ------------------------------------------------------------------

  namespace {

    // Every associative product on R^n with e_0 = 1 (R local), by backtracking
    // over the structure constants e_i e_j (i, j >= 1). An associativity triple
    // is tested as soon as every constant it touches is assigned.
    class StructureSearch {
     public:
      StructureSearch(FiniteCommRing const& r, std::size_t n) : _r(r), _n(n) {
        _c.assign(n * n, std::vector<element>(n, r.zero()));
        _known.assign(n * n, false);
        for (std::size_t i = 0; i < n; ++i) {
          _c[i][i]      = r.one();  // e_0 e_i = e_i
          _c[i * n][i]  = r.one();  // e_i e_0 = e_i
          _known[i]     = true;
          _known[i * n] = true;
        }
        for (std::size_t m = 1; m < n; ++m) {
          for (std::size_t i = 1; i < m; ++i) {
            _order.emplace_back(i, m);
            _order.emplace_back(m, i);
          }
          _order.emplace_back(m, m);
        }
        std::uint64_t v = 1;
        for (std::size_t t = 0; t < n; ++t) {
          v *= r.order();
        }
        _values = v;
      }

      void run(std::function<void(std::vector<std::vector<element>> const&)> const& visit) {
        _visit = &visit;
        rec(0);
      }

     private:
      bool ready(std::size_t a, std::size_t b, std::size_t d) const {
        std::size_t const n = _n;
        if (!_known[a * n + b] || !_known[b * n + d]) {
          return false;
        }
        for (std::size_t t = 0; t < n; ++t) {
          if (_c[a * n + b][t] != _r.zero() && !_known[t * n + d]) {
            return false;
          }
          if (_c[b * n + d][t] != _r.zero() && !_known[a * n + t]) {
            return false;
          }
        }
        return true;
      }

      bool associative(std::size_t a, std::size_t b, std::size_t d) const {
        std::size_t const n = _n;
        for (std::size_t q = 0; q < n; ++q) {
          element lhs = _r.zero(), rhs = _r.zero();
          for (std::size_t t = 0; t < n; ++t) {
            lhs = _r.add(lhs, _r.mul(_c[a * n + b][t], _c[t * n + d][q]));
            rhs = _r.add(rhs, _r.mul(_c[b * n + d][t], _c[a * n + t][q]));
          }
          if (lhs != rhs) {
            return false;
          }
        }
        return true;
      }

      bool consistent() const {
        for (std::size_t a = 1; a < _n; ++a) {
          for (std::size_t b = 1; b < _n; ++b) {
            for (std::size_t d = 1; d < _n; ++d) {
              if (ready(a, b, d) && !associative(a, b, d)) {
                return false;
              }
            }
          }
        }
        return true;
      }

      void rec(std::size_t k) {
        if (k == _order.size()) {
          (*_visit)(_c);
          return;
        }
        auto [i, j]           = _order[k];
        _known[i * _n + j]    = true;
        for (std::uint64_t v = 0; v < _values; ++v) {
          std::uint64_t x = v;
          for (std::size_t t = 0; t < _n; ++t) {
            _c[i * _n + j][t] = static_cast<element>(x % _r.order());
            x /= _r.order();
          }
          if (consistent()) {
            rec(k + 1);
          }
        }
        std::fill(_c[i * _n + j].begin(), _c[i * _n + j].end(), _r.zero());
        _known[i * _n + j] = false;
      }

      FiniteCommRing const&                                           _r;
      std::size_t                                                     _n;
      std::vector<std::vector<element>>                               _c;
      std::vector<bool>                                               _known;
      std::vector<std::pair<std::size_t, std::size_t>>                _order;
      std::uint64_t                                                   _values = 0;
      std::function<void(std::vector<std::vector<element>> const&)> const* _visit = nullptr;
    };

    // Least image of the constants under permutations of e_1, ..., e_{n-1}.
    std::vector<std::vector<element>> canonical(std::vector<std::vector<element>> const& c, std::size_t n) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      auto best = c;
      do {
        std::vector<std::vector<element>> p(n * n, std::vector<element>(n));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t q = 0; q < n; ++q) {
              p[perm[i] * n + perm[j]][perm[q]] = c[i * n + j][q];
            }
          }
        }
        best = std::min(best, p);
      } while (std::next_permutation(perm.begin() + 1, perm.end()));
      return best;
    }

    struct LocalAzumaya {
      std::vector<StructuredAlgebra> algebras;
      bool                           exhaustive = true;
      std::uint64_t                  examined   = 0;
    };

    bool is_square(std::size_t n, std::size_t& root) {
      for (root = 1; root * root < n; ++root) {
      }
      return root * root == n;
    }

    LocalAzumaya local_azumaya(RingPtr const& r, std::uint64_t bound, Limits const& limits) {
      LocalAzumaya out;
      std::uint64_t size = r->order();
      for (std::size_t n = 1; size <= bound; ++n, size = zmod::saturating_mul(size, r->order())) {
        std::set<std::vector<std::vector<element>>> seen;
        StructureSearch                             search(*r, n);
        search.run([&](std::vector<std::vector<element>> const& c) {
          ++out.examined;
          seen.insert(canonical(c, n));
        });
        std::size_t index = 0;
        for (auto const& c : seen) {
          auto a = algebra_from_free_constants(r, n, c, "A" + std::to_string(n) + "." + std::to_string(index++), limits);
          if (!is_azumaya(a, limits).azumaya) {
            continue;
          }
          bool duplicate = false;
          for (auto const& b : out.algebras) {
            try {
              if (algebra_isomorphism(a, b, limits.iso_node_budget)) {
                duplicate = true;
                break;
              }
            } catch (BudgetExceeded const&) {
              out.exhaustive = false;
            }
          }
          if (duplicate) {
            continue;
          }
          // name it after a matrix algebra when it is one
          std::size_t root = 0;
          if (is_square(n, root)) {
            try {
              if (algebra_isomorphism(a, matrix_algebra(r, root, limits), limits.iso_node_budget)) {
                a = a.with_descriptor(matrix_algebra(r, root, limits).descriptor());
              }
            } catch (BudgetExceeded const&) {
            }
          }
          out.algebras.push_back(std::move(a));
        }
      }
      return out;
    }

  }  // namespace

  AzumayaEnumeration enumerate_azumaya(RingPtr const& ring, std::uint64_t bound, Limits const& limits) {
    AzumayaEnumeration out;
    out.bound      = bound;
    auto        loc = local_decomposition(ring);
    std::size_t f   = loc.size();
    std::vector<std::vector<StructuredAlgebra>> per_factor;
    for (std::size_t i = 0; i < f; ++i) {
      std::uint64_t others = 1;
      for (std::size_t j = 0; j < f; ++j) {
        if (j != i) {
          others *= loc.local_factors[j]->order();
        }
      }
      auto local = local_azumaya(loc.local_factors[i], bound / others, limits);
      out.exhaustive = out.exhaustive && local.exhaustive;
      out.structures_examined += local.examined;
      std::vector<StructuredAlgebra> lifted;
      for (auto const& a : local.algebras) {
        lifted.push_back(restrict_scalars(loc.projections[i], a));
      }
      per_factor.push_back(std::move(lifted));
    }
    // A = prod_i e_i A
    std::vector<std::size_t> pick(f, 0);
    std::function<void(std::size_t, std::optional<StructuredAlgebra>)> rec =
        [&](std::size_t i, std::optional<StructuredAlgebra> acc) {
          if (i == f) {
            if (acc && acc->order() <= bound) {
              out.algebras.push_back(*acc);
            }
            return;
          }
          for (auto const& a : per_factor[i]) {
            rec(i + 1, acc ? algebra_product(*acc, a, limits) : a);
          }
        };
    rec(0, std::nullopt);
    if (f == 1) {
      // the local factor is R itself up to the projection; keep R's name
      for (auto& a : out.algebras) {
        if (a.order() == ring->order()) {
          a = a.with_descriptor(ring->descriptor());
        } else {
          auto d = a.descriptor();
          auto p = d.find('(');
          if (d.rfind("M_", 0) == 0 && p != std::string::npos) {
            a = a.with_descriptor(d.substr(0, p) + "(" + ring->descriptor() + ")");
          }
        }
      }
    }
    return out;
  }

}  // namespace brauerk
