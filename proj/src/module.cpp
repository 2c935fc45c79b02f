#include "brauerk/module.hpp"

#include <algorithm>
#include <limits>

#include "brauerk/error.hpp"

namespace brauerk {

  using zmod::Int;
  using zmod::Matrix;
  using zmod::Vec;

  namespace {

    void check_module_order(std::uint64_t order, Limits const& limits, std::string const& stage) {
      if (order > limits.max_module_order) {
        throw CapExceeded(stage, stage + ": order " + std::to_string(order) + " exceeds max_module_order "
                                     + std::to_string(limits.max_module_order));
      }
    }

    Matrix reduce_rows(Matrix m, Vec const& orders) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          m(i, j) = zmod::mod(m(i, j), orders[i]);
        }
      }
      return m;
    }

    Matrix left_multiplication(FiniteCommRing const& r, FiniteCommRing::element a) {
      auto const& basis = r.additive().basis();
      std::vector<Vec> cols;
      for (auto b : basis) {
        cols.push_back(r.coords(r.mul(a, b)));
      }
      return Matrix::from_columns(basis.size(), cols);
    }

    Matrix block_diagonal(std::vector<Matrix> const& blocks) {
      std::size_t n = 0;
      for (auto const& b : blocks) {
        n += b.rows();
      }
      Matrix      m(n, n);
      std::size_t off = 0;
      for (auto const& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
          for (std::size_t j = 0; j < b.cols(); ++j) {
            m(off + i, off + j) = b(i, j);
          }
        }
        off += b.rows();
      }
      return m;
    }

    std::string power_name(std::string const& base, std::size_t n) {
      if (n == 1) {
        return base;
      }
      bool simple = base.find(' ') == std::string::npos;
      return (simple ? base : "(" + base + ")") + "^" + std::to_string(n);
    }

    // Generators of the ideal m_i as an additive group.
    std::vector<FiniteCommRing::element> ideal_generators(FiniteCommRing const&                        r,
                                                          std::vector<FiniteCommRing::element> const& ideal) {
      std::vector<Vec> coords;
      for (auto x : ideal) {
        coords.push_back(r.coords(x));
      }
      auto                                 sub = zmod::subgroup(r.additive().cyclic_orders(), coords);
      std::vector<FiniteCommRing::element> gens;
      for (auto const& b : sub.basis) {
        gens.push_back(r.from_coords(b));
      }
      return gens;
    }

    std::vector<Vec> ideal_times_module(FGModule const& m, LocalDecomposition const& loc, std::size_t i) {
      std::vector<Vec> rels;
      for (auto x : ideal_generators(*m.ring(), loc.maximal_ideals[i])) {
        auto a = m.act_matrix(x);
        for (std::size_t j = 0; j < m.dim(); ++j) {
          rels.push_back(a.column(j));
        }
      }
      return rels;
    }

  }  // namespace

  // ---- FGModule ---------------------------------------------------------------

  FGModule::FGModule(RingPtr ring, Vec orders, std::vector<Matrix> basis_action, std::string descriptor,
                     Limits const& limits)
      : _ring(std::move(ring)), _orders(std::move(orders)), _action(std::move(basis_action)),
        _descriptor(std::move(descriptor)) {
    auto const& r = *_ring;
    for (auto o : _orders) {
      if (o < 1) {
        throw ValidationError("module cyclic orders must be positive");
      }
      if (r.characteristic() % o != 0) {
        throw ValidationError("module cyclic order does not divide the characteristic of the ring");
      }
    }
    check_module_order(order(), limits, "module");
    std::size_t const k = dim();
    if (_action.size() != r.additive().basis().size()) {
      throw ValidationError("module needs one action matrix per additive generator of the ring");
    }
    for (auto& a : _action) {
      if (a.rows() != k || a.cols() != k) {
        throw ValidationError("module action matrix has the wrong shape");
      }
      a = reduce_rows(a, _orders);
      for (std::size_t i = 0; i < k; ++i) {
        if (!zmod::is_zero(zmod::scale(_orders[i], a.column(i), _orders), _orders)) {
          throw ValidationError("module action is not well defined on a cyclic generator");
        }
      }
    }
    if (act_matrix(r.one()) != reduce_rows(Matrix::identity(k), _orders)) {
      throw ValidationError("1 does not act as the identity");
    }
    auto const& basis = r.additive().basis();
    for (std::size_t s = 0; s < basis.size(); ++s) {
      for (std::size_t t = 0; t < basis.size(); ++t) {
        if (act_matrix(r.mul(basis[s], basis[t])) != zmod::multiply(_action[s], _action[t], _orders)) {
          throw ValidationError("module action is not multiplicative");
        }
      }
    }
  }

  Matrix FGModule::act_matrix(FiniteCommRing::element r) const {
    auto const&       c = _ring->coords(r);
    std::size_t const k = dim();
    Matrix            m(k, k);
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (c[s] == 0) {
        continue;
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          m(i, j) += c[s] * _action[s](i, j);
        }
      }
    }
    return reduce_rows(m, _orders);
  }

  Vec FGModule::act(FiniteCommRing::element r, Vec const& x) const {
    return zmod::apply(act_matrix(r), x, _orders);
  }

  void ModuleMap::validate() const {
    if (source.ring().get() != target.ring().get()) {
      throw ValidationError("module map between modules over different rings");
    }
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) {
      throw ValidationError("module map matrix has the wrong shape");
    }
    for (std::size_t i = 0; i < source.dim(); ++i) {
      if (!zmod::is_zero(zmod::scale(source.orders()[i], matrix.column(i), target.orders()), target.orders())) {
        throw ValidationError("module map is not well defined");
      }
    }
    for (std::size_t s = 0; s < source.basis_actions().size(); ++s) {
      if (zmod::multiply(matrix, source.basis_action(s), target.orders())
          != zmod::multiply(target.basis_action(s), matrix, target.orders())) {
        throw ValidationError("module map is not R-linear");
      }
    }
  }

  bool ModuleMap::is_bijective() const {
    if (source.order() != target.order()) {
      return false;
    }
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < matrix.cols(); ++i) {
      cols.push_back(matrix.column(i));
    }
    return zmod::subgroup(target.orders(), cols).order() == target.order();
  }

  // ---- generic constructions ----------------------------------------------------

  Matrix columns_to_matrix(Vec const& v, std::size_t src_dim, std::size_t tgt_dim) {
    Matrix m(tgt_dim, src_dim);
    for (std::size_t i = 0; i < src_dim; ++i) {
      for (std::size_t r = 0; r < tgt_dim; ++r) {
        m(r, i) = v[i * tgt_dim + r];
      }
    }
    return m;
  }

  Vec matrix_to_columns(Matrix const& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        v.push_back(m(r, i));
      }
    }
    return v;
  }

  zmod::Subgroup intertwiners(Vec const& src, Vec const& tgt,
                              std::vector<std::pair<Matrix, Matrix>> const& constraints) {
    std::size_t const k = src.size();
    std::size_t const l = tgt.size();
    Vec               ambient;
    for (std::size_t i = 0; i < k; ++i) {
      ambient.insert(ambient.end(), tgt.begin(), tgt.end());
    }
    if (k == 0 || l == 0) {
      return zmod::subgroup(ambient, {});
    }
    // group homomorphisms: column i killed by src[i]
    std::vector<Vec> hom_gens;
    for (std::size_t i = 0; i < k; ++i) {
      Matrix times(l, l);
      for (std::size_t r = 0; r < l; ++r) {
        times(r, r) = zmod::mod(src[i], tgt[r]);
      }
      for (auto const& g : zmod::kernel(times, tgt, tgt)) {
        Vec v(k * l, 0);
        std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(i * l));
        hom_gens.push_back(std::move(v));
      }
    }
    auto homs = zmod::subgroup(ambient, hom_gens);
    if (constraints.empty()) {
      return homs;
    }
    Vec cond_orders;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      cond_orders.insert(cond_orders.end(), ambient.begin(), ambient.end());
    }
    std::vector<Vec> cols;
    for (auto const& h : homs.basis) {
      Matrix f = columns_to_matrix(h, k, l);
      Vec    cond;
      cond.reserve(cond_orders.size());
      for (auto const& [x, y] : constraints) {
        Matrix fx = zmod::multiply(f, x, tgt);
        Matrix yf = zmod::multiply(y, f, tgt);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t r = 0; r < l; ++r) {
            cond.push_back(zmod::mod(fx(r, i) - yf(r, i), tgt[r]));
          }
        }
      }
      cols.push_back(std::move(cond));
    }
    auto             map = Matrix::from_columns(cond_orders.size(), cols);
    std::vector<Vec> kernel_gens;
    for (auto const& g : zmod::kernel(map, homs.orders, cond_orders)) {
      kernel_gens.push_back(homs.embed(g));
    }
    return zmod::subgroup(ambient, kernel_gens);
  }

  Vec BalancedTensor::pure(Vec const& x, Vec const& y) const {
    std::size_t const l = right_orders.size();
    Vec               v(ambient_orders.size(), 0);
    for (std::size_t i = 0; i < left_orders.size(); ++i) {
      if (x[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < l; ++j) {
        v[i * l + j] = zmod::mod(x[i] * y[j], ambient_orders[i * l + j]);
      }
    }
    return quotient.project(v);
  }

  Matrix BalancedTensor::induced(Matrix const& x, Matrix const& y) const {
    std::size_t const k = left_orders.size();
    std::size_t const l = right_orders.size();
    std::vector<Vec>  cols;
    for (auto const& w : quotient.lift) {
      Vec v(ambient_orders.size(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
          Int c = w[i * l + j];
          if (c == 0) {
            continue;
          }
          for (std::size_t a = 0; a < k; ++a) {
            Int xa = x(a, i);
            if (xa == 0) {
              continue;
            }
            for (std::size_t b = 0; b < l; ++b) {
              Int yb = y(b, j);
              if (yb != 0) {
                auto& e = v[a * l + b];
                e       = zmod::mod(e + c * xa * yb, ambient_orders[a * l + b]);
              }
            }
          }
        }
      }
      cols.push_back(quotient.project(v));
    }
    return Matrix::from_columns(quotient.orders.size(), cols);
  }

  BalancedTensor balanced_tensor(Vec const& left, Vec const& right,
                                 std::vector<std::pair<Matrix, Matrix>> const& relations, Limits const&) {
    BalancedTensor t;
    t.left_orders       = left;
    t.right_orders      = right;
    std::size_t const k = left.size();
    std::size_t const l = right.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        t.ambient_orders.push_back(zmod::gcd(left[i], right[j]));
      }
    }
    std::vector<Vec> rels;
    for (auto const& [x, y] : relations) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
          Vec v(k * l, 0);
          for (std::size_t a = 0; a < k; ++a) {
            v[a * l + j] += x(a, i);
          }
          for (std::size_t b = 0; b < l; ++b) {
            v[i * l + b] -= y(b, j);
          }
          rels.push_back(zmod::reduce(std::move(v), t.ambient_orders));
        }
      }
    }
    t.quotient = zmod::quotient(t.ambient_orders, rels);
    return t;
  }

  Matrix restrict_operator(zmod::Subgroup const& sub, Matrix const& op) {
    std::vector<Vec> cols;
    for (auto const& b : sub.basis) {
      auto c = sub.coordinates(zmod::apply(op, b, sub.ambient_orders));
      if (!c) {
        throw Error("operator does not preserve the subgroup");
      }
      cols.push_back(std::move(*c));
    }
    return Matrix::from_columns(sub.orders.size(), cols);
  }

  // ---- modules -------------------------------------------------------------------

  FGModule free_module(RingPtr const& ring, std::size_t n, Limits const& limits) {
    auto const&         r  = *ring;
    auto const&         ro = r.additive().cyclic_orders();
    Vec                 orders;
    for (std::size_t t = 0; t < n; ++t) {
      orders.insert(orders.end(), ro.begin(), ro.end());
    }
    check_module_order(zmod::group_order(orders), limits, "free_module");
    std::vector<Matrix> action;
    for (auto b : r.additive().basis()) {
      action.push_back(block_diagonal(std::vector<Matrix>(n, left_multiplication(r, b))));
    }
    std::string desc = n == 0 ? "0" : power_name(r.descriptor(), n);
    return FGModule(ring, std::move(orders), std::move(action), desc, limits);
  }

  FGModule direct_sum(FGModule const& m, FGModule const& n, Limits const& limits) {
    if (m.ring().get() != n.ring().get()) {
      throw ValidationError("direct sum of modules over different rings");
    }
    Vec orders = m.orders();
    orders.insert(orders.end(), n.orders().begin(), n.orders().end());
    check_module_order(zmod::group_order(orders), limits, "direct_sum");
    std::vector<Matrix> action;
    for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
      action.push_back(block_diagonal({m.basis_action(s), n.basis_action(s)}));
    }
    return FGModule(m.ring(), std::move(orders), std::move(action), m.descriptor() + " + " + n.descriptor(),
                    limits);
  }

  zmod::Subgroup submodule(FGModule const& m, std::vector<Vec> const& gens) {
    std::vector<Vec> all;
    for (auto const& g : gens) {
      for (auto const& a : m.basis_actions()) {
        all.push_back(zmod::apply(a, g, m.orders()));
      }
    }
    return zmod::subgroup(m.orders(), all);
  }

  FGModule submodule_module(FGModule const& m, zmod::Subgroup const& sub, std::string descriptor) {
    std::vector<Matrix> action;
    for (auto const& a : m.basis_actions()) {
      action.push_back(restrict_operator(sub, a));
    }
    return FGModule(m.ring(), sub.orders, std::move(action), std::move(descriptor));
  }

  FGModule idempotent_module(RingPtr const& ring, FiniteCommRing::element e) {
    auto r1  = free_module(ring, 1);
    auto sub = submodule(r1, {ring->coords(e)});
    return submodule_module(r1, sub, ring->label(e) + "R");
  }

  QuotientModule quotient_module(FGModule const& m, std::vector<Vec> const& gens, std::string descriptor) {
    std::vector<Vec> rels;
    for (auto const& g : gens) {
      for (auto const& a : m.basis_actions()) {
        rels.push_back(zmod::apply(a, g, m.orders()));
      }
    }
    auto                q = zmod::quotient(m.orders(), rels);
    std::vector<Matrix> action;
    for (auto const& a : m.basis_actions()) {
      std::vector<Vec> cols;
      for (auto const& l : q.lift) {
        cols.push_back(q.project(zmod::apply(a, l, m.orders())));
      }
      action.push_back(Matrix::from_columns(q.orders.size(), cols));
    }
    FGModule module(m.ring(), q.orders, std::move(action), std::move(descriptor));
    return QuotientModule{std::move(module), std::move(q)};
  }

  HomModule hom_module(FGModule const& m, FGModule const& n, Limits const& limits) {
    std::vector<std::pair<Matrix, Matrix>> constraints;
    for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
      constraints.emplace_back(m.basis_action(s), n.basis_action(s));
    }
    auto sub = intertwiners(m.orders(), n.orders(), constraints);
    check_module_order(sub.order(), limits, "hom_module");
    std::vector<Matrix> action;
    for (auto const& a : n.basis_actions()) {
      std::vector<Vec> cols;
      for (auto const& h : sub.basis) {
        Matrix f = zmod::multiply(a, columns_to_matrix(h, m.dim(), n.dim()), n.orders());
        auto   c = sub.coordinates(matrix_to_columns(f));
        if (!c) {
          throw Error("Hom is not closed under the ring action");
        }
        cols.push_back(std::move(*c));
      }
      action.push_back(Matrix::from_columns(sub.orders.size(), cols));
    }
    FGModule module(m.ring(), sub.orders, std::move(action),
                    "Hom(" + m.descriptor() + ", " + n.descriptor() + ")", limits);
    return HomModule{std::move(module), std::move(sub), m.dim(), n.dim()};
  }

  TensorModule tensor_over_R(FGModule const& m, FGModule const& n, Limits const& limits) {
    if (m.ring().get() != n.ring().get()) {
      throw ValidationError("tensor product of modules over different rings");
    }
    std::vector<std::pair<Matrix, Matrix>> rels;
    for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
      rels.emplace_back(m.basis_action(s), n.basis_action(s));
    }
    auto data = balanced_tensor(m.orders(), n.orders(), rels, limits);
    check_module_order(data.order(), limits, "tensor_over_R");
    std::vector<Matrix> action;
    auto                id = Matrix::identity(n.dim());
    for (auto const& a : m.basis_actions()) {
      action.push_back(data.induced(a, id));
    }
    FGModule module(m.ring(), data.quotient.orders, std::move(action),
                    m.descriptor() + " (x) " + n.descriptor(), limits);
    return TensorModule{std::move(module), std::move(data)};
  }

  std::uint64_t fiber_order(FGModule const& m, LocalDecomposition const& loc, std::size_t i) {
    return zmod::group_order(zmod::quotient(m.orders(), ideal_times_module(m, loc, i)).orders);
  }

  std::size_t fiber_dimension(FGModule const& m, LocalDecomposition const& loc, std::size_t i) {
    std::uint64_t const q = loc.residue_fields[i]->order();
    std::uint64_t       o = fiber_order(m, loc, i);
    std::size_t         d = 0;
    while (o > 1) {
      if (o % q != 0) {
        throw Error("fiber order is not a power of the residue field order");
      }
      o /= q;
      ++d;
    }
    return d;
  }

  std::vector<Vec> minimal_generators(FGModule const& m, LocalDecomposition const& loc) {
    auto const&                   r = *m.ring();
    std::vector<std::vector<Vec>> chosen(loc.size());
    std::size_t                   n = 0;
    for (std::size_t i = 0; i < loc.size(); ++i) {
      auto          rels    = ideal_times_module(m, loc, i);
      std::uint64_t current = zmod::subgroup(m.orders(), rels).order();
      auto          e       = loc.primitive_idempotents[i];
      for (std::size_t j = 0; j < m.dim() && current < m.order(); ++j) {
        Vec  c    = m.act(e, m.basis_vector(j));
        auto next = rels;
        for (auto const& a : m.basis_actions()) {
          next.push_back(zmod::apply(a, c, m.orders()));
        }
        std::uint64_t order = zmod::subgroup(m.orders(), next).order();
        if (order > current) {
          chosen[i].push_back(c);
          rels    = std::move(next);
          current = order;
        }
      }
      n = std::max(n, chosen[i].size());
    }
    std::vector<Vec> gens(n, m.zero());
    for (std::size_t i = 0; i < loc.size(); ++i) {
      for (std::size_t t = 0; t < chosen[i].size(); ++t) {
        gens[t] = m.add(gens[t], chosen[i][t]);
      }
    }
    if (submodule(m, gens).order() != m.order()) {
      throw Error("minimal generator selection does not generate the module");
    }
    (void)r;
    return gens;
  }

  ModuleMap surjection_from_free(FGModule const& m, std::vector<Vec> const& gens, Limits const& limits) {
    auto             f = free_module(m.ring(), gens.size(), limits);
    std::vector<Vec> cols;
    for (auto const& g : gens) {
      for (auto const& a : m.basis_actions()) {
        cols.push_back(zmod::apply(a, g, m.orders()));
      }
    }
    return ModuleMap{f, m, Matrix::from_columns(m.dim(), cols)};
  }

  ProjectivityReport is_projective(FGModule const& m, Limits const& limits) {
    ProjectivityReport rep;
    auto               loc = local_decomposition(m.ring());
    rep.generators         = minimal_generators(m, loc);
    rep.n                  = rep.generators.size();
    Limits raised          = limits;
    raised.max_module_order = std::numeric_limits<std::uint64_t>::max();
    auto pi = surjection_from_free(m, rep.generators, raised);
    auto const& f = pi.source;

    std::vector<std::pair<Matrix, Matrix>> constraints;
    for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
      constraints.emplace_back(m.basis_action(s), f.basis_action(s));
    }
    auto sections = intertwiners(m.orders(), f.orders(), constraints);
    Vec  ambient;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      ambient.insert(ambient.end(), m.orders().begin(), m.orders().end());
    }
    std::vector<Vec> cols;
    for (auto const& h : sections.basis) {
      Matrix sigma = columns_to_matrix(h, m.dim(), f.dim());
      cols.push_back(matrix_to_columns(zmod::multiply(pi.matrix, sigma, m.orders())));
    }
    auto target = matrix_to_columns(reduce_rows(Matrix::identity(m.dim()), m.orders()));
    auto sol    = zmod::solve(ambient, cols, target);
    if (!sol) {
      return rep;
    }
    Vec sigma_cols(f.dim() * m.dim(), 0);
    for (std::size_t s = 0; s < sections.basis.size(); ++s) {
      for (std::size_t t = 0; t < sigma_cols.size(); ++t) {
        sigma_cols[t] += (*sol)[s] * sections.basis[s][t];
      }
    }
    Matrix sigma = reduce_rows(columns_to_matrix(sigma_cols, m.dim(), f.dim()), f.orders());
    ModuleMap split{m, f, sigma};
    split.validate();
    if (reduce_rows(zmod::multiply(pi.matrix, sigma, m.orders()), m.orders())
        != reduce_rows(Matrix::identity(m.dim()), m.orders())) {
      throw Error("splitting certificate does not compose to the identity");
    }
    rep.projective = true;
    rep.splitting  = std::move(split);
    return rep;
  }

  RankFunction rank_function(FGModule const& m, LocalDecomposition const& loc) {
    RankFunction rf;
    for (std::size_t i = 0; i < loc.size(); ++i) {
      rf.values.push_back(fiber_dimension(m, loc, i));
    }
    return rf;
  }

  RankFunction rank_function(FGModule const& m, Limits const& limits) {
    if (!is_projective(m, limits).projective) {
      throw ValidationError("rank function requested for a module that is not projective");
    }
    return rank_function(m, local_decomposition(m.ring()));
  }

  std::optional<ModuleMap> free_basis(FGModule const& m, Limits const& limits) {
    std::uint64_t const q = m.ring()->order();
    std::uint64_t       o = m.order();
    std::size_t         n = 0;
    while (o > 1) {
      if (o % q != 0) {
        return std::nullopt;
      }
      o /= q;
      ++n;
    }
    auto loc  = local_decomposition(m.ring());
    auto gens = minimal_generators(m, loc);
    if (gens.size() > n) {
      return std::nullopt;
    }
    gens.resize(n, m.zero());
    Limits raised           = limits;
    raised.max_module_order = std::max<std::uint64_t>(limits.max_module_order, m.order());
    auto pi = surjection_from_free(m, gens, raised);
    if (!pi.is_bijective()) {
      throw Error("generating set of free size does not give a bijection");
    }
    return pi;
  }

  GeneratorReport is_generator(FGModule const& m, Limits const& limits) {
    if (!is_projective(m, limits).projective) {
      throw ValidationError("generator test requires a projective module");
    }
    GeneratorReport rep;
    auto            loc = local_decomposition(m.ring());
    auto const&     r   = *m.ring();
    rep.rank            = rank_function(m, loc);
    rep.decision        = std::all_of(rep.rank.values.begin(), rep.rank.values.end(),
                                      [](std::size_t v) { return v > 0; });

    // (1) trace ideal: values of all f in Hom(M, R) on generators
    {
      auto             r1 = free_module(m.ring(), 1);
      std::vector<std::pair<Matrix, Matrix>> constraints;
      for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
        constraints.emplace_back(m.basis_action(s), r1.basis_action(s));
      }
      auto             duals = intertwiners(m.orders(), r1.orders(), constraints);
      std::vector<Vec> values;
      for (auto const& h : duals.basis) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
          values.push_back(Vec(h.begin() + static_cast<std::ptrdiff_t>(j * r1.dim()),
                               h.begin() + static_cast<std::ptrdiff_t>((j + 1) * r1.dim())));
        }
      }
      auto trace             = zmod::subgroup(r1.orders(), values);
      rep.trace_contains_one = trace.coordinates(r.coords(r.one())).has_value();
    }

    // (3) search Q = sum_i (e_i R)^{q_i}, q_i <= 4, with P (x) Q free
    std::vector<FGModule> pieces;
    for (auto e : loc.primitive_idempotents) {
      pieces.push_back(idempotent_module(m.ring(), e));
    }
    std::size_t const        k = loc.size();
    std::size_t const        qmax = 4;
    std::vector<std::size_t> q(k, 0);
    bool                     capped = false;
    auto                     next   = [&]() {
      for (std::size_t i = 0; i < k; ++i) {
        if (++q[i] <= qmax) {
          return true;
        }
        q[i] = 0;
      }
      return false;
    };
    while (next()) {
      try {
        std::optional<FGModule> qm;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t c = 0; c < q[i]; ++c) {
            qm = qm ? direct_sum(*qm, pieces[i], limits) : pieces[i];
          }
        }
        auto pq = tensor_over_R(m, *qm, limits);
        if (pq.module.order() == 1) {
          continue;
        }
        if (auto basis = free_basis(pq.module, limits)) {
          rep.witness                = GeneratorReport::Witness::found;
          rep.witness_multiplicities = q;
          rep.witness_rank           = basis->source.dim() / r.additive().basis().size();
          break;
        }
      } catch (CapExceeded const&) {
        capped = true;
      }
    }
    if (rep.witness != GeneratorReport::Witness::found && capped) {
      rep.witness = GeneratorReport::Witness::not_found_within_bound;
      rep.note    = "tensor complement search hit the module size cap";
    }
    return rep;
  }

  std::optional<ModuleMap> module_isomorphism(FGModule const& m, FGModule const& n, std::uint64_t budget,
                                              Limits const&) {
    if (m.ring().get() != n.ring().get() || m.order() != n.order()
        || zmod::invariant_factors(m.orders()) != zmod::invariant_factors(n.orders())) {
      return std::nullopt;
    }
    auto loc = local_decomposition(m.ring());
    for (std::size_t i = 0; i < loc.size(); ++i) {
      if (fiber_order(m, loc, i) != fiber_order(n, loc, i)) {
        return std::nullopt;
      }
    }
    std::vector<std::pair<Matrix, Matrix>> constraints;
    for (std::size_t s = 0; s < m.basis_actions().size(); ++s) {
      constraints.emplace_back(m.basis_action(s), n.basis_action(s));
    }
    auto homs  = intertwiners(m.orders(), n.orders(), constraints);
    auto count = homs.order();
    if (count > budget) {
      throw BudgetExceeded("module isomorphism",
                           "Hom set of size " + std::to_string(count) + " exceeds the search budget");
    }
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      ModuleMap f{m, n, columns_to_matrix(homs.embed(zmod::decode(idx, homs.orders)), m.dim(), n.dim())};
      if (f.is_bijective()) {
        return f;
      }
    }
    return std::nullopt;
  }

}  // namespace brauerk
