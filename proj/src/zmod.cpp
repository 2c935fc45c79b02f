#include "brauerk/zmod.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <utility>

#include "brauerk/error.hpp"

namespace brauerk::zmod {

  Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  Matrix Matrix::from_columns(std::size_t rows, std::vector<Vec> const& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < rows; ++i) {
        m(i, j) = cols[j][i];
      }
    }
    return m;
  }

  Matrix Matrix::from_rows(std::size_t cols, std::vector<Vec> const& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  Vec Matrix::column(std::size_t j) const {
    Vec v(_rows);
    for (std::size_t i = 0; i < _rows; ++i) {
      v[i] = (*this)(i, j);
    }
    return v;
  }

  Int mod(Int a, Int n) noexcept {
    Int r = a % n;
    return r < 0 ? r + n : r;
  }

  Int gcd(Int a, Int b) noexcept {
    a = std::abs(a);
    b = std::abs(b);
    while (b != 0) {
      a %= b;
      std::swap(a, b);
    }
    return a;
  }

  Int lcm(Int a, Int b) noexcept {
    if (a == 0 || b == 0) {
      return 0;
    }
    return a / gcd(a, b) * b;
  }

  Int lcm_of(std::span<Int const> values) noexcept {
    Int result = 1;
    for (Int v : values) {
      result = lcm(result, v);
    }
    return result;
  }

  bool is_prime(Int n) noexcept {
    if (n < 2) {
      return false;
    }
    for (Int d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  ExtGcd ext_gcd(Int a, Int b) noexcept {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
      Int q = old_r / r;
      old_r = std::exchange(r, old_r - q * r);
      old_s = std::exchange(s, old_s - q * s);
      old_t = std::exchange(t, old_t - q * t);
    }
    if (old_r < 0) {
      return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
  }

  std::optional<Int> inverse(Int a, Int n) noexcept {
    if (n == 1) {
      return 0;
    }
    auto e = ext_gcd(mod(a, n), n);
    if (e.g != 1) {
      return std::nullopt;
    }
    return mod(e.x, n);
  }

  std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return r;
  }

  std::uint64_t group_order(std::span<Int const> orders) noexcept {
    std::uint64_t result = 1;
    for (Int o : orders) {
      result = saturating_mul(result, static_cast<std::uint64_t>(o));
    }
    return result;
  }

  std::uint64_t encode(std::span<Int const> coords, std::span<Int const> orders) {
    std::uint64_t index = 0;
    for (std::size_t i = orders.size(); i-- > 0;) {
      index = index * static_cast<std::uint64_t>(orders[i])
              + static_cast<std::uint64_t>(mod(coords[i], orders[i]));
    }
    return index;
  }

  Vec decode(std::uint64_t index, std::span<Int const> orders) {
    Vec v(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      auto o = static_cast<std::uint64_t>(orders[i]);
      v[i]   = static_cast<Int>(index % o);
      index /= o;
    }
    return v;
  }

  Vec reduce(Vec v, std::span<Int const> orders) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = mod(v[i], orders[i]);
    }
    return v;
  }

  bool is_zero(std::span<Int const> v, std::span<Int const> orders) noexcept {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mod(v[i], orders[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  Vec add(std::span<Int const> a, std::span<Int const> b, std::span<Int const> orders) {
    Vec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      v[i] = mod(a[i] + b[i], orders[i]);
    }
    return v;
  }

  Vec scale(Int c, std::span<Int const> a, std::span<Int const> orders) {
    Vec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      v[i] = mod(c * a[i], orders[i]);
    }
    return v;
  }

  Vec apply(Matrix const& m, std::span<Int const> x, std::span<Int const> target_orders) {
    Vec v(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Int acc = 0;
      auto row = m.row(i);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        acc += row[j] * x[j];
      }
      v[i] = mod(acc, target_orders[i]);
    }
    return v;
  }

  Matrix multiply(Matrix const& a, Matrix const& b, std::span<Int const> target_orders) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        Int aik = a(i, k);
        if (aik == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          c(i, j) += aik * b(k, j);
        }
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) = mod(c(i, j), target_orders[i]);
      }
    }
    return c;
  }

  namespace {

    // Elementary operations on a matrix held modulo n.
    void row_axpy(Matrix& m, std::size_t dst, Int c, std::size_t src, Int n) {
      auto d = m.row(dst);
      auto s = m.row(src);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        d[j] = mod(d[j] + c * s[j], n);
      }
    }

    // (row_a, row_b) <- (x*row_a + y*row_b, u*row_a + v*row_b)
    void row_mix(Matrix& m, std::size_t a, std::size_t b, Int x, Int y, Int u, Int v, Int n) {
      auto ra = m.row(a);
      auto rb = m.row(b);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Int na = mod(x * ra[j] + y * rb[j], n);
        Int nb = mod(u * ra[j] + v * rb[j], n);
        ra[j]  = na;
        rb[j]  = nb;
      }
    }

    void col_axpy(Matrix& m, std::size_t dst, Int c, std::size_t src, Int n) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        m(i, dst) = mod(m(i, dst) + c * m(i, src), n);
      }
    }

    void col_mix(Matrix& m, std::size_t a, std::size_t b, Int x, Int y, Int u, Int v, Int n) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Int na  = mod(x * m(i, a) + y * m(i, b), n);
        Int nb  = mod(u * m(i, a) + v * m(i, b), n);
        m(i, a) = na;
        m(i, b) = nb;
      }
    }

    void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      auto ra = m.row(a);
      auto rb = m.row(b);
      std::swap_ranges(ra.begin(), ra.end(), rb.begin());
    }

    void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::swap(m(i, a), m(i, b));
      }
    }

  }  // namespace

  Smith smith(Matrix m, Int n, bool track_rows) {
    std::size_t const r = m.rows();
    std::size_t const c = m.cols();
    for (std::size_t i = 0; i < r; ++i) {
      for (auto& x : m.row(i)) {
        x = mod(x, n);
      }
    }
    Smith s;
    s.diag.assign(c, 0);
    s.col     = Matrix::identity(c);
    s.col_inv = Matrix::identity(c);
    if (track_rows) {
      s.row = Matrix::identity(r);
    }
    if (n == 1) {
      return s;
    }

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      // Pivot: the entry generating the largest ideal, ties by value.
      std::size_t pi = r, pj = c;
      Int         best_g = 0, best_v = 0;
      for (std::size_t i = t; i < r; ++i) {
        auto row = m.row(i);
        for (std::size_t j = t; j < c; ++j) {
          if (row[j] == 0) {
            continue;
          }
          Int g = gcd(row[j], n);
          if (pi == r || g < best_g || (g == best_g && row[j] < best_v)) {
            pi = i, pj = j, best_g = g, best_v = row[j];
            if (g == 1 && row[j] == 1) {
              break;
            }
          }
        }
        if (best_g == 1 && best_v == 1) {
          break;
        }
      }
      if (pi == r) {
        break;
      }
      swap_rows(m, t, pi);
      if (track_rows) {
        swap_rows(s.row, t, pi);
      }
      swap_cols(m, t, pj);
      swap_cols(s.col, t, pj);
      swap_rows(s.col_inv, t, pj);

      bool clean = false;
      while (!clean) {
        for (std::size_t i = t + 1; i < r; ++i) {
          Int b = m(i, t);
          if (b == 0) {
            continue;
          }
          Int a = m(t, t);
          if (b % a == 0) {
            Int q = b / a;
            row_axpy(m, i, -q, t, n);
            if (track_rows) {
              row_axpy(s.row, i, -q, t, n);
            }
          } else {
            auto e = ext_gcd(a, b);
            row_mix(m, t, i, e.x, e.y, -(b / e.g), a / e.g, n);
            if (track_rows) {
              row_mix(s.row, t, i, e.x, e.y, -(b / e.g), a / e.g, n);
            }
          }
        }
        clean = true;
        for (std::size_t j = t + 1; j < c; ++j) {
          Int b = m(t, j);
          if (b == 0) {
            continue;
          }
          Int a = m(t, t);
          if (b % a == 0) {
            Int q = b / a;
            col_axpy(m, j, -q, t, n);
            col_axpy(s.col, j, -q, t, n);
            row_axpy(s.col_inv, t, q, j, n);
          } else {
            auto e = ext_gcd(a, b);
            Int  ag = a / e.g, bg = b / e.g;
            col_mix(m, t, j, e.x, e.y, -bg, ag, n);
            col_mix(s.col, t, j, e.x, e.y, -bg, ag, n);
            row_mix(s.col_inv, t, j, ag, bg, -e.y, e.x, n);
            clean = false;
          }
        }
        if (clean) {
          for (std::size_t i = t + 1; i < r; ++i) {
            if (m(i, t) != 0) {
              clean = false;
              break;
            }
          }
        }
      }
      s.diag[t] = m(t, t);
    }
    return s;
  }

  Vec Quotient::project(std::span<Int const> x) const {
    Vec y(orders.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        continue;
      }
      auto row = proj.row(i);
      for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] += x[i] * row[j];
      }
    }
    return reduce(std::move(y), orders);
  }

  Quotient quotient(Vec const& orders, std::vector<Vec> const& relations) {
    Quotient q;
    std::size_t const n = orders.size();
    if (n == 0) {
      q.proj = Matrix(0, 0);
      return q;
    }
    Int const N = lcm_of(orders);
    std::vector<Vec> rows;
    rows.reserve(relations.size() + n);
    for (auto const& rel : relations) {
      Vec v = reduce(rel, orders);
      if (std::any_of(v.begin(), v.end(), [](Int x) { return x != 0; })) {
        rows.push_back(std::move(v));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (orders[i] % N != 0) {
        Vec v(n, 0);
        v[i] = orders[i];
        rows.push_back(std::move(v));
      }
    }
    auto s = smith(Matrix::from_rows(n, rows), N);

    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < n; ++j) {
      Int o = s.diag[j] == 0 ? N : gcd(s.diag[j], N);
      if (o > 1) {
        kept.push_back(j);
        q.orders.push_back(o);
      }
    }
    q.proj = Matrix(n, kept.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t jj = 0; jj < kept.size(); ++jj) {
        q.proj(i, jj) = mod(s.col(i, kept[jj]), q.orders[jj]);
      }
    }
    for (std::size_t jj = 0; jj < kept.size(); ++jj) {
      auto row = s.col_inv.row(kept[jj]);
      q.lift.push_back(reduce(Vec(row.begin(), row.end()), orders));
    }
    return q;
  }

  std::vector<Vec> kernel(Matrix const& map, Vec const& source_orders, Vec const& target_orders) {
    std::size_t const n = source_orders.size();
    std::size_t const m = target_orders.size();
    std::vector<Vec>  gens;
    if (n == 0) {
      return gens;
    }
    Int N = lcm(lcm_of(source_orders), lcm_of(target_orders));
    Matrix b(m, n);
    for (std::size_t j = 0; j < m; ++j) {
      Int scale_j = N / target_orders[j];
      for (std::size_t i = 0; i < n; ++i) {
        b(j, i) = mod(map(j, i) * scale_j, N);
      }
    }
    auto s = smith(std::move(b), N);
    for (std::size_t j = 0; j < n; ++j) {
      Int factor = s.diag[j] == 0 ? 1 : N / gcd(s.diag[j], N);
      Vec x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = mod(factor * s.col(i, j), source_orders[i]);
      }
      if (!is_zero(x, source_orders)) {
        gens.push_back(std::move(x));
      }
    }
    return gens;
  }

  std::uint64_t Subgroup::order() const noexcept {
    return group_order(orders);
  }

  Vec Subgroup::embed(std::span<Int const> coords) const {
    Vec v(ambient_orders.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (coords[j] == 0) {
        continue;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] += coords[j] * basis[j][i];
      }
    }
    return reduce(std::move(v), ambient_orders);
  }

  std::optional<Vec> Subgroup::coordinates(std::span<Int const> element) const {
    auto y = solve(ambient_orders, basis, element);
    if (!y) {
      return std::nullopt;
    }
    return reduce(std::move(*y), orders);
  }

  Subgroup subgroup(Vec const& ambient_orders, std::vector<Vec> const& generators) {
    Subgroup sub;
    sub.ambient_orders = ambient_orders;
    std::vector<Vec> gens;
    for (auto const& g : generators) {
      Vec v = reduce(g, ambient_orders);
      if (!is_zero(v, ambient_orders)) {
        gens.push_back(std::move(v));
      }
    }
    if (gens.empty() || ambient_orders.empty()) {
      return sub;
    }
    Int const N = lcm_of(ambient_orders);
    Vec free_orders(gens.size(), N);
    auto rel = kernel(Matrix::from_columns(ambient_orders.size(), gens),
                      free_orders, ambient_orders);
    auto q = quotient(free_orders, rel);
    sub.orders = q.orders;
    for (auto const& l : q.lift) {
      Vec v(ambient_orders.size(), 0);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          v[i] += l[j] * gens[j][i];
        }
      }
      sub.basis.push_back(reduce(std::move(v), ambient_orders));
    }
    return sub;
  }

  std::optional<Vec> solve(Vec const& orders, std::vector<Vec> const& columns, std::span<Int const> target) {
    std::size_t const n = orders.size();
    std::size_t const q = columns.size();
    if (n == 0) {
      return Vec(q, 0);
    }
    Int const N = lcm_of(orders);
    Matrix    b(n, q);
    Vec       t(n);
    for (std::size_t i = 0; i < n; ++i) {
      Int sc = N / orders[i];
      for (std::size_t j = 0; j < q; ++j) {
        b(i, j) = mod(columns[j][i] * sc, N);
      }
      t[i] = mod(target[i] * sc, N);
    }
    auto s = smith(std::move(b), N, true);
    Vec  u(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Int acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += s.row(i, k) * t[k];
      }
      u[i] = mod(acc, N);
    }
    Vec z(q, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Int d = i < q ? s.diag[i] : 0;
      if (d == 0) {
        if (u[i] != 0) {
          return std::nullopt;
        }
        continue;
      }
      Int g = gcd(d, N);
      if (u[i] % g != 0) {
        return std::nullopt;
      }
      Int ng = N / g;
      z[i]   = mod((u[i] / g) * inverse(d / g, ng).value(), ng);
    }
    Vec y(q, 0);
    for (std::size_t i = 0; i < q; ++i) {
      Int acc = 0;
      for (std::size_t k = 0; k < q; ++k) {
        acc += s.col(i, k) * z[k];
      }
      y[i] = mod(acc, N);
    }
    return y;
  }

  Vec invariant_factors(std::span<Int const> cyclic_orders) {
    std::map<Int, std::vector<Int>> powers;
    std::size_t                     free_rank = 0;
    for (Int c : cyclic_orders) {
      if (c == 0) {
        ++free_rank;
        continue;
      }
      c = std::abs(c);
      for (Int p = 2; c > 1; ++p) {
        if (p * p > c) {
          p = c;
        }
        if (c % p != 0) {
          continue;
        }
        Int pe = 1;
        while (c % p == 0) {
          c /= p;
          pe *= p;
        }
        powers[p].push_back(pe);
      }
    }
    std::size_t depth = 0;
    for (auto& [p, v] : powers) {
      std::sort(v.rbegin(), v.rend());
      depth = std::max(depth, v.size());
    }
    Vec result(depth, 1);
    for (auto const& [p, v] : powers) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        result[i] *= v[i];
      }
    }
    std::reverse(result.begin(), result.end());
    result.insert(result.end(), free_rank, 0);
    return result;
  }

  namespace {

    Int checked(__int128 v) {
      if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
        throw Error("integer overflow in lattice reduction");
      }
      return static_cast<Int>(v);
    }

    std::size_t leading(Vec const& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
          return i;
        }
      }
      return v.size();
    }

  }  // namespace

  void IntegerLattice::insert(Vec row) {
    for (;;) {
      std::size_t c = leading(row);
      if (c == _cols) {
        return;
      }
      auto it = std::lower_bound(_pivots.begin(), _pivots.end(), c);
      std::size_t k = static_cast<std::size_t>(it - _pivots.begin());
      if (it == _pivots.end() || *it != c) {
        if (row[c] < 0) {
          for (auto& x : row) {
            x = -x;
          }
        }
        _pivots.insert(it, c);
        _basis.insert(_basis.begin() + static_cast<std::ptrdiff_t>(k), std::move(row));
        return;
      }
      Vec& b = _basis[k];
      Int  a = b[c], r = row[c];
      if (r % a == 0) {
        Int q = r / a;
        for (std::size_t j = c; j < _cols; ++j) {
          row[j] = checked(static_cast<__int128>(row[j]) - static_cast<__int128>(q) * b[j]);
        }
      } else {
        auto e  = ext_gcd(a, r);
        Int  ag = a / e.g, rg = r / e.g;
        for (std::size_t j = c; j < _cols; ++j) {
          __int128 nb = static_cast<__int128>(e.x) * b[j] + static_cast<__int128>(e.y) * row[j];
          __int128 nr = static_cast<__int128>(-rg) * b[j] + static_cast<__int128>(ag) * row[j];
          b[j]        = checked(nb);
          row[j]      = checked(nr);
        }
        if (b[c] < 0) {
          for (auto& x : b) {
            x = -x;
          }
        }
      }
    }
  }

  Vec IntegerQuotient::project(std::span<Int const> x) const {
    Vec y(orders.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] = checked(static_cast<__int128>(y[j]) + static_cast<__int128>(x[i]) * proj(i, j));
      }
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (orders[j] != 0) {
        y[j] = mod(y[j], orders[j]);
      }
    }
    return y;
  }

  IntegerQuotient integer_quotient(IntegerLattice const& lattice) {
    std::size_t const c = lattice.cols();
    std::size_t const r = lattice.rank();
    Matrix            m = Matrix::from_rows(c, lattice.basis());
    Matrix            v = Matrix::identity(c);

    auto col_sub = [&](Matrix& x, std::size_t dst, Int q, std::size_t src) {
      for (std::size_t i = 0; i < x.rows(); ++i) {
        x(i, dst) = checked(static_cast<__int128>(x(i, dst)) - static_cast<__int128>(q) * x(i, src));
      }
    };
    auto row_sub = [&](std::size_t dst, Int q, std::size_t src) {
      for (std::size_t j = 0; j < c; ++j) {
        m(dst, j) = checked(static_cast<__int128>(m(dst, j)) - static_cast<__int128>(q) * m(src, j));
      }
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      for (;;) {
        // Smallest nonzero entry of row t / column t (rows, cols >= t).
        std::size_t bi = r, bj = c;
        Int         best = 0;
        for (std::size_t i = t; i < r; ++i) {
          for (std::size_t j = t; j < c; ++j) {
            Int x = std::abs(m(i, j));
            if (x != 0 && (bi == r || x < best)) {
              bi = i, bj = j, best = x;
            }
          }
        }
        if (bi == r) {
          break;
        }
        swap_rows(m, t, bi);
        swap_cols(m, t, bj);
        swap_cols(v, t, bj);
        bool done = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (m(i, t) != 0) {
            row_sub(i, m(i, t) / m(t, t), t);
            done = done && m(i, t) == 0;
          }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (m(t, j) != 0) {
            Int q = m(t, j) / m(t, t);
            col_sub(m, j, q, t);
            col_sub(v, j, q, t);
            done = done && m(t, j) == 0;
          }
        }
        if (done) {
          break;
        }
      }
    }

    IntegerQuotient q;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < c; ++j) {
      Int d = j < r ? std::abs(m(j, j)) : 0;
      if (d != 1) {
        kept.push_back(j);
        q.orders.push_back(d);
      }
    }
    q.proj = Matrix(c, kept.size());
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t jj = 0; jj < kept.size(); ++jj) {
        Int x = v(i, kept[jj]);
        q.proj(i, jj) = q.orders[jj] == 0 ? x : mod(x, q.orders[jj]);
      }
    }
    return q;
  }

}  // namespace brauerk::zmod
