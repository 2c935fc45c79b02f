#pragma once

// Exact linear algebra for finite abelian groups.
//
// Every finite abelian group handled by the library is written as a direct
// sum of cyclic groups Z/o_0 + ... + Z/o_{k-1}; elements are coordinate
// vectors. All groups that occur inside one computation have exponent
// dividing a common modulus N, so presentations can be reduced over Z/N: any
// lattice we care about contains N*Z^k, and adding multiples of N to an entry
// never changes it. This keeps every entry below N and rules out coefficient
// growth in the Smith reductions.
//
// The integer (non-modular) routines at the bottom are only used for edge-path
// groups, whose abelianization may have free summands.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace brauerk::zmod {

  using Int = std::int64_t;
  using Vec = std::vector<Int>;

  class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : _rows(rows), _cols(cols), _data(rows * cols, 0) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, std::vector<Vec> const& cols);
    static Matrix from_rows(std::size_t cols, std::vector<Vec> const& rows);

    std::size_t rows() const noexcept {
      return _rows;
    }
    std::size_t cols() const noexcept {
      return _cols;
    }

    Int& operator()(std::size_t i, std::size_t j) {
      return _data[i * _cols + j];
    }
    Int operator()(std::size_t i, std::size_t j) const {
      return _data[i * _cols + j];
    }

    std::span<Int> row(std::size_t i) {
      return {_data.data() + i * _cols, _cols};
    }
    std::span<Int const> row(std::size_t i) const {
      return {_data.data() + i * _cols, _cols};
    }
    Vec column(std::size_t j) const;

    bool operator==(Matrix const&) const = default;

   private:
    std::size_t _rows = 0;
    std::size_t _cols = 0;
    std::vector<Int>  _data;
  };

  Int  mod(Int a, Int n) noexcept;
  Int  gcd(Int a, Int b) noexcept;
  Int  lcm(Int a, Int b) noexcept;
  Int  lcm_of(std::span<Int const> values) noexcept;
  bool is_prime(Int n) noexcept;

  struct ExtGcd {
    Int g, x, y;  // g = x*a + y*b
  };
  ExtGcd ext_gcd(Int a, Int b) noexcept;

  // Inverse of a modulo n, if a is a unit.
  std::optional<Int> inverse(Int a, Int n) noexcept;

  // Product of the orders, saturating at UINT64_MAX.
  std::uint64_t group_order(std::span<Int const> orders) noexcept;
  std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept;

  // Mixed-radix encoding, first coordinate least significant.
  std::uint64_t encode(std::span<Int const> coords, std::span<Int const> orders);
  Vec           decode(std::uint64_t index, std::span<Int const> orders);

  Vec  reduce(Vec v, std::span<Int const> orders);
  bool is_zero(std::span<Int const> v, std::span<Int const> orders) noexcept;
  Vec  add(std::span<Int const> a,
           std::span<Int const> b,
           std::span<Int const> orders);
  Vec  scale(Int c, std::span<Int const> a, std::span<Int const> orders);
  // Image of x under the map whose columns are the images of the generators.
  Vec apply(Matrix const& m, std::span<Int const> x, std::span<Int const> target_orders);
  // a * b, reduced modulo the target orders (rows of a).
  Matrix multiply(Matrix const& a, Matrix const& b, std::span<Int const> target_orders);

  // Diagonalization U * M * V = D over Z/modulus. diag has one entry per
  // column (0 for zero columns). row is only filled when requested.
  struct Smith {
    Vec    diag;
    Matrix col;
    Matrix col_inv;
    Matrix row;
  };
  Smith smith(Matrix m, Int modulus, bool track_rows = false);

  // G / <relations> for G = sum Z/orders[i].
  struct Quotient {
    Vec orders;               // cyclic orders of the quotient, all > 1
    Matrix proj;              // proj row i = quotient coordinates of e_i
    std::vector<Vec> lift;    // lift[j] = preimage in G of generator j

    Vec project(std::span<Int const> x) const;
  };
  Quotient quotient(Vec const& orders, std::vector<Vec> const& relations);

  // Generators of ker(f) for f : sum Z/source -> sum Z/target given by the
  // matrix whose column i is f(e_i).
  std::vector<Vec> kernel(Matrix const& map,
                          Vec const&    source_orders,
                          Vec const&    target_orders);

  // A subgroup of an ambient group with a cyclic decomposition of its own.
  struct Subgroup {
    Vec              ambient_orders;
    Vec              orders;
    std::vector<Vec> basis;  // basis[j] lies in the ambient group

    std::uint64_t     order() const noexcept;
    Vec               embed(std::span<Int const> coords) const;
    std::optional<Vec> coordinates(std::span<Int const> element) const;
  };
  Subgroup subgroup(Vec const& ambient_orders, std::vector<Vec> const& generators);

  // Some y with sum y_j * columns[j] == target in sum Z/orders, or nothing.
  std::optional<Vec> solve(Vec const&              orders,
                           std::vector<Vec> const& columns,
                           std::span<Int const>    target);

  // Invariant factors d_1 | d_2 | ... of the group sum Z/c_i; entries equal to
  // 1 are dropped and free summands (c_i == 0) are reported as trailing zeros.
  Vec invariant_factors(std::span<Int const> cyclic_orders);

  // Integer row lattice kept in echelon form; rows are inserted one at a time
  // so that very long relation lists never have to be stored.
  class IntegerLattice {
   public:
    explicit IntegerLattice(std::size_t cols) : _cols(cols) {}

    void insert(Vec row);

    std::size_t cols() const noexcept {
      return _cols;
    }
    std::size_t rank() const noexcept {
      return _basis.size();
    }
    std::vector<Vec> const& basis() const noexcept {
      return _basis;
    }

   private:
    std::size_t      _cols;
    std::vector<Vec> _basis;  // sorted by pivot column
    std::vector<std::size_t> _pivots;
  };

  // Z^cols / lattice: cyclic orders (0 = infinite) together with the
  // coordinates of every standard generator.
  struct IntegerQuotient {
    Vec    orders;
    Matrix proj;  // proj row i = coordinates of e_i

    Vec project(std::span<Int const> x) const;
  };
  IntegerQuotient integer_quotient(IntegerLattice const& lattice);

}  // namespace brauerk::zmod
