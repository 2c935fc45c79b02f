#include <random>
#include <set>

#include "doctest.h"

#include "brauerk/abelian_group.hpp"
#include "brauerk/zmod.hpp"

using namespace brauerk;
using zmod::Int;
using zmod::Vec;

namespace {

  // Closure of a generating set under addition, by breadth-first search.
  std::set<std::uint64_t> span(Vec const& orders, std::vector<Vec> const& gens) {
    std::set<std::uint64_t> seen{0};
    std::vector<Vec>        frontier{Vec(orders.size(), 0)};
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (auto const& v : frontier) {
        for (auto const& g : gens) {
          auto w = zmod::add(v, g, orders);
          if (seen.insert(zmod::encode(w, orders)).second) {
            next.push_back(w);
          }
        }
      }
      frontier = std::move(next);
    }
    return seen;
  }

  // Number of elements x with k*x == 0, for each k; determines the group.
  std::vector<std::uint64_t> torsion_counts(Vec const& orders, Int upto) {
    std::vector<std::uint64_t> counts;
    auto                       n = zmod::group_order(orders);
    for (Int k = 1; k <= upto; ++k) {
      std::uint64_t c = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (zmod::is_zero(zmod::scale(k, zmod::decode(i, orders), orders), orders)) {
          ++c;
        }
      }
      counts.push_back(c);
    }
    return counts;
  }

  Vec random_vec(std::mt19937& rng, Vec const& orders) {
    Vec v;
    for (auto o : orders) {
      v.push_back(std::uniform_int_distribution<Int>(0, o - 1)(rng));
    }
    return v;
  }

}  // namespace

TEST_CASE("number theory helpers") {
  CHECK(zmod::gcd(12, 18) == 6);
  CHECK(zmod::lcm(4, 6) == 12);
  CHECK(zmod::mod(-7, 5) == 3);
  CHECK(zmod::inverse(3, 7) == 5);
  CHECK_FALSE(zmod::inverse(2, 4).has_value());
  CHECK(zmod::is_prime(97));
  CHECK_FALSE(zmod::is_prime(91));
  auto e = zmod::ext_gcd(240, 46);
  CHECK(e.g == 2);
  CHECK(e.x * 240 + e.y * 46 == 2);
}

TEST_CASE("invariant factors of cyclic sums") {
  CHECK(zmod::invariant_factors(Vec{2, 3}) == Vec{6});
  CHECK(zmod::invariant_factors(Vec{2, 2}) == Vec{2, 2});
  CHECK(zmod::invariant_factors(Vec{4, 6}) == Vec{2, 12});
  CHECK(zmod::invariant_factors(Vec{1, 1}).empty());
  CHECK(zmod::invariant_factors(Vec{0, 2}) == Vec{2, 0});
}

TEST_CASE("quotient, kernel and solve agree with brute force") {
  std::mt19937 rng(7);
  std::vector<Vec> shapes = {{4}, {2, 4}, {6, 4}, {2, 2, 2}, {3, 9}, {12, 2}, {4, 4, 2}};
  for (auto const& orders : shapes) {
    auto n = zmod::group_order(orders);
    for (int trial = 0; trial < 12; ++trial) {
      int              k = std::uniform_int_distribution<int>(0, 3)(rng);
      std::vector<Vec> rels;
      for (int i = 0; i < k; ++i) {
        rels.push_back(random_vec(rng, orders));
      }
      auto sub = span(orders, rels);
      auto q   = zmod::quotient(orders, rels);
      REQUIRE(zmod::group_order(q.orders) * sub.size() == n);
      // project is a homomorphism killing exactly the relation span
      for (std::uint64_t i = 0; i < n; ++i) {
        auto x = zmod::decode(i, orders);
        CHECK(zmod::is_zero(q.project(x), q.orders) == (sub.count(i) == 1));
      }
      // lift is a section
      for (std::size_t j = 0; j < q.orders.size(); ++j) {
        Vec e(q.orders.size(), 0);
        e[j] = 1;
        CHECK(q.project(q.lift[j]) == e);
      }
      CHECK(torsion_counts(q.orders, 12)
            == torsion_counts(zmod::invariant_factors(q.orders).empty()
                                  ? Vec{1}
                                  : zmod::invariant_factors(q.orders),
                              12));

      // map to a second group and compare the kernel with enumeration
      Vec              target = shapes[(trial + 2) % shapes.size()];
      std::vector<Vec> cols;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        // a well-defined map needs orders[i] * col == 0
        Vec c = random_vec(rng, target);
        for (std::size_t t = 0; t < target.size(); ++t) {
          Int g = zmod::gcd(orders[i], target[t]);
          c[t]  = zmod::mod(c[t] * (target[t] / g), target[t]);
        }
        cols.push_back(c);
      }
      auto m = zmod::Matrix::from_columns(target.size(), cols);
      std::set<std::uint64_t> brute_kernel;
      std::set<std::uint64_t> image;
      for (std::uint64_t i = 0; i < n; ++i) {
        auto y = zmod::apply(m, zmod::decode(i, orders), target);
        image.insert(zmod::encode(y, target));
        if (zmod::is_zero(y, target)) {
          brute_kernel.insert(i);
        }
      }
      CHECK(span(orders, zmod::kernel(m, orders, target)) == brute_kernel);
      auto sg = zmod::subgroup(target, cols);
      CHECK(sg.order() == image.size());
      auto tn = zmod::group_order(target);
      for (std::uint64_t i = 0; i < tn; ++i) {
        auto y   = zmod::decode(i, target);
        auto sol = zmod::solve(target, cols, y);
        CHECK(sol.has_value() == (image.count(i) == 1));
        if (sol) {
          CHECK(zmod::is_zero(zmod::add(zmod::apply(m, *sol, target), zmod::scale(-1, y, target), target),
                              target));
          auto c = sg.coordinates(y);
          REQUIRE(c.has_value());
          CHECK(zmod::encode(sg.embed(*c), target) == i);
        }
      }
    }
  }
}

TEST_CASE("integer quotient") {
  zmod::IntegerLattice lat(3);
  lat.insert({2, 4, 0});
  lat.insert({0, 6, 0});
  lat.insert({4, 8, 0});
  auto q = zmod::integer_quotient(lat);
  // Z^3 / <(2,4,0),(0,6,0)> = Z/2 + Z/6 + Z
  CHECK(zmod::invariant_factors(q.orders) == Vec{2, 6, 0});
  CHECK(lat.rank() == 2);
}

TEST_CASE("finite abelian groups from tables") {
  auto g = FiniteAbelianGroup::parse("Z/2 x Z/4 x Z/6");
  CHECK(g.order() == 48);
  CHECK(g.invariant_factors() == Vec{2, 2, 12});
  for (FiniteAbelianGroup::element a = 0; a < g.order(); ++a) {
    CHECK(g.from_coordinates(g.coordinates(a)) == a);
  }
  CHECK(FiniteAbelianGroup::trivial().invariant_factors().empty());
  CHECK_THROWS(FiniteAbelianGroup::parse("Z/2 + Z/3"));

  // units of Z/12 as a table group
  std::vector<Int>                                   u = {1, 5, 7, 11};
  std::vector<std::vector<FiniteAbelianGroup::element>> t(4, std::vector<FiniteAbelianGroup::element>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      auto p = (u[i] * u[j]) % 12;
      t[i][j] = static_cast<FiniteAbelianGroup::element>(std::find(u.begin(), u.end(), p) - u.begin());
    }
  }
  FiniteAbelianGroup units(t, 0);
  CHECK(units.invariant_factors() == Vec{2, 2});

  // reduction Z/4 -> Z/2
  auto z4 = FiniteAbelianGroup::parse("Z/4");
  auto z2 = FiniteAbelianGroup::parse("Z/2");
  auto d  = analyze_homomorphism(z4, z2, {0, 1, 0, 1});
  CHECK(d.kernel == Vec{2});
  CHECK(d.cokernel.empty());
  CHECK_THROWS(analyze_homomorphism(z4, z2, {0, 1, 1, 1}));
}
