#include <functional>

#include "doctest.h"

#include "brauerk/algebra.hpp"
#include "brauerk/error.hpp"

using namespace brauerk;
using zmod::Int;
using zmod::Vec;

namespace {

  // 2x2 matrices over Z/p counted directly: units and idempotents.
  std::pair<int, int> brute_matrix_counts(Int p) {
    int units = 0, idem = 0;
    for (Int a = 0; a < p; ++a)
      for (Int b = 0; b < p; ++b)
        for (Int c = 0; c < p; ++c)
          for (Int d = 0; d < p; ++d) {
            units += zmod::mod(a * d - b * c, p) != 0 && zmod::is_prime(p) ? 1 : 0;
            bool e = zmod::mod(a * a + b * c - a, p) == 0 && zmod::mod(a * b + b * d - b, p) == 0
                  && zmod::mod(c * a + d * c - c, p) == 0 && zmod::mod(c * b + d * d - d, p) == 0;
            idem += e ? 1 : 0;
          }
    return {units, idem};
  }

  std::uint64_t brute_center(StructuredAlgebra const& a) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < a.order(); ++i) {
      auto x  = a.module().element(i);
      bool ok = true;
      for (std::uint64_t j = 0; j < a.order() && ok; ++j) {
        auto y = a.module().element(j);
        ok     = a.mul(x, y) == a.mul(y, x);
      }
      c += ok ? 1 : 0;
    }
    return c;
  }

  // Is there a bijective unital multiplicative additive map? Every choice of
  // generator images is tried and checked on all element pairs.
  bool brute_isomorphic(StructuredAlgebra const& a, StructuredAlgebra const& b) {
    if (a.order() != b.order()) {
      return false;
    }
    std::vector<Vec>                 im(a.dim());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == a.dim()) {
        auto f = [&](Vec const& x) {
          Vec y = b.module().zero();
          for (std::size_t g = 0; g < a.dim(); ++g) {
            y = b.add(y, zmod::scale(x[g], im[g], b.orders()));
          }
          return y;
        };
        for (std::size_t g = 0; g < a.dim(); ++g) {
          if (!zmod::is_zero(zmod::scale(a.orders()[g], im[g], b.orders()), b.orders())) {
            return false;
          }
        }
        if (f(a.one()) != b.one()) {
          return false;
        }
        std::vector<bool> hit(b.order(), false);
        for (std::uint64_t x = 0; x < a.order(); ++x) {
          auto ex = a.module().element(x);
          auto fx = f(ex);
          if (hit[b.module().index(fx)]) {
            return false;
          }
          hit[b.module().index(fx)] = true;
          for (std::uint64_t y = 0; y < a.order(); ++y) {
            auto ey = a.module().element(y);
            if (f(a.mul(ex, ey)) != b.mul(fx, f(ey))) {
              return false;
            }
          }
        }
        return true;
      }
      for (std::uint64_t y = 0; y < b.order(); ++y) {
        im[i] = b.module().element(y);
        if (rec(i + 1)) {
          return true;
        }
      }
      return false;
    };
    return rec(0);
  }

  StructuredAlgebra over_prime_field(RingPtr const& f, RingPtr const& s) {
    return restrict_scalars(ring_maps(f, s).at(0), unit_algebra(s));
  }

}  // namespace

TEST_CASE("matrix algebras") {
  for (Int p : {2, 3}) {
    auto r   = parse_ring("Z/" + std::to_string(p));
    auto m   = matrix_algebra(r, 2);
    auto inv = algebra_invariants(m);
    auto [u, e] = brute_matrix_counts(p);
    CHECK(m.order() == static_cast<std::uint64_t>(p * p * p * p));
    CHECK(inv.units == static_cast<std::uint64_t>(u));
    CHECK(inv.idempotents == static_cast<std::uint64_t>(e));
    CHECK(center_order(m) == brute_center(m));
    CHECK(center_order(m) == static_cast<std::uint64_t>(p));
    CHECK_FALSE(is_commutative(m));
  }
  auto z4 = parse_ring("Z/4");
  auto m  = matrix_algebra(z4, 2);
  CHECK(m.order() == 256);
  CHECK(center_order(m) == brute_center(m));
  CHECK(matrix_algebra(z4, 1).order() == 4);
}

TEST_CASE("invalid structure constants are rejected") {
  auto f2 = parse_ring("Z/2");
  auto m  = matrix_algebra(f2, 2);
  auto p  = m.products();
  p[1][0] ^= 1;
  CHECK_THROWS_AS(StructuredAlgebra(m.module(), p, m.one(), "bad"), ValidationError);
  CHECK_THROWS_AS(StructuredAlgebra(m.module(), m.products(), m.module().zero(), "bad"), ValidationError);
}

TEST_CASE("isomorphisms against brute force") {
  auto f2 = parse_ring("Z/2");
  auto m  = matrix_algebra(f2, 2);
  auto op = opposite(m);
  auto f  = algebra_isomorphism(m, op);
  REQUIRE(f.has_value());
  CHECK(f->is_homomorphism());
  CHECK(f->is_bijective());
  CHECK(brute_isomorphic(m, op));

  auto e = end_algebra(free_module(f2, 2)).algebra;
  CHECK(algebra_isomorphism(e, m).has_value());

  auto f4   = parse_ring("GF(4)");
  auto a    = over_prime_field(f2, f4);
  auto t    = algebra_tensor(a, a);
  auto f4f4 = over_prime_field(f2, parse_ring("GF(4) x GF(4)"));
  auto f2_4 = over_prime_field(f2, parse_ring("Z/2 x Z/2 x Z/2 x Z/2"));
  auto f16  = over_prime_field(f2, parse_ring("GF(16)"));
  CHECK(t.order() == 16);
  CHECK(algebra_invariants(t).idempotents == 4);
  for (auto const* other : {&f4f4, &f2_4, &f16, &m}) {
    CHECK(algebra_isomorphism(t, *other).has_value() == brute_isomorphic(t, *other));
  }
  CHECK(algebra_isomorphism(t, f4f4).has_value());
  CHECK_FALSE(algebra_isomorphism(t, f16).has_value());

  // F2[x]/(x^2) and F2 x F2 have the same additive group and are commutative
  auto dual = over_prime_field(f2, FiniteCommRing::polynomial_quotient(f2, {0, 0}));
  auto split = over_prime_field(f2, parse_ring("Z/2 x Z/2"));
  CHECK_FALSE(algebra_isomorphism(dual, split).has_value());
  CHECK_FALSE(brute_isomorphic(dual, split));
}

TEST_CASE("End, tensor and base change") {
  auto z6 = parse_ring("Z/6");
  auto z2 = quotient_module(free_module(z6, 1), {z6->coords(2)}, "Z/2").module;
  auto e  = end_algebra(z2).algebra;
  CHECK(e.order() == 2);
  CHECK(algebra_isomorphism(e, over_prime_field(z6, parse_ring("Z/2"))).has_value());

  auto z4 = parse_ring("Z/4");
  auto m4 = matrix_algebra(z4, 2);
  auto en = end_algebra(free_module(z4, 2)).algebra;
  CHECK(algebra_isomorphism(en, m4).has_value());

  auto f2 = parse_ring("Z/2");
  auto pi = ring_maps(z4, f2).at(0);
  auto bc = base_change(pi, m4);
  CHECK(bc.order() == 16);
  CHECK(bc.ring().get() == f2.get());
  CHECK(algebra_isomorphism(bc, matrix_algebra(f2, 2)).has_value());

  // A (x) A^op for A = M2(F2) is M4(F2), of order 2^16, right at the default cap
  auto m2 = matrix_algebra(f2, 2);
  Limits small;
  small.max_module_order = 65535;
  CHECK_THROWS_AS(algebra_tensor(m2, opposite(m2), small), CapExceeded);
  auto big = algebra_tensor(m2, opposite(m2));
  CHECK(big.order() == 65536);
  CHECK(center_order(big) == 2);
}
