#include <chrono>
#include <functional>
#include <set>

#include "doctest.h"

#include "brauerk/azumaya.hpp"
#include "brauerk/error.hpp"

using namespace brauerk;
using zmod::Int;
using zmod::Vec;
using element = FiniteCommRing::element;

namespace {

  StructuredAlgebra over(RingPtr const& base, RingPtr const& s) {
    return restrict_scalars(ring_maps(base, s).at(0), unit_algebra(s));
  }

  // Additive span of all maps x |-> a x b, each map recorded by its values on
  // every element. Compared with the number of R-linear endomorphisms.
  std::pair<std::size_t, std::size_t> brute_sandwich(StructuredAlgebra const& a) {
    auto const& m = a.module();
    using Fn      = std::vector<std::uint64_t>;
    std::set<Fn>    span;
    std::vector<Fn> gens;
    for (std::uint64_t i = 0; i < a.order(); ++i) {
      for (std::uint64_t j = 0; j < a.order(); ++j) {
        Fn f;
        for (std::uint64_t x = 0; x < a.order(); ++x) {
          f.push_back(m.index(a.mul(a.mul(m.element(i), m.element(x)), m.element(j))));
        }
        gens.push_back(std::move(f));
      }
    }
    std::vector<std::uint64_t> add(a.order() * a.order());
    for (std::uint64_t x = 0; x < a.order(); ++x) {
      for (std::uint64_t y = 0; y < a.order(); ++y) {
        add[x * a.order() + y] = m.index(m.add(m.element(x), m.element(y)));
      }
    }
    std::vector<Fn> queue{Fn(a.order(), m.index(m.zero()))};
    span.insert(queue[0]);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto const& g : gens) {
        Fn h(a.order());
        for (std::uint64_t x = 0; x < a.order(); ++x) {
          h[x] = add[queue[q][x] * a.order() + g[x]];
        }
        if (span.insert(h).second) {
          queue.push_back(std::move(h));
        }
      }
    }
    // R-linear additive maps, by images of generators
    std::size_t      ends = 0;
    std::vector<Vec> im(m.dim());
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
      if (g == m.dim()) {
        auto f = [&](Vec const& x) {
          Vec y = m.zero();
          for (std::size_t t = 0; t < m.dim(); ++t) {
            y = m.add(y, zmod::scale(x[t], im[t], m.orders()));
          }
          return y;
        };
        for (std::size_t t = 0; t < m.dim(); ++t) {
          if (!zmod::is_zero(zmod::scale(m.orders()[t], im[t], m.orders()), m.orders())) {
            return;
          }
        }
        for (std::uint64_t x = 0; x < a.order(); ++x) {
          for (element r = 0; r < a.ring()->order(); ++r) {
            if (f(m.act(r, m.element(x))) != m.act(r, f(m.element(x)))) {
              return;
            }
          }
        }
        ++ends;
        return;
      }
      for (std::uint64_t y = 0; y < a.order(); ++y) {
        im[g] = m.element(y);
        rec(g + 1);
      }
    };
    rec(0);
    return {span.size(), ends};
  }

  // Associative unital products on F2^n with e_0 = 1, counted without pruning.
  std::size_t brute_structures_f2(std::size_t n) {
    std::size_t const u = (n - 1) * (n - 1);
    std::size_t       count = 0;
    std::vector<int>  c(n * n, 0);  // bitmask of e_i e_j
    for (std::size_t i = 0; i < n; ++i) {
      c[i]     = 1 << i;
      c[i * n] = 1 << i;
    }
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << (n * u)); ++v) {
      std::uint64_t x = v;
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
          c[i * n + j] = static_cast<int>(x % (1u << n));
          x >>= n;
        }
      }
      auto mul = [&](int p, int q) {
        int r = 0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if ((p >> i & 1) && (q >> j & 1)) {
              r ^= c[i * n + j];
            }
          }
        }
        return r;
      };
      bool ok = true;
      for (int a = 0; a < (1 << n) && ok; ++a) {
        for (int b = 0; b < (1 << n) && ok; ++b) {
          for (int d = 0; d < (1 << n) && ok; ++d) {
            ok = mul(mul(a, b), d) == mul(a, mul(b, d));
          }
        }
      }
      count += ok ? 1 : 0;
    }
    return count;
  }

}  // namespace

TEST_CASE("sandwich map against the brute-force span") {
  auto f2 = parse_ring("Z/2");
  auto m2 = matrix_algebra(f2, 2);
  auto [span, ends] = brute_sandwich(m2);
  CHECK(span == ends);
  auto rep = sandwich_report(m2);
  CHECK(rep.bijective());
  CHECK(rep.end_order == ends);

  auto gf4 = over(f2, parse_ring("GF(4)"));
  auto [s4, e4] = brute_sandwich(gf4);
  CHECK(s4 == 4);
  CHECK(e4 == 16);
  auto r4 = sandwich_report(gf4);
  CHECK_FALSE(r4.surjective);
  CHECK(r4.tensor_order / r4.kernel_order == s4);

  auto sm = sandwich_map(m2);
  CHECK(sm.map.is_homomorphism());
  CHECK(sm.map.is_bijective());
  auto unit = sandwich_map(unit_algebra(f2));
  CHECK(unit.map.is_bijective());
}

TEST_CASE("Azumaya certificates") {
  auto z4 = parse_ring("Z/4");
  CHECK(is_azumaya(matrix_algebra(z4, 2)).azumaya);
  CHECK(is_azumaya(unit_algebra(z4)).azumaya);
  auto bad = is_azumaya(over(z4, parse_ring("Z/2")));
  CHECK_FALSE(bad.azumaya);
  CHECK(bad.failing_stage == "projectivity");

  auto f2 = parse_ring("Z/2");
  // |A (x) A^op| = |End(A)| for these, so injectivity is what fails first
  for (auto spec : {"GF(4)", "Z/2 x Z/2"}) {
    auto c = is_azumaya(over(f2, parse_ring(spec)));
    CHECK_FALSE(c.azumaya);
    CHECK(c.failing_stage == "sandwich_injectivity");
  }
  auto dual = is_azumaya(over(f2, FiniteCommRing::polynomial_quotient(f2, {0, 0})));
  CHECK_FALSE(dual.azumaya);
  CHECK(dual.failing_stage.rfind("sandwich", 0) == 0);

  // Z/6 with an algebra living only over one factor is not faithful
  auto z6 = parse_ring("Z/6");
  auto c  = is_azumaya(over(z6, parse_ring("Z/2")));
  CHECK_FALSE(c.azumaya);
  CHECK(c.failing_stage == "faithfulness");
}

TEST_CASE("invertible bimodules") {
  auto f3 = parse_ring("Z/3");
  auto r  = symmetric_bimodule(free_module(f3, 1));
  auto ir = bimodule_invertible(r);
  CHECK(ir.invertible);
  REQUIRE(ir.inverse.has_value());
  CHECK(bimodule_isomorphism(*ir.inverse, r).has_value());

  auto p   = free_module(f3, 2);
  auto end = end_algebra(p);
  auto col = endomorphism_bimodule(end, p);
  CHECK_NOTHROW(col.validate());
  auto ic = bimodule_invertible(col);
  CHECK(ic.invertible);
  REQUIRE(ic.evaluation.has_value());
  CHECK(ic.evaluation->is_bijective());
  // reassociation: (M (x)_B N) (x)_A M has the order of M
  auto mn  = bimodule_tensor(col, *ic.inverse);
  auto mnm = bimodule_tensor(mn, col);
  CHECK(bimodule_isomorphism(mnm, col).has_value());
  CHECK(bimodule_isomorphism(bimodule_tensor(col, bimodule_tensor(*ic.inverse, col)), col).has_value());

  auto a  = matrix_algebra(f3, 2);
  auto aa = bimodule_direct_sum(regular_bimodule(a), regular_bimodule(a));
  CHECK_FALSE(bimodule_invertible(aa).invertible);
  CHECK(bimodule_invertible(regular_bimodule(a)).invertible);

  auto broken        = col;
  broken.right_action[0] = zmod::Matrix(p.dim(), p.dim());
  CHECK_THROWS_AS(broken.validate(), ValidationError);
}

TEST_CASE("Morita trivialization") {
  auto f2 = parse_ring("Z/2");
  auto w  = morita_trivialization(matrix_algebra(f2, 2), 16);
  REQUIRE(w.has_value());
  CHECK(w->generator.order() == 4);
  CHECK(verify_witness(*w));

  auto z6 = parse_ring("Z/6");
  auto wr = morita_trivialization(unit_algebra(z6), 16);
  REQUIRE(wr.has_value());
  CHECK(wr->generator.order() == 6);

  auto z2   = quotient_module(free_module(z6, 1), {z6->coords(2)}, "Z/2").module;
  auto p    = direct_sum(z2, free_module(z6, 1));
  auto endp = end_algebra(p).algebra;
  auto we   = morita_trivialization(endp, 64);
  REQUIRE(we.has_value());
  CHECK(we->generator.order() == p.order());
  CHECK(verify_witness(*we));

  // GF(4) over F2 is not Azumaya and has no witness
  CHECK_FALSE(morita_trivialization(over(f2, parse_ring("GF(4)")), 64).has_value());

  auto path = inverse_path(matrix_algebra(f2, 2));
  CHECK(path.certified());
}

TEST_CASE("Azumaya enumeration") {
  auto f2 = parse_ring("Z/2");
  auto e8 = enumerate_azumaya(f2, 8);
  CHECK(e8.structures_examined == 1 + brute_structures_f2(2) + brute_structures_f2(3));
  CHECK(e8.algebras.size() == 1);

  auto t0  = std::chrono::steady_clock::now();
  auto e16 = enumerate_azumaya(f2, 16);
  MESSAGE("F2 bound 16: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s, "
                          << e16.structures_examined << " structures");
  CHECK(e16.exhaustive);
  REQUIRE(e16.algebras.size() == 2);
  CHECK(e16.algebras[0].descriptor() == "Z/2");
  CHECK(e16.algebras[1].descriptor() == "M_2(Z/2)");

  auto z4 = enumerate_azumaya(parse_ring("Z/4"), 4);
  REQUIRE(z4.algebras.size() == 1);
  CHECK(z4.algebras[0].order() == 4);
  CHECK(enumerate_azumaya(parse_ring("Z/3"), 3).algebras.size() == 1);
  CHECK(enumerate_azumaya(parse_ring("Z/6"), 16).algebras.size() == 1);
  CHECK(enumerate_azumaya(parse_ring("Z/4 x GF(2)"), 64).algebras.size() == 2);
}
