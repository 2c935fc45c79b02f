#include <numeric>

#include "doctest.h"

#include "brauerk/brauer.hpp"
#include "brauerk/error.hpp"

using namespace brauerk;
using zmod::Vec;

namespace {

  // |ker| and |coker| of (Z/n)^x -> (Z/m)^x, m | n, by counting residues.
  std::pair<std::uint64_t, std::uint64_t> unit_reduction(zmod::Int n, zmod::Int m) {
    std::uint64_t src = 0, ker = 0, tgt = 0;
    for (zmod::Int a = 0; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      ++src;
      ker += a % m == 1 % m ? 1 : 0;
    }
    for (zmod::Int a = 0; a < m; ++a) tgt += std::gcd(a, m) == 1 ? 1 : 0;
    return {ker, tgt / (src / ker)};
  }

  RingMap reduction(std::string const& a, std::string const& b) {
    return ring_maps(parse_ring(a), parse_ring(b)).at(0);
  }

}  // namespace

TEST_CASE("Brauer groupoid of F2") {
  auto g = brauer_groupoid(parse_ring("Z/2"), 16);
  REQUIRE(g.objects.size() == 2);
  CHECK(g.exhaustive);
  CHECK(g.component_count() == 1);
  CHECK(g.unit_automorphisms.is_trivial());
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(g.certificates[x].azumaya);
    REQUIRE(g.witnesses[x].has_value());
    CHECK(verify_witness(*g.witnesses[x]));
    CHECK(g.inverse_paths[x].certified());
  }
  auto fg = g.groupoid();
  CHECK(fg.components().size() == 2);
  CHECK(fg.hom(0, 1).size() == 1);
  // associativity and inverses on every composable triple
  for (std::size_t a = 0; a < fg.morphism_count(); ++a)
    for (std::size_t b = 0; b < fg.morphism_count(); ++b)
      for (std::size_t c = 0; c < fg.morphism_count(); ++c) {
        if (fg.source(b) != fg.target(a) || fg.source(c) != fg.target(b)) continue;
        CHECK(fg.compose(c, fg.compose(b, a)) == fg.compose(fg.compose(c, b), a));
      }
  auto br = brauer_group(g);
  CHECK(br.group.is_trivial());
  CHECK(br.all_witnessed);
  CHECK(br.inverses_certified);
}

TEST_CASE("Brauer data triples") {
  auto z12 = brauer_data(parse_ring("Z/12"));
  CHECK(z12.br.is_trivial());
  CHECK(z12.pic.is_trivial());
  CHECK(z12.gl1.invariant_factors() == Vec{2, 2});
  CHECK(z12.pic_identified);

  auto gf7 = brauer_data(parse_ring("GF(7)"));
  CHECK(gf7.br.is_trivial());
  CHECK(gf7.gl1.invariant_factors() == Vec{6});

  auto z2 = brauer_data(parse_ring("Z/2"));
  CHECK(z2.br.is_trivial());
  CHECK(z2.pic.is_trivial());
  CHECK(z2.gl1.is_trivial());
  CHECK(z2.all_witnessed);

  auto z4 = brauer_groupoid(parse_ring("Z/4"), 4);
  CHECK(z4.objects.size() == 1);
  CHECK(z4.unit_automorphisms.is_trivial());
}

TEST_CASE("relative reports") {
  for (auto [a, b, n, m] : {std::tuple{"Z/4", "Z/2", 4, 2}, {"Z/9", "Z/3", 9, 3}, {"Z/6", "Z/2", 6, 2}}) {
    INFO(a << " -> " << b);
    auto r          = relative_report(reduction(a, b));
    auto [ker, cok] = unit_reduction(n, m);
    CHECK(r.gl1_map.kernel_order == ker);
    CHECK(r.gl1_map.cokernel_order == cok);
    CHECK(r.fiber_orders[0] == ker);
    CHECK(r.fiber_orders[3] == 1);
    CHECK(r.alternating_identity);
    CHECK(r.boundary_relation);
  }
  auto id = relative_report(identity_map(parse_ring("Z/6")));
  for (auto o : id.fiber_orders) CHECK(o == 1);
  CHECK(id.consistent());
}
