#include <cstdio>
#include <fstream>
#include <numeric>

#include "doctest.h"

#include "brauerk/error.hpp"
#include "brauerk/json_io.hpp"
#include "brauerk/ring.hpp"

using namespace brauerk;
using element = FiniteCommRing::element;

namespace {

  std::size_t brute_unit_count(FiniteCommRing const& r) {
    std::size_t c = 0;
    for (element a = 0; a < r.order(); ++a) {
      for (element b = 0; b < r.order(); ++b) {
        if (r.mul(a, b) == r.one()) {
          ++c;
          break;
        }
      }
    }
    return c;
  }

  bool no_zero_divisors(FiniteCommRing const& r) {
    for (element a = 0; a < r.order(); ++a) {
      for (element b = 0; b < r.order(); ++b) {
        if (a != r.zero() && b != r.zero() && r.mul(a, b) == r.zero()) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("modular rings") {
  auto r = parse_ring("Z/12");
  CHECK(r->order() == 12);
  CHECK(r->characteristic() == 12);
  auto u = units(*r);
  std::vector<element> expected;
  for (element a = 1; a < 12; ++a) {
    if (std::gcd(a, 12u) == 1) {
      expected.push_back(a);
    }
  }
  CHECK(u.elements == expected);
  CHECK(u.group.invariant_factors() == zmod::Vec{2, 2});
  CHECK(units(*parse_ring("Z/2")).group.is_trivial());
  CHECK(units(*parse_ring("GF(5)")).group.invariant_factors() == zmod::Vec{4});
}

TEST_CASE("Galois fields") {
  auto f4 = parse_ring("GF(4)");
  CHECK(f4->order() == 4);
  CHECK(no_zero_divisors(*f4));
  // x is element 2, x^2 = x + 1
  CHECK(f4->label(2) == "x");
  CHECK(f4->mul(2, 2) == f4->add(2, f4->one()));
  CHECK(f4->presentation() == "Z/2[x]/(x^2+x+1)");
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169, 243}) {
    auto f = FiniteCommRing::galois_field(q);
    CHECK(f->order() == static_cast<std::size_t>(q));
    CHECK(brute_unit_count(*f) == static_cast<std::size_t>(q - 1));
  }
  CHECK(FiniteCommRing::galois_field(256)->is_field());
  CHECK(units(*parse_ring("GF(9)")).group.invariant_factors() == zmod::Vec{8});
  CHECK_THROWS_AS(parse_ring("GF(6)"), ParseError);
}

TEST_CASE("products and parsing") {
  auto r = parse_ring("Z/4 x GF(2)");
  CHECK(r->order() == 8);
  CHECK(r->descriptor() == "Z/4 x GF(2)");
  CHECK(brute_unit_count(*r) == 2);
  CHECK_THROWS_AS(parse_ring("Z/1"), ValidationError);
  CHECK_THROWS_AS(parse_ring("Z/4 * Z/2"), ParseError);
  CHECK_THROWS_AS(parse_ring("Z/4x Z/2"), ParseError);
  CHECK_THROWS_AS(parse_ring("Z/300"), CapExceeded);
}

TEST_CASE("ring tables round trip through JSON files") {
  auto        r    = parse_ring("Z/4 x GF(2)");
  std::string path = "test_ring_table.json";
  {
    std::ofstream out(path);
    out << ring_to_json(*r).dump();
  }
  auto s = parse_ring("table:" + path);
  CHECK(s->add_table() == r->add_table());
  CHECK(s->mul_table() == r->mul_table());
  CHECK(ring_isomorphism(r, s).has_value());

  auto j      = ring_to_json(*r);
  j["mul"][1][2] = 5;
  CHECK_THROWS_AS(ring_from_json(j, "bad"), ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("local decomposition") {
  auto z6 = parse_ring("Z/6");
  auto d  = local_decomposition(z6);
  CHECK(d.primitive_idempotents == std::vector<element>{3, 4});
  REQUIRE(d.size() == 2);
  CHECK(d.local_factors[0]->descriptor() == "Z/2");
  CHECK(d.local_factors[1]->descriptor() == "Z/3");

  // idempotents by enumeration
  std::vector<element> idem;
  for (element e = 0; e < 6; ++e) {
    if ((e * e) % 6 == e) {
      idem.push_back(e);
    }
  }
  CHECK(idem == std::vector<element>{0, 1, 3, 4});

  auto f4 = parse_ring("GF(4)");
  CHECK(local_decomposition(f4).size() == 1);

  auto m = parse_ring("Z/4 x GF(2)");
  auto dm = local_decomposition(m);
  REQUIRE(dm.size() == 2);
  CHECK(dm.local_factors[0]->descriptor() == "Z/4");
  CHECK(ring_isomorphism(dm.local_factors[1], parse_ring("GF(2)")).has_value());
  CHECK(dm.residue_fields[0]->order() == 2);

  auto gr = FiniteCommRing::polynomial_quotient(parse_ring("Z/4"), {1, 1});
  CHECK(gr->order() == 16);
  CHECK(gr->is_local());
  auto dg = local_decomposition(gr);
  REQUIRE(dg.size() == 1);
  CHECK(dg.residue_fields[0]->order() == 4);
  CHECK(dg.maximal_ideals[0].size() == 4);
}

TEST_CASE("reconstruction from local factors and unit counts") {
  for (auto spec : {"Z/12", "Z/30", "Z/4 x GF(2)", "GF(4) x Z/9", "Z/2 x Z/2 x Z/3", "Z/8 x GF(8)", "Z/60"}) {
    auto r = parse_ring(spec);
    auto d = local_decomposition(r);
    auto p = FiniteCommRing::product(d.local_factors);
    auto iso = ring_isomorphism(p, r);
    CHECK_MESSAGE(iso.has_value(), spec);
    std::size_t prod = 1;
    for (auto const& f : d.local_factors) {
      prod *= units(*f).elements.size();
    }
    CHECK(prod == brute_unit_count(*r));
  }
  CHECK_FALSE(ring_isomorphism(parse_ring("Z/4"), parse_ring("Z/2 x Z/2")).has_value());
  CHECK_FALSE(ring_isomorphism(parse_ring("GF(4)"), parse_ring("Z/2 x Z/2")).has_value());
  CHECK_FALSE(ring_isomorphism(parse_ring("GF(4)"), FiniteCommRing::polynomial_quotient(parse_ring("Z/2"), {0, 0}))
                  .has_value());
  CHECK(ring_isomorphism(parse_ring("Z/6"), parse_ring("Z/3 x Z/2")).has_value());
}

TEST_CASE("ring maps") {
  CHECK(ring_maps(parse_ring("Z/4"), parse_ring("Z/2")).size() == 1);
  CHECK(ring_maps(parse_ring("Z/2"), parse_ring("Z/4")).empty());
  CHECK(ring_maps(parse_ring("Z/6"), parse_ring("Z/3")).size() == 1);
  // Frobenius: two automorphisms of GF(4), two maps GF(4) -> GF(16)
  CHECK(ring_maps(parse_ring("GF(4)"), parse_ring("GF(4)")).size() == 2);
  CHECK(ring_maps(parse_ring("GF(4)"), parse_ring("GF(16)")).size() == 2);
  CHECK(ring_maps(parse_ring("GF(4)"), parse_ring("GF(8)")).empty());
  for (auto const& f : ring_maps(parse_ring("Z/2 x Z/2"), parse_ring("Z/2 x Z/2"))) {
    CHECK_NOTHROW(f.validate());
  }
}
