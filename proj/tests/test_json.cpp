#include "doctest.h"

#include "brauerk/error.hpp"
#include "brauerk/json_io.hpp"

using namespace brauerk;

namespace {

  // parse then re-serialize must reproduce the bytes
  void check_bytes(json const& j) {
    auto s = dump_json(j);
    CHECK(dump_json(json::parse(s)) == s);
    CHECK(json::parse(s).at("schema") == "v1");
  }

}  // namespace

TEST_CASE("module and algebra round-trip") {
  auto r = parse_ring("Z/4 x GF(2)");
  auto a = matrix_algebra(r, 2);
  auto j = algebra_to_json(a);
  check_bytes(j);
  auto b = algebra_from_json(json::parse(dump_json(j)));
  CHECK(b.descriptor() == a.descriptor());
  CHECK(b.module().orders() == a.module().orders());
  CHECK(b.module().basis_actions() == a.module().basis_actions());
  CHECK(b.products() == a.products());
  CHECK(b.one() == a.one());
  CHECK(dump_json(algebra_to_json(b)) == dump_json(j));

  auto m = module_from_json(module_to_json(a.module()));
  CHECK(m.orders() == a.module().orders());
  check_bytes(module_to_json(m));
}

TEST_CASE("malformed inputs are parse errors") {
  auto j = module_to_json(matrix_algebra(parse_ring("GF(2)"), 1).module());
  auto k = j;
  k["schema"] = "v0";
  CHECK_THROWS_AS(module_from_json(k), ParseError);
  k = j;
  k["orders"] = "two";
  CHECK_THROWS_AS(module_from_json(k), ParseError);
  k = j;
  k.erase("basis_action");
  CHECK_THROWS_AS(module_from_json(k), ParseError);

  auto v = smc_to_json(from_abelian_group(FiniteAbelianGroup::parse("Z/3")));
  v["unit"] = 7;
  CHECK_THROWS_AS(smc_from_json(v), ParseError);
  v = smc_to_json(from_abelian_group(FiniteAbelianGroup::parse("Z/3")));
  v["composition"].erase(0);
  CHECK_THROWS_AS(smc_from_json(v), ParseError);
}

TEST_CASE("symmetric monoidal groupoid round-trip") {
  for (auto const& v : {from_abelian_group(FiniteAbelianGroup::parse("Z/2 x Z/2")),
                        synthetic_picard(FiniteAbelianGroup::parse("Z/3"), FiniteAbelianGroup::parse("Z/2"))}) {
    auto j = smc_to_json(v);
    check_bytes(j);
    auto w = smc_from_json(json::parse(dump_json(j)));
    CHECK(w.objects == v.objects);
    CHECK(w.composition == v.composition);
    CHECK(w.tensor_mor == v.tensor_mor);
    CHECK(w.associator == v.associator);
    CHECK(w.symmetry == v.symmetry);
    CHECK(check_coherence(w).ok());
    CHECK(dump_json(smc_to_json(w)) == dump_json(j));
  }
}

TEST_CASE("ring map round-trip") {
  auto f = ring_maps(parse_ring("Z/4"), parse_ring("Z/2")).at(0);
  auto j = ring_map_to_json(f);
  check_bytes(j);
  auto g = ring_map_from_json(j);
  CHECK(g.image == std::vector<FiniteCommRing::element>{0, 1, 0, 1});
  j["image"] = {0, 1, 1, 1};  // not additive
  CHECK_THROWS_AS(ring_map_from_json(j), ValidationError);
}

TEST_CASE("reports") {
  auto d = brauer_data(parse_ring("Z/12"));
  auto j = brauer_data_to_json(d);
  check_bytes(j);
  CHECK(j["br"] == json::array());
  CHECK(j["pic"] == json::array());
  CHECK(j["gl1"] == json{2, 2});

  auto r = relative_report(ring_maps(parse_ring("Z/4"), parse_ring("Z/2")).at(0));
  auto k = relative_report_to_json(r);
  check_bytes(k);
  CHECK(k["fiber"][0]["order"] == 2);
  CHECK(k["consistent"] == true);

  auto a = matrix_algebra(parse_ring("GF(2)"), 2);
  auto c = certificate_to_json(is_azumaya(a), morita_trivialization(a, 16), true);
  check_bytes(c);
  CHECK(c["h_report"]["injective"] == true);
  CHECK(c.contains("witness"));

  auto v = std::make_shared<FiniteSymMonGroupoid const>(from_abelian_group(FiniteAbelianGroup::parse("Z/3")));
  auto g = deloop_report_to_json(deloop_check(v, 3));
  check_bytes(g);
  CHECK(g["pi1"] == json{3});

  check_bytes(picard_to_json(picard_data(parse_ring("GF(7)"))));
}
