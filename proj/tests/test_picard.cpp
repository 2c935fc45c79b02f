#include <functional>

#include "doctest.h"

#include "brauerk/picard.hpp"

using namespace brauerk;
using zmod::Int;
using zmod::Matrix;
using zmod::Vec;
using element = FiniteCommRing::element;

namespace {

  // Ring homomorphisms R -> End(G), G = sum Z/orders: every assignment of
  // matrices to the additive basis of R, checked on all pairs of elements.
  std::size_t brute_structures(FiniteCommRing const& r, Vec const& orders) {
    auto const k = orders.size();
    // all well-defined endomorphisms, entry by entry
    std::vector<Matrix> ends;
    std::function<void(std::size_t, Matrix&)> fill = [&](std::size_t pos, Matrix& m) {
      if (pos == k * k) {
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t i = 0; i < k; ++i)
            if ((orders[j] * m(i, j)) % orders[i] != 0) return;
        ends.push_back(m);
        return;
      }
      for (Int v = 0; v < orders[pos / k]; ++v) {
        m(pos / k, pos % k) = v;
        fill(pos + 1, m);
      }
    };
    Matrix m0(k, k);
    fill(0, m0);

    auto mulm = [&](Matrix const& a, Matrix const& b) {
      Matrix c(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          Int s = 0;
          for (std::size_t l = 0; l < k; ++l) s += a(i, l) * b(l, j);
          c(i, j) = zmod::mod(s, orders[i]);
        }
      return c;
    };
    auto const& basis = r.additive().basis();
    std::vector<Matrix> img(basis.size());
    auto act = [&](element e) {
      Matrix c(k, k);
      auto const& co = r.coords(e);
      for (std::size_t s = 0; s < basis.size(); ++s)
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) c(i, j) = zmod::mod(c(i, j) + co[s] * img[s](i, j), orders[i]);
      return c;
    };
    std::size_t count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t s) {
      if (s == basis.size()) {
        Matrix id(k, k);
        for (std::size_t i = 0; i < k; ++i) id(i, i) = orders[i] == 1 ? 0 : 1;
        if (act(r.one()) != id) return;
        for (element a = 0; a < r.order(); ++a)
          for (element b = 0; b < r.order(); ++b)
            if (act(r.mul(a, b)) != mulm(act(a), act(b))) return;
        ++count;
        return;
      }
      for (auto const& e : ends) {
        img[s] = e;
        rec(s + 1);
      }
    };
    rec(0);
    return count;
  }

}  // namespace

TEST_CASE("module structures against brute force") {
  struct Case {
    std::string      ring;
    std::uint64_t    bound;
    std::vector<Vec> groups;
  };
  std::vector<Case> cases = {
      {"GF(4)", 4, {{2}, {2, 2}}},
      {"Z/6", 6, {{2}, {3}, {2, 2}, {6}}},
      {"Z/4", 4, {{2}, {4}, {2, 2}}},
      {"Z/2 x Z/2", 4, {{2}, {2, 2}}},
  };
  for (auto const& c : cases) {
    auto        r        = parse_ring(c.ring);
    std::size_t expected = 0;
    for (auto const& g : c.groups) {
      expected += brute_structures(*r, g);
    }
    auto inv = invertible_modules(r, c.bound);
    INFO(c.ring);
    CHECK(inv.groups_examined == c.groups.size());
    CHECK(inv.structures_examined == expected);
    CHECK(inv.classes.size() == 1);
  }
  auto dual = FiniteCommRing::polynomial_quotient(parse_ring("Z/2"), {0, 0});
  auto inv  = invertible_modules(dual, 4);
  CHECK(inv.structures_examined == brute_structures(*dual, {2}) + brute_structures(*dual, {2, 2}));
  CHECK(inv.classes.size() == 1);
}

TEST_CASE("Picard data") {
  auto z12 = picard_data(parse_ring("Z/12"));
  CHECK(z12.pic.is_trivial());
  CHECK(z12.gl1.invariant_factors() == Vec{2, 2});
  CHECK(z12.automorphisms_match);
  REQUIRE(z12.modules.classes[0].witness.evaluation.has_value());
  CHECK(z12.modules.classes[0].witness.evaluation->is_bijective());

  auto gf9 = picard_data(parse_ring("GF(9)"));
  CHECK(gf9.pic.is_trivial());
  CHECK(gf9.gl1.invariant_factors() == Vec{8});

  // a larger bound still finds only R
  auto z6 = invertible_modules(parse_ring("Z/6"), 36);
  CHECK(z6.classes.size() == 1);
}

TEST_CASE("Picard groupoids") {
  auto f3 = picard_smc(parse_ring("Z/3"));
  CHECK(f3.object_count() == 1);
  CHECK(f3.hom(0, 0).size() == 2);
  CHECK(check_coherence(f3).ok());

  auto z4 = picard_smc(parse_ring("Z/4"));
  CHECK(unit_automorphisms(z4).order() == 2);

  auto z4r = parse_ring("Z/4");
  auto f2  = parse_ring("Z/2");
  auto pf  = picard_functor(ring_maps(z4r, f2).at(0));
  CHECK(check_monoidal_functor(pf.data()).ok());
  CHECK(pf.unit_map == std::vector<std::size_t>{0, 0});
}
