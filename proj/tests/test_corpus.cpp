#include "doctest.h"

#include <set>

#include "brauerk/corpus.hpp"

using namespace brauerk;

TEST_CASE("projective corpus shapes") {
  auto c = projective_corpus();
  // 5 local rings x 3 + 2 two-factor rings x 8
  CHECK(c.size() == 31);
  for (auto const& m : c) {
    // |M| = prod |e_i R|^{q_i}
    auto          loc = local_decomposition(parse_ring(m.ring));
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < m.multiplicities.size(); ++i)
      for (std::size_t k = 0; k < m.multiplicities[i]; ++k) order *= loc.local_factors[i]->order();
    CHECK(m.module.order() == order);
  }
}

TEST_CASE("commutative extensions are commutative and proper") {
  for (auto const& spec : acceptance_rings()) {
    auto r = parse_ring(spec);
    auto e = commutative_extensions(r);
    CHECK(e.size() == (r->is_field() ? 4u : 3u));
    for (auto const& x : e) {
      CHECK(is_commutative(x.algebra));
      CHECK(x.algebra.order() == r->order() * r->order());
    }
  }
}

TEST_CASE("generated rings respect the order bound") {
  std::set<std::uint64_t> orders;
  std::size_t             seen = 0;
  auto n = for_each_generated_ring(16, [&](RingPtr const& r) {
    CHECK(r->order() <= 16);
    orders.insert(r->order());
    ++seen;
  });
  CHECK(n == seen);
  for (std::uint64_t k = 2; k <= 16; ++k) CHECK(orders.count(k) == 1);  // Z/k at least
}

TEST_CASE("gamma corpus") {
  auto g = gamma_corpus();
  CHECK(g.size() == 29);
  for (auto const& x : g) CHECK(check_coherence(*x.v).ok());
}
