#include <functional>

#include "doctest.h"

#include "brauerk/error.hpp"
#include "brauerk/gamma.hpp"

using namespace brauerk;
using zmod::Vec;

namespace {

  SmcPtr shared(FiniteSymMonGroupoid v) {
    return std::make_shared<FiniteSymMonGroupoid const>(std::move(v));
  }

  SmcPtr picard_pair(std::string const& a, std::string const& u) {
    return shared(synthetic_picard(FiniteAbelianGroup::parse(a), FiniteAbelianGroup::parse(u)));
  }

  // Objects of V(n_+) by plain search: every v and every choice of the free
  // p, kept when all unit, symmetry and associativity equations hold.
  std::size_t brute_objects(FiniteSymMonGroupoid const& v, std::size_t n) {
    unsigned const s = 1u << n;
    auto inv = [&](std::size_t m) {
      for (std::size_t k = 0; k < v.morphism_count(); ++k)
        if (v.compose(k, m) == v.identity[v.source[m]]) return k;
      return npos;
    };
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned i = 1; i < s; ++i)
      for (unsigned j = i + 1; j < s; ++j)
        if ((i & j) == 0) free.emplace_back(i, j);

    std::vector<std::size_t> obj(s, v.unit), pf(free.size());
    std::function<std::size_t(unsigned, unsigned)> P = [&](unsigned i, unsigned j) -> std::size_t {
      if (j == 0) return inv(v.right_unitor[obj[i]]);
      if (i == 0) return v.compose(v.sym(obj[j], v.unit), inv(v.right_unitor[obj[j]]));
      if (i > j) return v.compose(v.sym(obj[j], obj[i]), P(j, i));
      for (std::size_t t = 0; t < free.size(); ++t)
        if (free[t] == std::pair{i, j}) return pf[t];
      return npos;
    };
    auto valid = [&]() {
      for (unsigned i = 0; i < s; ++i)
        for (unsigned j = 0; j < s; ++j)
          for (unsigned k = 0; k < s; ++k) {
            if ((i & j) || (i & k) || (j & k)) continue;
            auto lhs = v.compose(v.assoc(obj[i], obj[j], obj[k]),
                                 v.compose(v.tensor_morphisms(P(i, j), v.identity[obj[k]]), P(i | j, k)));
            auto rhs = v.compose(v.tensor_morphisms(v.identity[obj[i]], P(j, k)), P(i, j | k));
            if (lhs != rhs) return false;
          }
      return true;
    };
    std::size_t count = 0;
    std::function<void(std::size_t)> choose_p = [&](std::size_t t) {
      if (t == free.size()) {
        count += valid() ? 1 : 0;
        return;
      }
      auto [i, j] = free[t];
      for (std::size_t m = 0; m < v.morphism_count(); ++m)
        if (v.source[m] == obj[i | j] && v.target[m] == v.tensor(obj[i], obj[j])) {
          pf[t] = m;
          choose_p(t + 1);
        }
    };
    std::function<void(unsigned)> choose_v = [&](unsigned k) {
      if (k == s) {
        choose_p(0);
        return;
      }
      for (std::size_t x = 0; x < v.object_count(); ++x) {
        obj[k] = x;
        choose_v(k + 1);
      }
    };
    choose_v(1);
    return count;
  }

  // d-chains in a level: sum of the entries of H^d, H the hom-count matrix.
  std::uint64_t chain_count(GammaLevel const& level, std::size_t d) {
    auto const n = level.object_count();
    std::vector<std::vector<std::uint64_t>> h(n, std::vector<std::uint64_t>(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) h[x][y] = level.hom(x, y).size();
    std::vector<std::uint64_t> row(n, 1);  // all-ones times H^d
    for (std::size_t t = 0; t < d; ++t) {
      std::vector<std::uint64_t> next(n, 0);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) next[y] += row[x] * h[x][y];
      row = next;
    }
    std::uint64_t total = 0;
    for (auto r : row) total += r;
    return total;
  }

}  // namespace

TEST_CASE("pointed maps and circle identities") {
  CHECK(all_pointed_maps(2, 3).size() == 16);
  auto a = PointedMap{2, 1, {0, 1, 1}};
  CHECK(a.preimage(1) == 3u);
  CHECK(PointedMap::singleton_support(3, 2).preimage(1) == 2u);
  CHECK(circle_face(2, 0).image == std::vector<std::size_t>{0, 0, 1});
  CHECK(circle_face(2, 2).image == std::vector<std::size_t>{0, 1, 0});
  CHECK(circle_degeneracy(1, 0).image == std::vector<std::size_t>{0, 2});
  auto levels = circle_levels(shared(from_abelian_group(FiniteAbelianGroup::parse("Z/2"))), 3);
  CHECK(levels.simplicial_identities);
}

TEST_CASE("level objects against brute force") {
  for (auto [a, u] : {std::pair{"Z/2", "Z/2"}, {"Z/3", "Z/1"}, {"Z/1", "Z/3"}, {"Z/2 x Z/2", "Z/1"}, {"Z/4", "Z/2"}}) {
    auto v = picard_pair(a, u);
    for (std::size_t n = 0; n <= 2; ++n) {
      INFO(a << " / " << u << " n=" << n);
      CHECK(gamma_level(v, n).object_count() == brute_objects(*v, n));
    }
  }
  auto v = picard_pair("Z/2", "Z/2");
  CHECK(gamma_level(v, 3).object_count() == brute_objects(*v, 3));
}

TEST_CASE("level morphisms") {
  auto v     = picard_pair("Z/2", "Z/2");
  auto level = gamma_level(v, 2);
  for (std::size_t x = 0; x < level.object_count(); ++x) {
    std::uint64_t total = 0;
    for (std::size_t y = 0; y < level.object_count(); ++y) total += level.hom(x, y).size();
    CHECK(total == level.out_degree(x));
    level.for_each_out(x, [&](auto const& f) {
      auto y = level.apply(x, f);
      CHECK(y != npos);
      CHECK(level.is_morphism(x, y, f));
      CHECK(level.apply(y, level.inverse(f)) == x);
      return true;
    });
  }
  auto g = level.groupoid();
  CHECK(g.components().size() == level.object_count());
  CHECK(level.component_count() == 4);  // pi0 (Z/2)^2
}

TEST_CASE("Segal condition") {
  for (auto a : {"Z/2", "Z/3", "Z/4", "Z/2 x Z/2"}) {
    auto v = shared(from_abelian_group(FiniteAbelianGroup::parse(a)));
    for (std::size_t n : {2, 3}) {
      INFO(a << " n=" << n);
      auto r = segal_check(v, n);
      CHECK(r.special());
      CHECK(r.source_components == r.target_components);
    }
  }
  auto sp = segal_check(picard_pair("Z/2", "Z/2"), 2);
  CHECK(sp.special());
  CHECK(sp.exhaustive_checked);

  // deleting p(1, 2) frees V(12); pi0 grows and the check fails
  auto v    = picard_pair("Z/2", "Z/2");
  auto bad  = gamma_level(v, 2, default_limits(), GammaOptions{std::pair{1u, 2u}});
  auto r    = segal_check(bad);
  CHECK_FALSE(r.special());
  CHECK_FALSE(r.pi0_bijective);
}

TEST_CASE("pushforward is functorial") {
  auto v = picard_pair("Z/2", "Z/2");
  std::vector<GammaLevel> levels;
  for (std::size_t n = 0; n <= 2; ++n) levels.push_back(gamma_level(v, n));
  for (std::size_t l = 0; l <= 2; ++l)
    for (std::size_t m = 0; m <= 2; ++m)
      for (std::size_t n = 0; n <= 2; ++n)
        for (auto const& b : all_pointed_maps(l, m))
          for (auto const& a : all_pointed_maps(m, n)) {
            auto lhs = pushforward(a.after(b), levels[l], levels[n]);
            auto rhs = compose_functors(pushforward(a, levels[m], levels[n]), pushforward(b, levels[l], levels[m]));
            CHECK(functors_equal(lhs, rhs));
          }
  auto id = pushforward(PointedMap::identity(2), levels[2], levels[2]);
  for (std::size_t x = 0; x < levels[2].object_count(); ++x) CHECK(id.objects[x] == x);
}

TEST_CASE("diagonal nerve census") {
  for (auto [a, u] : {std::pair{"Z/2", "Z/1"}, {"Z/2", "Z/2"}, {"Z/1", "Z/3"}}) {
    auto levels = circle_levels(picard_pair(a, u), 3);
    auto x      = diagonal_nerve(levels);
    INFO(a << " / " << u);
    for (std::size_t d = 0; d <= 3; ++d) CHECK(x.counts[d] == chain_count(levels.levels[d], d));
    CHECK(x.identities_checked);
    CHECK(x.identity_violations.empty());
  }
}

TEST_CASE("fundamental groups") {
  auto z2 = diagonal_nerve(circle_levels(shared(from_abelian_group(FiniteAbelianGroup::parse("Z/2"))), 3));
  CHECK(z2.vertices() == 1);
  CHECK(z2.counts[1] == 2);
  CHECK(pi1_invariants(z2).invariants == Vec{2});

  auto z3 = deloop_check(shared(from_abelian_group(FiniteAbelianGroup::parse("Z/3"))));
  CHECK(z3.ok());
  CHECK(z3.pi1_invariants == Vec{3});

  // nerve of V(1_+) for a one-object V with Aut = Z/2
  auto one = gamma_level(picard_pair("Z/1", "Z/2"), 1);
  auto pi  = pi1_invariants(groupoid_nerve(one.groupoid()));
  CHECK(pi.invariants == Vec{2});

  // a connected two-object level; the answer must not depend on the tree
  auto two = gamma_level(picard_pair("Z/1", "Z/2"), 2);
  REQUIRE(two.object_count() == 2);
  auto nerve = groupoid_nerve(two.groupoid());
  CHECK(nerve.identity_violations.empty());
  for (std::uint64_t seed : {0, 1, 2, 3, 17}) {
    auto r = pi1_invariants(nerve, seed % 2, seed);
    CHECK(r.tree.size() == 1);
    CHECK(r.invariants == Vec{2, 2});
  }

  auto discrete = groupoid_nerve(gamma_level(picard_pair("Z/2", "Z/1"), 1).groupoid());
  CHECK_THROWS_AS(pi1_invariants(discrete), ValidationError);
}

TEST_CASE("induced functors") {
  auto z4 = from_abelian_group(FiniteAbelianGroup::parse("Z/4"));
  auto z2 = from_abelian_group(FiniteAbelianGroup::parse("Z/2"));
  auto f  = functor_from_homomorphism(z4, z2, {0, 1, 0, 1});
  auto sl = circle_levels(shared(z4), 3);
  auto tl = circle_levels(shared(z2), 3);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto g = induced_gamma_functor(f, sl.levels[n], tl.levels[n]);
    CHECK(g.objects.size() == sl.levels[n].object_count());
  }
  auto sx = diagonal_nerve(sl);
  auto tx = diagonal_nerve(tl);
  auto sp = pi1_invariants(sx);
  auto tp = pi1_invariants(tx);
  CHECK(sp.invariants == Vec{4});
  auto map = induced_pi1_map(f, sx, sp, tx, tp);
  CHECK(map.well_defined);
  CHECK(map.surjective());

  // the zero homomorphism is well defined but not onto
  auto zero = functor_from_homomorphism(z4, z2, {0, 0, 0, 0});
  auto zmap = induced_pi1_map(zero, sx, sp, tx, tp);
  CHECK(zmap.well_defined);
  CHECK_FALSE(zmap.surjective());
}
