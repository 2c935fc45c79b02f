#include <functional>

#include "doctest.h"

#include "brauerk/error.hpp"
#include "brauerk/module.hpp"

using namespace brauerk;
using zmod::Matrix;
using zmod::Vec;
using element = FiniteCommRing::element;
using Int     = zmod::Int;

namespace {

  // R / (a) as an R-module.
  FGModule cyclic(RingPtr const& r, element a) {
    return quotient_module(free_module(r, 1), {r->coords(a)}, "R/(" + r->label(a) + ")").module;
  }

  // Is the element map m -> n given by images of generators R-linear and well defined?
  // Checked on every element pair, without using the module machinery.
  bool brute_linear(FGModule const& m, FGModule const& n, std::vector<Vec> const& images) {
    auto const& r = *m.ring();
    auto        f = [&](Vec const& x) {
      Vec y = n.zero();
      for (std::size_t i = 0; i < m.dim(); ++i) {
        y = zmod::add(y, zmod::scale(x[i], images[i], n.orders()), n.orders());
      }
      return y;
    };
    for (std::uint64_t i = 0; i < m.order(); ++i) {
      auto x = m.element(i);
      for (std::size_t g = 0; g < m.dim(); ++g) {
        // well defined: o_g e_g = 0 must map to 0
        if (!zmod::is_zero(zmod::scale(m.orders()[g], images[g], n.orders()), n.orders())) {
          return false;
        }
      }
      for (element a = 0; a < r.order(); ++a) {
        if (f(m.act(a, x)) != n.act(a, f(x))) {
          return false;
        }
      }
    }
    return true;
  }

  // Every map given by generator images, enumerated exhaustively.
  void for_each_group_map(FGModule const& m, FGModule const& n,
                          std::function<void(std::vector<Vec> const&)> const& visit) {
    std::vector<Vec> images(m.dim());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == m.dim()) {
        visit(images);
        return;
      }
      for (std::uint64_t y = 0; y < n.order(); ++y) {
        images[i] = n.element(y);
        rec(i + 1);
      }
    };
    rec(0);
  }

  std::uint64_t brute_hom_count(FGModule const& m, FGModule const& n) {
    std::uint64_t c = 0;
    for_each_group_map(m, n, [&](std::vector<Vec> const& im) { c += brute_linear(m, n, im) ? 1 : 0; });
    return c;
  }

  // |M (x)_R N| = number of R-balanced bilinear maps M x N -> Z/c, c the
  // characteristic: the dual of a finite group of exponent dividing c has the
  // same order. Bilinear maps are enumerated by their values on generator
  // pairs and checked on every element pair.
  std::uint64_t brute_tensor_order(FGModule const& m, FGModule const& n) {
    auto const&       r = *m.ring();
    Int const         c = r.characteristic();
    std::size_t const k = m.dim(), l = n.dim();
    std::vector<Int>  v(k * l, 0);
    std::uint64_t     count = 0;
    auto              b     = [&](Vec const& x, Vec const& y) {
      Int s = 0;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
          s += x[i] * y[j] * v[i * l + j];
        }
      }
      return zmod::mod(s, c);
    };
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
      if (p == v.size()) {
        for (std::uint64_t i = 0; i < m.order(); ++i) {
          auto x = m.element(i);
          for (std::uint64_t j = 0; j < n.order(); ++j) {
            auto y = n.element(j);
            for (element a = 0; a < r.order(); ++a) {
              if (b(m.act(a, x), y) != b(x, n.act(a, y))) {
                return;
              }
            }
          }
        }
        // well defined on the cyclic orders
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < l; ++j) {
            if (zmod::mod(v[i * l + j] * m.orders()[i], c) != 0 || zmod::mod(v[i * l + j] * n.orders()[j], c) != 0) {
              return;
            }
          }
        }
        ++count;
        return;
      }
      for (Int t = 0; t < c; ++t) {
        v[p] = t;
        rec(p + 1);
      }
    };
    rec(0);
    return count;
  }

}  // namespace

TEST_CASE("free modules") {
  auto z4 = parse_ring("Z/4");
  CHECK(free_module(z4, 1).order() == 4);
  CHECK(free_module(parse_ring("Z/2"), 3).order() == 8);
  CHECK(free_module(parse_ring("GF(4)"), 0).order() == 1);
  CHECK_THROWS_AS(free_module(parse_ring("GF(4)"), 9), CapExceeded);
}

TEST_CASE("tensor products against bilinear map counts") {
  auto z6 = parse_ring("Z/6");
  auto z2 = cyclic(z6, 2);
  auto z3 = cyclic(z6, 3);
  CHECK(z2.order() == 2);
  CHECK(z3.order() == 3);
  CHECK(tensor_over_R(z2, z3).module.order() == 1);
  CHECK(brute_tensor_order(z2, z3) == 1);

  auto sum = direct_sum(z2, free_module(z6, 1));
  CHECK(tensor_over_R(sum, z2).module.order() == 4);
  CHECK(brute_tensor_order(sum, z2) == 4);

  auto z4 = parse_ring("Z/4");
  auto m  = cyclic(z4, 2);
  auto r  = free_module(z4, 1);
  CHECK(tensor_over_R(r, m).module.order() == 2);
  CHECK(tensor_over_R(r, r).module.order() == 4);
  CHECK(brute_tensor_order(m, m) == tensor_over_R(m, m).module.order());

  auto f4 = parse_ring("GF(4)");
  auto v  = free_module(f4, 1);
  CHECK(tensor_over_R(v, v).module.order() == 4);
  CHECK(brute_tensor_order(v, v) == 4);

  auto z4f2 = parse_ring("Z/4 x GF(2)");
  auto a    = cyclic(z4f2, z4f2->from_integer(2));
  auto b    = free_module(z4f2, 1);
  CHECK(tensor_over_R(a, b).module.order() == brute_tensor_order(a, b));
  CHECK(tensor_over_R(a, a).module.order() == brute_tensor_order(a, a));
}

TEST_CASE("Hom modules against exhaustive enumeration") {
  auto z6 = parse_ring("Z/6");
  auto z2 = cyclic(z6, 2);
  auto r  = free_module(z6, 1);
  CHECK(hom_module(z2, r).module.order() == brute_hom_count(z2, r));
  CHECK(hom_module(r, z2).module.order() == 2);
  auto f4 = parse_ring("GF(4)");
  auto v2 = free_module(f4, 2);
  CHECK(hom_module(v2, v2).module.order() == 256);
  auto z4  = parse_ring("Z/4");
  auto m   = direct_sum(cyclic(z4, 2), free_module(z4, 1));
  CHECK(hom_module(m, m).module.order() == brute_hom_count(m, m));
  // evaluating a Hom element agrees with its matrix
  auto h = hom_module(m, m);
  for (std::uint64_t i = 0; i < h.module.order(); ++i) {
    auto f = h.matrix(h.module.element(i));
    std::vector<Vec> images;
    for (std::size_t g = 0; g < m.dim(); ++g) {
      images.push_back(f.column(g));
    }
    CHECK(brute_linear(m, m, images));
  }
}

TEST_CASE("projectivity against exhaustive splitting search") {
  auto brute_projective = [](FGModule const& m) {
    // is there a surjection R^n -> M with a section, n = number of generators
    auto loc  = local_decomposition(m.ring());
    auto gens = minimal_generators(m, loc);
    auto pi   = surjection_from_free(m, gens);
    bool found = false;
    for_each_group_map(m, pi.source, [&](std::vector<Vec> const& im) {
      if (found || !brute_linear(m, pi.source, im)) {
        return;
      }
      for (std::size_t g = 0; g < m.dim(); ++g) {
        if (pi(im[g]) != m.basis_vector(g)) {
          return;
        }
      }
      found = true;
    });
    return found;
  };
  auto z6 = parse_ring("Z/6");
  auto z4 = parse_ring("Z/4");
  auto a  = cyclic(z6, 2);
  auto b  = cyclic(z4, 2);
  CHECK(is_projective(a).projective);
  CHECK(brute_projective(a));
  CHECK_FALSE(is_projective(b).projective);
  CHECK_FALSE(brute_projective(b));
  CHECK(is_projective(free_module(z4, 2)).projective);
  auto z4f2 = parse_ring("Z/4 x GF(2)");
  auto c    = cyclic(z4f2, z4f2->from_integer(2));
  CHECK(is_projective(c).projective == brute_projective(c));
  auto d = cyclic(z4f2, z4f2->from_integer(3));  // R/(3) = 0? 3 is a unit in Z/4 and 1 in F2
  CHECK(d.order() == 1);
}

TEST_CASE("rank functions and generator criteria") {
  auto z6  = parse_ring("Z/6");
  auto a   = cyclic(z6, 2);
  auto sum = direct_sum(a, free_module(z6, 1));
  CHECK(rank_function(sum).values == std::vector<std::size_t>{2, 1});
  CHECK(rank_function(a).values == std::vector<std::size_t>{1, 0});
  CHECK(rank_function(free_module(z6, 3)).values == std::vector<std::size_t>{3, 3});
  CHECK_THROWS_AS(rank_function(cyclic(parse_ring("Z/4"), 2)), ValidationError);

  auto g = is_generator(sum);
  CHECK(g.decision);
  CHECK(g.trace_contains_one);
  CHECK(g.witness == GeneratorReport::Witness::found);
  CHECK(g.agree());

  auto h = is_generator(a);
  CHECK_FALSE(h.decision);
  CHECK_FALSE(h.trace_contains_one);
  CHECK(h.witness == GeneratorReport::Witness::absent);
  CHECK(h.agree());

  auto r = is_generator(free_module(z6, 1));
  CHECK(r.decision);
  CHECK(r.witness == GeneratorReport::Witness::found);
  CHECK(r.witness_rank == 1);
  CHECK(r.witness_multiplicities == std::vector<std::size_t>{1, 1});
}

TEST_CASE("module isomorphism") {
  auto z6  = parse_ring("Z/6");
  auto r   = free_module(z6, 1);
  auto sum = direct_sum(cyclic(z6, 2), cyclic(z6, 3));
  auto iso = module_isomorphism(sum, r);
  REQUIRE(iso.has_value());
  CHECK_NOTHROW(iso->validate());
  CHECK(iso->is_bijective());
  CHECK_FALSE(module_isomorphism(cyclic(z6, 2), cyclic(z6, 3)).has_value());
  auto z4 = parse_ring("Z/4");
  CHECK_FALSE(module_isomorphism(free_module(z4, 1), direct_sum(cyclic(z4, 2), cyclic(z4, 2))).has_value());
  CHECK(free_basis(free_module(z4, 2)).has_value());
  CHECK_FALSE(free_basis(direct_sum(cyclic(z4, 2), cyclic(z4, 2))).has_value());
}
