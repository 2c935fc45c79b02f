#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "brauerk/algebra.hpp"
#include "brauerk/gamma.hpp"

namespace brauerk {

  // F2, F3, F4, Z/4, Z/6, Z/9, Z/4 x F2.
  std::vector<std::string> acceptance_rings();

  // Proper commutative extensions S of R viewed as R-algebras: R x R,
  // R[x]/(x^2), R[x]/(x^2 + x + 1) and, for fields, the quadratic field.
  struct Extension {
    std::string       name;
    StructuredAlgebra algebra;
  };
  std::vector<Extension> commutative_extensions(RingPtr const& r, Limits const& limits = default_limits());

  // sum_i (e_i R)^{q_i} over the acceptance rings: q in {1, 2, 3} on local
  // rings, (q_1, q_2) in {0, 1, 2}^2 minus zero on the two-factor rings.
  struct CorpusModule {
    std::string          ring;
    std::vector<std::size_t> multiplicities;
    FGModule             module;
  };
  std::vector<CorpusModule> projective_corpus(Limits const& limits = default_limits());

  // Every ring of order <= max_order built from Z/n, GF(q), monic quotients
  // base[x]/(f) of degree >= 2 over those, and products of two or more of
  // these pieces. Visits each construction once; returns the number visited.
  std::size_t for_each_generated_ring(std::uint64_t max_order, std::function<void(RingPtr const&)> const& fn,
                                      Limits const& limits = default_limits());

  // The symmetric monoidal inputs of the Gamma checks: from_abelian_group of
  // Z/2, Z/3, Z/4, Z/2 x Z/2 and synthetic_picard(G, U) for all G, U of order <= 4.
  struct GammaInput {
    std::string name;
    SmcPtr      v;
  };
  std::vector<GammaInput> gamma_corpus();

}  // namespace brauerk
