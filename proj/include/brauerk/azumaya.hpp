#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brauerk/algebra.hpp"

namespace brauerk {

  // Structure constants on the free module R^n with basis e_0 = 1, e_1, ...:
  // constants[i * n + j] holds the R-coordinates of e_i e_j.
  StructuredAlgebra algebra_from_free_constants(RingPtr const&                                    ring,
                                                std::size_t                                       n,
                                                std::vector<std::vector<FiniteCommRing::element>> constants,
                                                std::string                                       descriptor,
                                                Limits const& limits = default_limits());

  // A x B with componentwise product.
  StructuredAlgebra algebra_product(StructuredAlgebra const& a, StructuredAlgebra const& b,
                                    Limits const& limits = default_limits());

  // a (x) b |-> (x |-> a x b), computed without materializing either side.
  struct SandwichReport {
    std::uint64_t tensor_order = 0;  // |A (x)_R A^op|
    std::uint64_t end_order    = 0;  // |End_R(A)|
    std::uint64_t kernel_order = 0;
    bool          injective    = false;
    bool          surjective   = false;
    bool          bijective() const noexcept {
      return injective && surjective;
    }
  };
  SandwichReport sandwich_report(StructuredAlgebra const& a);

  // The sandwich map as an explicit algebra map; both sides must fit the cap.
  struct SandwichMap {
    AlgebraMap map;
    EndAlgebra end;
  };
  SandwichMap sandwich_map(StructuredAlgebra const& a, Limits const& limits = default_limits());

  struct AzumayaCertificate {
    std::string              algebra;
    bool                     projective = false;
    RankFunction             rank;
    bool                     positive_rank = false;  // faithful
    std::optional<SandwichReport> sandwich;
    bool                     azumaya = false;
    std::string              failing_stage;  // empty when azumaya
  };
  // Throws CapExceeded (stage "sandwich") only if the orders overflow 64 bits.
  AzumayaCertificate is_azumaya(StructuredAlgebra const& a, Limits const& limits = default_limits());

  // An (A, B)-bimodule over a common ring R: left_action[i] is m |-> e_i m for
  // the module generators e_i of A, right_action[j] is m |-> m f_j.
  struct Bimodule {
    StructuredAlgebra   left;
    StructuredAlgebra   right;
    FGModule            module;
    std::vector<zmod::Matrix> left_action;
    std::vector<zmod::Matrix> right_action;

    zmod::Matrix left_matrix(zmod::Vec const& a) const;
    zmod::Matrix right_matrix(zmod::Vec const& b) const;
    // Throws ValidationError unless both actions are unital, (anti)multiplicative,
    // commute, and induce the module's own R-action.
    void validate() const;
  };

  // A as an (A, A)-bimodule; a left A-module with B acting on the right
  // through an algebra map into End_A.
  Bimodule regular_bimodule(StructuredAlgebra const& a);
  // P as an (End_R(P), R)-bimodule.
  Bimodule endomorphism_bimodule(EndAlgebra const& end, FGModule const& p);
  // R-symmetric (R, R)-bimodule on an R-module.
  Bimodule symmetric_bimodule(FGModule const& m);
  // M (x)_B N for M an (A, B)- and N a (B, C)-bimodule.
  Bimodule bimodule_tensor(Bimodule const& m, Bimodule const& n, Limits const& limits = default_limits());
  Bimodule bimodule_direct_sum(Bimodule const& m, Bimodule const& n, Limits const& limits = default_limits());

  // Iso of bimodules: bijective R-map commuting with both actions.
  std::optional<ModuleMap> bimodule_isomorphism(Bimodule const& m, Bimodule const& n,
                                                std::uint64_t budget = default_limits().iso_node_budget);

  struct InvertibilityReport {
    bool                    invertible = false;
    std::string             failing_stage;
    std::optional<Bimodule> inverse;            // N = Hom_A(M, A) as (B, A)-bimodule
    std::optional<ModuleMap> evaluation;        // M (x)_B N -> A, (A, A)-linear
    std::optional<ModuleMap> coevaluation;      // N (x)_A M -> B, (B, B)-linear
  };
  InvertibilityReport bimodule_invertible(Bimodule const& m, Limits const& limits = default_limits());

  struct MoritaWitness {
    StructuredAlgebra algebra;
    FGModule          generator;  // P
    AlgebraMap        iso;        // A -> End_R(P)
    EndAlgebra        end;
  };
  // Exhaustive over P = sum_i (e_i R)^{n_i}, n_i >= 1, with |End(P)| = |A| and
  // |P| <= bound. BudgetExceeded if an isomorphism test is cut off.
  std::optional<MoritaWitness> morita_trivialization(StructuredAlgebra const& a, std::uint64_t bound,
                                                     Limits const& limits = default_limits());
  // Checks every field of a witness from scratch.
  bool verify_witness(MoritaWitness const& w, Limits const& limits = default_limits());

  // The certified path [A] + [A^op] = [End_R(A)] ~ [R]: the sandwich map is
  // bijective and End_R(A) is trivialized by A itself.
  struct InversePath {
    bool          sandwich_bijective = false;
    bool          witness_valid      = false;  // End_R(A) = End_R(P) for P = A
    bool          generator          = false;  // A is a projective generator
    bool          certified() const noexcept {
      return sandwich_bijective && witness_valid && generator;
    }
  };
  InversePath inverse_path(StructuredAlgebra const& a, Limits const& limits = default_limits());

  struct AzumayaEnumeration {
    std::vector<StructuredAlgebra> algebras;       // one per iso class
    std::uint64_t                  bound = 0;
    bool                           exhaustive = true;
    std::uint64_t                  structures_examined = 0;
  };
  AzumayaEnumeration enumerate_azumaya(RingPtr const& ring, std::uint64_t bound,
                                       Limits const& limits = default_limits());

}  // namespace brauerk
