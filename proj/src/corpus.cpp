#include "brauerk/corpus.hpp"

#include <optional>

#include "brauerk/error.hpp"

namespace brauerk {

  using element = FiniteCommRing::element;

  std::vector<std::string> acceptance_rings() {
    return {"GF(2)", "GF(3)", "GF(4)", "Z/4", "Z/6", "Z/9", "Z/4 x GF(2)"};
  }

  std::vector<Extension> commutative_extensions(RingPtr const& r, Limits const& limits) {
    std::vector<std::pair<std::string, RingPtr>> rings;
    rings.emplace_back("R x R", FiniteCommRing::product({r, r}, limits));
    auto const zero = r->zero(), one = r->one();
    rings.emplace_back("R[x]/(x^2)", FiniteCommRing::polynomial_quotient(r, {zero, zero}, {}, limits));
    rings.emplace_back("R[x]/(x^2+x+1)", FiniteCommRing::polynomial_quotient(r, {one, one}, {}, limits));
    if (r->is_field()) {
      auto q = static_cast<std::int64_t>(r->order() * r->order());
      rings.emplace_back("GF(" + std::to_string(q) + ")", FiniteCommRing::galois_field(q, limits));
    }
    std::vector<Extension> out;
    for (auto& [name, s] : rings) {
      // Z/n-style rings have a single unital map from R; fields take the first
      out.push_back({name, restrict_scalars(ring_maps(r, s).at(0), unit_algebra(s))});
    }
    return out;
  }

  std::vector<CorpusModule> projective_corpus(Limits const& limits) {
    std::vector<CorpusModule> out;
    for (auto const& spec : acceptance_rings()) {
      auto ring = parse_ring(spec, limits);
      auto loc  = local_decomposition(ring);
      std::vector<std::vector<std::size_t>> shapes;
      if (loc.size() == 1) {
        shapes = {{1}, {2}, {3}};
      } else {
        for (std::size_t a = 0; a <= 2; ++a) {
          for (std::size_t b = 0; b <= 2; ++b) {
            if (a + b > 0) {
              shapes.push_back({a, b});
            }
          }
        }
      }
      for (auto const& q : shapes) {
        std::optional<FGModule> m;
        for (std::size_t i = 0; i < q.size(); ++i) {
          auto piece = idempotent_module(ring, loc.primitive_idempotents[i]);
          for (std::size_t k = 0; k < q[i]; ++k) {
            m = m ? direct_sum(*m, piece, limits) : piece;
          }
        }
        out.push_back({spec, q, *m});
      }
    }
    return out;
  }

  namespace {

    std::vector<RingPtr> fields_and_residues(std::uint64_t max_order, Limits const& limits) {
      std::vector<RingPtr> out;
      for (std::uint64_t n = 2; n <= max_order; ++n) {
        out.push_back(FiniteCommRing::integers_mod(static_cast<std::int64_t>(n), limits));
      }
      for (std::uint64_t q = 4; q <= max_order; ++q) {
        // prime powers that are not prime
        std::uint64_t p = 2;
        while (q % p != 0) {
          ++p;
        }
        auto t = q;
        while (t % p == 0) {
          t /= p;
        }
        if (t == 1 && q != p) {
          try {
            out.push_back(FiniteCommRing::galois_field(static_cast<std::int64_t>(q), limits));
          } catch (ParseError const&) {
            // no built-in polynomial for this q
          }
        }
      }
      return out;
    }

  }  // namespace

  std::size_t for_each_generated_ring(std::uint64_t max_order, std::function<void(RingPtr const&)> const& fn,
                                      Limits const& limits) {
    auto                 atoms = fields_and_residues(max_order, limits);
    std::vector<RingPtr> pieces(atoms);
    for (auto const& base : atoms) {
      auto const b = base->order();
      std::uint64_t o = b * b;
      for (std::size_t d = 2; o <= max_order; ++d, o *= b) {
        // every monic polynomial of degree d, coefficients in base order
        std::vector<element> coeffs(d, 0);
        for (;;) {
          pieces.push_back(FiniteCommRing::polynomial_quotient(base, coeffs, {}, limits));
          std::size_t i = 0;
          while (i < d && ++coeffs[i] == b) {
            coeffs[i++] = 0;
          }
          if (i == d) {
            break;
          }
        }
      }
    }
    std::size_t visited = 0;
    for (auto const& p : pieces) {
      fn(p);
      ++visited;
    }
    // products of two or more pieces, as non-decreasing index sequences
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t order) {
      for (std::size_t i = from; i < pieces.size(); ++i) {
        auto const o = order * pieces[i]->order();
        if (o > max_order) {
          continue;
        }
        pick.push_back(i);
        if (pick.size() >= 2) {
          std::vector<RingPtr> factors;
          for (auto k : pick) {
            factors.push_back(pieces[k]);
          }
          fn(FiniteCommRing::product(factors, limits));
          ++visited;
        }
        rec(i, o);
        pick.pop_back();
      }
    };
    rec(0, 1);
    return visited;
  }

  std::vector<GammaInput> gamma_corpus() {
    std::vector<GammaInput> out;
    for (auto a : {"Z/2", "Z/3", "Z/4", "Z/2 x Z/2"}) {
      out.push_back({std::string("from_abelian_group(") + a + ")",
                     std::make_shared<FiniteSymMonGroupoid const>(from_abelian_group(FiniteAbelianGroup::parse(a)))});
    }
    std::vector<std::string> const groups = {"0", "Z/2", "Z/3", "Z/4", "Z/2 x Z/2"};
    for (auto const& g : groups) {
      for (auto const& u : groups) {
        out.push_back({"synthetic_picard(" + g + ", " + u + ")",
                       std::make_shared<FiniteSymMonGroupoid const>(
                           synthetic_picard(FiniteAbelianGroup::parse(g), FiniteAbelianGroup::parse(u)))});
      }
    }
    return out;
  }

}  // namespace brauerk
