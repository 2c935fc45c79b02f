#include "brauerk/selftest.hpp"

#include <chrono>
#include <map>

#include "brauerk/brauer.hpp"
#include "brauerk/corpus.hpp"
#include "brauerk/error.hpp"
#include "brauerk/gamma.hpp"

namespace brauerk {

  namespace {

    struct Failure {
      std::string what;
    };

    void require(bool ok, std::string const& what) {
      if (!ok) {
        throw Failure{what};
      }
    }

    std::string c1(Limits const& limits) {
      std::size_t certified = 0, rejected = 0;
      for (auto const& spec : acceptance_rings()) {
        auto r = parse_ring(spec, limits);
        for (std::size_t n = 1; n <= 2; ++n) {
          auto c = is_azumaya(matrix_algebra(r, n, limits), limits);
          require(c.azumaya, "M_" + std::to_string(n) + "(" + spec + ") not Azumaya: " + c.failing_stage);
          ++certified;
        }
        for (auto const& e : commutative_extensions(r, limits)) {
          auto c = is_azumaya(e.algebra, limits);
          require(!c.azumaya && c.failing_stage.rfind("sandwich", 0) == 0,
                  e.name + " over " + spec + " did not fail the sandwich test (" + c.failing_stage + ")");
          ++rejected;
        }
      }
      return std::to_string(certified) + " matrix algebras certified, " + std::to_string(rejected)
           + " commutative extensions rejected";
    }

    std::string c2(Limits const& limits) {
      auto        corpus = projective_corpus(limits);
      std::size_t generators = 0;
      require(corpus.size() >= 30, "projective corpus has only " + std::to_string(corpus.size()) + " modules");
      for (auto const& m : corpus) {
        std::string name = m.ring + " q=(";
        for (std::size_t i = 0; i < m.multiplicities.size(); ++i) {
          name += (i ? "," : "") + std::to_string(m.multiplicities[i]);
        }
        name += ")";
        require(is_projective(m.module, limits).projective, name + " is not projective");
        auto g = is_generator(m.module, limits);
        require(g.witness != GeneratorReport::Witness::not_found_within_bound, name + ": criterion (3) inconclusive");
        require(g.agree(), name + ": criteria disagree");
        bool positive = true;
        for (auto v : g.rank.values) {
          positive = positive && v > 0;
        }
        require(g.decision == positive, name + ": decision does not follow the rank");
        generators += g.decision ? 1 : 0;
      }
      return std::to_string(corpus.size()) + " projective modules, " + std::to_string(generators)
           + " generators, all three criteria agree";
    }

    std::string c3(Limits const& limits) {
      std::string detail;
      for (auto const& spec : acceptance_rings()) {
        auto       r  = parse_ring(spec, limits);
        auto const t0 = std::chrono::steady_clock::now();
        auto       g  = brauer_groupoid(r, default_brauer_bound(*r), limits);
        auto       br = brauer_group(g, limits);
        auto const s  = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(br.exhaustive, spec + ": enumeration not exhaustive");
        require(br.group.is_trivial(), spec + ": Br has order " + std::to_string(br.group.order()));
        require(br.all_witnessed, spec + ": an Azumaya object has no Morita witness");
        if (spec == "GF(2)") {
          require(s < 600, "F2 at bound 16 took " + std::to_string(s) + " s");
        }
        detail += (detail.empty() ? "" : ", ") + spec + ":" + std::to_string(g.objects.size());
      }
      return "Br trivial; objects per ring " + detail;
    }

    std::string c4(Limits const& limits) {
      std::size_t paths = 0;
      for (auto const& spec : acceptance_rings()) {
        auto r = parse_ring(spec, limits);
        auto g = brauer_groupoid(r, default_brauer_bound(*r), limits);
        for (std::size_t x = 0; x < g.objects.size(); ++x) {
          require(g.inverse_paths[x].certified(), g.objects[x].descriptor() + ": inverse path not certified");
          ++paths;
        }
      }
      return std::to_string(paths) + " inverse paths [A] + [A^op] = [End(A)] ~ [R] certified";
    }

    std::uint64_t count_units(FiniteCommRing const& r) {
      std::uint64_t n = 0;
      for (FiniteCommRing::element a = 0; a < r.order(); ++a) {
        for (FiniteCommRing::element b = 0; b < r.order(); ++b) {
          if (r.mul(a, b) == r.one()) {
            ++n;
            break;
          }
        }
      }
      return n;
    }

    std::string c5(Limits const& limits) {
      auto rings = acceptance_rings();
      rings.insert(rings.end(), {"Z/12", "GF(7)", "Z/2"});
      std::string detail;
      for (auto const& spec : rings) {
        auto r = parse_ring(spec, limits);
        auto d = brauer_data(r, limits);
        require(d.pic_identified, spec + ": Aut(R) in the Brauer groupoid is "
                                      + format_invariants(d.unit_automorphisms.invariant_factors()) + ", Pic is "
                                      + format_invariants(d.pic.invariant_factors()));
        require(d.pic_automorphisms_match, spec + ": |Aut(L)| differs from |R^x|");
        require(d.gl1.order() == count_units(*r), spec + ": GL1 differs from the direct unit count");
        if (spec == "Z/12" || spec == "GF(7)" || spec == "Z/2") {
          detail += (detail.empty() ? "" : "; ") + spec + " -> (" + format_invariants(d.br.invariant_factors()) + ", "
                  + format_invariants(d.pic.invariant_factors()) + ", " + format_invariants(d.gl1.invariant_factors())
                  + ")";
        }
      }
      return detail;
    }

    std::string c6(Limits const& limits) {
      std::size_t checks = 0;
      for (auto const& in : gamma_corpus()) {
        for (std::size_t n : {2, 3}) {
          auto r = segal_check(in.v, n, limits);
          require(r.special(), in.name + " at " + std::to_string(n) + "_+: " + r.detail);
          ++checks;
        }
      }
      return std::to_string(checks) + " Segal maps are equivalences";
    }

    std::string c7(Limits const& limits) {
      std::size_t checks = 0;
      for (auto const& in : gamma_corpus()) {
        auto r = deloop_check(in.v, 3, limits);
        require(r.circle_pi0 == 1, in.name + ": circle evaluation has " + std::to_string(r.circle_pi0) + " components");
        require(r.simplicial_identities, in.name + ": simplicial identities fail");
        require(r.pi1_invariants == r.pi0_invariants, in.name + ": pi1 " + format_invariants(r.pi1_invariants)
                                                          + " vs pi0 " + format_invariants(r.pi0_invariants));
        ++checks;
      }
      return std::to_string(checks) + " deloopings with pi1 = pi0 V";
    }

    std::string c8(Limits const& limits) {
      auto v = std::make_shared<FiniteSymMonGroupoid const>(
          synthetic_picard(FiniteAbelianGroup::parse("Z/2"), FiniteAbelianGroup::parse("Z/2")));
      std::vector<GammaLevel> levels;
      for (std::size_t n = 0; n <= 3; ++n) {
        levels.push_back(gamma_level(v, n, limits));
      }
      // alpha_* for every pointed map, computed once
      std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<PointedMap, LevelFunctor>>> push;
      for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
          for (auto const& a : all_pointed_maps(m, n)) {
            push[{m, n}].emplace_back(a, pushforward(a, levels[m], levels[n]));
          }
        }
      }
      auto lookup = [&](PointedMap const& a) -> LevelFunctor const& {
        for (auto const& [b, f] : push[{a.source, a.target}]) {
          if (b == a) {
            return f;
          }
        }
        throw ValidationError("missing pushforward");
      };
      std::size_t pairs = 0;
      for (std::size_t l = 0; l <= 3; ++l) {
        for (std::size_t m = 0; m <= 3; ++m) {
          for (std::size_t n = 0; n <= 3; ++n) {
            for (auto const& [b, fb] : push[{l, m}]) {
              for (auto const& [a, fa] : push[{m, n}]) {
                require(functors_equal(lookup(a.after(b)), compose_functors(fa, fb), false),
                        "(ab)_* != a_* b_* for maps " + std::to_string(l) + "->" + std::to_string(m) + "->"
                            + std::to_string(n));
                ++pairs;
              }
            }
          }
        }
      }

      auto z4 = std::make_shared<FiniteSymMonGroupoid const>(from_abelian_group(FiniteAbelianGroup::parse("Z/4")));
      auto z2 = std::make_shared<FiniteSymMonGroupoid const>(from_abelian_group(FiniteAbelianGroup::parse("Z/2")));
      auto f  = functor_from_homomorphism(*z4, *z2, {0, 1, 0, 1});
      require(check_monoidal_functor(f).ok(), "Z/4 -> Z/2 is not a monoidal functor");
      auto sl = circle_levels(z4, 3, limits);
      auto tl = circle_levels(z2, 3, limits);
      for (std::size_t n = 0; n <= 3; ++n) {
        induced_gamma_functor(f, sl.levels[n], tl.levels[n]);  // throws if an image object is missing
      }
      auto sx  = diagonal_nerve(sl, limits);
      auto tx  = diagonal_nerve(tl, limits);
      auto sp  = pi1_invariants(sx);
      auto tp  = pi1_invariants(tx);
      auto map = induced_pi1_map(f, sx, sp, tx, tp);
      require(map.well_defined, "Z/4 -> Z/2: induced map on pi1 is not well defined");
      require(map.surjective(), "Z/4 -> Z/2: induced map on pi1 is not onto");
      return std::to_string(pairs) + " composable pairs; pi1 map " + format_invariants(sp.invariants) + " -> "
           + format_invariants(tp.invariants) + " onto";
    }

    std::string c9(Limits const& limits) {
      std::string detail;
      for (auto [a, b] : {std::pair{"Z/4", "Z/2"}, {"Z/9", "Z/3"}, {"Z/6", "Z/2"}}) {
        auto maps = ring_maps(parse_ring(a, limits), parse_ring(b, limits));
        require(maps.size() == 1, std::string(a) + " -> " + b + ": expected one ring map");
        auto r = relative_report(maps[0], limits);
        require(r.alternating_identity, std::string(a) + " -> " + b + ": alternating identity fails");
        require(r.boundary_relation, std::string(a) + " -> " + b + ": |ker br| != |coker(Pic S -> pi0 F)|");
        detail += (detail.empty() ? "" : "; ") + std::string(a) + "->" + b + " fiber orders ("
                + std::to_string(r.fiber_orders[0]) + "," + std::to_string(r.fiber_orders[1]) + ","
                + std::to_string(r.fiber_orders[2]) + "," + std::to_string(r.fiber_orders[3]) + ")";
      }
      return detail;
    }

    std::string c10(Limits const& limits) {
      std::size_t five = 0;
      std::string first;
      auto count = for_each_generated_ring(64, [&](RingPtr const& r) {
        if (units(*r).group.order() == 5) {
          if (five++ == 0) {
            first = r->descriptor();
          }
        }
      }, limits);
      require(five == 0, first + " has exactly five units");
      return std::to_string(count) + " rings of order <= 64, none with five units";
    }

    char const* const titles[] = {
        "Azumaya certification of M_n(R), n <= 2; commutative extensions fail the sandwich",
        "generator criteria (1), (2), (3) agree on the projective corpus",
        "Brauer group trivial with a Morita witness for every object",
        "inverse path [A] + [A^op] = [End(A)] ~ [R] certified",
        "Aut(R) in the Brauer groupoid is Pic(R); Picard data matches direct enumeration",
        "Segal maps at 2_+ and 3_+ are equivalences",
        "circle evaluation: pi1 = pi0 V and one component",
        "pushforward functoriality; Z/4 -> Z/2 onto on delooped pi1",
        "relative sequence bookkeeping",
        "no generated ring of order <= 64 has exactly five units",
    };

  }  // namespace

  CriterionResult run_criterion(int id, Limits const& limits) {
    using Fn = std::string (*)(Limits const&);
    static Fn const fns[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    if (id < 1 || id > 10) {
      throw ValidationError("criterion ids are 1..10");
    }
    CriterionResult r;
    r.id    = id;
    r.title = titles[id - 1];
    auto const t0 = std::chrono::steady_clock::now();
    try {
      r.detail = fns[id - 1](limits);
      r.pass   = true;
    } catch (Failure const& f) {
      r.detail = f.what;
    } catch (std::exception const& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  std::vector<CriterionResult> run_selftest(Limits const& limits) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 10; ++id) {
      out.push_back(run_criterion(id, limits));
    }
    return out;
  }

}  // namespace brauerk
