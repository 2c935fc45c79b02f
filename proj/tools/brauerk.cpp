// brauerk: command-line front end. Exit 0 on success, 2 when a search stopped
// at a configured limit (answer unknown), 1 on any other error.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include "CLI11.hpp"

#include "brauerk/brauer.hpp"
#include "brauerk/error.hpp"
#include "brauerk/json_io.hpp"
#include "brauerk/selftest.hpp"

using namespace brauerk;

namespace {

  struct Outcome {
    json        payload;
    bool        exhaustive = true;
    std::string text;
    int         exit_code = 0;  // nonzero only for selftest failures
  };

  struct Config {
    Limits limits;
    bool   json_output = false;
  };

  // BRAUERK_CONFIG: a JSON object with any of the Limits fields and
  // "output": "json" | "text".
  Config load_config() {
    Config c;
    char const* path = std::getenv("BRAUERK_CONFIG");
    if (!path || !*path) {
      return c;
    }
    auto j = read_json_file(path);
    if (!j.is_object()) {
      throw ParseError("config must be a JSON object");
    }
    for (auto const& [key, value] : j.items()) {
      std::uint64_t* slot = key == "max_ring_order"      ? &c.limits.max_ring_order
                          : key == "max_module_order"    ? &c.limits.max_module_order
                          : key == "gamma_budget"        ? &c.limits.gamma_budget
                          : key == "iso_node_budget"     ? &c.limits.iso_node_budget
                          : key == "nerve_cell_budget"   ? &c.limits.nerve_cell_budget
                                                         : nullptr;
      if (slot) {
        if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
          throw ParseError("config field '" + key + "' must be a positive integer");
        }
        *slot = value.get<std::uint64_t>();
      } else if (key == "output") {
        if (value != "json" && value != "text") {
          throw ParseError("config field 'output' must be \"json\" or \"text\"");
        }
        c.json_output = value == "json";
      } else if (key != "schema") {
        throw ParseError("unknown config field '" + key + "'");
      }
    }
    return c;
  }

  json config_to_json(Config const& c) {
    return json{{"max_ring_order", c.limits.max_ring_order},
                {"max_module_order", c.limits.max_module_order},
                {"gamma_budget", c.limits.gamma_budget},
                {"iso_node_budget", c.limits.iso_node_budget},
                {"nerve_cell_budget", c.limits.nerve_cell_budget},
                {"output", c.json_output ? "json" : "text"}};
  }

  std::string inv(Invariants const& i) {
    return format_invariants(i);
  }

  StructuredAlgebra load_algebra(std::string const& spec, std::string const& file, std::size_t matrix, Limits const& l) {
    if (!file.empty()) {
      auto a = algebra_from_json(read_json_file(file), l);
      if (a.ring()->descriptor() != parse_ring(spec, l)->descriptor()) {
        throw ValidationError("algebra file is over " + a.ring()->descriptor() + ", not " + spec);
      }
      return a;
    }
    if (matrix == 0) {
      throw ParseError("give --algebra <file> or --matrix <n>");
    }
    return matrix_algebra(parse_ring(spec, l), matrix, l);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brauer, Picard and unit-group data of finite commutative rings; Gamma-space delooping checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  bool          json_flag = false;
  std::uint64_t budget    = 0;
  std::uint64_t seed      = 0;
  app.add_flag("--json", json_flag, "machine-readable report");
  app.add_option("--budget", budget, "search budget: gamma level objects and iso-search nodes");
  app.add_option("--seed", seed, "shuffle search order (pi1 spanning tree); 0 = deterministic");

  Config                                      config;
  std::function<Outcome(Limits const&)>       run;
  std::string                                 spec, spec2, arrow, file;
  std::uint64_t                               bound = 0;
  std::size_t                                 matrix = 0, max_level = 3;

  auto* ring = app.add_subcommand("ring", "ring operations")->require_subcommand(1);
  ring->add_subcommand("info", "order, characteristic, local factors, units")
      ->callback([&] {
        run = [&](Limits const& l) {
          auto r   = parse_ring(spec, l);
          auto loc = local_decomposition(r);
          auto u   = units(*r);
          Outcome o;
          json    residues = json::array();
          for (auto const& f : loc.residue_fields) {
            residues.push_back(f->order());
          }
          o.payload = json{{"schema", "v1"},
                           {"ring", r->descriptor()},
                           {"order", r->order()},
                           {"characteristic", r->characteristic()},
                           {"field", r->is_field()},
                           {"local", r->is_local()},
                           {"local_factors", loc.local_factors.size()},
                           {"residue_field_orders", residues},
                           {"units", invariants_to_json(u.group.invariant_factors())}};
          o.text = r->descriptor() + ": order " + std::to_string(r->order()) + ", characteristic "
                 + std::to_string(r->characteristic()) + ", " + std::to_string(loc.local_factors.size())
                 + " local factor(s), units " + inv(u.group.invariant_factors());
          return o;
        };
      })
      ->add_option("spec", spec, "ring spec, e.g. \"Z/4 x GF(2)\"")
      ->required();

  auto* az = app.add_subcommand("azumaya", "Azumaya certification")->require_subcommand(1);
  auto* azc = az->add_subcommand("check", "projective, faithful, sandwich map bijective");
  azc->add_option("spec", spec)->required();
  azc->add_option("--algebra", file, "algebra JSON file");
  azc->add_option("--matrix", matrix, "use the n x n matrix algebra instead");
  azc->callback([&] {
    run = [&](Limits const& l) {
      auto a = load_algebra(spec, file, matrix, l);
      auto c = is_azumaya(a, l);
      Outcome o;
      o.payload = certificate_to_json(c, std::nullopt, true);
      o.text    = a.descriptor() + (c.azumaya ? ": Azumaya" : ": not Azumaya (failing stage " + c.failing_stage + ")");
      return o;
    };
  });

  auto* mo = app.add_subcommand("morita", "Morita trivialization")->require_subcommand(1);
  auto* mow = mo->add_subcommand("witness", "search P with A = End_R(P), |P| <= bound");
  mow->add_option("spec", spec)->required();
  mow->add_option("--algebra", file, "algebra JSON file");
  mow->add_option("--matrix", matrix, "use the n x n matrix algebra instead");
  mow->add_option("--bound", bound, "module order bound (default |A|)");
  mow->callback([&] {
    run = [&](Limits const& l) {
      auto a = load_algebra(spec, file, matrix, l);
      auto c = is_azumaya(a, l);
      auto w = morita_trivialization(a, bound ? bound : a.order(), l);
      Outcome o;
      o.payload = certificate_to_json(c, w, true);
      o.text    = a.descriptor() + (w ? ": witness P = " + w->generator.descriptor()
                                      : ": no projective generator within the bound");
      return o;
    };
  });

  auto* br = app.add_subcommand("brauer", "Brauer data")->require_subcommand(1);
  auto* brc = br->add_subcommand("compute", "(Br, Pic, GL1) up to a module-order bound");
  brc->add_option("spec", spec)->required();
  brc->add_option("--bound", bound, "module order bound (default max(16, |R|))");
  brc->callback([&] {
    run = [&](Limits const& l) {
      auto r = parse_ring(spec, l);
      auto d = bound ? brauer_data(r, bound, l) : brauer_data(r, l);
      Outcome o;
      o.payload    = brauer_data_to_json(d);
      o.exhaustive = d.exhaustive;
      o.text = d.ring + ": Br " + inv(d.br.invariant_factors()) + ", Pic " + inv(d.pic.invariant_factors()) + ", GL1 "
             + inv(d.gl1.invariant_factors()) + " (bound " + std::to_string(d.bound)
             + (d.exhaustive ? ", exhaustive)" : ", NOT exhaustive)");
      return o;
    };
  });

  auto* pc = app.add_subcommand("picard", "Picard data")->require_subcommand(1);
  auto* pcc = pc->add_subcommand("compute", "Pic(R) and GL1(R)");
  pcc->add_option("spec", spec)->required();
  pcc->callback([&] {
    run = [&](Limits const& l) {
      auto d = picard_data(parse_ring(spec, l), l);
      Outcome o;
      o.payload = picard_to_json(d);
      o.text    = d.ring->descriptor() + ": Pic " + inv(d.pic.invariant_factors()) + ", GL1 "
             + inv(d.gl1.invariant_factors());
      return o;
    };
  });

  std::string abelian, synthetic;
  auto* ga = app.add_subcommand("gamma", "Gamma-space delooping")->require_subcommand(1);
  auto* gad = ga->add_subcommand("deloop", "pi0 V against pi1 of the circle evaluation");
  gad->add_option("--input", file, "symmetric monoidal groupoid JSON")->required();
  gad->add_option("--max-level", max_level, "largest level n_+ built (>= 3 for the 2-skeleton)");
  gad->callback([&] {
    run = [&](Limits const& l) {
      auto v = smc_from_json(read_json_file(file));
      if (auto c = check_coherence(v, 1); !c.ok()) {
        throw ValidationError("input is not symmetric monoidal: " + c.violations.front());
      }
      auto p = std::make_shared<FiniteSymMonGroupoid const>(std::move(v));
      auto r = deloop_check(p, max_level, l);
      if (seed != 0) {
        r.pi1_invariants = pi1_invariants(diagonal_nerve(circle_levels(p, max_level, l), l), 0, seed).invariants;
      }
      Outcome o;
      o.payload = deloop_report_to_json(r);
      o.text    = "pi0 V = " + inv(r.pi0_invariants) + ", pi1 V(S^1) = " + inv(r.pi1_invariants)
             + (r.ok() ? " (delooping verified)" : " (MISMATCH)");
      return o;
    };
  });
  auto* gdump = ga->add_subcommand("dump", "write a built-in groupoid as JSON");
  auto* ab    = gdump->add_option("--abelian", abelian, "from_abelian_group(G), e.g. Z/3");
  gdump->add_option("--synthetic", synthetic, "synthetic_picard(G, U) as \"G;U\"")->excludes(ab);
  gdump->callback([&] {
    run = [&](Limits const&) {
      FiniteSymMonGroupoid v;
      if (!abelian.empty()) {
        v = from_abelian_group(FiniteAbelianGroup::parse(abelian));
      } else if (auto k = synthetic.find(';'); k != std::string::npos) {
        v = synthetic_picard(FiniteAbelianGroup::parse(synthetic.substr(0, k)),
                             FiniteAbelianGroup::parse(synthetic.substr(k + 1)));
      } else {
        throw ParseError("give --abelian G or --synthetic \"G;U\"");
      }
      Outcome o;
      o.payload = smc_to_json(v);
      o.text    = dump_json(o.payload);
      o.text.pop_back();
      return o;
    };
  });

  auto* rel = app.add_subcommand("relative", "fiber of R -> S: orders of its homotopy groups");
  rel->add_option("source", spec)->required();
  rel->add_option("arrow", arrow)->required()->check(CLI::IsMember({"->", "to"}));
  rel->add_option("target", spec2)->required();
  rel->add_option("--map", file, "ring map JSON (default: the unique map)");
  rel->add_option("--bound", bound, "module order bound (default max(16, |R|) per ring)");
  rel->callback([&] {
    run = [&](Limits const& l) {
      auto r = parse_ring(spec, l), s = parse_ring(spec2, l);
      RingMap f;
      if (!file.empty()) {
        auto j = read_json_file(file);
        if (j.is_array()) {
          j = json{{"schema", "v1"}, {"source", spec}, {"target", spec2}, {"image", j}};
        }
        f = ring_map_from_json(j, l);
        if (f.source->descriptor() != r->descriptor() || f.target->descriptor() != s->descriptor()) {
          throw ValidationError("map file does not match " + spec + " -> " + spec2);
        }
      } else {
        auto maps = ring_maps(r, s);
        if (maps.size() != 1) {
          throw ValidationError(std::to_string(maps.size()) + " ring maps " + spec + " -> " + spec2 + "; give --map");
        }
        f = maps[0];
      }
      auto rep = bound ? relative_report(f, bound, l) : relative_report(f, l);
      Outcome o;
      o.payload = relative_report_to_json(rep);
      o.text    = rep.source + " -> " + rep.target + ": |pi_2 F|..|pi_-1 F| = " + std::to_string(rep.fiber_orders[0])
             + ", " + std::to_string(rep.fiber_orders[1]) + ", " + std::to_string(rep.fiber_orders[2]) + ", "
             + std::to_string(rep.fiber_orders[3]) + (rep.consistent() ? " (consistent)" : " (INCONSISTENT)");
      return o;
    };
  });

  app.add_subcommand("selftest", "the ten acceptance criteria")->callback([&] {
    run = [&](Limits const& l) {
      Outcome o;
      o.payload = json{{"schema", "v1"}, {"criteria", json::array()}};
      for (auto const& c : run_selftest(l)) {
        o.payload["criteria"].push_back(
            json{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
        o.text += std::string(c.pass ? "PASS" : "FAIL") + "  [" + std::to_string(c.id) + "] " + c.title + "  ("
                + c.detail + ")\n";
        o.exit_code = c.pass ? o.exit_code : 1;
      }
      o.text.pop_back();
      return o;
    };
  });

  // "->" would be read as an option; CLI11 sees it as "to"
  std::vector<std::string> args(argv + 1, argv + argc);
  for (auto& a : args) {
    a = a == "->" ? "to" : a;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    config = load_config();
    config.json_output = config.json_output || json_flag;
    if (budget) {
      config.limits.gamma_budget    = budget;
      config.limits.iso_node_budget = budget;
    }
    auto const t0 = std::chrono::steady_clock::now();
    auto       o  = run(config.limits);
    auto const s  = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (config.json_output) {
      json cmd = json::array();
      for (int i = 1; i < argc; ++i) {
        cmd.push_back(argv[i]);
      }
      std::cout << dump_json(json{{"schema", "v1"},
                                  {"command", cmd},
                                  {"config", config_to_json(config)},
                                  {"result", o.payload},
                                  {"exhaustive", o.exhaustive},
                                  {"wall_time_s", s}});
    } else {
      std::cout << o.text << "\n";
    }
    return o.exit_code;
  } catch (Inconclusive const& e) {
    std::cerr << "inconclusive (" << e.stage() << "): " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
