#pragma once

#include <string>

#include "json.hpp"

#include "brauerk/algebra.hpp"
#include "brauerk/azumaya.hpp"
#include "brauerk/brauer.hpp"
#include "brauerk/config.hpp"
#include "brauerk/gamma.hpp"
#include "brauerk/picard.hpp"
#include "brauerk/ring.hpp"
#include "brauerk/smc.hpp"

namespace brauerk {

  using json = nlohmann::ordered_json;

  // {"order", "add", "mul", "zero", "one"} with 0-based indices.
  json    ring_to_json(FiniteCommRing const& ring);
  RingPtr ring_from_json(json const& j, std::string descriptor, Limits const& limits = default_limits());
  RingPtr read_ring_table(std::string const& path, Limits const& limits = default_limits());

  json read_json_file(std::string const& path);

  // Every document below carries "schema": "v1". The ring is referenced by
  // its descriptor and re-parsed on load, so only spec-grammar rings
  // (including table: paths) round-trip.
  json     module_to_json(FGModule const& m);
  FGModule module_from_json(json const& j, Limits const& limits = default_limits());
  json              algebra_to_json(StructuredAlgebra const& a);
  StructuredAlgebra algebra_from_json(json const& j, Limits const& limits = default_limits());

  // objects, morphisms {label, source, target}, identity, composition,
  // tensor tables and coherence cell tables; npos is written as -1.
  json                 smc_to_json(FiniteSymMonGroupoid const& v);
  FiniteSymMonGroupoid smc_from_json(json const& j);

  // {"source", "target", "image"}; both rings by descriptor.
  json    ring_map_to_json(RingMap const& f);
  RingMap ring_map_from_json(json const& j, Limits const& limits = default_limits());

  // Reports, output only.
  json certificate_to_json(AzumayaCertificate const& c, std::optional<MoritaWitness> const& witness, bool exhaustive);
  json picard_to_json(PicardData const& d);
  json brauer_data_to_json(BrauerData const& d);
  json relative_report_to_json(RelativeReport const& r);
  json deloop_report_to_json(DeloopReport const& r);
  json invariants_to_json(Invariants const& inv);

  // dump(parse(dump(j))) == dump(j), the CLI's serialization.
  std::string dump_json(json const& j);

}  // namespace brauerk
