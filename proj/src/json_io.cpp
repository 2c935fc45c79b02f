#include "brauerk/json_io.hpp"

#include <fstream>

#include "brauerk/error.hpp"

namespace brauerk {

  namespace {

    std::vector<FiniteCommRing::element> flat_table(json const& j, std::size_t n, char const* name) {
      if (!j.contains(name) || !j[name].is_array() || j[name].size() != n) {
        throw ParseError(std::string("ring table field '") + name + "' must be an order x order array");
      }
      std::vector<FiniteCommRing::element> out;
      out.reserve(n * n);
      for (auto const& row : j[name]) {
        if (!row.is_array() || row.size() != n) {
          throw ParseError(std::string("ring table field '") + name + "' has a malformed row");
        }
        for (auto const& v : row) {
          if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw ParseError(std::string("ring table field '") + name + "' has a non-index entry");
          }
          out.push_back(v.get<FiniteCommRing::element>());
        }
      }
      return out;
    }

  }  // namespace

  json ring_to_json(FiniteCommRing const& ring) {
    std::size_t const n = ring.order();
    json              add = json::array(), mul = json::array();
    for (FiniteCommRing::element a = 0; a < n; ++a) {
      json ra = json::array(), rm = json::array();
      for (FiniteCommRing::element b = 0; b < n; ++b) {
        ra.push_back(ring.add(a, b));
        rm.push_back(ring.mul(a, b));
      }
      add.push_back(std::move(ra));
      mul.push_back(std::move(rm));
    }
    return json{{"order", n}, {"add", add}, {"mul", mul}, {"zero", ring.zero()}, {"one", ring.one()}};
  }

  RingPtr ring_from_json(json const& j, std::string descriptor, Limits const& limits) {
    if (!j.is_object() || !j.contains("order") || !j["order"].is_number_integer()
        || j["order"].get<std::int64_t>() < 0) {
      throw ParseError("ring table needs a non-negative integer 'order'");
    }
    auto n = j["order"].get<std::uint64_t>();
    if (n > limits.max_ring_order) {
      throw CapExceeded("ring", "ring order " + std::to_string(n) + " exceeds max_ring_order");
    }
    for (char const* key : {"zero", "one"}) {
      if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 0) {
        throw ParseError(std::string("ring table needs an index field '") + key + "'");
      }
    }
    return std::make_shared<FiniteCommRing const>(n, flat_table(j, n, "add"), flat_table(j, n, "mul"),
                                                  j["zero"].get<FiniteCommRing::element>(),
                                                  j["one"].get<FiniteCommRing::element>(), std::move(descriptor),
                                                  std::vector<std::string>{}, limits);
  }

  json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open '" + path + "'");
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
  }

  RingPtr read_ring_table(std::string const& path, Limits const& limits) {
    return ring_from_json(read_json_file(path), "table:" + path, limits);
  }

}  // namespace brauerk

namespace brauerk {

  namespace {

    char const* const schema = "v1";

    json matrix_to_json(zmod::Matrix const& m) {
      json rows = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (auto v : m.row(i)) {
          r.push_back(v);
        }
        rows.push_back(std::move(r));
      }
      return rows;
    }

    void require(bool ok, std::string const& what) {
      if (!ok) {
        throw ParseError(what);
      }
    }

    json const& field(json const& j, char const* name) {
      require(j.is_object() && j.contains(name), std::string("missing field '") + name + "'");
      return j[name];
    }

    zmod::Vec vec_from_json(json const& j, char const* what) {
      require(j.is_array(), std::string(what) + " must be an integer array");
      zmod::Vec v;
      for (auto const& x : j) {
        require(x.is_number_integer(), std::string(what) + " must be an integer array");
        v.push_back(x.get<zmod::Int>());
      }
      return v;
    }

    zmod::Matrix matrix_from_json(json const& j, std::size_t cols, char const* what) {
      require(j.is_array(), std::string(what) + " must be a list of rows");
      std::vector<zmod::Vec> rows;
      for (auto const& r : j) {
        rows.push_back(vec_from_json(r, what));
        require(rows.back().size() == cols, std::string(what) + " has a row of the wrong length");
      }
      return zmod::Matrix::from_rows(cols, rows);
    }

    void check_schema(json const& j) {
      require(j.is_object() && j.value("schema", "") == schema, "expected \"schema\": \"v1\"");
    }

    json index_list(std::vector<std::size_t> const& v) {
      json a = json::array();
      for (auto x : v) {
        a.push_back(x == npos ? -1 : static_cast<std::int64_t>(x));
      }
      return a;
    }

    std::vector<std::size_t> index_list(json const& j, char const* name, std::size_t size, std::size_t range,
                                        bool allow_none = false) {
      auto const& a = field(j, name);
      require(a.is_array() && a.size() == size, std::string("'") + name + "' must have " + std::to_string(size) + " entries");
      std::vector<std::size_t> out;
      for (auto const& x : a) {
        require(x.is_number_integer(), std::string("'") + name + "' must hold integers");
        auto v = x.get<std::int64_t>();
        if (v == -1 && allow_none) {
          out.push_back(npos);
          continue;
        }
        require(v >= 0 && static_cast<std::uint64_t>(v) < range, std::string("'") + name + "' has an out-of-range index");
        out.push_back(static_cast<std::size_t>(v));
      }
      return out;
    }

    json homomorphism_to_json(HomomorphismData const& h) {
      return json{{"matrix", matrix_to_json(h.matrix)},
                  {"kernel", invariants_to_json(h.kernel)},
                  {"image", invariants_to_json(h.image)},
                  {"cokernel", invariants_to_json(h.cokernel)}};
    }

  }  // namespace

  json invariants_to_json(Invariants const& inv) {
    json a = json::array();
    for (auto d : inv) {
      a.push_back(d);
    }
    return a;
  }

  std::string dump_json(json const& j) {
    return j.dump(2) + "\n";
  }

  json module_to_json(FGModule const& m) {
    json actions = json::array();
    for (auto const& a : m.basis_actions()) {
      actions.push_back(matrix_to_json(a));
    }
    return json{{"schema", schema},
                {"ring", m.ring()->descriptor()},
                {"descriptor", m.descriptor()},
                {"orders", m.orders()},
                {"basis_action", actions}};
  }

  FGModule module_from_json(json const& j, Limits const& limits) {
    check_schema(j);
    require(field(j, "ring").is_string() && field(j, "descriptor").is_string(), "ring and descriptor must be strings");
    auto ring   = parse_ring(j["ring"].get<std::string>(), limits);
    auto orders = vec_from_json(field(j, "orders"), "orders");
    std::vector<zmod::Matrix> actions;
    require(field(j, "basis_action").is_array(), "basis_action must be a list of matrices");
    for (auto const& a : j["basis_action"]) {
      actions.push_back(matrix_from_json(a, orders.size(), "basis_action"));
      require(actions.back().rows() == orders.size(), "basis_action matrices must be square");
    }
    return FGModule(ring, orders, actions, j["descriptor"].get<std::string>(), limits);
  }

  json algebra_to_json(StructuredAlgebra const& a) {
    json products = json::array();
    for (auto const& p : a.products()) {
      products.push_back(p);
    }
    json m = module_to_json(a.module());
    m.erase("schema");
    return json{{"schema", schema},
                {"descriptor", a.descriptor()},
                {"module", m},
                {"products", products},
                {"one", a.one()}};
  }

  StructuredAlgebra algebra_from_json(json const& j, Limits const& limits) {
    check_schema(j);
    json m = field(j, "module");
    require(m.is_object(), "module must be an object");
    m["schema"] = schema;
    auto module = module_from_json(m, limits);
    std::vector<zmod::Vec> products;
    require(field(j, "products").is_array() && j["products"].size() == module.dim() * module.dim(),
            "products must list dim^2 vectors");
    for (auto const& p : j["products"]) {
      products.push_back(vec_from_json(p, "products"));
      require(products.back().size() == module.dim(), "product vectors must have length dim");
    }
    auto one = vec_from_json(field(j, "one"), "one");
    require(one.size() == module.dim(), "one must have length dim");
    require(field(j, "descriptor").is_string(), "descriptor must be a string");
    return StructuredAlgebra(module, products, one, j["descriptor"].get<std::string>());
  }

  json smc_to_json(FiniteSymMonGroupoid const& v) {
    json morphisms = json::array();
    for (std::size_t f = 0; f < v.morphism_count(); ++f) {
      morphisms.push_back(json{{"label", v.morphism_labels[f]}, {"source", v.source[f]}, {"target", v.target[f]}});
    }
    return json{{"schema", schema},
                {"objects", v.objects},
                {"morphisms", morphisms},
                {"identity", index_list(v.identity)},
                {"composition", index_list(v.composition)},
                {"tensor_objects", index_list(v.tensor_obj)},
                {"tensor_morphisms", index_list(v.tensor_mor)},
                {"unit", v.unit},
                {"associator", index_list(v.associator)},
                {"left_unitor", index_list(v.left_unitor)},
                {"right_unitor", index_list(v.right_unitor)},
                {"symmetry", index_list(v.symmetry)}};
  }

  FiniteSymMonGroupoid smc_from_json(json const& j) {
    check_schema(j);
    FiniteSymMonGroupoid v;
    require(field(j, "objects").is_array(), "objects must be a list of labels");
    for (auto const& o : j["objects"]) {
      require(o.is_string(), "object labels must be strings");
      v.objects.push_back(o.get<std::string>());
    }
    auto const n = v.objects.size();
    require(n > 0, "a groupoid needs at least one object");
    require(field(j, "morphisms").is_array(), "morphisms must be a list");
    for (auto const& f : j["morphisms"]) {
      require(field(f, "label").is_string(), "morphism labels must be strings");
      v.morphism_labels.push_back(f["label"].get<std::string>());
      for (auto [name, out] : {std::pair{"source", &v.source}, {"target", &v.target}}) {
        auto const& x = field(f, name);
        require(x.is_number_integer() && x.get<std::int64_t>() >= 0 && x.get<std::uint64_t>() < n,
                std::string("morphism ") + name + " out of range");
        out->push_back(x.get<std::size_t>());
      }
    }
    auto const m = v.morphism_count();
    v.identity    = index_list(j, "identity", n, m);
    v.composition = index_list(j, "composition", m * m, m, true);
    v.tensor_obj  = index_list(j, "tensor_objects", n * n, n);
    v.tensor_mor  = index_list(j, "tensor_morphisms", m * m, m);
    require(field(j, "unit").is_number_integer() && j["unit"].get<std::int64_t>() >= 0
                && j["unit"].get<std::uint64_t>() < n,
            "unit out of range");
    v.unit         = j["unit"].get<std::size_t>();
    v.associator   = index_list(j, "associator", n * n * n, m);
    v.left_unitor  = index_list(j, "left_unitor", n, m);
    v.right_unitor = index_list(j, "right_unitor", n, m);
    v.symmetry     = index_list(j, "symmetry", n * n, m);
    return v;
  }

  json ring_map_to_json(RingMap const& f) {
    return json{{"schema", schema},
                {"source", f.source->descriptor()},
                {"target", f.target->descriptor()},
                {"image", f.image}};
  }

  RingMap ring_map_from_json(json const& j, Limits const& limits) {
    check_schema(j);
    require(field(j, "source").is_string() && field(j, "target").is_string(), "source and target must be ring specs");
    RingMap f{parse_ring(j["source"].get<std::string>(), limits), parse_ring(j["target"].get<std::string>(), limits), {}};
    auto img = vec_from_json(field(j, "image"), "image");
    require(img.size() == f.source->order(), "image must list one entry per source element");
    for (auto x : img) {
      require(x >= 0 && static_cast<std::uint64_t>(x) < f.target->order(), "image entry out of range");
      f.image.push_back(static_cast<FiniteCommRing::element>(x));
    }
    f.validate();
    return f;
  }

  json certificate_to_json(AzumayaCertificate const& c, std::optional<MoritaWitness> const& witness, bool exhaustive) {
    json rank = json::array();
    for (auto r : c.rank.values) {
      rank.push_back(r);
    }
    json h = nullptr;
    if (c.sandwich) {
      h = json{{"tensor_order", c.sandwich->tensor_order},
               {"end_order", c.sandwich->end_order},
               {"kernel_order", c.sandwich->kernel_order},
               {"injective", c.sandwich->injective},
               {"surjective", c.sandwich->surjective}};
    }
    json out{{"schema", schema},
             {"algebra", c.algebra},
             {"azumaya", c.azumaya},
             {"failing_stage", c.failing_stage},
             {"f_report", {{"projective", c.projective}, {"rank", rank}, {"positive_rank", c.positive_rank}}},
             {"h_report", h}};
    if (witness) {
      json w       = module_to_json(witness->generator);
      w.erase("schema");
      out["witness"] = json{{"generator", w}, {"iso", matrix_to_json(witness->iso.matrix)}};
    }
    out["exhaustive"] = exhaustive;
    return out;
  }

  json picard_to_json(PicardData const& d) {
    return json{{"schema", schema},
                {"ring", d.ring->descriptor()},
                {"pic", invariants_to_json(d.pic.invariant_factors())},
                {"gl1", invariants_to_json(d.gl1.invariant_factors())},
                {"automorphisms_match", d.automorphisms_match}};
  }

  json brauer_data_to_json(BrauerData const& d) {
    return json{{"schema", schema},
                {"ring", d.ring},
                {"br", invariants_to_json(d.br.invariant_factors())},
                {"pic", invariants_to_json(d.pic.invariant_factors())},
                {"gl1", invariants_to_json(d.gl1.invariant_factors())},
                {"bounds", {{"module_order", d.bound}}},
                {"exhaustive", d.exhaustive},
                {"pic_identified", d.pic_identified},
                {"inverses_certified", d.inverses_certified},
                {"all_witnessed", d.all_witnessed}};
  }

  json relative_report_to_json(RelativeReport const& r) {
    json fiber = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      fiber.push_back(json{{"degree", 2 - static_cast<int>(i)},
                           {"order", r.fiber_orders[i]},
                           {"extension_ambiguous", r.extension_ambiguous[i]}});
    }
    return json{{"schema", schema},
                {"source", r.source},
                {"target", r.target},
                {"map", r.map},
                {"gl1", {{"source", invariants_to_json(r.gl1_source.invariant_factors())},
                         {"target", invariants_to_json(r.gl1_target.invariant_factors())},
                         {"map", homomorphism_to_json(r.gl1_map)}}},
                {"pic", {{"source", invariants_to_json(r.pic_source.invariant_factors())},
                         {"target", invariants_to_json(r.pic_target.invariant_factors())},
                         {"map", homomorphism_to_json(r.pic_map)}}},
                {"br", {{"source", invariants_to_json(r.br_source.invariant_factors())},
                        {"target", invariants_to_json(r.br_target.invariant_factors())},
                        {"map", homomorphism_to_json(r.br_map)}}},
                {"fiber", fiber},
                {"alternating_identity", r.alternating_identity},
                {"boundary_relation", r.boundary_relation},
                {"consistent", r.consistent()}};
  }

  json deloop_report_to_json(DeloopReport const& r) {
    return json{{"schema", schema},
                {"pi0", invariants_to_json(r.pi0_invariants)},
                {"pi1", invariants_to_json(r.pi1_invariants)},
                {"circle_components", r.circle_pi0},
                {"cell_counts", r.cell_counts},
                {"simplicial_identities", r.simplicial_identities},
                {"ok", r.ok()}};
  }

}  // namespace brauerk
