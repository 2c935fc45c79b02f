#include "brauerk/abelian_group.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

#include "brauerk/error.hpp"

namespace brauerk {

  FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::vector<element>> table,
                                         element                           identity,
                                         std::vector<std::string>          labels)
      : _table(std::move(table)), _identity(identity), _labels(std::move(labels)) {
    std::size_t const n = _table.size();
    if (n == 0) {
      throw ValidationError("group table is empty");
    }
    if (identity >= n) {
      throw ValidationError("group identity out of range");
    }
    for (auto const& row : _table) {
      if (row.size() != n) {
        throw ValidationError("group table is not square");
      }
      for (auto x : row) {
        if (x >= n) {
          throw ValidationError("group table entry out of range");
        }
      }
    }
    _inverse.assign(n, 0);
    for (element a = 0; a < n; ++a) {
      if (_table[identity][a] != a) {
        throw ValidationError("identity axiom fails at element " + std::to_string(a));
      }
      bool found = false;
      for (element b = 0; b < n; ++b) {
        if (_table[a][b] != _table[b][a]) {
          throw ValidationError("group table is not commutative");
        }
        if (_table[a][b] == identity) {
          _inverse[a] = b;
          found       = true;
        }
      }
      if (!found) {
        throw ValidationError("element " + std::to_string(a) + " has no inverse");
      }
    }
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        auto ab = _table[a][b];
        for (element c = 0; c < n; ++c) {
          if (_table[ab][c] != _table[a][_table[b][c]]) {
            throw ValidationError("group table is not associative");
          }
        }
      }
    }
    if (_labels.empty()) {
      for (element a = 0; a < n; ++a) {
        _labels.push_back(std::to_string(a));
      }
    } else if (_labels.size() != n) {
      throw ValidationError("group labels do not match the order");
    }
    decompose();
  }

  FiniteAbelianGroup FiniteAbelianGroup::trivial() {
    return FiniteAbelianGroup({{0}}, 0, {"0"});
  }

  FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(zmod::Vec const& orders) {
    for (auto o : orders) {
      if (o < 1) {
        throw ValidationError("cyclic orders must be positive");
      }
    }
    auto n = zmod::group_order(orders);
    if (n > (1u << 16)) {
      throw ValidationError("group too large for an explicit table");
    }
    std::vector<std::vector<element>> table(n, std::vector<element>(n));
    std::vector<std::string>          labels;
    for (std::uint64_t a = 0; a < n; ++a) {
      auto ca = zmod::decode(a, orders);
      std::ostringstream os;
      os << '(';
      for (std::size_t i = 0; i < ca.size(); ++i) {
        os << (i ? "," : "") << ca[i];
      }
      os << ')';
      labels.push_back(os.str());
      for (std::uint64_t b = 0; b < n; ++b) {
        auto cb    = zmod::decode(b, orders);
        table[a][b] = static_cast<element>(zmod::encode(zmod::add(ca, cb, orders), orders));
      }
    }
    return FiniteAbelianGroup(std::move(table), 0, std::move(labels));
  }

  FiniteAbelianGroup FiniteAbelianGroup::parse(std::string const& spec) {
    std::string s;
    for (char c : spec) {
      if (c != ' ') {
        s += c;
      }
    }
    if (s == "0" || s == "1" || s.empty()) {
      return trivial();
    }
    static std::regex const atom(R"(Z/([0-9]+))");
    zmod::Vec               orders;
    std::size_t             pos = 0;
    while (pos < s.size()) {
      auto next = s.find('x', pos);
      auto part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::smatch m;
      if (!std::regex_match(part, m, atom)) {
        throw ParseError("malformed group spec '" + spec + "'");
      }
      auto o = std::stoll(m[1]);
      if (o < 1 || o > 65536) {
        throw ParseError("cyclic order out of range in '" + spec + "'");
      }
      orders.push_back(o);
      if (next == std::string::npos) {
        break;
      }
      pos = next + 1;
    }
    return from_cyclic_orders(orders);
  }

  FiniteAbelianGroup::element FiniteAbelianGroup::power(element a, std::int64_t k) const {
    if (k < 0) {
      a = _inverse[a];
      k = -k;
    }
    element result = _identity;
    element base   = a;
    while (k > 0) {
      if (k & 1) {
        result = _table[result][base];
      }
      base = _table[base][base];
      k >>= 1;
    }
    return result;
  }

  std::uint64_t FiniteAbelianGroup::element_order(element a) const {
    std::uint64_t k = 1;
    element       x = a;
    while (x != _identity) {
      x = _table[x][a];
      ++k;
    }
    return k;
  }

  // Greedy generators with their relative orders give a presentation; the
  // Smith reduction of that presentation gives the cyclic decomposition.
  void FiniteAbelianGroup::decompose() {
    std::size_t const      n = _table.size();
    std::vector<zmod::Vec> normal(n);
    std::vector<bool>      in_span(n, false);
    std::vector<element>   span{_identity};
    in_span[_identity] = true;
    std::vector<element>   gens;
    std::vector<zmod::Vec> relations;
    zmod::Int              exponent = 1;

    for (element x = 0; x < n; ++x) {
      if (in_span[x]) {
        continue;
      }
      std::size_t const t = gens.size();
      gens.push_back(x);
      exponent = zmod::lcm(exponent, static_cast<zmod::Int>(element_order(x)));
      // Smallest multiple of x already in the span.
      zmod::Int m  = 1;
      element   mx = x;
      while (!in_span[mx]) {
        mx = _table[mx][x];
        ++m;
      }
      zmod::Vec rel = normal[mx];
      rel.resize(t + 1, 0);
      for (auto& c : rel) {
        c = -c;
      }
      rel[t] = m;
      relations.push_back(std::move(rel));

      std::vector<element> grown;
      grown.reserve(span.size() * static_cast<std::size_t>(m));
      for (element s : span) {
        element y = s;
        for (zmod::Int k = 0; k < m; ++k) {
          if (k > 0) {
            zmod::Vec v = normal[s];
            v.resize(t + 1, 0);
            v[t]          = k;
            normal[y]     = std::move(v);
            in_span[y]    = true;
          }
          grown.push_back(y);
          y = _table[y][x];
        }
      }
      span = std::move(grown);
    }

    std::size_t const t = gens.size();
    _coords.assign(n, zmod::Vec());
    if (t == 0) {
      _by_code = {_identity};
      _coords[_identity] = {};
      return;
    }
    for (auto& r : relations) {
      r.resize(t, 0);
    }
    zmod::Vec free_orders(t, exponent);
    auto      q = zmod::quotient(free_orders, relations);
    _orders     = q.orders;
    for (element a = 0; a < n; ++a) {
      zmod::Vec v = normal[a];
      v.resize(t, 0);
      _coords[a] = q.project(v);
    }
    _basis.clear();
    for (auto const& l : q.lift) {
      element y = _identity;
      for (std::size_t j = 0; j < t; ++j) {
        y = _table[y][power(gens[j], l[j])];
      }
      _basis.push_back(y);
    }
    _by_code.assign(n, 0);
    for (element a = 0; a < n; ++a) {
      _by_code[zmod::encode(_coords[a], _orders)] = a;
    }
  }

  FiniteAbelianGroup::element FiniteAbelianGroup::from_coordinates(zmod::Vec const& coords) const {
    return _by_code[zmod::encode(coords, _orders)];
  }

  Invariants FiniteAbelianGroup::invariant_factors() const {
    return zmod::invariant_factors(_orders);
  }

  bool is_homomorphism(FiniteAbelianGroup const&                         source,
                       FiniteAbelianGroup const&                         target,
                       std::vector<FiniteAbelianGroup::element> const& map) {
    if (map.size() != source.order()) {
      return false;
    }
    for (auto x : map) {
      if (x >= target.order()) {
        return false;
      }
    }
    for (FiniteAbelianGroup::element a = 0; a < source.order(); ++a) {
      for (FiniteAbelianGroup::element b = 0; b < source.order(); ++b) {
        if (map[source.op(a, b)] != target.op(map[a], map[b])) {
          return false;
        }
      }
    }
    return true;
  }

  HomomorphismData analyze_homomorphism(FiniteAbelianGroup const&                         source,
                                        FiniteAbelianGroup const&                         target,
                                        std::vector<FiniteAbelianGroup::element> const& map) {
    if (!is_homomorphism(source, target, map)) {
      throw ValidationError("element map is not a group homomorphism");
    }
    HomomorphismData d;
    auto const&      so = source.cyclic_orders();
    auto const&      to = target.cyclic_orders();
    std::vector<zmod::Vec> cols;
    for (auto b : source.basis()) {
      cols.push_back(target.coordinates(map[b]));
    }
    d.matrix = zmod::Matrix::from_columns(to.size(), cols);

    auto ker   = zmod::subgroup(so, zmod::kernel(d.matrix, so, to));
    auto img   = zmod::subgroup(to, cols);
    auto coker = zmod::quotient(to, cols);

    d.kernel         = zmod::invariant_factors(ker.orders);
    d.image          = zmod::invariant_factors(img.orders);
    d.cokernel       = zmod::invariant_factors(coker.orders);
    d.kernel_order   = ker.order();
    d.image_order    = img.order();
    d.cokernel_order = zmod::group_order(coker.orders);
    for (FiniteAbelianGroup::element a = 0; a < source.order(); ++a) {
      if (map[a] == target.identity()) {
        d.kernel_elements.push_back(a);
      }
    }
    if (d.kernel_elements.size() != d.kernel_order
        || d.kernel_order * d.image_order != source.order()
        || d.image_order * d.cokernel_order != target.order()) {
      throw Error("inconsistent kernel/image computation");
    }
    return d;
  }

  std::string format_invariants(Invariants const& inv) {
    if (inv.empty()) {
      return "0";
    }
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i) {
      s += (i ? " x " : "") + (inv[i] == 0 ? std::string("Z") : "Z/" + std::to_string(inv[i]));
    }
    return s;
  }

}  // namespace brauerk
