#include "brauerk/ring.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "brauerk/error.hpp"
#include "brauerk/json_io.hpp"

namespace brauerk {

  namespace {

    using element = FiniteCommRing::element;

    // Conway polynomials, constant term first, leading 1 omitted.
    struct FieldPolynomial {
      std::int64_t         p;
      int                  k;
      std::vector<element> coeffs;
    };

    std::vector<FieldPolynomial> const& field_polynomials() {
      static std::vector<FieldPolynomial> const table = {
          {2, 2, {1, 1}},
          {2, 3, {1, 1, 0}},
          {2, 4, {1, 1, 0, 0}},
          {2, 5, {1, 0, 1, 0, 0}},
          {2, 6, {1, 1, 0, 1, 1, 0}},
          {2, 7, {1, 1, 0, 0, 0, 0, 0}},
          {2, 8, {1, 0, 1, 1, 1, 0, 0, 0}},
          {3, 2, {2, 2}},
          {3, 3, {1, 2, 0}},
          {3, 4, {2, 0, 0, 2}},
          {3, 5, {1, 2, 0, 0, 0}},
          {5, 2, {2, 4}},
          {5, 3, {3, 3, 0}},
          {7, 2, {3, 6}},
          {11, 2, {2, 7}},
          {13, 2, {2, 12}},
      };
      return table;
    }

    std::string poly_string(std::vector<std::string> const& coeff_labels,
                            std::vector<bool> const&        is_zero,
                            std::vector<bool> const&        is_one) {
      std::string s;
      for (std::size_t i = coeff_labels.size(); i-- > 0;) {
        if (is_zero[i]) {
          continue;
        }
        if (!s.empty()) {
          s += "+";
        }
        std::string c = coeff_labels[i];
        if (c.find_first_of("+,") != std::string::npos) {
          c = "(" + c + ")";
        }
        if (i == 0) {
          s += c;
        } else {
          if (!is_one[i]) {
            s += c;
          }
          s += "x";
          if (i > 1) {
            s += "^" + std::to_string(i);
          }
        }
      }
      return s.empty() ? "0" : s;
    }

    void check_order(std::uint64_t order, Limits const& limits) {
      if (order > limits.max_ring_order) {
        throw CapExceeded("ring",
                          "ring order " + std::to_string(order) + " exceeds max_ring_order "
                              + std::to_string(limits.max_ring_order));
      }
    }

  }  // namespace

  FiniteCommRing::FiniteCommRing(std::size_t              order,
                                 std::vector<element>     add_table,
                                 std::vector<element>     mul_table,
                                 element                  zero_idx,
                                 element                  one_idx,
                                 std::string              descriptor,
                                 std::vector<std::string> labels,
                                 Limits const&            limits)
      : _order(order),
        _add(std::move(add_table)),
        _mul(std::move(mul_table)),
        _zero(zero_idx),
        _one(one_idx),
        _descriptor(std::move(descriptor)),
        _presentation(_descriptor),
        _labels(std::move(labels)) {
    element const zero = _zero;
    element const one  = _one;
    std::size_t const n = _order;
    if (n == 0) {
      throw ValidationError("ring order must be positive");
    }
    check_order(n, limits);
    if (_add.size() != n * n || _mul.size() != n * n) {
      throw ValidationError("ring tables must be order x order");
    }
    if (zero >= n || one >= n) {
      throw ValidationError("zero/one index out of range");
    }
    if (zero == one) {
      throw ValidationError("the zero ring is rejected (zero == one)");
    }
    for (auto x : _add) {
      if (x >= n) {
        throw ValidationError("addition table entry out of range");
      }
    }
    for (auto x : _mul) {
      if (x >= n) {
        throw ValidationError("multiplication table entry out of range");
      }
    }
    _neg.assign(n, 0);
    for (element a = 0; a < n; ++a) {
      if (add(zero, a) != a) {
        throw ValidationError("zero is not an additive identity");
      }
      if (mul(one, a) != a) {
        throw ValidationError("one is not a multiplicative identity");
      }
      bool found = false;
      for (element b = 0; b < n; ++b) {
        if (add(a, b) != add(b, a)) {
          throw ValidationError("addition is not commutative");
        }
        if (mul(a, b) != mul(b, a)) {
          throw ValidationError("multiplication is not commutative");
        }
        if (add(a, b) == zero) {
          _neg[a] = b;
          found   = true;
        }
      }
      if (!found) {
        throw ValidationError("element " + std::to_string(a) + " has no additive inverse");
      }
    }
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        element const ab_add = add(a, b);
        element const ab_mul = mul(a, b);
        for (element c = 0; c < n; ++c) {
          if (add(ab_add, c) != add(a, add(b, c))) {
            throw ValidationError("addition is not associative");
          }
          if (mul(ab_mul, c) != mul(a, mul(b, c))) {
            throw ValidationError("multiplication is not associative");
          }
          if (mul(a, add(b, c)) != add(ab_mul, mul(a, c))) {
            throw ValidationError("multiplication does not distribute over addition");
          }
        }
      }
    }
    if (_labels.empty()) {
      for (element a = 0; a < n; ++a) {
        _labels.push_back(std::to_string(a));
      }
    } else if (_labels.size() != n) {
      throw ValidationError("ring labels do not match the order");
    }

    _inv.assign(n, -1);
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        if (mul(a, b) == one) {
          _inv[a] = b;
          break;
        }
      }
    }

    std::vector<std::vector<FiniteAbelianGroup::element>> table(n, std::vector<FiniteAbelianGroup::element>(n));
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        table[a][b] = add(a, b);
      }
    }
    _additive       = std::make_shared<FiniteAbelianGroup>(std::move(table), zero, _labels);
    _characteristic = static_cast<std::int64_t>(_additive->element_order(one));

    std::vector<bool> span = generated_subring(*this, {});
    for (element a = 0; a < n; ++a) {
      if (!span[a]) {
        _generators.push_back(a);
        span = generated_subring(*this, _generators);
      }
    }
  }

  element FiniteCommRing::times(std::int64_t k, element a) const {
    if (k < 0) {
      a = _neg[a];
      k = -k;
    }
    k %= _characteristic;
    element result = _zero;
    element base   = a;
    while (k > 0) {
      if (k & 1) {
        result = add(result, base);
      }
      base = add(base, base);
      k >>= 1;
    }
    return result;
  }

  element FiniteCommRing::power(element a, std::uint64_t k) const {
    element result = _one;
    element base   = a;
    while (k > 0) {
      if (k & 1) {
        result = mul(result, base);
      }
      base = mul(base, base);
      k >>= 1;
    }
    return result;
  }

  std::optional<element> FiniteCommRing::inverse(element a) const {
    if (_inv[a] < 0) {
      return std::nullopt;
    }
    return static_cast<element>(_inv[a]);
  }

  bool FiniteCommRing::is_unit(element a) const {
    return _inv[a] >= 0;
  }

  bool FiniteCommRing::is_field() const {
    for (element a = 0; a < _order; ++a) {
      if (a != _zero && !is_unit(a)) {
        return false;
      }
    }
    return true;
  }

  // Local iff the non-units are closed under addition.
  bool FiniteCommRing::is_local() const {
    std::vector<element> nonunits;
    for (element a = 0; a < _order; ++a) {
      if (!is_unit(a)) {
        nonunits.push_back(a);
      }
    }
    for (auto a : nonunits) {
      for (auto b : nonunits) {
        if (is_unit(add(a, b))) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<bool> generated_subring(FiniteCommRing const& ring, std::vector<element> const& gens) {
    std::vector<bool>    in(ring.order(), false);
    std::vector<element> known;
    std::deque<element>  queue;
    auto                 push = [&](element x) {
      if (!in[x]) {
        in[x] = true;
        queue.push_back(x);
      }
    };
    push(ring.zero());
    push(ring.one());
    for (auto g : gens) {
      push(g);
    }
    while (!queue.empty()) {
      element x = queue.front();
      queue.pop_front();
      known.push_back(x);
      for (std::size_t i = 0; i < known.size(); ++i) {
        push(ring.add(x, known[i]));
        push(ring.mul(x, known[i]));
      }
    }
    return in;
  }

  RingPtr FiniteCommRing::integers_mod(std::int64_t n, Limits const& limits) {
    if (n < 1) {
      throw ParseError("Z/n needs n >= 1");
    }
    if (n == 1) {
      throw ValidationError("Z/1 is the zero ring, which is rejected");
    }
    check_order(static_cast<std::uint64_t>(n), limits);
    std::size_t const        m = static_cast<std::size_t>(n);
    std::vector<element>     add(m * m), mul(m * m);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m; ++a) {
      labels.push_back(std::to_string(a));
      for (std::size_t b = 0; b < m; ++b) {
        add[a * m + b] = static_cast<element>((a + b) % m);
        mul[a * m + b] = static_cast<element>((a * b) % m);
      }
    }
    return std::make_shared<FiniteCommRing const>(m, std::move(add), std::move(mul), 0, 1,
                                                  "Z/" + std::to_string(n), std::move(labels), limits);
  }

  RingPtr FiniteCommRing::galois_field(std::int64_t q, Limits const& limits) {
    if (q < 2) {
      throw ParseError("GF(q) needs a prime power q >= 2");
    }
    if (zmod::is_prime(q)) {
      auto r = std::make_shared<FiniteCommRing>(*integers_mod(q, limits));
      r->_descriptor = "GF(" + std::to_string(q) + ")";
      r->_presentation = "Z/" + std::to_string(q);
      return r;
    }
    for (auto const& fp : field_polynomials()) {
      std::int64_t pk = 1;
      for (int i = 0; i < fp.k; ++i) {
        pk *= fp.p;
      }
      if (pk == q) {
        auto base = integers_mod(fp.p, limits);
        auto r    = polynomial_quotient(base, fp.coeffs, "GF(" + std::to_string(q) + ")", limits);
        if (!r->is_field()) {
          throw Error("built-in polynomial for GF(" + std::to_string(q) + ") is reducible");
        }
        return r;
      }
    }
    throw ParseError("GF(" + std::to_string(q) + "): not a supported prime power");
  }

  RingPtr FiniteCommRing::product(std::vector<RingPtr> const& factors, Limits const& limits) {
    if (factors.empty()) {
      throw ValidationError("empty product would be the zero ring");
    }
    if (factors.size() == 1) {
      return factors.front();
    }
    zmod::Vec orders;
    for (auto const& f : factors) {
      orders.push_back(static_cast<zmod::Int>(f->order()));
    }
    auto total = zmod::group_order(orders);
    check_order(total, limits);
    std::size_t const        n = total;
    std::vector<element>     add(n * n), mul(n * n);
    std::vector<std::string> labels;
    std::vector<zmod::Vec>   idx(n);
    for (std::size_t a = 0; a < n; ++a) {
      idx[a] = zmod::decode(a, orders);
      std::string l = "(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        l += (i ? "," : "") + factors[i]->label(static_cast<element>(idx[a][i]));
      }
      labels.push_back(l + ")");
    }
    zmod::Vec c(factors.size());
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
          c[i] = factors[i]->add(static_cast<element>(idx[a][i]), static_cast<element>(idx[b][i]));
        }
        add[a * n + b] = static_cast<element>(zmod::encode(c, orders));
        for (std::size_t i = 0; i < factors.size(); ++i) {
          c[i] = factors[i]->mul(static_cast<element>(idx[a][i]), static_cast<element>(idx[b][i]));
        }
        mul[a * n + b] = static_cast<element>(zmod::encode(c, orders));
      }
    }
    zmod::Vec zero(factors.size()), one(factors.size());
    std::string desc, pres;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      zero[i] = factors[i]->zero();
      one[i]  = factors[i]->one();
      desc += (i ? " x " : "") + factors[i]->descriptor();
      pres += (i ? " x " : "") + factors[i]->presentation();
    }
    auto r = std::make_shared<FiniteCommRing>(n, std::move(add), std::move(mul),
                                              static_cast<element>(zmod::encode(zero, orders)),
                                              static_cast<element>(zmod::encode(one, orders)), desc,
                                              std::move(labels), limits);
    r->_presentation = pres;
    return r;
  }

  RingPtr FiniteCommRing::polynomial_quotient(RingPtr const&              base,
                                              std::vector<element> const& coeffs,
                                              std::string                 descriptor,
                                              Limits const&               limits) {
    std::size_t const d = coeffs.size();
    if (d == 0) {
      throw ValidationError("polynomial quotient by a unit gives the zero ring");
    }
    std::size_t const b = base->order();
    zmod::Vec         orders(d, static_cast<zmod::Int>(b));
    auto              total = zmod::group_order(orders);
    check_order(total, limits);
    std::size_t const      n = total;
    std::vector<zmod::Vec> idx(n);
    for (std::size_t a = 0; a < n; ++a) {
      idx[a] = zmod::decode(a, orders);
    }
    std::vector<element> add(n * n), mul(n * n);
    std::vector<element> prod(2 * d);
    zmod::Vec            c(d);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t i = 0; i < d; ++i) {
          c[i] = base->add(static_cast<element>(idx[x][i]), static_cast<element>(idx[y][i]));
        }
        add[x * n + y] = static_cast<element>(zmod::encode(c, orders));
        std::fill(prod.begin(), prod.end(), base->zero());
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            prod[i + j] = base->add(prod[i + j], base->mul(static_cast<element>(idx[x][i]),
                                                           static_cast<element>(idx[y][j])));
          }
        }
        // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
        for (std::size_t k = 2 * d - 1; k >= d; --k) {
          element t = prod[k];
          if (t != base->zero()) {
            for (std::size_t i = 0; i < d; ++i) {
              prod[k - d + i] = base->sub(prod[k - d + i], base->mul(t, coeffs[i]));
            }
          }
          prod[k] = base->zero();
        }
        for (std::size_t i = 0; i < d; ++i) {
          c[i] = prod[i];
        }
        mul[x * n + y] = static_cast<element>(zmod::encode(c, orders));
      }
    }
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::string> cl;
      std::vector<bool>        z, o;
      for (std::size_t i = 0; i < d; ++i) {
        auto e = static_cast<element>(idx[a][i]);
        cl.push_back(base->label(e));
        z.push_back(e == base->zero());
        o.push_back(e == base->one());
      }
      labels.push_back(poly_string(cl, z, o));
    }
    {
      std::vector<std::string> cl;
      std::vector<bool>        z, o;
      for (std::size_t i = 0; i < d; ++i) {
        cl.push_back(base->label(coeffs[i]));
        z.push_back(coeffs[i] == base->zero());
        o.push_back(coeffs[i] == base->one());
      }
      cl.push_back(base->label(base->one()));
      z.push_back(false);
      o.push_back(true);
      std::string pres = base->presentation() + "[x]/(" + poly_string(cl, z, o) + ")";
      if (descriptor.empty()) {
        descriptor = pres;
      }
      zmod::Vec one(d, base->zero());
      one[0]   = base->one();
      auto r   = std::make_shared<FiniteCommRing>(n, std::move(add), std::move(mul),
                                                static_cast<element>(zmod::encode(zmod::Vec(d, base->zero()), orders)),
                                                static_cast<element>(zmod::encode(one, orders)), descriptor,
                                                std::move(labels), limits);
      r->_presentation = pres;
      return r;
    }
  }

  RingPtr FiniteCommRing::from_subset(FiniteCommRing const&       ring,
                                      std::vector<element> const& elements,
                                      element                     unit,
                                      std::string                 descriptor) {
    std::map<element, element> index;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      index[elements[i]] = static_cast<element>(i);
    }
    auto lookup = [&](element x) {
      auto it = index.find(x);
      if (it == index.end()) {
        throw ValidationError("subset is not closed under the ring operations");
      }
      return it->second;
    };
    std::size_t const        n = elements.size();
    std::vector<element>     add(n * n), mul(n * n);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back(ring.label(elements[a]));
      for (std::size_t b = 0; b < n; ++b) {
        add[a * n + b] = lookup(ring.add(elements[a], elements[b]));
        mul[a * n + b] = lookup(ring.mul(elements[a], elements[b]));
      }
    }
    Limits lim;
    lim.max_ring_order = std::max<std::uint64_t>(n, 1);
    return std::make_shared<FiniteCommRing const>(n, std::move(add), std::move(mul), lookup(ring.zero()),
                                                  lookup(unit), std::move(descriptor), std::move(labels), lim);
  }

  RingPtr FiniteCommRing::quotient(FiniteCommRing const&       ring,
                                   std::vector<element> const& ideal,
                                   std::string                 descriptor) {
    std::size_t const    n = ring.order();
    std::vector<element> rep(n);
    for (element x = 0; x < n; ++x) {
      element best = x;
      for (auto i : ideal) {
        best = std::min(best, ring.add(x, i));
      }
      rep[x] = best;
    }
    std::vector<element>       reps;
    std::map<element, element> cls;
    for (element x = 0; x < n; ++x) {
      if (rep[x] == x) {
        cls[x] = static_cast<element>(reps.size());
        reps.push_back(x);
      }
    }
    std::size_t const        m = reps.size();
    std::vector<element>     add(m * m), mul(m * m);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m; ++a) {
      labels.push_back(ring.label(reps[a]));
      for (std::size_t b = 0; b < m; ++b) {
        add[a * m + b] = cls.at(rep[ring.add(reps[a], reps[b])]);
        mul[a * m + b] = cls.at(rep[ring.mul(reps[a], reps[b])]);
      }
    }
    Limits lim;
    lim.max_ring_order = std::max<std::uint64_t>(m, 1);
    return std::make_shared<FiniteCommRing const>(m, std::move(add), std::move(mul), cls.at(rep[ring.zero()]),
                                                  cls.at(rep[ring.one()]), std::move(descriptor),
                                                  std::move(labels), lim);
  }

  RingPtr parse_ring(std::string const& spec, Limits const& limits) {
    static std::regex const zn(R"(Z/([0-9]+))");
    static std::regex const gf(R"(GF\(([0-9]+)\))");
    std::vector<RingPtr>    factors;
    std::size_t             pos = 0;
    if (spec.empty()) {
      throw ParseError("empty ring spec");
    }
    while (true) {
      auto        next = spec.find(" x ", pos);
      std::string atom = spec.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::smatch m;
      if (std::regex_match(atom, m, zn)) {
        if (m[1].length() > 6) {
          throw CapExceeded("ring", "modulus too large in '" + atom + "'");
        }
        factors.push_back(FiniteCommRing::integers_mod(std::stoll(m[1]), limits));
      } else if (std::regex_match(atom, m, gf)) {
        if (m[1].length() > 6) {
          throw CapExceeded("ring", "field order too large in '" + atom + "'");
        }
        factors.push_back(FiniteCommRing::galois_field(std::stoll(m[1]), limits));
      } else if (atom.rfind("table:", 0) == 0) {
        factors.push_back(read_ring_table(atom.substr(6), limits));
      } else {
        throw ParseError("malformed ring spec atom '" + atom + "' in '" + spec + "'");
      }
      if (next == std::string::npos) {
        break;
      }
      pos = next + 3;
    }
    return FiniteCommRing::product(factors, limits);
  }

}  // namespace brauerk
