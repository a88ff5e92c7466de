#pragma once

// JSON encoding of field elements, polynomials, forms, arrangements and pencils.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crpencil/latin.hpp"
#include "crpencil/parse.hpp"
#include "crpencil/pencil.hpp"

namespace crpencil {

using json = nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficients on 1, z, ..., z^(phi-1) as "p/q" strings.
inline json to_json(const CycloElem& x) {
  json a = json::array();
  for (const auto& c : x.coeffs()) a.push_back(to_string(c));
  return a;
}

// Accepts an integer, a "p/q" string, or a coefficient array.
inline CycloElem cyclo_from_json(const json& j, int order) {
  try {
    if (j.is_number_integer()) return embed(Rational(j.get<long>()), order);
    if (j.is_string()) return embed(parse_rational(j.get<std::string>()), order);
    if (j.is_array()) {
      std::vector<Rational> c;
      for (const auto& e : j) {
        if (e.is_number_integer()) c.emplace_back(e.get<long>());
        else if (e.is_string()) c.push_back(parse_rational(e.get<std::string>()));
        else throw InputError("field coefficient must be an integer or a \"p/q\" string");
      }
      if (static_cast<int>(c.size()) > euler_phi(order))
        throw InputError("field element has more than phi(m) coefficients");
      return CycloElem(order, c);
    }
  } catch (const FieldError& e) {
    throw InputError(e.what());
  }
  throw InputError("field element must be an integer, a \"p/q\" string or an array");
}

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Vec vec_from_json(const json& j, int order) {
  if (!j.is_array()) throw InputError("vector must be a JSON array");
  Vec v;
  for (const auto& e : j) v.push_back(cyclo_from_json(e, order));
  return v;
}

// Term records {"exponents": [...], "coeff": [...]}, leading term first.
inline json to_json(const MultiPoly& p) {
  json a = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    a.push_back({{"exponents", it->first.exponents()}, {"coeff", to_json(it->second)}});
  return a;
}

// Accepts the text grammar or a list of term records.
inline MultiPoly poly_from_json(const json& j, int nvars, int order) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), nvars, order);
  if (!j.is_array()) throw InputError("polynomial must be a string or a list of term records");
  MultiPoly p(nvars, order);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
      throw InputError("polynomial term needs \"exponents\" and \"coeff\"");
    const json& e = t.at("exponents");
    if (!e.is_array() || static_cast<int>(e.size()) != nvars) throw InputError("exponent vector length differs from nvars");
    std::vector<int> exps;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > 0xFFFF)
        throw InputError("exponents must be non-negative integers");
      exps.push_back(x.get<int>());
    }
    p.add_term(Monomial(nvars, exps), cyclo_from_json(t.at("coeff"), order));
  }
  return p;
}

inline json to_json(const Form1& w) {
  json a = json::array();
  for (const auto& c : w.coeffs) a.push_back(to_json(c));
  return a;
}

inline json to_json(const Form2& w) {
  json o = json::object();
  for (const auto& [ij, c] : w.coeffs) o[std::to_string(ij.first) + "," + std::to_string(ij.second)] = to_json(c);
  return o;
}

inline json field_json(int order) { return {{"cyclotomic_order", order}}; }

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

inline int read_order(const json& j) {
  const int m = require_int(require(j, "field"), "cyclotomic_order");
  if (m < 1 || m > 1000) throw InputError("cyclotomic_order out of range");
  return m;
}

inline int read_nvars(const json& j) {
  const int n = require_int(j, "nvars");
  if (n < 2 || n > kMaxVars) throw InputError("nvars must be between 2 and " + std::to_string(kMaxVars));
  return n;
}

}  // namespace detail

inline json to_json(const Hyperplane& h) {
  json o = {{"normal", to_json(h.normal)}, {"mult", h.mult}};
  if (h.cls) o["class"] = *h.cls;
  return o;
}

inline json to_json(const Arrangement& a) {
  json hs = json::array();
  for (const auto& h : a.hyperplanes) hs.push_back(to_json(h));
  return {{"field", field_json(a.order)}, {"nvars", a.nvars}, {"hyperplanes", hs}};
}

inline Arrangement arrangement_from_json(const json& j) {
  const int order = detail::read_order(j);
  const int nvars = detail::read_nvars(j);
  const json& hs = detail::require(j, "hyperplanes");
  if (!hs.is_array()) throw InputError("\"hyperplanes\" must be an array");
  std::vector<Hyperplane> out;
  try {
    for (const auto& h : hs) {
      Vec n = vec_from_json(detail::require(h, "normal"), order);
      if (static_cast<int>(n.size()) != nvars) throw InputError("normal length differs from nvars");
      const int mult = h.contains("mult") ? detail::require_int(h, "mult") : 1;
      std::optional<int> cls;
      if (h.contains("class")) cls = detail::require_int(h, "class");
      out.emplace_back(std::move(n), mult, cls);
    }
    return Arrangement(nvars, order, std::move(out));
  } catch (const ArrangementError& e) {
    throw InputError(e.what());
  }
}

inline json to_json(const FactoredFiber& f) {
  json lin = json::array(), nr = json::array();
  for (const auto& l : f.linear) lin.push_back({{"normal", to_json(l.plane.normal)}, {"exp", l.exp}});
  for (const auto& n : f.nonreduced) nr.push_back({{"poly", to_string(n.poly)}, {"exp", n.exp}});
  return {{"scalar", to_json(f.scalar)}, {"linear", lin}, {"nonreduced", nr}};
}

inline FactoredFiber fiber_from_json(const json& j, int nvars, int order) {
  FactoredFiber f(nvars, order);
  try {
    if (j.contains("scalar")) f.scalar = cyclo_from_json(j.at("scalar"), order);
    if (f.scalar.is_zero()) throw InputError("fiber scalar must be nonzero");
    if (j.contains("linear")) {
      for (const auto& l : j.at("linear")) {
        Vec n = vec_from_json(detail::require(l, "normal"), order);
        f.add_linear(n, l.contains("exp") ? detail::require_int(l, "exp") : 1);
      }
    }
    if (j.contains("nonreduced")) {
      for (const auto& nr : j.at("nonreduced")) {
        f.add_nonreduced(poly_from_json(detail::require(nr, "poly"), nvars, order), detail::require_int(nr, "exp"));
      }
    }
  } catch (const ArrangementError& e) {
    throw InputError(e.what());
  } catch (const PencilError& e) {
    throw InputError(e.what());
  }
  if (f.degree() == 0) throw InputError("fiber has no factors");
  return f;
}

struct PencilInput {
  Pencil pencil;
  std::vector<FactoredFiber> extra;
};

inline json pencil_json(const Pencil& p, const std::vector<FactoredFiber>& extra) {
  json ex = json::array();
  for (const auto& f : extra) ex.push_back(to_json(f));
  return {{"field", field_json(p.order)}, {"nvars", p.nvars}, {"F", to_json(p.F)}, {"G", to_json(p.G)},
          {"extra_fibers", ex}};
}

inline PencilInput pencil_from_json(const json& j, int cap = kDefaultDegreeCap) {
  const int order = detail::read_order(j);
  const int nvars = detail::read_nvars(j);
  PencilInput in;
  FactoredFiber f = fiber_from_json(detail::require(j, "F"), nvars, order);
  FactoredFiber g = fiber_from_json(detail::require(j, "G"), nvars, order);
  try {
    in.pencil = Pencil(std::move(f), std::move(g), cap);
  } catch (const PencilError& e) {
    throw InputError(e.what());
  }
  if (j.contains("extra_fibers")) {
    if (!j.at("extra_fibers").is_array()) throw InputError("\"extra_fibers\" must be an array");
    for (const auto& e : j.at("extra_fibers")) in.extra.push_back(fiber_from_json(e, nvars, order));
  }
  return in;
}

inline json to_json(const LatinSquare& sq) { return sq.cells; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace crpencil
