#include "fatlin/io.hpp"

#include <cstdlib>

#include "fatlin/error.hpp"

namespace fatlin::io {

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw InvalidInput(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

json field_to_json(const gf::Field& F) {
  return {{"p", F.p()}, {"h", F.h()}, {"n", F.n()}, {"modulus", F.modulus()}};
}

gf::FieldPtr field_from_json(const json& j) {
  const auto p = as_uint(member(j, "p"), "p");
  const auto h = static_cast<unsigned>(as_uint(member(j, "h"), "h"));
  const auto n = static_cast<unsigned>(as_uint(member(j, "n"), "n"));
  if (!j.contains("modulus")) return gf::Field::make(p, h, n);
  std::vector<std::uint64_t> mod;
  for (const auto& c : member(j, "modulus")) mod.push_back(as_uint(c, "modulus coefficient"));
  return gf::Field::with_modulus(p, h, n, std::move(mod));
}

json elem_to_json(const gf::Field& F, gf::Elem x) { return F.coeffs(x); }

gf::Elem elem_from_json(const gf::Field& F, const json& j) {
  if (!j.is_array()) throw InvalidInput("field element must be a coefficient array");
  std::vector<std::uint64_t> c;
  for (const auto& v : j) c.push_back(as_uint(v, "coefficient"));
  if (c.size() != F.degree())
    throw InvalidInput("field element needs " + std::to_string(F.degree()) + " coefficients");
  for (auto v : c)
    if (v >= F.p()) throw InvalidInput("coefficient out of range");
  return F.from_coeffs(c);
}

gf::Elem parse_elem(const gf::Field& F, const json& j) {
  if (j.is_array()) return elem_from_json(F, j);
  if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::string prefix = "omega^";
    if (s.rfind(prefix, 0) == 0) {
      char* end = nullptr;
      const long long e = std::strtoll(s.c_str() + prefix.size(), &end, 10);
      if (end == s.c_str() + prefix.size() || *end != '\0')
        throw InvalidInput("bad exponent in \"" + s + "\"");
      return F.pow_signed(F.omega(), e);
    }
    if (s == "0") return F.zero();
    if (s == "1") return F.one();
  }
  throw InvalidInput("cannot parse field element " + j.dump());
}

json vec_to_json(const gf::Field& F, const linalg::Vec& v) {
  json out = json::array();
  for (auto x : v) out.push_back(elem_to_json(F, x));
  return out;
}

linalg::Vec vec_from_json(const gf::Field& F, const json& j) {
  if (!j.is_array()) throw InvalidInput("vector must be an array of field elements");
  linalg::Vec v;
  for (const auto& x : j) v.push_back(parse_elem(F, x));
  return v;
}

json elems_to_json(const gf::Field& F, const std::vector<gf::Elem>& xs) { return vec_to_json(F, xs); }

std::vector<gf::Elem> elems_from_json(const gf::Field& F, const json& j) { return vec_from_json(F, j); }

json matrix_to_json(const gf::Field& F, const linalg::ElemMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(vec_to_json(F, row));
  return out;
}

json poly_to_json(const linpoly::LinearizedPoly& f) {
  return {{"coeffs", elems_to_json(f.field(), f.coeffs())}, {"q_exp", f.field().h()}};
}

json subspace_to_json(const Subspace& U) {
  json basis = json::array();
  for (const auto& b : U.basis()) basis.push_back(vec_to_json(U.field(), b));
  return {{"field", field_to_json(U.field())}, {"k", U.k()}, {"basis", basis}};
}

Subspace subspace_from_json(const gf::FieldPtr& F, const json& j) {
  const auto k = as_uint(member(j, "k"), "k");
  std::vector<linalg::Vec> basis;
  for (const auto& b : member(j, "basis")) basis.push_back(vec_from_json(*F, b));
  return Subspace(F, k, std::move(basis));
}

Subspace subspace_from_json(const json& j) {
  return subspace_from_json(field_from_json(member(j, "field")), j);
}

json classification_to_json(const linset::Classification& c) {
  json out{{"kind", linset::kind_name(c.kind)}};
  if (c.kind == linset::Kind::regular_fat) {
    out["r"] = c.r;
    out["i"] = c.i;
    out["club"] = c.club;
  }
  if (c.kind == linset::Kind::fat_irregular) out["no_weight_one"] = c.no_weight_one;
  json heavy = json::object();
  for (auto [w, n] : c.heavy) heavy[std::to_string(w)] = n;
  out["heavy_weights"] = heavy;
  return out;
}

json spectrum_to_json(const linset::SpectrumReport& r) {
  json spec = json::object();
  for (auto [w, n] : r.spectrum) spec[std::to_string(w)] = n;
  json checks{{"vector_identity", r.vector_identity}, {"weights_cross_checked", r.weights_cross_checked}};
  if (r.size_formula_ok) checks["size_formula"] = *r.size_formula_ok;
  if (!r.partially_scattered.empty()) {
    json ps = json::object();
    for (auto [t, ok] : r.partially_scattered) ps[std::to_string(t)] = ok;
    checks["partially_scattered"] = ps;
  }
  if (r.heavy_points_subgeometry) checks["heavy_points_subgeometry"] = *r.heavy_points_subgeometry;
  return {{"rho", r.rho},
          {"k", r.k},
          {"n", r.n},
          {"q", r.q},
          {"size", r.size()},
          {"spectrum", spec},
          {"classification", classification_to_json(r.classification)},
          {"checks", checks}};
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace fatlin::io
