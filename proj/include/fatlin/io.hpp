#pragma once

#include <string>

#include "json.hpp"

#include "fatlin/gf.hpp"
#include "fatlin/linalg.hpp"
#include "fatlin/linpoly.hpp"
#include "fatlin/linset.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::io {

using nlohmann::json;

json field_to_json(const gf::Field& F);
/// Rebuilds the field from {"p","h","n","modulus"}; omega is recomputed.
gf::FieldPtr field_from_json(const json& j);

/// Little-endian power-basis coefficients.
json elem_to_json(const gf::Field& F, gf::Elem x);
gf::Elem elem_from_json(const gf::Field& F, const json& j);

/// Accepts a coefficient array, "omega^N" or an integer in the prime field.
gf::Elem parse_elem(const gf::Field& F, const json& j);

json vec_to_json(const gf::Field& F, const linalg::Vec& v);
linalg::Vec vec_from_json(const gf::Field& F, const json& j);

json elems_to_json(const gf::Field& F, const std::vector<gf::Elem>& xs);
std::vector<gf::Elem> elems_from_json(const gf::Field& F, const json& j);

json matrix_to_json(const gf::Field& F, const linalg::ElemMatrix& m);

json subspace_to_json(const Subspace& U);
Subspace subspace_from_json(const json& j);
/// Same, reusing an already built field with an identical modulus.
Subspace subspace_from_json(const gf::FieldPtr& F, const json& j);

json classification_to_json(const linset::Classification& c);
json spectrum_to_json(const linset::SpectrumReport& r);

/// {"coeffs": [...], "q_exp": h}: coefficient j multiplies X^{q^j}.
json poly_to_json(const linpoly::LinearizedPoly& f);

std::string dump(const json& j, bool pretty);

}  // namespace fatlin::io
