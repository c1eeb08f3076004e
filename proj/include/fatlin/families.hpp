#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fatlin/gf.hpp"
#include "fatlin/linpoly.hpp"
#include "fatlin/linset.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::families {

using gf::Elem;
using gf::Field;
using gf::FieldPtr;
using nlohmann::json;

enum class Family {
  T1,
  T2,
  POLFORM1,
  POLFORM2,
  PHI,
  LP,
  TRACE_CLUB,
  CLUB_LAMBDA,
  CLUB_UAB,
  COMP_PRODUCT,
  NPSZ
};

std::string family_name(Family f);
/// Human-readable statement of a hypothesis tag.
std::string hypothesis_text(const std::string& tag);
Family family_from_name(const std::string& name);

/// What a theorem predicts for the construction, where it predicts anything.
struct Expected {
  std::optional<linset::Kind> kind;
  std::optional<std::uint64_t> r;
  std::optional<unsigned> i;
  std::optional<std::size_t> rank;
  std::optional<bool> heavy_points_subgeometry;
  /// Prediction holds for some r not given by the theorem.
  bool r_unspecified = false;

  /// Compares against an enumerated report; unset fields are not checked.
  bool matches(const linset::SpectrumReport& rep) const;
};

struct ConstructionDescriptor {
  Family family;
  FieldPtr field;
  /// Family parameters; field elements are coefficient arrays.
  json params;
  Expected expected;
  /// Theorem hypotheses that fail for these parameters (unchecked builds only).
  std::vector<std::string> violated;
};

json descriptor_to_json(const ConstructionDescriptor& d);
ConstructionDescriptor descriptor_from_json(const json& j);

struct Built {
  Subspace subspace;
  ConstructionDescriptor descriptor;
};

/// Rebuilds the subspace a descriptor names, without re-checking hypotheses.
Subspace rebuild(const ConstructionDescriptor& d);

// ---------------------------------------------------------------------------
// Shared helpers for the half tower F_{q^t} ⊂ F_{q^{2t}}.

/// F_q-basis of F_{q^t}.
std::vector<Elem> subfield_fq_basis(const Field& F, unsigned t);
/// E = {x : x^{q^t} = -x}.
bool in_trace_zero(const Field& F, Elem x, unsigned t);
/// omega^{(q^t+1)/2}, a nonzero element of E.
Elem auto_w(const Field& F, unsigned t);
/// True iff c = e^{exponent} for some nonzero e ∈ E (n = 2t).
bool is_power_of_trace_zero(const Field& F, Elem c, std::uint64_t exponent, unsigned t);
/// Any nonzero e ∈ E with e^{exponent} = c.
std::optional<Elem> trace_zero_root(const Field& F, Elem c, std::uint64_t exponent, unsigned t);

// ---------------------------------------------------------------------------
// T_{s,w,I}: n = 2t.

struct T1Params {
  long s = 1;
  Elem w;
  std::vector<Elem> I_basis;
  std::size_t k = 2;
};

unsigned t1_half(const Field& F);
/// Failed theorem hypotheses, by tag; empty when the theorem applies.
std::vector<std::string> t1_violations(const Field& F, const T1Params& p);
/// Throws HypothesisError on the first failed hypothesis unless `check` is false.
Built construct_T1(const FieldPtr& F, const T1Params& p, bool check = true);
T1Params t1_params(const ConstructionDescriptor& d);

// ---------------------------------------------------------------------------
// E_j decomposition and T_{s,eta,I}: n = ell t.

struct EComponents {
  unsigned ell = 0, t = 0;
  Elem epsilon;
  Elem eta;
  /// F_q-basis of every E_j.
  std::vector<std::vector<Elem>> bases;
  std::size_t direct_sum_rank = 0;
  bool direct_sum_ok = false;
  /// E_j E_h ⊆ E_{j+h} on the basis products.
  bool products_ok = false;
};

EComponents e_components(const Field& F, unsigned ell, unsigned t);
/// x^{q^t} = epsilon^j x.
bool in_component(const Field& F, Elem x, Elem epsilon, unsigned j, unsigned t);

struct T2Params {
  long s = 1;
  Elem eta;
  std::vector<Elem> I_basis;
  std::size_t k = 2;
  unsigned ell = 3;
};

std::vector<std::string> t2_violations(const Field& F, const T2Params& p);
Built construct_T2(const FieldPtr& F, const T2Params& p, bool check = true);
T2Params t2_params(const ConstructionDescriptor& d);

// ---------------------------------------------------------------------------
// Polynomial forms of L_{T^2} with I = F_{q^t}.

linpoly::LinearizedPoly polform1(const FieldPtr& F, Elem mu, Elem w, long s);
/// Requires t even and m a (q+1)-th power of a nonzero element of E.
linpoly::LinearizedPoly polform2(const FieldPtr& F, Elem m, long s);
Built construct_polform1(const FieldPtr& F, Elem mu, Elem w, long s);
Built construct_polform2(const FieldPtr& F, Elem m, long s);

// ---------------------------------------------------------------------------
// phi_{m,sigma}, sigma = q^J, n = 2t.

enum class PhiCase { sigma_minus_one, sigma_plus_one, neither };
std::string phi_case_name(PhiCase c);

struct PhiExpectation {
  PhiCase which = PhiCase::neither;
  Expected expected;
};

PhiExpectation phi_expected_class(const Field& F, Elem m, long J);
Built construct_phi(const FieldPtr& F, Elem m, long J);

enum class Weight2Outcome { weight_two, not_weight_two, denominator_zero, ratio_outside_subfield };
std::string weight2_outcome_name(Weight2Outcome o);

/// Evaluates the trace condition characterizing weight-two points of
/// L_phi for m = w^{sigma-1}.
Weight2Outcome phi_weight2_char(const Field& F, Elem x, Elem m, Elem w, long J);

// ---------------------------------------------------------------------------
// Legacy families.

Built construct_trace_club(const FieldPtr& F, unsigned t, long s);
Built construct_club_lambda(const FieldPtr& F, Elem lambda);

/// f(x) = sum_j coeffs[j] x^{q^j} on F_{q^t}, coefficients in F_{q^t}.
struct SubfieldPoly {
  unsigned t = 0;
  std::vector<Elem> coeffs;
  Elem eval(const Field& F, Elem x) const;
};

/// Scattered over F_{q^t}: dim{λ ∈ F_{q^t} : f(λx) = λf(x)} ≤ 1 for all x ≠ 0.
bool is_scattered_over_subfield(const Field& F, const SubfieldPoly& f);
Built construct_club_uab(const FieldPtr& F, const SubfieldPoly& f, Elem a, Elem b, unsigned ell);

Built construct_comp_product(const FieldPtr& F, const std::vector<Elem>& S_basis,
                             const std::vector<Elem>& Sp_basis);
/// {(u + ξu^{q^s}, v + ξμv^{q^s}) : u, v ∈ F_{q^t}}, n = 2t.
std::vector<std::string> npsz_violations(const Field& F, Elem xi, Elem mu, long s);
Built construct_npsz(const FieldPtr& F, Elem xi, Elem mu, long s, bool check = true);

Built construct_lp(const FieldPtr& F, Elem delta, long s);
/// Number of weight-two points of L_g for g = X^{q^{s(n-1)}} + δX^{q^s}.
std::uint64_t lp_expected_r(const Field& F, Elem delta, long s);

}  // namespace fatlin::families
