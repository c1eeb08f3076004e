#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "fatlin/families.hpp"
#include "fatlin/linalg.hpp"
#include "fatlin/linset.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::equiv {

using gf::Elem;
using nlohmann::json;

enum class Result { equivalent, inequivalent_by_criterion, inequivalent_by_invariant, undecided };
std::string result_name(Result r);

/// v ↦ A v^{p^iota_exp}; A = scalar·identity for every witness produced here.
struct Witness {
  unsigned iota_exp = 0;
  Elem scalar;
  std::string clause;
  linalg::ElemMatrix matrix;
};

struct EquivVerdict {
  Result result = Result::undecided;
  std::optional<Witness> witness;
  std::string criterion_trace;
  bool witness_verified = false;
};

/// {A v^{p^iota_exp} : v ∈ U}; throws InvalidInput if A is singular.
Subspace apply_semilinear(const linalg::ElemMatrix& A, unsigned iota_exp, const Subspace& U);

/// True iff spectra, ranks or heavy-point subgeometry flags differ.
bool invariant_distinguish(const Subspace& U1, const Subspace& U2, const linset::EnumOptions& opts = {});

EquivVerdict check_equiv_T1(const families::ConstructionDescriptor& d1,
                            const families::ConstructionDescriptor& d2,
                            const linset::EnumOptions& opts = {});
EquivVerdict check_equiv_T2(const families::ConstructionDescriptor& d1,
                            const families::ConstructionDescriptor& d2,
                            const linset::EnumOptions& opts = {});
/// Dispatches on the descriptors' family.
EquivVerdict check_equiv(const families::ConstructionDescriptor& d1,
                         const families::ConstructionDescriptor& d2,
                         const linset::EnumOptions& opts = {});

json verdict_to_json(const gf::Field& F, const EquivVerdict& v);

}  // namespace fatlin::equiv
