#include "fatlin/equiv.hpp"

#include <algorithm>
#include <numeric>

#include "fatlin/error.hpp"
#include "fatlin/io.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin::equiv {

using families::ConstructionDescriptor;
using families::Family;
using gf::Field;

namespace {

bool same_field(const Field& a, const Field& b) {
  return a.p() == b.p() && a.h() == b.h() && a.n() == b.n() && a.modulus() == b.modulus();
}

bool same_fq_space(const Field& F, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size()) return false;
  std::vector<Elem> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto r = linalg::fq_rank_scalars(F, a);
  return r == linalg::fq_rank_scalars(F, b) && r == linalg::fq_rank_scalars(F, both);
}

std::vector<Elem> scaled(const Field& F, Elem c, const std::vector<Elem>& xs) {
  std::vector<Elem> out;
  for (auto x : xs) out.push_back(F.mul(c, x));
  return out;
}

std::vector<Elem> twisted(const Field& F, unsigned e, const std::vector<Elem>& xs) {
  std::vector<Elem> out;
  for (auto x : xs) out.push_back(F.frob(x, e));
  return out;
}

/// The parameters both T families share: the graph element c and its twist s.
struct Side {
  long s = 0;
  Elem c;
  std::vector<Elem> I;
  std::size_t k = 0;
  unsigned t = 0;
};

unsigned norm_s(long s, unsigned t) { return static_cast<unsigned>(num::mod_signed(s, t)); }

bool coprime(unsigned s, unsigned t) { return s >= 1 && s < t && std::gcd(s, t) == 1; }

/// Candidate scalars y in `keep` with y^e = c.
template <class Keep>
std::vector<Elem> roots_in(const Field& F, Elem c, std::uint64_t e, Keep keep) {
  std::vector<Elem> out;
  if (c == F.zero()) return out;
  for (auto y : F.power_roots(c, static_cast<std::int64_t>(e)))
    if (keep(y)) out.push_back(y);
  return out;
}

class Sweep {
 public:
  Sweep(const ConstructionDescriptor& d1, const ConstructionDescriptor& d2)
      : F_(*d1.field), src_(families::rebuild(d1)), dst_(families::rebuild(d2)) {}

  /// Applies (scalar, e) to the first subspace and accepts it only if the
  /// image is exactly the second.
  bool offer(Elem scalar, unsigned e, const char* clause, EquivVerdict& v) {
    auto A = linalg::identity(F_, src_.k());
    for (std::size_t j = 0; j < A.size(); ++j) A[j][j] = scalar;
    if (!apply_semilinear(A, e, src_).same_span(dst_))
      throw CheckFailure(std::string("clause (") + clause + ") witness does not map the subspaces");
    v.result = Result::equivalent;
    v.witness = Witness{e, scalar, clause, std::move(A)};
    v.witness_verified = true;
    v.criterion_trace = std::string("clause (") + clause + "): witness found and verified";
    return true;
  }

  const Subspace& src() const { return src_; }
  const Subspace& dst() const { return dst_; }

 private:
  const Field& F_;
  Subspace src_, dst_;
};

void validate_pair(const ConstructionDescriptor& d1, const ConstructionDescriptor& d2, Family fam) {
  if (d1.family != fam || d2.family != fam)
    throw InvalidInput("both descriptors must be " + families::family_name(fam));
  if (!same_field(*d1.field, *d2.field)) throw InvalidInput("descriptors live over different fields");
}

/// Shared tail: criterion verdicts when the theorem applies, otherwise invariants.
EquivVerdict fallback(bool conclusive, const Side& a, const Side& b, const Sweep& sw,
                      const linset::EnumOptions& opts) {
  EquivVerdict v;
  const unsigned s1 = norm_s(a.s, a.t), s2 = norm_s(b.s, b.t);
  if (conclusive && (s2 == s1 || s2 == a.t - s1)) {
    v.result = Result::inequivalent_by_criterion;
    v.criterion_trace = s2 == s1 ? "clause (ii): no automorphism satisfies the conditions"
                                 : "clause (iii): no automorphism satisfies the conditions";
    return v;
  }
  if (conclusive && a.I.size() == a.t && b.I.size() == b.t) {
    v.result = Result::inequivalent_by_criterion;
    v.criterion_trace = "clause (i): twists differ and I is the whole subfield";
    return v;
  }
  try {
    if (invariant_distinguish(sw.src(), sw.dst(), opts)) {
      v.result = Result::inequivalent_by_invariant;
      v.criterion_trace = "invariants differ";
      return v;
    }
    v.criterion_trace = "criteria not applicable; invariants agree";
  } catch (const CapExceeded&) {
    v.criterion_trace = "criteria not applicable; invariant screen exceeds the cap";
  }
  v.result = Result::undecided;
  return v;
}

EquivVerdict rank_mismatch() {
  EquivVerdict v;
  v.result = Result::inequivalent_by_invariant;
  v.criterion_trace = "ranks differ";
  return v;
}

}  // namespace

std::string result_name(Result r) {
  switch (r) {
    case Result::equivalent: return "equivalent";
    case Result::inequivalent_by_criterion: return "inequivalent_by_criterion";
    case Result::inequivalent_by_invariant: return "inequivalent_by_invariant";
    case Result::undecided: return "undecided";
  }
  return "unknown";
}

Subspace apply_semilinear(const linalg::ElemMatrix& A, unsigned iota_exp, const Subspace& U) {
  const Field& F = U.field();
  const std::size_t k = U.k();
  if (A.size() != k || std::any_of(A.begin(), A.end(), [k](const auto& row) { return row.size() != k; }))
    throw InvalidInput("matrix must be k x k");
  if (linalg::rank(F, A) != k) throw InvalidInput("matrix must be invertible");
  std::vector<Vec> basis;
  for (const auto& b : U.basis()) {
    Vec tw(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) tw[j] = F.frob(b[j], iota_exp);
    basis.push_back(linalg::mat_vec(F, A, tw));
  }
  return Subspace(U.field_ptr(), k, std::move(basis));
}

bool invariant_distinguish(const Subspace& U1, const Subspace& U2, const linset::EnumOptions& opts) {
  if (U1.k() != U2.k() || !same_field(U1.field(), U2.field()))
    throw InvalidInput("subspaces live in different ambient spaces");
  if (U1.rho() != U2.rho()) return true;
  auto flags = [&](const Subspace& U) {
    auto rep = linset::weight_spectrum(U, opts);
    if (rep.classification.kind == linset::Kind::regular_fat)
      rep.heavy_points_subgeometry = linset::heavy_points_subgeometry(rep, U);
    return rep;
  };
  const auto r1 = flags(U1);
  const auto r2 = flags(U2);
  return r1.spectrum != r2.spectrum || r1.heavy_points_subgeometry != r2.heavy_points_subgeometry;
}

EquivVerdict check_equiv_T1(const ConstructionDescriptor& d1, const ConstructionDescriptor& d2,
                            const linset::EnumOptions& opts) {
  validate_pair(d1, d2, Family::T1);
  const Field& F = *d1.field;
  const unsigned t = families::t1_half(F);
  const auto p1 = families::t1_params(d1);
  const auto p2 = families::t1_params(d2);
  if (p1.k != p2.k) throw InvalidInput("descriptors have different k");
  if (p1.I_basis.size() != p2.I_basis.size()) return rank_mismatch();
  const Side a{p1.s, p1.w, p1.I_basis, p1.k, t}, b{p2.s, p2.w, p2.I_basis, p2.k, t};
  const unsigned s1 = norm_s(a.s, t), s2 = norm_s(b.s, t);
  auto in_E = [&](Elem x) { return x != F.zero() && families::in_trace_zero(F, x, t); };
  auto in_sub = [&](Elem x) { return x != F.zero() && F.in_subfield(x, F.h() * t); };
  auto norm = [&](Elem x) { return F.rel_norm(x, F.h() * t, F.h()); };

  Sweep sw(d1, d2);
  EquivVerdict v;
  for (unsigned e = 0; e < F.degree(); ++e) {
    const Elem wi = F.frob(a.c, e);
    const auto Ii = twisted(F, e, a.I);
    if (s2 == s1 && b.c != F.zero()) {
      const Elem c = F.div(wi, b.c);
      if (norm(c) == F.one())
        for (auto theta : roots_in(F, c, num::ipow(F.q(), s1) - 1, in_sub))
          if (same_fq_space(F, scaled(F, theta, Ii), b.I) && sw.offer(theta, e, "ii", v)) return v;
    }
    if (s2 == t - s1) {
      const Elem c = F.mul(F.frobenius(wi, t - s1, F.h()), b.c);
      // The w0 equation implies N(w^iota w~) = 1.
      if (c != F.zero() && norm(F.mul(wi, b.c)) == F.one())
        for (auto w0 : roots_in(F, F.inv(c), num::ipow(F.q(), t - s1) - 1, in_E)) {
          std::vector<Elem> img;
          for (auto u : Ii) img.push_back(F.mul(F.mul(wi, w0), F.frobenius(u, s1, F.h())));
          if (same_fq_space(F, img, b.I) && sw.offer(w0, e, "iii", v)) return v;
        }
    }
  }
  const bool conclusive = F.q() % 2 == 1 && coprime(s1, t) && coprime(s2, t) && in_E(a.c) &&
                          in_E(b.c) && a.I.size() > 2;
  return fallback(conclusive, a, b, sw, opts);
}

EquivVerdict check_equiv_T2(const ConstructionDescriptor& d1, const ConstructionDescriptor& d2,
                            const linset::EnumOptions& opts) {
  validate_pair(d1, d2, Family::T2);
  const Field& F = *d1.field;
  const auto p1 = families::t2_params(d1);
  const auto p2 = families::t2_params(d2);
  if (p1.k != p2.k) throw InvalidInput("descriptors have different k");
  if (p1.I_basis.size() != p2.I_basis.size()) return rank_mismatch();
  const unsigned ell = p1.ell;
  if (ell == 0 || F.n() % ell != 0) throw InvalidInput("T2 needs n = ell t");
  const unsigned t = F.n() / ell;
  const Side a{p1.s, p1.eta, p1.I_basis, p1.k, t}, b{p2.s, p2.eta, p2.I_basis, p2.k, p2.ell ? F.n() / p2.ell : 0};
  Sweep sw(d1, d2);
  if (p2.ell != ell || (num::ipow(F.q(), t) - 1) % ell != 0) return fallback(false, a, b, sw, opts);

  const auto comps = families::e_components(F, ell, t);
  auto component = [&](Elem x) -> std::optional<unsigned> {
    for (unsigned j = 0; j < ell; ++j)
      if (families::in_component(F, x, comps.epsilon, j, t)) return j;
    return std::nullopt;
  };
  auto in_E1 = [&](Elem x) { return x != F.zero() && families::in_component(F, x, comps.epsilon, 1, t); };
  auto in_sub = [&](Elem x) { return x != F.zero() && F.in_subfield(x, F.h() * t); };
  const unsigned s1 = norm_s(a.s, t), s2 = norm_s(b.s, t);

  EquivVerdict v;
  for (unsigned e = 0; e < F.degree(); ++e) {
    const Elem ei = F.frob(a.c, e);
    const auto M = component(ei);
    if (!M) continue;
    const auto Ii = twisted(F, e, a.I);
    if (*M == 1 && s2 == s1 && b.c != F.zero()) {
      const Elem c = F.div(ei, b.c);
      if (F.rel_norm(c, F.h() * t, F.h()) == F.one())
        for (auto theta : roots_in(F, c, num::ipow(F.q(), s1) - 1, in_sub))
          if (same_fq_space(F, scaled(F, theta, Ii), b.I) && sw.offer(theta, e, "ii", v)) return v;
    }
    if (*M == ell - 1 && s2 == t - s1) {
      const Elem c = F.mul(b.c, F.frobenius(ei, t - s1, F.h()));
      if (c != F.zero())
        for (auto lam : roots_in(F, F.inv(c), num::ipow(F.q(), t - s1) - 1, in_E1)) {
          std::vector<Elem> img;
          for (auto u : Ii) img.push_back(F.mul(F.mul(lam, ei), F.frobenius(u, s1, F.h())));
          if (same_fq_space(F, img, b.I) && sw.offer(lam, e, "iii", v)) return v;
        }
    }
  }
  const bool conclusive = coprime(s1, t) && coprime(s2, t) && ell > 2 && in_E1(a.c) && in_E1(b.c) &&
                          a.I.size() > 2;
  return fallback(conclusive, a, b, sw, opts);
}

EquivVerdict check_equiv(const ConstructionDescriptor& d1, const ConstructionDescriptor& d2,
                         const linset::EnumOptions& opts) {
  if (d1.family == Family::T1) return check_equiv_T1(d1, d2, opts);
  if (d1.family == Family::T2) return check_equiv_T2(d1, d2, opts);
  throw InvalidInput("equivalence criteria exist only for T1 and T2");
}

json verdict_to_json(const Field& F, const EquivVerdict& v) {
  json j{{"result", result_name(v.result)},
         {"criterion_trace", v.criterion_trace},
         {"checks", {{"witness_verified", v.witness_verified}}}};
  if (v.witness) {
    j["witness"] = {{"iota_exp", v.witness->iota_exp},
                    {"scalar", io::elem_to_json(F, v.witness->scalar)},
                    {"clause", v.witness->clause},
                    {"matrix", io::matrix_to_json(F, v.witness->matrix)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace fatlin::equiv
