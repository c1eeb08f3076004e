#pragma once

#include <vector>

#include "fatlin/gf.hpp"
#include "fatlin/linalg.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::linpoly {

using gf::Elem;
using gf::Field;
using gf::FieldPtr;

/// f = sum_j a_j X^{q^j}, j < n, an F_q-linear endomorphism of F_{q^n}.
class LinearizedPoly {
 public:
  LinearizedPoly(FieldPtr F, std::vector<Elem> coeffs);
  static LinearizedPoly zero(FieldPtr F);
  static LinearizedPoly identity(FieldPtr F);
  /// c X^{q^j}, j read modulo n.
  static LinearizedPoly monomial(FieldPtr F, long j, Elem c);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  /// Exponent of the linearity level: q = p^q_exp.
  unsigned q_exp() const noexcept { return field_->h(); }
  std::size_t support_size() const;

  Elem eval(Elem x) const;
  /// n x n matrix over F_q in the power basis: f(b_i) = sum_j M[j][i] b_j.
  linalg::ElemMatrix as_matrix() const;
  unsigned rank() const;
  unsigned kernel_dim() const { return field_->n() - rank(); }

  /// Accumulates c X^{q^j} into the coefficient vector.
  LinearizedPoly& add_term(long j, Elem c);
  LinearizedPoly operator+(const LinearizedPoly& o) const;
  LinearizedPoly operator-(const LinearizedPoly& o) const;
  /// f - m X.
  LinearizedPoly minus_scalar(Elem m) const;

 private:
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

/// Tr_{q^n/q}: all coefficients 1.
LinearizedPoly trace_poly(FieldPtr F);

/// Tr_{q^n/q^t}(x^{q^s}); requires t | n and gcd(s, t) = 1.
LinearizedPoly club_trace_poly(FieldPtr F, unsigned t, long s);

/// X^{σ^{t-1}} + X^{σ^{2t-1}} + m(X^σ - X^{σ^{t+1}}), σ = q^J, in F_{q^{2t}}.
LinearizedPoly phi_poly(FieldPtr F, Elem m, long J, unsigned t);

/// X^{q^{s(n-1)}} + δ X^{q^s}; requires gcd(s, n) = 1.
LinearizedPoly lp_poly(FieldPtr F, Elem delta, long s);

/// Projection onto span(sp_basis) along span(s_basis); the union must be an
/// F_q-basis of F_{q^n}.
LinearizedPoly projection_poly(FieldPtr F, const std::vector<Elem>& s_basis,
                               const std::vector<Elem>& sp_basis);

/// U_f = {(x, f(x))}, basis {(b_i, f(b_i))} over the power basis.
Subspace graph_subspace(const LinearizedPoly& f);

}  // namespace fatlin::linpoly
