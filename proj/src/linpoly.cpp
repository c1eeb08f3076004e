#include "fatlin/linpoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fatlin/error.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin::linpoly {

LinearizedPoly::LinearizedPoly(FieldPtr F, std::vector<Elem> coeffs)
    : field_(std::move(F)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != field_->n())
    throw InvalidInput("linearized polynomial needs n = " + std::to_string(field_->n()) +
                       " coefficients");
  for (auto c : coeffs_)
    if (!field_->is_valid(c)) throw InvalidInput("coefficient outside the field");
}

LinearizedPoly LinearizedPoly::zero(FieldPtr F) {
  const unsigned n = F->n();
  return LinearizedPoly(std::move(F), std::vector<Elem>(n, Elem{0}));
}

LinearizedPoly LinearizedPoly::identity(FieldPtr F) { return monomial(std::move(F), 0, Elem{1}); }

LinearizedPoly LinearizedPoly::monomial(FieldPtr F, long j, Elem c) {
  auto f = zero(std::move(F));
  f.add_term(j, c);
  return f;
}

LinearizedPoly& LinearizedPoly::add_term(long j, Elem c) {
  const auto idx = num::mod_signed(j, field_->n());
  coeffs_[idx] = field_->add(coeffs_[idx], c);
  return *this;
}

std::size_t LinearizedPoly::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](Elem c) { return c.v != 0; }));
}

Elem LinearizedPoly::eval(Elem x) const {
  const Field& F = *field_;
  Elem sum = F.zero();
  Elem conj = x;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] != F.zero()) sum = F.add(sum, F.mul(coeffs_[j], conj));
    conj = F.frob(conj, F.h());
  }
  return sum;
}

linalg::ElemMatrix LinearizedPoly::as_matrix() const {
  const Field& F = *field_;
  const auto basis = F.power_basis();
  linalg::FqCoordinates coords(F, basis);
  const std::size_t n = basis.size();
  linalg::ElemMatrix m(n, std::vector<Elem>(n, F.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = coords.coords(eval(basis[i]));
    for (std::size_t j = 0; j < n; ++j) m[j][i] = c[j];
  }
  return m;
}

unsigned LinearizedPoly::rank() const {
  const auto basis = field_->power_basis();
  std::vector<Elem> images;
  images.reserve(basis.size());
  for (auto b : basis) images.push_back(eval(b));
  return static_cast<unsigned>(linalg::fq_rank_scalars(*field_, images));
}

LinearizedPoly LinearizedPoly::operator+(const LinearizedPoly& o) const {
  LinearizedPoly r = *this;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) r.coeffs_[j] = field_->add(r.coeffs_[j], o.coeffs_[j]);
  return r;
}

LinearizedPoly LinearizedPoly::operator-(const LinearizedPoly& o) const {
  LinearizedPoly r = *this;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) r.coeffs_[j] = field_->sub(r.coeffs_[j], o.coeffs_[j]);
  return r;
}

LinearizedPoly LinearizedPoly::minus_scalar(Elem m) const {
  LinearizedPoly r = *this;
  r.add_term(0, field_->neg(m));
  return r;
}

LinearizedPoly trace_poly(FieldPtr F) {
  const unsigned n = F->n();
  return LinearizedPoly(std::move(F), std::vector<Elem>(n, Elem{1}));
}

LinearizedPoly club_trace_poly(FieldPtr F, unsigned t, long s) {
  const unsigned n = F->n();
  if (t == 0 || n % t != 0) throw InvalidInput("club trace: t must divide n");
  if (std::gcd(num::mod_signed(s, t), static_cast<std::uint64_t>(t)) != 1)
    throw InvalidInput("club trace: gcd(s, t) must be 1");
  auto f = LinearizedPoly::zero(F);
  for (unsigned j = 0; j < n / t; ++j) f.add_term(s + static_cast<long>(j * t), F->one());
  return f;
}

LinearizedPoly phi_poly(FieldPtr F, Elem m, long J, unsigned t) {
  if (F->q() % 2 == 0) throw HypothesisError("q_odd", "phi: q must be odd");
  if (t < 3) throw HypothesisError("t_ge_3", "phi: t must be at least 3");
  if (F->n() != 2 * t) throw HypothesisError("n_eq_2t", "phi: n must equal 2t");
  if (std::gcd(num::mod_signed(J, 2 * t), static_cast<std::uint64_t>(2 * t)) != 1)
    throw HypothesisError("gcd_J_2t", "phi: gcd(J, 2t) must be 1");
  if (m == F->zero() || !F->in_subfield(m, F->h() * t))
    throw HypothesisError("m_in_Fqt", "phi: m must be a nonzero element of F_{q^t}");
  const long T = t;
  auto f = LinearizedPoly::zero(F);
  f.add_term(J * (T - 1), F->one());
  f.add_term(J * (2 * T - 1), F->one());
  f.add_term(J, m);
  f.add_term(J * (T + 1), F->neg(m));
  return f;
}

LinearizedPoly lp_poly(FieldPtr F, Elem delta, long s) {
  const unsigned n = F->n();
  if (std::gcd(num::mod_signed(s, n), static_cast<std::uint64_t>(n)) != 1)
    throw InvalidInput("LP polynomial: gcd(s, n) must be 1");
  auto f = LinearizedPoly::zero(F);
  f.add_term(s * (static_cast<long>(n) - 1), F->one());
  f.add_term(s, delta);
  return f;
}

LinearizedPoly projection_poly(FieldPtr F, const std::vector<Elem>& s_basis,
                               const std::vector<Elem>& sp_basis) {
  const Field& K = *F;
  std::vector<Elem> xi = s_basis;
  xi.insert(xi.end(), sp_basis.begin(), sp_basis.end());
  if (xi.size() != K.n() || linalg::fq_rank_scalars(K, xi) != K.n())
    throw InvalidInput("projection: S + S' must be a direct sum equal to F_{q^n}");
  const auto dual = K.dual_basis(xi, K.degree(), K.h());
  auto f = LinearizedPoly::zero(F);
  for (std::size_t h = s_basis.size(); h < xi.size(); ++h) {
    Elem conj = dual[h];
    for (unsigned j = 0; j < K.n(); ++j) {
      f.add_term(j, K.mul(xi[h], conj));
      conj = K.frob(conj, K.h());
    }
  }
  for (auto x : s_basis)
    if (f.eval(x) != K.zero()) throw Error("projection: kernel check failed");
  for (auto x : sp_basis)
    if (f.eval(x) != x) throw Error("projection: image check failed");
  return f;
}

Subspace graph_subspace(const LinearizedPoly& f) {
  std::vector<Vec> basis;
  for (auto b : f.field().power_basis()) basis.push_back(Vec{b, f.eval(b)});
  return Subspace(f.field_ptr(), 2, std::move(basis));
}

}  // namespace fatlin::linpoly
