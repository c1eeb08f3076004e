#include "fatlin/linalg.hpp"

#include <algorithm>

#include "fatlin/error.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin::linalg {

namespace {

inline std::uint64_t add_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub_mul_p(std::uint64_t a, std::uint64_t f, std::uint64_t b, std::uint64_t p) {
  // a - f*b mod p
  return add_p(a, p - num::mulmod(f, b, p), p) % p;
}

}  // namespace

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
    const std::uint64_t iv = num::invmod(at(r, c), p_);
    for (std::size_t j = c; j < cols_; ++j) at(r, j) = num::mulmod(at(r, j), iv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const std::uint64_t f = at(i, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols_; ++j) at(i, j) = sub_mul_p(at(i, j), f, at(r, j), p_);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<std::uint64_t>> FpMatrix::nullspace() const {
  FpMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> x(cols_, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = (p_ - m.at(i, free)) % p_;
    out.push_back(std::move(x));
  }
  return out;
}

FpRowSpace::FpRowSpace(std::size_t cols, std::uint64_t p) : cols_(cols), p_(p) {}

void FpRowSpace::reduce(std::vector<std::uint64_t>& row) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint64_t f = row[pivots_[i]];
    if (f == 0) continue;
    const auto& b = rows_[i];
    for (std::size_t j = pivots_[i]; j < cols_; ++j)
      if (b[j] != 0) row[j] = sub_mul_p(row[j], f, b[j], p_);
  }
}

bool FpRowSpace::insert(std::vector<std::uint64_t> row) {
  reduce(row);
  std::size_t piv = 0;
  while (piv < cols_ && row[piv] == 0) ++piv;
  if (piv == cols_) return false;
  const std::uint64_t iv = num::invmod(row[piv], p_);
  for (std::size_t j = piv; j < cols_; ++j) row[j] = num::mulmod(row[j], iv, p_);
  // Keep stored rows reduced against the new pivot so reduce() is one pass.
  for (auto& b : rows_) {
    const std::uint64_t f = b[piv];
    if (f == 0) continue;
    for (std::size_t j = piv; j < cols_; ++j) b[j] = sub_mul_p(b[j], f, row[j], p_);
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  return true;
}

bool FpRowSpace::contains(std::vector<std::uint64_t> row) const {
  reduce(row);
  return std::all_of(row.begin(), row.end(), [](std::uint64_t x) { return x == 0; });
}

std::vector<std::uint64_t> fp_digits(const Field& F, const Vec& v, Elem c) {
  const unsigned D = F.degree();
  std::vector<std::uint64_t> row(v.size() * D);
  for (std::size_t j = 0; j < v.size(); ++j) F.decode(F.mul(c, v[j]), row.data() + j * D);
  return row;
}

std::size_t fq_rank(const Field& F, std::span<const Vec> vectors) {
  if (vectors.empty()) return 0;
  FqSpan span(F, vectors.front().size());
  for (const auto& v : vectors) span.insert(v);
  return span.dim();
}

std::size_t fq_rank_scalars(const Field& F, std::span<const Elem> scalars) {
  std::vector<Vec> vs;
  vs.reserve(scalars.size());
  for (Elem s : scalars) vs.push_back(Vec{s});
  return fq_rank(F, vs);
}

FqSpan::FqSpan(const Field& F, std::size_t k)
    : F_(&F), k_(k), fq_basis_(F.subfield_basis(F.h(), 1)), space_(k * F.degree(), F.p()) {}

bool FqSpan::insert(const Vec& v) {
  if (v.size() != k_) throw InvalidInput("vector length mismatch");
  bool grew = false;
  for (Elem g : fq_basis_) grew = space_.insert(fp_digits(*F_, v, g)) || grew;
  return grew;
}

bool FqSpan::contains(const Vec& v) const {
  if (v.size() != k_) throw InvalidInput("vector length mismatch");
  // The span is F_q-closed, so testing v itself suffices.
  return space_.contains(fp_digits(*F_, v, F_->one()));
}

FqCoordinates::FqCoordinates(const Field& F, std::vector<Elem> basis)
    : F_(&F),
      basis_(std::move(basis)),
      fq_basis_(F.subfield_basis(F.h(), 1)),
      system_(F.degree(), basis_.size() * F.h() + 1, F.p()) {
  if (fq_rank_scalars(F, basis_) != basis_.size())
    throw InvalidInput("coordinate basis is not F_q-independent");
}

std::vector<Elem> FqCoordinates::coords(Elem x) const {
  const Field& F = *F_;
  const unsigned D = F.degree();
  const unsigned h = F.h();
  const std::size_t unknowns = basis_.size() * h;
  FpMatrix m(D, unknowns + 1, F.p());
  std::vector<std::uint64_t> digits(D);
  for (std::size_t c = 0; c < basis_.size(); ++c) {
    for (unsigned a = 0; a < h; ++a) {
      F.decode(F.mul(fq_basis_[a], basis_[c]), digits.data());
      for (unsigned r = 0; r < D; ++r) m.at(r, c * h + a) = digits[r];
    }
  }
  F.decode(x, digits.data());
  for (unsigned r = 0; r < D; ++r) m.at(r, unknowns) = digits[r];
  const auto pivots = m.rref();
  if (!pivots.empty() && pivots.back() == unknowns)
    throw InvalidInput("element lies outside the coordinate span");
  std::vector<std::uint64_t> sol(unknowns, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol[pivots[i]] = m.at(i, unknowns);
  std::vector<Elem> out(basis_.size(), F.zero());
  for (std::size_t c = 0; c < basis_.size(); ++c)
    for (unsigned a = 0; a < h; ++a)
      out[c] = F.add(out[c], F.scale(sol[c * h + a], fq_basis_[a]));
  return out;
}

std::vector<std::size_t> rref(const Field& F, ElemMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == F.zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const Elem iv = F.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = F.mul(m[r][j], iv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == F.zero()) continue;
      const Elem f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const Field& F, ElemMatrix m) { return rref(F, m).size(); }

std::vector<Vec> nullspace(const Field& F, ElemMatrix m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw InvalidInput("nullspace: ragged matrix");
  const auto pivots = rref(F, m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols, F.zero());
    x[free] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = F.neg(m[i][free]);
    out.push_back(std::move(x));
  }
  return out;
}

ElemMatrix inverse(const Field& F, const ElemMatrix& m) {
  const std::size_t k = m.size();
  ElemMatrix aug(k, std::vector<Elem>(2 * k, F.zero()));
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i].size() != k) throw InvalidInput("inverse: matrix is not square");
    std::copy(m[i].begin(), m[i].end(), aug[i].begin());
    aug[i][k + i] = F.one();
  }
  const auto pivots = rref(F, aug);
  if (pivots.size() < k || pivots[k - 1] != k - 1) throw InvalidInput("matrix is singular");
  ElemMatrix out(k, std::vector<Elem>(k));
  for (std::size_t i = 0; i < k; ++i) std::copy(aug[i].begin() + k, aug[i].end(), out[i].begin());
  return out;
}

Vec mat_vec(const Field& F, const ElemMatrix& m, const Vec& v) {
  Vec out(m.size(), F.zero());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw InvalidInput("mat_vec: dimension mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = F.add(out[i], F.mul(m[i][j], v[j]));
  }
  return out;
}

ElemMatrix identity(const Field& F, std::size_t k) {
  ElemMatrix m(k, std::vector<Elem>(k, F.zero()));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = F.one();
  return m;
}

Elem dot(const Field& F, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw InvalidInput("dot: length mismatch");
  Elem s = F.zero();
  for (std::size_t j = 0; j < u.size(); ++j) s = F.add(s, F.mul(u[j], v[j]));
  return s;
}

}  // namespace fatlin::linalg
