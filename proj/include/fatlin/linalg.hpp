#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fatlin/gf.hpp"

namespace fatlin::linalg {

using gf::Elem;
using gf::Field;

/// A vector of F_{q^n}^k.
using Vec = std::vector<Elem>;
/// Row-major matrix of field elements.
using ElemMatrix = std::vector<std::vector<Elem>>;

// ---------------------------------------------------------------------------
// Dense elimination over the prime field F_p.

class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint64_t* row(std::size_t r) { return data_.data() + r * cols_; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Basis of {x : M x = 0}.
  std::vector<std::vector<std::uint64_t>> nullspace() const;

 private:
  std::size_t rows_, cols_;
  std::uint64_t p_;
  std::vector<std::uint64_t> data_;
};

/// Incremental F_p row space with O(cols) pivot bookkeeping, used for fast
/// rank and membership queries.
class FpRowSpace {
 public:
  FpRowSpace(std::size_t cols, std::uint64_t p);
  /// Reduces and inserts; returns true if the rank grew.
  bool insert(std::vector<std::uint64_t> row);
  bool contains(std::vector<std::uint64_t> row) const;
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  void reduce(std::vector<std::uint64_t>& row) const;

  std::size_t cols_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// F_q-linear algebra on vectors of F_{q^n}^k via F_p block expansion.

/// Row of F_p digits of c * v (k * hn entries).
std::vector<std::uint64_t> fp_digits(const Field& F, const Vec& v, Elem c);

/// dim_{F_q} of the F_q-span of the given vectors (all of equal length).
std::size_t fq_rank(const Field& F, std::span<const Vec> vectors);

/// dim_{F_q} of the F_q-span of scalars in F_{q^n}.
std::size_t fq_rank_scalars(const Field& F, std::span<const Elem> scalars);

/// An F_q-subspace of F_{q^n}^k as an incremental row space, supporting
/// membership tests.
class FqSpan {
 public:
  FqSpan(const Field& F, std::size_t k);
  bool insert(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dim() const noexcept { return space_.rank() / F_->h(); }

 private:
  const Field* F_;
  std::size_t k_;
  std::vector<Elem> fq_basis_;  // F_p-basis of F_q
  FpRowSpace space_;
};

/// Coordinates with respect to a fixed F_q-basis of an F_q-subspace of F_{q^n}.
class FqCoordinates {
 public:
  FqCoordinates(const Field& F, std::vector<Elem> basis);
  /// Coordinates (in F_q) of x; throws if x is outside the span.
  std::vector<Elem> coords(Elem x) const;
  const std::vector<Elem>& basis() const noexcept { return basis_; }

 private:
  const Field* F_;
  std::vector<Elem> basis_;
  std::vector<Elem> fq_basis_;
  // Columns of the F_p system: digits of fq_basis_[a] * basis_[c].
  FpMatrix system_;
};

// ---------------------------------------------------------------------------
// Elimination with matrices of field elements. Entries may be confined to any
// subfield; the arithmetic stays inside it.

/// In-place RREF; returns the pivot columns.
std::vector<std::size_t> rref(const Field& F, ElemMatrix& m);
std::size_t rank(const Field& F, ElemMatrix m);
/// Basis of the right kernel {x : M x = 0}, one vector per free column, in
/// column order.
std::vector<Vec> nullspace(const Field& F, ElemMatrix m, std::size_t cols);
/// Throws InvalidInput if singular.
ElemMatrix inverse(const Field& F, const ElemMatrix& m);
Vec mat_vec(const Field& F, const ElemMatrix& m, const Vec& v);
ElemMatrix identity(const Field& F, std::size_t k);

/// Standard dot product sum u_j v_j.
Elem dot(const Field& F, const Vec& u, const Vec& v);

}  // namespace fatlin::linalg
