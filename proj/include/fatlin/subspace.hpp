#pragma once

#include <cstdint>
#include <vector>

#include "fatlin/gf.hpp"
#include "fatlin/linalg.hpp"

namespace fatlin {

using linalg::Vec;

/// An F_q-subspace U of F_{q^n}^k given by an F_q-basis.
class Subspace {
 public:
  /// Validates that the basis vectors have length k and are F_q-independent.
  Subspace(gf::FieldPtr F, std::size_t k, std::vector<Vec> basis);

  const gf::Field& field() const noexcept { return *field_; }
  const gf::FieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t rho() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  bool contains(const Vec& v) const { return span_.contains(v); }
  /// True iff both subspaces have the same F_q-span.
  bool same_span(const Subspace& other) const;
  /// The reduced span, for rank computations that extend U.
  const linalg::FqSpan& span() const noexcept { return span_; }

  /// Number of vectors q^rho; throws CapExceeded above cap.
  std::uint64_t checked_size(std::uint64_t cap) const;

  /// Calls fn(v) for every vector of U whose coordinate on the last basis
  /// vector is fq[top] for top in [top_begin, top_end). Coordinates run as a
  /// plain odometer, first basis vector fastest. The zero vector is included.
  template <class Fn>
  void for_each_vector(std::uint64_t top_begin, std::uint64_t top_end, Fn&& fn) const;

  /// Calls fn(v) once per F_q-projective point of U: the vectors whose last
  /// nonzero coordinate is 1.
  template <class Fn>
  void for_each_projective_rep(Fn&& fn) const;

 private:
  void add_scaled(Vec& acc, std::size_t i, std::size_t from, std::size_t to) const;

  gf::FieldPtr field_;
  std::size_t k_;
  std::vector<Vec> basis_;
  linalg::FqSpan span_;
  std::vector<gf::Elem> fq_;
  // multiples_[i][a] = fq_[a] * basis_[i]
  std::vector<std::vector<Vec>> multiples_;
};

template <class Fn>
void Subspace::for_each_vector(std::uint64_t top_begin, std::uint64_t top_end, Fn&& fn) const {
  const gf::Field& F = *field_;
  const std::size_t rho = basis_.size();
  if (rho == 0) {
    if (top_begin == 0 && top_end > 0) fn(Vec(k_, F.zero()));
    return;
  }
  const std::size_t q = fq_.size();
  const std::size_t top = rho - 1;
  for (std::uint64_t t = top_begin; t < top_end; ++t) {
    std::vector<std::size_t> digit(rho, 0);
    digit[top] = t;
    Vec v = multiples_[top][t];
    while (true) {
      fn(static_cast<const Vec&>(v));
      std::size_t i = 0;
      while (i < top && digit[i] == q - 1) {
        add_scaled(v, i, q - 1, 0);
        digit[i] = 0;
        ++i;
      }
      if (i == top) break;
      add_scaled(v, i, digit[i], digit[i] + 1);
      ++digit[i];
    }
  }
}

template <class Fn>
void Subspace::for_each_projective_rep(Fn&& fn) const {
  const std::size_t q = fq_.size();
  for (std::size_t lead = 0; lead < basis_.size(); ++lead) {
    std::vector<std::size_t> digit(lead, 0);
    Vec v = basis_[lead];
    while (true) {
      fn(static_cast<const Vec&>(v));
      std::size_t i = 0;
      while (i < lead && digit[i] == q - 1) {
        add_scaled(v, i, q - 1, 0);
        digit[i] = 0;
        ++i;
      }
      if (i == lead) break;
      add_scaled(v, i, digit[i], digit[i] + 1);
      ++digit[i];
    }
  }
}

}  // namespace fatlin
