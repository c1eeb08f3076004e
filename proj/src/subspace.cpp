#include "fatlin/subspace.hpp"

#include <string>

#include "fatlin/error.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin {

Subspace::Subspace(gf::FieldPtr F, std::size_t k, std::vector<Vec> basis)
    : field_(std::move(F)), k_(k), basis_(std::move(basis)), span_(*field_, k) {
  if (k_ == 0) throw InvalidInput("subspace ambient dimension k must be positive");
  for (const auto& v : basis_) {
    if (v.size() != k_) throw InvalidInput("basis vector has length " + std::to_string(v.size()) +
                                           ", expected " + std::to_string(k_));
    for (auto x : v)
      if (!field_->is_valid(x)) throw InvalidInput("basis entry outside the field");
    if (!span_.insert(v)) throw InvalidInput("subspace basis is not F_q-independent");
  }
  fq_ = field_->fq_elements();
  multiples_.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    multiples_[i].reserve(fq_.size());
    for (auto a : fq_) {
      Vec m(k_);
      for (std::size_t j = 0; j < k_; ++j) m[j] = field_->mul(a, basis_[i][j]);
      multiples_[i].push_back(std::move(m));
    }
  }
}

bool Subspace::same_span(const Subspace& other) const {
  if (field_.get() != other.field_.get() && field_->modulus() != other.field_->modulus()) return false;
  if (k_ != other.k_ || rho() != other.rho()) return false;
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

std::uint64_t Subspace::checked_size(std::uint64_t cap) const {
  BigInt size = num::big_pow(field_->q(), static_cast<unsigned>(rho()));
  if (size > cap)
    throw CapExceeded("enumeration of " + size.str() + " vectors exceeds the cap of " +
                      std::to_string(cap));
  return static_cast<std::uint64_t>(size);
}

void Subspace::add_scaled(Vec& acc, std::size_t i, std::size_t from, std::size_t to) const {
  const gf::Field& F = *field_;
  const Vec& a = multiples_[i][from];
  const Vec& b = multiples_[i][to];
  for (std::size_t j = 0; j < k_; ++j) acc[j] = F.add(F.sub(acc[j], a[j]), b[j]);
}

}  // namespace fatlin
