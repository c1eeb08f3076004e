#pragma once

#include <optional>
#include <vector>

#include "json.hpp"

#include "fatlin/linalg.hpp"
#include "fatlin/linset.hpp"
#include "fatlin/numeric.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::rmc {

using gf::Elem;
using gf::Field;
using nlohmann::json;

/// An [N, k]_{q^n/q} code with generator G (k × N).
struct RankCode {
  gf::FieldPtr field;
  std::size_t N = 0;
  std::size_t k = 0;
  linalg::ElemMatrix G;
  bool nondegenerate = false;
};

/// A[j] = number of codewords of rank weight j, j = 0..n.
using RankDistribution = std::vector<BigInt>;

/// {v : Tr_{q^n/q}(u · v) = 0 for all u ∈ U}.
Subspace perp_prime(const Subspace& U);

/// Code whose generator columns are the echelonized F_q-basis of U^{⊥'};
/// throws InvalidInput if the columns do not span F_{q^n}^k.
RankCode code_of_dual(const Subspace& U);

/// dim_{F_q} of the span of the coordinates.
unsigned rank_weight(const Field& F, const linalg::Vec& v);

struct DistributionResult {
  RankDistribution A;
  /// Three sampled codewords whose weight, recomputed as N - dim(U' ∩ x^⊥)
  /// by enumerating U', agreed; unset when U' is too large to enumerate.
  std::optional<bool> hyperplane_spot_checks;
};

/// Enumerates all q^{nk} codewords; throws CapExceeded above cap.
DistributionResult rank_distribution(const RankCode& C, const linset::EnumOptions& opts = {});

/// The three-weight law for a regular fat (r > 0) or scattered (r = 0) set.
RankDistribution predicted_distribution(std::uint64_t q, unsigned n, std::size_t k, std::size_t rho,
                                        std::uint64_t r, unsigned i, std::uint64_t size);

/// Number of h-dimensional subspaces of F_q^r; 0 when h > r.
BigInt gaussian_binom(unsigned r, unsigned h, std::uint64_t q);

/// Dual distribution by forward substitution; throws CheckFailure on a
/// negative or non-integral B_nu.
RankDistribution macwilliams_transform(const RankDistribution& A, std::size_t N, unsigned n, std::size_t k,
                                       std::uint64_t q);

/// Distribution of C^⊥ by enumerating its (q^n)^{N-k} words; nullopt above limit.
std::optional<RankDistribution> dual_distribution_brute(const RankCode& C, std::uint64_t limit = 1ULL << 20);

/// nk <= max(N, n) (min(N, n) - d + 1).
bool singleton_check(std::size_t N, std::size_t k, unsigned d, unsigned n);

/// rho <= nki/(i+1); nullopt when rho > nk - n or i >= n.
std::optional<bool> rho_bound_check(unsigned n, std::size_t k, unsigned i, std::size_t rho);

/// (q^{2rho-nk} - 1)[n,2]_q / ((q^n - 1)[i,2]_q); throws InvalidInput for i < 2.
BigRational r_lower_bound(std::uint64_t q, unsigned n, std::size_t k, unsigned i, std::size_t rho);

/// For k = 2: w_{U^{⊥'}}((b : -a)) = nk - rho - n + w_U((a : b)) at every point.
bool dual_weight_relation(const Subspace& U, const Subspace& U_perp);

struct CodeReport {
  std::size_t N = 0, k = 0;
  unsigned n = 0;
  unsigned d = 0;
  linset::SpectrumReport spectrum;
  RankDistribution A;
  bool A_enumerated = false;
  std::optional<RankDistribution> predicted;
  std::optional<bool> three_weight_match;
  std::optional<bool> hyperplane_spot_checks;
  RankDistribution B;
  bool macwilliams_integral = false;
  bool B1_zero = false;
  bool B_sum_ok = false;
  std::optional<bool> dual_brute_match;
  bool singleton = false;
  std::optional<bool> rho_bound;
  std::optional<BigRational> r_bound;
  std::optional<bool> r_bound_ok;
  std::optional<bool> dual_weight_relation;
  /// d = n - (largest point weight).
  bool min_distance_ok = false;
};

CodeReport code_report(const Subspace& U, const linset::EnumOptions& opts = {});
json code_report_to_json(const CodeReport& r);

}  // namespace fatlin::rmc
