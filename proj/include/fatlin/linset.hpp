#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fatlin/numeric.hpp"
#include "fatlin/subspace.hpp"

namespace fatlin::linset {

using gf::Elem;
using gf::Field;

inline constexpr std::uint64_t kDefaultCap = 1ULL << 24;

/// Scales v so that its first nonzero coordinate is 1; throws on v = 0.
Vec normalize_point(const Field& F, Vec v);

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept;
};

/// dim_{F_q}(<v>_{F_{q^n}} ∩ U); zero when the point is not in L_U.
unsigned point_weight(const Subspace& U, const Vec& v);

/// dim_{F_q}(<v>_{F_{q^t}} ∩ U) for t | n.
unsigned subfield_line_weight(const Subspace& U, const Vec& v, unsigned t);

struct EnumOptions {
  std::uint64_t cap = kDefaultCap;
  /// Worker threads; 0 means hardware concurrency.
  unsigned jobs = 0;
};

unsigned resolve_jobs(unsigned jobs);

enum class Kind { scattered, regular_fat, fat_irregular };

std::string kind_name(Kind k);

struct Classification {
  Kind kind = Kind::scattered;
  /// regular_fat: number of heavy points and their weight.
  std::uint64_t r = 0;
  unsigned i = 0;
  bool club = false;
  /// fat_irregular: every point is heavy, so the regular-fat definition's
  /// weight-one requirement fails.
  bool no_weight_one = false;
  /// Heavy weight -> count, for every kind.
  std::map<unsigned, std::uint64_t> heavy;
};

Classification classify(const std::map<unsigned, std::uint64_t>& spectrum);

struct SpectrumReport {
  std::map<unsigned, std::uint64_t> spectrum;
  std::size_t rho = 0;
  std::size_t k = 0;
  unsigned n = 0;
  std::uint64_t q = 0;
  Classification classification;
  /// Canonical points of weight > 1, ascending.
  std::vector<Vec> heavy_points;
  /// Weight of each heavy point, aligned with heavy_points.
  std::vector<unsigned> heavy_weights;
  bool vector_identity = false;
  /// Counted weights agree with the linear-algebra weights on every heavy
  /// point and on the points spanned by the basis vectors.
  bool weights_cross_checked = false;
  /// regular_fat only: |L_U| equals the size formula.
  std::optional<bool> size_formula_ok;
  std::map<unsigned, bool> partially_scattered;
  std::optional<bool> heavy_points_subgeometry;

  std::uint64_t size() const;
};

/// Enumerates the q^rho - 1 nonzero vectors of U grouped into points.
SpectrumReport weight_spectrum(const Subspace& U, const EnumOptions& opts = {});

/// Every point of L_U with its weight, canonical coordinates ascending.
std::vector<std::pair<Vec, unsigned>> point_weights(const Subspace& U, const EnumOptions& opts = {});

/// (q^rho - 1 - r(q^i - q)) / (q - 1); throws InvalidInput if negative or
/// not integral.
BigInt size_formula(std::uint64_t q, unsigned rho, std::uint64_t r, unsigned i);

/// True iff U's linear set has no F_q-point of U with an F_{q^t}-line meeting
/// U in dimension > 1.
bool is_partially_scattered(const Subspace& U, unsigned t, const EnumOptions& opts = {});

/// Heavy points are exactly PG(k-1, q). Requires a regular_fat report (or an
/// all-heavy set of uniform weight).
bool heavy_points_subgeometry(const SpectrumReport& report, const Subspace& U);

struct Rank2iReport {
  bool applicable = false;
  std::string reason;
  std::uint64_t r = 0;
  unsigned i = 0;
  /// S = F_{q^j}, j counted over F_q.
  unsigned subfield_degree = 0;
  bool r_matches = false;
  bool heavy_points_match = false;
  /// r <= 2 or r = q^j + 1 with j | n.
  bool statement_holds = false;
};

/// For L_U in PG(1, q^n) of rank 2i with r > 2 heavy points of weight i,
/// including (1:0), (0:1), (1:1): finds S = {b : b T ⊆ T} and checks
/// r = |S| + 1 and that the heavy points are (0:1) and (1:α), α ∈ S.
Rank2iReport rank2i_structure(const Subspace& U, const EnumOptions& opts = {});

}  // namespace fatlin::linset
