#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace fatlin::gf {

/// An element of the top field F_{p^{hn}}.
///
/// Stored as the base-p integer sum c_i p^i of its coefficients in the power
/// basis of the field modulus, so the encoding is a total order that matches
/// "least coefficient vector" comparisons and doubles as a hash key.
struct Elem {
  std::uint64_t v = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct ElemHash {
  std::size_t operator()(Elem e) const noexcept { return std::hash<std::uint64_t>{}(e.v); }
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Exact arithmetic in the tower F_p ⊆ F_q ⊆ F_{q^t} ⊆ F_{q^n}, q = p^h.
///
/// All arithmetic lives in the top field F_{p^{hn}}; subfields are the
/// Frobenius-fixed subsets, never separate representations. A Field is
/// immutable once built and may be shared between threads.
class Field {
 public:
  static constexpr unsigned kMaxDegree = 64;
  /// Fields up to this order multiply through exp/log tables.
  static constexpr std::uint64_t kTableLimit = 1ULL << 22;

  /// Builds F_{(p^h)^n} with the least monic irreducible modulus of degree hn
  /// (coefficients read as a base-p integer) and the least primitive element.
  static FieldPtr make(std::uint64_t p, unsigned h, unsigned n);

  /// Same, with an explicit modulus (little-endian, monic, length hn+1).
  static FieldPtr with_modulus(std::uint64_t p, unsigned h, unsigned n,
                               std::vector<std::uint64_t> modulus);

  std::uint64_t p() const noexcept { return p_; }
  unsigned h() const noexcept { return h_; }
  unsigned n() const noexcept { return n_; }
  /// Degree of the top field over F_p.
  unsigned degree() const noexcept { return deg_; }
  std::uint64_t q() const noexcept { return q_; }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t group_order() const noexcept { return order_ - 1; }
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  Elem omega() const noexcept { return omega_; }
  /// The class of an integer in the prime field.
  Elem from_int(std::int64_t c) const;
  Elem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(Elem x) const;
  bool is_valid(Elem x) const noexcept { return x.v < order_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// c * a for c an integer read modulo p.
  Elem scale(std::uint64_t c, Elem a) const;
  /// Inverse by exponentiation a^{order-2}; throws on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^e for a signed exponent; a must be nonzero when e < 0.
  Elem pow_signed(Elem a, std::int64_t e) const;
  /// omega^e.
  Elem omega_pow(std::uint64_t e) const { return pow(omega_, e % group_order()); }

  /// x^{p^idx}; idx is reduced modulo the field degree.
  Elem frob(Elem x, std::int64_t idx) const;
  /// x^{(p^base_exp)^j}. base_exp must divide hn.
  Elem frobenius(Elem x, std::int64_t j, unsigned base_exp) const;

  /// Sum of the conjugates x^{s^j}, j < from_deg/to_deg, s = p^to_deg.
  Elem rel_trace(Elem x, unsigned from_deg, unsigned to_deg) const;
  /// x^{(S-1)/(s-1)} with S = p^from_deg, s = p^to_deg.
  Elem rel_norm(Elem x, unsigned from_deg, unsigned to_deg) const;
  /// True iff x^{p^deg} = x; deg must divide hn.
  bool in_subfield(Elem x, unsigned deg) const;

  /// L in [0, order-1) with omega^L = x, by baby-step/giant-step.
  std::uint64_t discrete_log(Elem x) const;
  /// The solution of y^e = c with least exponent log(y), if one exists.
  std::optional<Elem> solve_power(Elem c, std::int64_t e) const;
  /// Every solution of y^e = c, ordered by exponent.
  std::vector<Elem> power_roots(Elem c, std::int64_t e) const;

  /// Trace-dual of an F_{p^deg_small}-basis of F_{p^deg_big}.
  std::vector<Elem> dual_basis(std::span<const Elem> basis, unsigned deg_big,
                               unsigned deg_small) const;

  /// A generator of the multiplicative group of F_{p^deg}.
  Elem subfield_generator(unsigned deg) const;
  /// Powers 1, g, ..., g^{e-1} of subfield_generator(sub_deg): a basis of
  /// F_{p^sub_deg} over F_{p^over_deg}, e = sub_deg / over_deg.
  std::vector<Elem> subfield_basis(unsigned sub_deg, unsigned over_deg) const;
  /// All elements of F_{p^deg}, ascending.
  std::vector<Elem> subfield_elements(unsigned deg) const;
  /// F_q-basis of F_{q^n}: powers of the modulus root.
  std::vector<Elem> power_basis() const;

  /// F_q = F_{p^h} shorthands.
  std::vector<Elem> fq_elements() const { return subfield_elements(h_); }
  bool in_fq(Elem x) const { return in_subfield(x, h_); }

  /// Iterates the digits of x (length hn) into out.
  void decode(Elem x, std::uint64_t* out) const noexcept;
  Elem encode(const std::uint64_t* digits) const noexcept;

 private:
  Field(std::uint64_t p, unsigned h, unsigned n, std::vector<std::uint64_t> modulus);
  void check_divides(unsigned deg) const;
  Elem mul_poly(Elem a, Elem b) const;
  void find_primitive();
  void build_bsgs();
  void build_tables();

  std::uint64_t p_;
  unsigned h_;
  unsigned n_;
  unsigned deg_;
  std::uint64_t q_;
  std::uint64_t order_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> group_factors_;
  Elem omega_{0};
  std::uint64_t giant_stride_ = 1;
  Elem giant_step_{1};
  std::unordered_map<std::uint64_t, std::uint64_t> baby_steps_;
  std::vector<std::uint32_t> exp_table_;
  std::vector<std::uint32_t> log_table_;
};

/// Deterministic irreducibility test (Rabin) for a monic polynomial over F_p.
bool is_irreducible(const std::vector<std::uint64_t>& monic, std::uint64_t p);

/// Least monic irreducible of the given degree over F_p in base-p integer order.
std::vector<std::uint64_t> least_irreducible(std::uint64_t p, unsigned degree);

}  // namespace fatlin::gf
