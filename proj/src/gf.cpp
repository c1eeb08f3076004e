#include "fatlin/gf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fatlin/error.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin::gf {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = num::invmod(f.back() % p, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = num::mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j) {
      const std::uint64_t sub = num::mulmod(c, f[j], p);
      a[shift + j] = (a[shift + j] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + num::mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i] % p) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{p^k} mod f by k successive p-th powers.
Poly x_pow_p_iter(const Poly& f, std::uint64_t p, unsigned k) {
  Poly y = poly_mod(Poly{0, 1}, f, p);
  for (unsigned i = 0; i < k; ++i) y = poly_powmod(y, p, f, p);
  return y;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint64_t>& monic, std::uint64_t p) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const auto d = static_cast<unsigned>(monic.size() - 1);
  if (d == 1) return true;
  const Poly x = poly_mod(Poly{0, 1}, monic, p);
  if (poly_sub(x_pow_p_iter(monic, p, d), x, p) != Poly{}) return false;
  for (std::uint64_t r : num::prime_factors(d)) {
    Poly g = poly_gcd(monic, poly_sub(x_pow_p_iter(monic, p, d / static_cast<unsigned>(r)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> least_irreducible(std::uint64_t p, unsigned degree) {
  const std::uint64_t count = num::ipow(p, degree);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(degree + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[degree] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

FieldPtr Field::make(std::uint64_t p, unsigned h, unsigned n) {
  if (!num::is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  if (h == 0 || n == 0) throw InvalidInput("h and n must be positive");
  if (static_cast<std::uint64_t>(h) * n > kMaxDegree)
    throw InvalidInput("field degree h*n exceeds " + std::to_string(kMaxDegree));
  return with_modulus(p, h, n, least_irreducible(p, h * n));
}

FieldPtr Field::with_modulus(std::uint64_t p, unsigned h, unsigned n,
                             std::vector<std::uint64_t> modulus) {
  if (!num::is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  if (h == 0 || n == 0) throw InvalidInput("h and n must be positive");
  if (static_cast<std::uint64_t>(h) * n > kMaxDegree)
    throw InvalidInput("field degree h*n exceeds " + std::to_string(kMaxDegree));
  if (modulus.size() != static_cast<std::size_t>(h) * n + 1)
    throw InvalidInput("modulus must have degree h*n");
  for (auto c : modulus)
    if (c >= p) throw InvalidInput("modulus coefficient out of range");
  if (!is_irreducible(modulus, p)) throw InvalidInput("modulus is not monic irreducible");
  return FieldPtr(new Field(p, h, n, std::move(modulus)));
}

Field::Field(std::uint64_t p, unsigned h, unsigned n, std::vector<std::uint64_t> modulus)
    : p_(p), h_(h), n_(n), deg_(h * n), modulus_(std::move(modulus)) {
  q_ = num::ipow(p_, h_);
  order_ = num::ipow(p_, deg_);
  if (order_ > (1ULL << 48)) throw InvalidInput("field order exceeds 2^48");
  if (deg_ >= 2 && p_ > (1ULL << 20))
    throw InvalidInput("extension fields need p < 2^20");
  group_factors_ = num::prime_factors(order_ - 1);
  find_primitive();
  build_bsgs();
  build_tables();
}

void Field::build_tables() {
  if (deg_ == 1 || order_ > kTableLimit) return;
  const std::uint64_t N = group_order();
  exp_table_.resize(2 * N);
  log_table_.assign(order_, 0);
  Elem cur = one();
  for (std::uint64_t e = 0; e < N; ++e) {
    exp_table_[e] = exp_table_[e + N] = static_cast<std::uint32_t>(cur.v);
    log_table_[cur.v] = static_cast<std::uint32_t>(e);
    cur = mul_poly(cur, omega_);
  }
}

void Field::find_primitive() {
  const std::uint64_t N = order_ - 1;
  if (N == 1) {
    omega_ = one();
    return;
  }
  for (std::uint64_t v = 2; v < order_; ++v) {
    const Elem g{v};
    bool primitive = true;
    for (std::uint64_t f : group_factors_) {
      if (pow(g, N / f) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      omega_ = g;
      return;
    }
  }
  throw Error("no primitive element found");
}

void Field::build_bsgs() {
  const std::uint64_t N = group_order();
  giant_stride_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(N))));
  if (giant_stride_ == 0) giant_stride_ = 1;
  baby_steps_.reserve(giant_stride_);
  Elem cur = one();
  for (std::uint64_t j = 0; j < giant_stride_; ++j) {
    baby_steps_.emplace(cur.v, j);
    cur = mul(cur, omega_);
  }
  giant_step_ = inv(pow(omega_, giant_stride_));
}

void Field::check_divides(unsigned deg) const {
  if (deg == 0 || deg_ % deg != 0)
    throw InvalidInput("subfield degree " + std::to_string(deg) + " does not divide " +
                       std::to_string(deg_));
}

void Field::decode(Elem x, std::uint64_t* out) const noexcept {
  std::uint64_t v = x.v;
  for (unsigned i = 0; i < deg_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
}

Elem Field::encode(const std::uint64_t* digits) const noexcept {
  std::uint64_t v = 0;
  for (unsigned i = deg_; i-- > 0;) v = v * p_ + digits[i];
  return Elem{v};
}

Elem Field::from_int(std::int64_t c) const {
  return Elem{num::mod_signed(c, p_)};
}

Elem Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != deg_) throw InvalidInput("element must have h*n coefficients");
  for (auto c : coeffs)
    if (c >= p_) throw InvalidInput("element coefficient out of range");
  return encode(coeffs.data());
}

std::vector<std::uint64_t> Field::coeffs(Elem x) const {
  std::vector<std::uint64_t> out(deg_);
  decode(x, out.data());
  return out;
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.v ^ b.v};
  if (deg_ == 1) return Elem{(a.v + b.v) % p_};
  std::uint64_t da[kMaxDegree], db[kMaxDegree];
  decode(a, da);
  decode(b, db);
  for (unsigned i = 0; i < deg_; ++i) {
    da[i] += db[i];
    if (da[i] >= p_) da[i] -= p_;
  }
  return encode(da);
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  if (deg_ == 1) return Elem{(p_ - a.v) % p_};
  std::uint64_t da[kMaxDegree];
  decode(a, da);
  for (unsigned i = 0; i < deg_; ++i) da[i] = (p_ - da[i]) % p_;
  return encode(da);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::scale(std::uint64_t c, Elem a) const {
  c %= p_;
  if (c == 0) return zero();
  if (c == 1) return a;
  if (deg_ == 1) return Elem{num::mulmod(c, a.v, p_)};
  std::uint64_t da[kMaxDegree];
  decode(a, da);
  for (unsigned i = 0; i < deg_; ++i) da[i] = num::mulmod(c, da[i], p_);
  return encode(da);
}

Elem Field::mul(Elem a, Elem b) const {
  if (a.v == 0 || b.v == 0) return zero();
  if (deg_ == 1) return Elem{num::mulmod(a.v, b.v, p_)};
  if (!log_table_.empty()) return Elem{exp_table_[log_table_[a.v] + log_table_[b.v]]};
  return mul_poly(a, b);
}

Elem Field::mul_poly(Elem a, Elem b) const {
  std::uint64_t da[kMaxDegree], db[kMaxDegree], r[2 * kMaxDegree] = {};
  decode(a, da);
  decode(b, db);
  const unsigned D = deg_;
  // p < 2^20, D <= 64: accumulators stay below 2^47.
  for (unsigned i = 0; i < D; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < D; ++j) r[i + j] += da[i] * db[j];
  }
  for (unsigned k = 2 * D - 2; k >= D; --k) {
    const std::uint64_t c = r[k] % p_;
    if (c != 0) {
      for (unsigned j = 0; j < D; ++j) {
        if (modulus_[j] != 0) r[k - D + j] += c * (p_ - modulus_[j]);
      }
    }
    r[k] = 0;
    if (k == D) break;
  }
  for (unsigned i = 0; i < D; ++i) r[i] %= p_;
  return encode(r);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::pow_signed(Elem a, std::int64_t e) const {
  if (a == zero()) {
    if (e < 0) throw InvalidInput("negative power of zero");
    return e == 0 ? one() : zero();
  }
  return pow(a, num::mod_signed(e, group_order()));
}

Elem Field::inv(Elem a) const {
  if (a == zero()) throw InvalidInput("inverse of zero");
  if (!log_table_.empty()) {
    const std::uint32_t l = log_table_[a.v];
    return Elem{exp_table_[l == 0 ? 0 : group_order() - l]};
  }
  return pow(a, order_ - 2);
}

Elem Field::frob(Elem x, std::int64_t idx) const {
  const auto k = static_cast<unsigned>(num::mod_signed(idx, deg_));
  if (k == 0 || x.v == 0) return x;
  if (!log_table_.empty()) {
    const std::uint64_t N = group_order();
    const std::uint64_t e = num::mulmod(log_table_[x.v], num::powmod(p_, k, N), N);
    return Elem{exp_table_[e]};
  }
  for (unsigned i = 0; i < k; ++i) x = pow(x, p_);
  return x;
}

Elem Field::frobenius(Elem x, std::int64_t j, unsigned base_exp) const {
  check_divides(base_exp);
  const std::int64_t idx = static_cast<std::int64_t>(num::mod_signed(j, deg_ / base_exp)) * base_exp;
  return frob(x, idx);
}

bool Field::in_subfield(Elem x, unsigned deg) const {
  check_divides(deg);
  return frob(x, deg) == x;
}

Elem Field::rel_trace(Elem x, unsigned from_deg, unsigned to_deg) const {
  check_divides(from_deg);
  check_divides(to_deg);
  if (from_deg % to_deg != 0) throw InvalidInput("trace: to_deg must divide from_deg");
  if (!in_subfield(x, from_deg)) throw InvalidInput("trace: element outside the source subfield");
  Elem sum = zero();
  Elem cur = x;
  for (unsigned j = 0; j < from_deg / to_deg; ++j) {
    sum = add(sum, cur);
    cur = frob(cur, to_deg);
  }
  return sum;
}

Elem Field::rel_norm(Elem x, unsigned from_deg, unsigned to_deg) const {
  check_divides(from_deg);
  check_divides(to_deg);
  if (from_deg % to_deg != 0) throw InvalidInput("norm: to_deg must divide from_deg");
  if (!in_subfield(x, from_deg)) throw InvalidInput("norm: element outside the source subfield");
  Elem prod = one();
  Elem cur = x;
  for (unsigned j = 0; j < from_deg / to_deg; ++j) {
    prod = mul(prod, cur);
    cur = frob(cur, to_deg);
  }
  return prod;
}

std::uint64_t Field::discrete_log(Elem x) const {
  if (x == zero()) throw InvalidInput("discrete log of zero");
  const std::uint64_t N = group_order();
  Elem gamma = x;
  for (std::uint64_t i = 0; i <= N / giant_stride_; ++i) {
    auto it = baby_steps_.find(gamma.v);
    if (it != baby_steps_.end()) return (i * giant_stride_ + it->second) % N;
    gamma = mul(gamma, giant_step_);
  }
  throw Error("discrete log not found");  // unreachable: omega is primitive
}

std::vector<Elem> Field::power_roots(Elem c, std::int64_t e) const {
  if (c == zero()) throw InvalidInput("solve_power: c must be nonzero");
  const std::uint64_t N = group_order();
  const std::uint64_t L = discrete_log(c);
  const std::uint64_t em = num::mod_signed(e, N);
  std::uint64_t least = 0, period = 0;
  if (!num::solve_linear_congruence(em, L, N, least, period)) return {};
  std::vector<Elem> out;
  for (std::uint64_t a = least; a < N; a += period) out.push_back(omega_pow(a));
  return out;
}

std::optional<Elem> Field::solve_power(Elem c, std::int64_t e) const {
  if (c == zero()) throw InvalidInput("solve_power: c must be nonzero");
  const std::uint64_t N = group_order();
  std::uint64_t least = 0, period = 0;
  if (!num::solve_linear_congruence(num::mod_signed(e, N), discrete_log(c), N, least, period))
    return std::nullopt;
  return omega_pow(least);
}

std::vector<Elem> Field::dual_basis(std::span<const Elem> basis, unsigned deg_big,
                                    unsigned deg_small) const {
  check_divides(deg_big);
  check_divides(deg_small);
  if (deg_big % deg_small != 0) throw InvalidInput("dual_basis: degrees do not nest");
  const std::size_t e = deg_big / deg_small;
  if (basis.size() != e) throw InvalidInput("dual_basis: basis has the wrong length");
  for (Elem b : basis)
    if (!in_subfield(b, deg_big)) throw InvalidInput("dual_basis: element outside the field");

  // Gauss-Jordan on [G | I] with G_ij = Tr(b_i b_j); entries stay in the small subfield.
  std::vector<std::vector<Elem>> m(e, std::vector<Elem>(2 * e, zero()));
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j)
      m[i][j] = rel_trace(mul(basis[i], basis[j]), deg_big, deg_small);
    m[i][e + i] = one();
  }
  for (std::size_t col = 0; col < e; ++col) {
    std::size_t piv = col;
    while (piv < e && m[piv][col] == zero()) ++piv;
    if (piv == e) throw InvalidInput("dual_basis: elements are linearly dependent");
    std::swap(m[piv], m[col]);
    const Elem iv = inv(m[col][col]);
    for (auto& v : m[col]) v = mul(v, iv);
    for (std::size_t r = 0; r < e; ++r) {
      if (r == col || m[r][col] == zero()) continue;
      const Elem f = m[r][col];
      for (std::size_t c2 = 0; c2 < 2 * e; ++c2) m[r][c2] = sub(m[r][c2], mul(f, m[col][c2]));
    }
  }
  // dual_j = sum_k Ginv[k][j] b_k
  std::vector<Elem> dual(e, zero());
  for (std::size_t j = 0; j < e; ++j)
    for (std::size_t k = 0; k < e; ++k) dual[j] = add(dual[j], mul(m[k][e + j], basis[k]));
  return dual;
}

Elem Field::subfield_generator(unsigned deg) const {
  check_divides(deg);
  const std::uint64_t sub_order = num::ipow(p_, deg) - 1;
  return omega_pow(group_order() / sub_order);
}

std::vector<Elem> Field::subfield_basis(unsigned sub_deg, unsigned over_deg) const {
  check_divides(sub_deg);
  check_divides(over_deg);
  if (sub_deg % over_deg != 0) throw InvalidInput("subfield_basis: degrees do not nest");
  const Elem g = subfield_generator(sub_deg);
  std::vector<Elem> out;
  Elem cur = one();
  for (unsigned i = 0; i < sub_deg / over_deg; ++i) {
    out.push_back(cur);
    cur = mul(cur, g);
  }
  return out;
}

std::vector<Elem> Field::subfield_elements(unsigned deg) const {
  check_divides(deg);
  const std::uint64_t sub_order = num::ipow(p_, deg);
  std::vector<Elem> out{zero()};
  const Elem g = subfield_generator(deg);
  Elem cur = one();
  for (std::uint64_t i = 0; i + 1 < sub_order; ++i) {
    out.push_back(cur);
    cur = mul(cur, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> Field::power_basis() const {
  // The modulus root X is encoded as p when hn > 1.
  const Elem beta = deg_ > 1 ? Elem{p_} : neg(Elem{modulus_[0]});
  std::vector<Elem> out;
  Elem cur = one();
  for (unsigned i = 0; i < n_; ++i) {
    out.push_back(cur);
    cur = mul(cur, beta);
  }
  return out;
}

}  // namespace fatlin::gf
