#include "fatlin/rmc.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "fatlin/error.hpp"

namespace fatlin::rmc {

using linalg::Vec;

namespace {

BigRational q_pow(std::uint64_t q, long e) {
  BigRational r = 1;
  for (long j = 0; j < std::labs(e); ++j) r *= q;
  return e < 0 ? 1 / r : r;
}

Vec codeword(const Field& F, const linalg::ElemMatrix& G, const Vec& x) {
  Vec c(G.empty() ? 0 : G[0].size(), F.zero());
  for (std::size_t j = 0; j < G.size(); ++j) {
    if (x[j] == F.zero()) continue;
    for (std::size_t l = 0; l < c.size(); ++l) c[l] = F.add(c[l], F.mul(x[j], G[j][l]));
  }
  return c;
}

/// x as the base-(order) digits of idx.
Vec decode(std::uint64_t idx, std::uint64_t order, std::size_t k) {
  Vec x(k);
  for (auto& c : x) {
    c = Elem{idx % order};
    idx /= order;
  }
  return x;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t j = 0; j < e; ++j) {
    if (r > cap / base) throw CapExceeded("enumeration exceeds the cap of " + std::to_string(cap));
    r *= base;
  }
  return r;
}

json big_to_json(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(x);
  return x.str();
}

json dist_to_json(const RankDistribution& d) {
  json j = json::array();
  for (const auto& x : d) j.push_back(big_to_json(x));
  return j;
}

std::string rational_str(const BigRational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace

Subspace perp_prime(const Subspace& U) {
  const Field& F = U.field();
  const auto beta = F.power_basis();
  const std::size_t k = U.k(), n = beta.size();
  linalg::ElemMatrix M;
  for (const auto& u : U.basis()) {
    Vec row;
    for (std::size_t j = 0; j < k; ++j)
      for (auto b : beta) row.push_back(F.rel_trace(F.mul(u[j], b), F.degree(), F.h()));
    M.push_back(std::move(row));
  }
  std::vector<Vec> basis;
  for (const auto& c : linalg::nullspace(F, M, n * k)) {
    Vec v(k, F.zero());
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < n; ++l) v[j] = F.add(v[j], F.mul(c[j * n + l], beta[l]));
    basis.push_back(std::move(v));
  }
  if (basis.size() + U.rho() != n * k) throw CheckFailure("dim U + dim U^perp' != nk");
  return Subspace(U.field_ptr(), k, std::move(basis));
}

RankCode code_of_dual(const Subspace& U) {
  const Field& F = U.field();
  const auto D = perp_prime(U);
  RankCode C;
  C.field = U.field_ptr();
  C.N = D.rho();
  C.k = U.k();
  C.G.assign(C.k, Vec(C.N, F.zero()));
  for (std::size_t c = 0; c < C.N; ++c)
    for (std::size_t j = 0; j < C.k; ++j) C.G[j][c] = D.basis()[c][j];
  if (linalg::rank(F, C.G) != C.k)
    throw InvalidInput("U^perp' does not span F_{q^n}^k: L_U has a point of weight n");
  std::vector<Vec> cols(D.basis());
  C.nondegenerate = linalg::fq_rank(F, cols) == C.N;
  return C;
}

unsigned rank_weight(const Field& F, const Vec& v) {
  return static_cast<unsigned>(linalg::fq_rank_scalars(F, v));
}

DistributionResult rank_distribution(const RankCode& C, const linset::EnumOptions& opts) {
  const Field& F = *C.field;
  const std::uint64_t total = checked_pow(F.order(), C.k, opts.cap);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(linset::resolve_jobs(opts.jobs), total));
  std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>(F.n() + 1, 0));
  auto work = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
    for (std::uint64_t idx = begin; idx < end; ++idx)
      ++parts[w][rank_weight(F, codeword(F, C.G, decode(idx, F.order(), C.k)))];
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  DistributionResult out;
  out.A.assign(F.n() + 1, 0);
  for (const auto& p : parts)
    for (std::size_t j = 0; j < p.size(); ++j) out.A[j] += p[j];

  // w(xG) = N - dim(U' ∩ x^⊥), U' the column space.
  if (num::big_pow(F.q(), static_cast<unsigned>(C.N)) <= (1U << 16)) {
    std::vector<Vec> cols(C.N, Vec(C.k));
    for (std::size_t c = 0; c < C.N; ++c)
      for (std::size_t j = 0; j < C.k; ++j) cols[c][j] = C.G[j][c];
    const Subspace Up(C.field, C.k, cols);
    std::vector<Vec> samples;
    samples.push_back(decode(1, F.order(), C.k));
    samples.push_back(Vec(C.k, F.one()));
    Vec mixed(C.k, F.zero());
    for (std::size_t j = 0; j < C.k; ++j) mixed[j] = F.omega_pow(j);
    samples.push_back(mixed);
    bool ok = true;
    for (const auto& x : samples) {
      std::uint64_t hits = 0;
      Up.for_each_vector(0, F.q(), [&](const Vec& v) { hits += linalg::dot(F, x, v) == F.zero(); });
      unsigned dim = 0;
      for (std::uint64_t h = hits; h > 1; h /= F.q()) ++dim;
      ok = ok && C.N - dim == rank_weight(F, codeword(F, C.G, x));
    }
    out.hyperplane_spot_checks = ok;
  }
  return out;
}

RankDistribution predicted_distribution(std::uint64_t q, unsigned n, std::size_t k, std::size_t rho,
                                        std::uint64_t r, unsigned i, std::uint64_t size) {
  (void)rho;
  if (r > 0 && (i < 2 || i >= n)) throw InvalidInput("regular fat parameters need 2 <= i < n");
  const BigInt qn1 = num::big_pow(q, n) - 1;
  RankDistribution A(n + 1, 0);
  A[0] = 1;
  if (r > 0) A[n - i] += BigInt(r) * qn1;
  A[n - 1] += (BigInt(size) - r) * qn1;
  A[n] += num::big_pow(q, static_cast<unsigned>(n * k)) - 1 - BigInt(size) * qn1;
  for (const auto& a : A)
    if (a < 0) throw InvalidInput("parameters give a negative codeword count");
  return A;
}

BigInt gaussian_binom(unsigned r, unsigned h, std::uint64_t q) {
  if (h > r) return 0;
  BigInt num = 1, den = 1;
  for (unsigned j = 0; j < h; ++j) {
    num *= num::big_pow(q, r - j) - 1;
    den *= num::big_pow(q, h - j) - 1;
  }
  return num / den;
}

RankDistribution macwilliams_transform(const RankDistribution& A, std::size_t N, unsigned n, std::size_t k,
                                       std::uint64_t q) {
  if (A.size() != n + 1) throw InvalidInput("distribution must have n + 1 entries");
  RankDistribution B(n + 1, 0);
  for (unsigned nu = 0; nu <= n; ++nu) {
    BigInt lhs = 0;
    for (unsigned j = 0; j + nu <= n; ++j) lhs += A[j] * gaussian_binom(n - j, nu, q);
    BigRational rest = BigRational(lhs) * q_pow(q, static_cast<long>(N * nu) - static_cast<long>(n * k));
    for (unsigned j = 0; j < nu; ++j) rest -= BigRational(B[j] * gaussian_binom(n - j, nu - j, q));
    if (denominator(rest) != 1 || rest < 0)
      throw CheckFailure("MacWilliams gives B_" + std::to_string(nu) + " = " + rational_str(rest));
    B[nu] = numerator(rest);
  }
  return B;
}

std::optional<RankDistribution> dual_distribution_brute(const RankCode& C, std::uint64_t limit) {
  const Field& F = *C.field;
  const auto kernel = linalg::nullspace(F, C.G, C.N);
  std::uint64_t total = 0;
  try {
    total = checked_pow(F.order(), kernel.size(), limit);
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
  RankDistribution B(F.n() + 1, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Vec x = decode(idx, F.order(), kernel.size());
    Vec y(C.N, F.zero());
    for (std::size_t j = 0; j < kernel.size(); ++j)
      for (std::size_t l = 0; l < C.N; ++l) y[l] = F.add(y[l], F.mul(x[j], kernel[j][l]));
    B[rank_weight(F, y)] += 1;
  }
  return B;
}

bool singleton_check(std::size_t N, std::size_t k, unsigned d, unsigned n) {
  const long lo = static_cast<long>(std::min<std::size_t>(N, n));
  const long hi = static_cast<long>(std::max<std::size_t>(N, n));
  return static_cast<long>(n * k) <= hi * (lo - static_cast<long>(d) + 1);
}

std::optional<bool> rho_bound_check(unsigned n, std::size_t k, unsigned i, std::size_t rho) {
  if (i >= n || rho + n > n * k) return std::nullopt;
  return rho * (i + 1) <= n * k * i;
}

BigRational r_lower_bound(std::uint64_t q, unsigned n, std::size_t k, unsigned i, std::size_t rho) {
  if (i < 2) throw InvalidInput("r bound needs i >= 2");
  if (i >= n) throw InvalidInput("r bound needs i < n");
  const BigRational top = (q_pow(q, 2 * static_cast<long>(rho) - static_cast<long>(n * k)) - 1) *
                          BigRational(gaussian_binom(n, 2, q));
  return top / BigRational((num::big_pow(q, n) - 1) * gaussian_binom(i, 2, q));
}

bool dual_weight_relation(const Subspace& U, const Subspace& U_perp) {
  const Field& F = U.field();
  if (U.k() != 2) throw InvalidInput("dual weight relation is checked for k = 2");
  const long shift = static_cast<long>(F.n() * 2) - static_cast<long>(U.rho()) - static_cast<long>(F.n());
  auto holds = [&](Elem a, Elem b) {
    const long w = linset::point_weight(U, Vec{a, b});
    const long wp = linset::point_weight(U_perp, Vec{b, F.neg(a)});
    return wp == shift + w;
  };
  if (!holds(F.zero(), F.one())) return false;
  for (std::uint64_t x = 0; x < F.order(); ++x)
    if (!holds(F.one(), Elem{x})) return false;
  return true;
}

CodeReport code_report(const Subspace& U, const linset::EnumOptions& opts) {
  const Field& F = U.field();
  CodeReport r;
  r.spectrum = linset::weight_spectrum(U, opts);
  const auto& cl = r.spectrum.classification;
  const unsigned n = F.n();
  r.n = n;
  const auto C = code_of_dual(U);
  r.N = C.N;
  r.k = C.k;

  if (cl.kind == linset::Kind::regular_fat && cl.i < n)
    r.predicted = predicted_distribution(F.q(), n, C.k, U.rho(), cl.r, cl.i, r.spectrum.size());
  else if (cl.kind == linset::Kind::scattered)
    r.predicted = predicted_distribution(F.q(), n, C.k, U.rho(), 0, 0, r.spectrum.size());

  try {
    auto dist = rank_distribution(C, opts);
    r.A = std::move(dist.A);
    r.A_enumerated = true;
    r.hyperplane_spot_checks = dist.hyperplane_spot_checks;
    if (r.predicted) r.three_weight_match = r.A == *r.predicted;
  } catch (const CapExceeded&) {
    if (!r.predicted) throw;
    r.A = *r.predicted;
  }

  r.d = 0;
  for (unsigned j = 1; j <= n && r.d == 0; ++j)
    if (r.A[j] > 0) r.d = j;
  const unsigned max_weight = r.spectrum.spectrum.rbegin()->first;
  r.min_distance_ok = r.d == n - max_weight;

  try {
    r.B = macwilliams_transform(r.A, C.N, n, C.k, F.q());
    r.macwilliams_integral = true;
    BigInt sum = 0;
    for (const auto& b : r.B) sum += b;
    r.B_sum_ok = sum == num::big_pow(F.q(), static_cast<unsigned>(n * (C.N - C.k)));
    r.B1_zero = r.B.size() > 1 && r.B[1] == 0;
  } catch (const CheckFailure&) {
    r.macwilliams_integral = false;
  }
  if (const auto brute = dual_distribution_brute(C)) r.dual_brute_match = r.macwilliams_integral && *brute == r.B;

  r.singleton = singleton_check(C.N, C.k, r.d, n);
  if (cl.kind == linset::Kind::regular_fat) {
    r.rho_bound = rho_bound_check(n, C.k, cl.i, U.rho());
    if (cl.i >= 2 && cl.i < n) {
      r.r_bound = r_lower_bound(F.q(), n, C.k, cl.i, U.rho());
      r.r_bound_ok = BigRational(cl.r) >= *r.r_bound;
    }
  }
  if (U.k() == 2 && F.order() <= opts.cap) r.dual_weight_relation = dual_weight_relation(U, perp_prime(U));
  return r;
}

json code_report_to_json(const CodeReport& r) {
  json checks{{"macwilliams_integral", r.macwilliams_integral},
              {"B1_zero", r.B1_zero},
              {"B_sum", r.B_sum_ok},
              {"singleton", r.singleton},
              {"min_distance", r.min_distance_ok},
              {"A_enumerated", r.A_enumerated}};
  auto opt = [&](const char* key, const std::optional<bool>& v) {
    checks[key] = v ? json(*v) : json(nullptr);
  };
  opt("three_weight_match", r.three_weight_match);
  opt("hyperplane_spot_checks", r.hyperplane_spot_checks);
  opt("dual_brute_match", r.dual_brute_match);
  opt("rho_bound", r.rho_bound);
  opt("dual_weight_relation", r.dual_weight_relation);
  if (r.r_bound)
    checks["r_bound"] = {{"bound", rational_str(*r.r_bound)},
                         {"r", r.spectrum.classification.r},
                         {"ok", r.r_bound_ok.value_or(false)}};
  else
    checks["r_bound"] = nullptr;
  json j{{"params", {r.N, r.k, r.d}}, {"A", dist_to_json(r.A)}, {"B", dist_to_json(r.B)}, {"checks", checks}};
  if (r.predicted) j["predicted"] = dist_to_json(*r.predicted);
  return j;
}

}  // namespace fatlin::rmc
