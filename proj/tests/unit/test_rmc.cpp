#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlin/error.hpp"
#include "fatlin/families.hpp"
#include "fatlin/linpoly.hpp"
#include "fatlin/rmc.hpp"

using namespace fatlin;
using gf::Elem;
using gf::Field;
using linalg::Vec;

namespace {

// Ordered independent h-tuples of F_q^r divided by |GL(h, q)|, for h <= 2.
BigInt count_subspaces(unsigned r, unsigned h, std::uint64_t q) {
  const std::uint64_t total = num::ipow(q, r);
  auto vec = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> v(r);
    for (auto& c : v) {
      c = idx % q;
      idx /= q;
    }
    return v;
  };
  auto proportional = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::uint64_t c = 0; c < q; ++c) {
      bool same = true;
      for (unsigned j = 0; j < r; ++j) same = same && b[j] == (c * a[j]) % q;
      if (same) return true;
    }
    return false;
  };
  std::uint64_t tuples = 0;
  if (h == 1) tuples = total - 1;
  for (std::uint64_t a = 1; h == 2 && a < total; ++a)
    for (std::uint64_t b = 1; b < total; ++b) tuples += !proportional(vec(a), vec(b));
  const std::uint64_t gl = h == 1 ? q - 1 : (q * q - 1) * (q * q - q);
  return tuples / gl;
}

void check_distribution_from_spectrum(const Subspace& U) {
  const Field& F = U.field();
  const auto rep = linset::weight_spectrum(U);
  const auto C = rmc::code_of_dual(U);
  const auto dist = rmc::rank_distribution(C);
  rmc::RankDistribution expected(F.n() + 1, 0);
  expected[0] = 1;
  BigInt covered = 0;
  for (auto [w, count] : rep.spectrum) {
    expected[F.n() - w] += BigInt(count) * (F.order() - 1);
    covered += BigInt(count) * (F.order() - 1);
  }
  expected[F.n()] += num::big_pow(F.q(), F.n() * 2) - 1 - covered;
  CHECK(dist.A == expected);
  CHECK(dist.hyperplane_spot_checks.value_or(true));
}

}  // namespace

TEST_CASE("Gaussian binomials") {
  CHECK(rmc::gaussian_binom(5, 0, 3) == 1);
  CHECK(rmc::gaussian_binom(2, 1, 3) == count_subspaces(2, 1, 3));
  CHECK(rmc::gaussian_binom(4, 2, 3) == count_subspaces(4, 2, 3));
  CHECK(rmc::gaussian_binom(4, 2, 3) == 130);
  CHECK(rmc::gaussian_binom(2, 3, 3) == 0);
}

TEST_CASE("rank weight") {
  auto F = Field::make(2, 1, 3);
  CHECK(rmc::rank_weight(*F, Vec{F->zero(), F->zero()}) == 0);
  CHECK(rmc::rank_weight(*F, Vec{F->one(), F->one(), F->one()}) == 1);
  CHECK(rmc::rank_weight(*F, Vec{F->one(), F->omega(), F->omega_pow(2)}) == 3);
}

TEST_CASE("trace duality") {
  auto F = Field::make(3, 1, 4);
  const auto U = linpoly::graph_subspace(linpoly::trace_poly(F));
  const auto D = rmc::perp_prime(U);
  CHECK(D.rho() + U.rho() == 8);
  CHECK(rmc::perp_prime(D).same_span(U));

  // An F_{q^n}-line <(1, a)>: its trace dual is the F_{q^n}-line <(-a, 1)>.
  const Elem a = F->omega_pow(5);
  std::vector<Vec> line, orth;
  for (auto b : F->power_basis()) {
    line.push_back(Vec{b, F->mul(a, b)});
    orth.push_back(Vec{F->mul(F->neg(a), b), b});
  }
  CHECK(rmc::perp_prime(Subspace(F, 2, line)).same_span(Subspace(F, 2, orth)));
}

TEST_CASE("trace club code over F_8") {
  auto F = Field::make(2, 1, 3);
  const auto U = linpoly::graph_subspace(linpoly::trace_poly(F));
  const auto C = rmc::code_of_dual(U);
  CHECK(C.N == 3);
  CHECK(C.k == 2);
  CHECK(C.nondegenerate);
  const auto A = rmc::rank_distribution(C).A;
  CHECK(A == rmc::RankDistribution{1, 7, 28, 28});
  CHECK(A == rmc::predicted_distribution(2, 3, 2, 3, 1, 2, 5));
  const auto B = rmc::macwilliams_transform(A, 3, 3, 2, 2);
  CHECK(B[0] == 1);
  CHECK(B[1] == 0);
  CHECK(rmc::dual_distribution_brute(C) == B);
  CHECK(rmc::rho_bound_check(3, 2, 2, 3) == true);
  CHECK(rmc::rho_bound_check(3, 2, 2, 4) == std::nullopt);

  const auto rep = rmc::code_report(U);
  CHECK(rep.d == 1);
  CHECK(rep.three_weight_match == true);
  CHECK(rep.dual_brute_match == true);
  CHECK(rep.dual_weight_relation == true);
  CHECK(rep.r_bound_ok == true);
}

TEST_CASE("predicted distributions") {
  const auto A = rmc::predicted_distribution(3, 6, 2, 6, 4, 3, 316);
  CHECK(A[3] == 2912);
  CHECK(A[5] == 227136);
  CHECK(A[6] == 301392);
  const auto S = rmc::predicted_distribution(3, 4, 2, 4, 0, 0, 40);
  CHECK(S[3] == 40 * 80);
  CHECK(S[2] == 0);
  CHECK_THROWS_AS(rmc::predicted_distribution(3, 6, 2, 6, 4, 1, 316), InvalidInput);
}

TEST_CASE("code distribution follows the point weights") {
  auto F = Field::make(3, 1, 6);
  const auto w = families::auto_w(*F, 3);
  const auto raw = families::construct_T1(
      F, families::T1Params{1, w, families::subfield_fq_basis(*F, 3), 2}, false);
  check_distribution_from_spectrum(raw.subspace);
  const auto C = rmc::code_of_dual(raw.subspace);
  CHECK(C.N == 6);
  CHECK(rmc::dual_weight_relation(raw.subspace, rmc::perp_prime(raw.subspace)));
  check_distribution_from_spectrum(linpoly::graph_subspace(linpoly::trace_poly(Field::make(3, 1, 4))));
}

TEST_CASE("T2 code over F_64") {
  auto F = Field::make(2, 1, 6);
  const auto c = families::e_components(*F, 3, 2);
  const auto b = families::construct_T2(
      F, families::T2Params{1, c.eta, families::subfield_fq_basis(*F, 2), 2, 3}, false);
  const auto rep = rmc::code_report(b.subspace);
  CHECK(rep.spectrum.classification.kind == linset::Kind::regular_fat);
  CHECK(rep.three_weight_match == true);
  CHECK(rep.macwilliams_integral);
  CHECK(rep.B1_zero);
  CHECK(rep.B_sum_ok);
  CHECK(rep.singleton);
  CHECK(rep.min_distance_ok);
  CHECK(rep.r_bound_ok == true);
}

TEST_CASE("bounds") {
  CHECK(rmc::singleton_check(6, 2, 3, 6));
  CHECK(rmc::singleton_check(6, 2, 6, 6) == false);
  CHECK(rmc::rho_bound_check(6, 2, 3, 6) == true);
  CHECK(rmc::rho_bound_check(6, 2, 3, 7) == std::nullopt);
  CHECK(rmc::r_lower_bound(3, 6, 2, 3, 7) == BigRational(88088, 9464));
  CHECK(rmc::r_lower_bound(3, 6, 2, 3, 6) == 0);
  CHECK_THROWS_AS(rmc::r_lower_bound(3, 6, 2, 1, 6), InvalidInput);
}

TEST_CASE("a full line in U makes the dual degenerate") {
  auto F = Field::make(3, 1, 3);
  std::vector<Vec> basis;
  for (auto b : F->power_basis()) basis.push_back(Vec{b, F->zero()});
  basis.push_back(Vec{F->zero(), F->one()});
  CHECK_THROWS_AS(rmc::code_of_dual(Subspace(F, 2, basis)), InvalidInput);
}

TEST_CASE("MacWilliams rejects inconsistent input") {
  CHECK_THROWS_AS(rmc::macwilliams_transform({1, 1, 0, 0}, 3, 3, 2, 2), CheckFailure);
}
