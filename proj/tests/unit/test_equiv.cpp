#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fatlin/equiv.hpp"
#include "fatlin/error.hpp"

using namespace fatlin;
using namespace fatlin::families;
using equiv::Result;
using gf::Elem;
using gf::Field;

namespace {

std::vector<Elem> twist(const Field& F, unsigned e, Elem c, const std::vector<Elem>& xs, long s = 0) {
  std::vector<Elem> out;
  for (auto x : xs) out.push_back(F.mul(c, F.frobenius(F.frob(x, e), s, F.h())));
  return out;
}

Built t1(const gf::FieldPtr& F, long s, Elem w, std::vector<Elem> I) {
  return construct_T1(F, T1Params{s, w, std::move(I), 2}, false);
}

void check_symmetric(const Built& a, const Built& b, Result expected) {
  const auto v1 = equiv::check_equiv(a.descriptor, b.descriptor);
  const auto v2 = equiv::check_equiv(b.descriptor, a.descriptor);
  CHECK(equiv::result_name(v1.result) == equiv::result_name(expected));
  CHECK(v1.result == v2.result);
  if (v1.result == Result::equivalent) {
    REQUIRE(v1.witness.has_value());
    CHECK(v1.witness_verified);
    const auto img = equiv::apply_semilinear(v1.witness->matrix, v1.witness->iota_exp, a.subspace);
    CHECK(img.same_span(b.subspace));
    CHECK_FALSE(equiv::invariant_distinguish(a.subspace, b.subspace));
  }
}

}  // namespace

TEST_CASE("identical T1 descriptors are equivalent under the identity") {
  auto F = Field::make(3, 1, 6);
  const auto a = t1(F, 1, auto_w(*F, 3), subfield_fq_basis(*F, 3));
  const auto v = equiv::check_equiv_T1(a.descriptor, a.descriptor);
  CHECK(v.result == Result::equivalent);
  CHECK(v.witness->iota_exp == 0);
  CHECK(v.witness->scalar == F->one());
  CHECK(equiv::verdict_to_json(*F, v)["checks"]["witness_verified"] == true);
}

TEST_CASE("T1 clause (ii) recipe pair") {
  auto F = Field::make(3, 1, 6);
  const Elem w = auto_w(*F, 3);
  const auto I = subfield_fq_basis(*F, 3);
  const Elem theta = F->subfield_generator(3);
  const unsigned e = 1;
  const Elem wt = F->div(F->frob(w, e), F->pow(theta, 2));
  check_symmetric(t1(F, 1, w, I), t1(F, 1, wt, twist(*F, e, theta, I)), Result::equivalent);
}

TEST_CASE("T1 clause (iii) recipe pair") {
  auto F = Field::make(3, 1, 6);
  const unsigned t = 3, e = 1;
  const long s = 1;
  const Elem w = auto_w(*F, t);
  const Elem w0 = F->omega_pow(3 * 14);
  REQUIRE(in_trace_zero(*F, w0, t));
  const Elem wi = F->frob(w, e);
  const std::uint64_t q2 = 9;
  // w0^{1 - q^{t-s}} = (w^iota)^{q^{t-s}} w~
  const Elem wt = F->div(F->inv(F->pow(w0, q2 - 1)), F->pow(wi, q2));
  CHECK(in_trace_zero(*F, wt, t));
  const auto I = subfield_fq_basis(*F, t);
  check_symmetric(t1(F, s, w, I), t1(F, t - s, wt, twist(*F, e, F->mul(wi, w0), I, s)), Result::equivalent);
}

TEST_CASE("T1 clause (i) pair is inequivalent") {
  auto F = Field::make(3, 1, 10);
  const Elem w = auto_w(*F, 5);
  const auto I = subfield_fq_basis(*F, 5);
  const auto a = t1(F, 1, w, I);
  const auto b = t1(F, 2, w, I);
  const auto v = equiv::check_equiv_T1(a.descriptor, b.descriptor);
  CHECK(v.result == Result::inequivalent_by_criterion);
  CHECK(v.criterion_trace.find("clause (i)") == 0);
  CHECK(equiv::check_equiv_T1(b.descriptor, a.descriptor).result == v.result);
}

TEST_CASE("T1 clause (i) with a proper I is undecided or screened") {
  auto F = Field::make(3, 1, 10);
  const Elem w = auto_w(*F, 5);
  const auto I = subfield_fq_basis(*F, 5);
  const std::vector<Elem> J(I.begin(), I.begin() + 3);
  const auto v = equiv::check_equiv_T1(t1(F, 1, w, J).descriptor, t1(F, 2, w, J).descriptor);
  CHECK((v.result == Result::undecided || v.result == Result::inequivalent_by_invariant));
}

TEST_CASE("T1 with different dim I differ by invariants") {
  auto F = Field::make(3, 1, 6);
  const Elem w = auto_w(*F, 3);
  const auto I = subfield_fq_basis(*F, 3);
  const auto v = equiv::check_equiv_T1(t1(F, 1, w, I).descriptor, t1(F, 1, w, {I[0], I[1]}).descriptor);
  CHECK(v.result == Result::inequivalent_by_invariant);
  CHECK(equiv::invariant_distinguish(t1(F, 1, w, I).subspace, t1(F, 1, w, {I[0], I[1]}).subspace));
}

TEST_CASE("T2 clause (ii) recipe pair") {
  auto F = Field::make(5, 1, 6);
  const auto c = e_components(*F, 3, 2);
  const auto I = subfield_fq_basis(*F, 2);
  const Elem theta = F->subfield_generator(2);
  auto mk = [&](Elem eta, std::vector<Elem> J) {
    return construct_T2(F, T2Params{1, eta, std::move(J), 2, 3}, false);
  };
  const auto a = mk(c.eta, I);
  check_symmetric(a, a, Result::equivalent);
  check_symmetric(a, mk(F->mul(F->pow(theta, 4), c.eta), twist(*F, 0, F->inv(theta), I)), Result::equivalent);
}

TEST_CASE("T2 automorphisms moving E_1 elsewhere contribute nothing") {
  auto F = Field::make(2, 1, 21);
  const auto c = e_components(*F, 7, 3);
  const auto I = subfield_fq_basis(*F, 3);
  auto mk = [&](Elem eta) { return construct_T2(F, T2Params{1, eta, I, 2, 7}, false); };
  const auto a = mk(c.eta);
  const auto b = mk(F->frob(c.eta, 3));
  const auto v = equiv::check_equiv_T2(a.descriptor, b.descriptor);
  REQUIRE(v.result == Result::equivalent);
  CHECK(v.witness->iota_exp % 3 == 0);
}

TEST_CASE("semilinear images keep the spectrum") {
  auto F = Field::make(3, 1, 6);
  const auto a = t1(F, 1, auto_w(*F, 3), subfield_fq_basis(*F, 3));
  const auto same = equiv::apply_semilinear(linalg::identity(*F, 2), 0, a.subspace);
  CHECK(same.same_span(a.subspace));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    linalg::ElemMatrix A(2, linalg::Vec(2));
    do {
      for (auto& row : A)
        for (auto& x : row) x = Elem{rng() % F->order()};
    } while (linalg::rank(*F, A) < 2);
    const auto img = equiv::apply_semilinear(A, static_cast<unsigned>(rng() % 6), a.subspace);
    CHECK_FALSE(equiv::invariant_distinguish(a.subspace, img));
  }
  linalg::ElemMatrix singular(2, linalg::Vec(2, F->one()));
  CHECK_THROWS_AS(equiv::apply_semilinear(singular, 0, a.subspace), InvalidInput);
}

TEST_CASE("scattered set and club are distinguished") {
  auto F = Field::make(3, 1, 4);
  const auto club = construct_trace_club(F, 1, 0).subspace;
  const auto scat = linpoly::graph_subspace(linpoly::LinearizedPoly::monomial(F, 1, F->one()));
  CHECK(equiv::invariant_distinguish(club, scat));
}

TEST_CASE("mixed families are rejected") {
  auto F = Field::make(5, 1, 6);
  const auto a = construct_T1(F, T1Params{1, auto_w(*F, 3), subfield_fq_basis(*F, 3), 2});
  const auto b = construct_lp(F, F->omega(), 1);
  CHECK_THROWS_AS(equiv::check_equiv_T1(a.descriptor, b.descriptor), InvalidInput);
}
