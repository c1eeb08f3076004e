#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlin/error.hpp"
#include "fatlin/linalg.hpp"

using namespace fatlin;
using gf::Elem;
using gf::Field;
using linalg::Vec;

TEST_CASE("F_p rank and nullspace") {
  linalg::FpMatrix m(3, 4, 5);
  const std::uint64_t rows[3][4] = {{1, 2, 3, 4}, {0, 1, 1, 1}, {1, 0, 0, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = rows[i][j];
  CHECK(m.rank() == 3);
  const auto ns = m.nullspace();
  REQUIRE(ns.size() == 1);
  for (int i = 0; i < 3; ++i) {
    std::uint64_t s = 0;
    for (int j = 0; j < 4; ++j) s += rows[i][j] * ns[0][j];
    CHECK(s % 5 == 0);
  }
}

TEST_CASE("F_q rank over an extension of F_q") {
  auto F = Field::make(2, 2, 3);  // q = 4, F_64
  const auto fq = F->fq_elements();
  // Scalars from F_q span a 1-dimensional F_q-space.
  std::vector<Elem> s{fq[1], fq[2], fq[3]};
  CHECK(linalg::fq_rank_scalars(*F, s) == 1);
  CHECK(linalg::fq_rank_scalars(*F, F->power_basis()) == 3);
  linalg::FqSpan span(*F, 2);
  CHECK(span.insert(Vec{F->one(), F->zero()}));
  CHECK_FALSE(span.insert(Vec{fq[2], F->zero()}));
  CHECK(span.contains(Vec{fq[3], F->zero()}));
  CHECK_FALSE(span.contains(Vec{F->omega(), F->zero()}));
  CHECK(span.dim() == 1);
}

TEST_CASE("F_q coordinates") {
  auto F = Field::make(3, 2, 2);
  const auto basis = F->power_basis();
  linalg::FqCoordinates coords(*F, basis);
  for (std::uint64_t v = 0; v < F->order(); v += 3) {
    const auto c = coords.coords(Elem{v});
    Elem back = F->zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(F->in_fq(c[i]));
      back = F->add(back, F->mul(c[i], basis[i]));
    }
    CHECK(back == Elem{v});
  }
}

TEST_CASE("matrix inverse over the field") {
  auto F = Field::make(3, 1, 3);
  linalg::ElemMatrix m{{F->omega(), F->one()}, {F->one(), F->zero()}};
  const auto inv = linalg::inverse(*F, m);
  const Vec v{F->from_int(2), F->omega_pow(5)};
  CHECK(linalg::mat_vec(*F, inv, linalg::mat_vec(*F, m, v)) == v);
  linalg::ElemMatrix singular{{F->one(), F->from_int(2)}, {F->from_int(2), F->one()}};
  CHECK_THROWS_AS(linalg::inverse(*F, singular), InvalidInput);
  const auto ns = linalg::nullspace(*F, singular, 2);
  REQUIRE(ns.size() == 1);
  CHECK(linalg::mat_vec(*F, singular, ns[0]) == Vec{F->zero(), F->zero()});
}
