#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlin/error.hpp"
#include "fatlin/linpoly.hpp"
#include "fatlin/linset.hpp"

using namespace fatlin;
using gf::Elem;
using gf::Field;
using linalg::Vec;

namespace {

Subspace product(gf::FieldPtr F, const std::vector<Elem>& A, const std::vector<Elem>& B) {
  std::vector<Vec> basis;
  for (auto a : A) basis.push_back(Vec{a, F->zero()});
  for (auto b : B) basis.push_back(Vec{F->zero(), b});
  return Subspace(F, 2, std::move(basis));
}

}  // namespace

TEST_CASE("trace club in PG(1,81)") {
  auto F = Field::make(3, 1, 4);
  const auto U = linpoly::graph_subspace(linpoly::trace_poly(F));
  const auto rep = linset::weight_spectrum(U);
  CHECK(rep.spectrum == std::map<unsigned, std::uint64_t>{{1, 27}, {3, 1}});
  CHECK(rep.classification.kind == linset::Kind::regular_fat);
  CHECK(rep.classification.club);
  CHECK(rep.size() == 28);
  CHECK(rep.vector_identity);
  CHECK(rep.weights_cross_checked);
  CHECK(rep.size_formula_ok == true);
  CHECK(linset::point_weight(U, Vec{F->one(), F->zero()}) == 3);
  CHECK(linset::heavy_points_subgeometry(rep, U) == false);
}

TEST_CASE("embedded subline is fat_irregular") {
  auto F = Field::make(3, 1, 4);
  const auto sub = F->subfield_basis(2, 1);
  const auto U = product(F, sub, sub);
  const auto rep = linset::weight_spectrum(U, {linset::kDefaultCap, 1});
  CHECK(rep.spectrum == std::map<unsigned, std::uint64_t>{{2, 10}});
  CHECK(rep.classification.kind == linset::Kind::fat_irregular);
  CHECK(rep.classification.no_weight_one);
  const auto st = linset::rank2i_structure(U);
  CHECK(st.applicable);
  CHECK(st.subfield_degree == 2);
  CHECK(st.r == 10);
  CHECK(st.r_matches);
  CHECK(st.heavy_points_match);
}

TEST_CASE("non-field T gives q+1 heavy points") {
  auto F = Field::make(3, 1, 4);
  const std::vector<Elem> T{F->one(), F->omega()};
  const auto U = product(F, T, T);
  const auto st = linset::rank2i_structure(U);
  CHECK(st.r == 4);
  CHECK(st.subfield_degree == 1);
  CHECK(st.statement_holds);
  CHECK(st.heavy_points_match);
}

TEST_CASE("size formula") {
  CHECK(linset::size_formula(3, 6, 4, 3) == 316);
  CHECK(linset::size_formula(2, 3, 1, 2) == 5);
  CHECK(linset::size_formula(3, 4, 0, 0) == 40);
  CHECK_THROWS_AS(linset::size_formula(3, 2, 2, 2), InvalidInput);
}

TEST_CASE("point weights and partial scatteredness") {
  auto F = Field::make(2, 1, 4);
  const auto U1 = Subspace(F, 2, {Vec{F->one(), F->omega()}});
  CHECK(linset::point_weight(U1, Vec{F->one(), F->omega()}) == 1);
  CHECK(linset::is_partially_scattered(U1, 2));
  const auto U2 = product(F, F->subfield_basis(2, 1), {});
  CHECK_FALSE(linset::is_partially_scattered(U2, 2));
  CHECK_THROWS_AS(linset::is_partially_scattered(U2, 3), InvalidInput);
  CHECK_THROWS_AS(linset::point_weight(U2, Vec{F->zero(), F->zero()}), InvalidInput);
}

TEST_CASE("thread count does not change the report") {
  auto F = Field::make(2, 1, 4);
  const auto U = linpoly::graph_subspace(linpoly::club_trace_poly(F, 2, 1));
  const auto a = linset::weight_spectrum(U, {linset::kDefaultCap, 1});
  const auto b = linset::weight_spectrum(U, {linset::kDefaultCap, 2});
  CHECK(a.spectrum == b.spectrum);
  CHECK(a.heavy_points == b.heavy_points);
  CHECK(a.classification.club);
  CHECK(a.classification.i == 2);
}

TEST_CASE("enumeration cap") {
  auto F = Field::make(3, 1, 4);
  const auto U = linpoly::graph_subspace(linpoly::trace_poly(F));
  CHECK_THROWS_AS(linset::weight_spectrum(U, {10, 1}), CapExceeded);
}
