#include "fatlin/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fatlin/error.hpp"
#include "fatlin/io.hpp"
#include "fatlin/numeric.hpp"

namespace fatlin::families {

using linalg::Vec;
using linpoly::LinearizedPoly;

namespace {

Elem qpow(const Field& F, Elem x, std::int64_t j) { return F.frobenius(x, j, F.h()); }

std::uint64_t q_to(const Field& F, unsigned t) { return num::ipow(F.q(), t); }

bool coprime(long s, unsigned t) {
  return std::gcd(num::mod_signed(s, t), static_cast<std::uint64_t>(t)) == 1;
}

Elem norm_to_q(const Field& F, Elem x, unsigned t) { return F.rel_norm(x, F.h() * t, F.h()); }

Elem minus_one_pow(const Field& F, unsigned e) { return e % 2 ? F.from_int(-1) : F.one(); }

void require_subfield_elems(const Field& F, const std::vector<Elem>& xs, unsigned t, const char* what) {
  for (auto x : xs)
    if (!F.in_subfield(x, F.h() * t))
      throw InvalidInput(std::string(what) + " must lie in F_{q^" + std::to_string(t) + "}");
  if (linalg::fq_rank_scalars(F, xs) != xs.size())
    throw InvalidInput(std::string(what) + " must be F_q-linearly independent");
}

std::uint64_t projective_count(std::uint64_t q, std::size_t k) {
  return (num::ipow(q, static_cast<unsigned>(k)) - 1) / (q - 1);
}

/// T^k for T = {x + c x^{q^s} : x ∈ I}.
std::vector<Vec> power_of_graph(const Field& F, const std::vector<Elem>& I, Elem c, long s,
                                std::size_t k) {
  std::vector<Elem> T;
  for (auto b : I) T.push_back(F.add(b, F.mul(c, qpow(F, b, s))));
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < k; ++j)
    for (auto x : T) {
      Vec v(k, F.zero());
      v[j] = x;
      basis.push_back(std::move(v));
    }
  return basis;
}

void throw_first(const std::vector<std::string>& violated, const std::string& context) {
  if (!violated.empty())
    throw HypothesisError(violated.front(), context + ": " + hypothesis_text(violated.front()));
}

Expected regular(std::uint64_t r, unsigned i, std::size_t rank) {
  Expected e;
  e.kind = r == 0 || i < 2 ? linset::Kind::scattered : linset::Kind::regular_fat;
  if (*e.kind == linset::Kind::regular_fat) {
    e.r = r;
    e.i = i;
  }
  e.rank = rank;
  return e;
}

long get_long(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_number_integer())
    throw InvalidInput(std::string("descriptor parameter \"") + key + "\" missing");
  return p.at(key).get<long>();
}

const json& get(const json& p, const char* key) {
  if (!p.contains(key)) throw InvalidInput(std::string("descriptor parameter \"") + key + "\" missing");
  return p.at(key);
}

Built make_built(Subspace U, Family fam, const FieldPtr& F, json params, Expected expected,
                 std::vector<std::string> violated = {}) {
  if (!violated.empty()) expected = Expected{};
  ConstructionDescriptor d{fam, F, std::move(params), std::move(expected), std::move(violated)};
  return Built{std::move(U), std::move(d)};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string hypothesis_text(const std::string& tag) {
  static const std::map<std::string, std::string> text{
      {"q_odd", "q must be odd"},
      {"t_ge_3", "t must be at least 3"},
      {"t_even", "t must be even"},
      {"gcd_s_t", "gcd(s, t) must be 1"},
      {"w_in_E_star", "w must be a nonzero element of E"},
      {"norm_w2", "N(w^2) must differ from (-1)^t"},
      {"dim_I_ge_2", "dim I must be at least 2"},
      {"k_ge_2", "k must be at least 2"},
      {"ell_gt_2", "ell must exceed 2"},
      {"ell_divides_qt_minus_1", "ell must divide q^t - 1"},
      {"eta_in_E1_star", "eta must be a nonzero element of E_1"},
      {"mu_in_Fqt", "mu must lie in F_{q^t}"},
      {"mu_in_Fqt_star", "mu must be a nonzero element of F_{q^t}"},
      {"xi_not_in_Fqt", "xi must lie outside F_{q^t}"},
      {"norm_mu", "N(mu) must differ from 1"},
      {"norm_xi_mu", "N(-xi^{q^t+1} mu) must differ from (-1)^t"},
      {"m_power", "m must be a (q+1)-th power of a nonzero element of E"}};
  const auto it = text.find(tag);
  return it == text.end() ? tag : it->second;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::T1: return "T1";
    case Family::T2: return "T2";
    case Family::POLFORM1: return "POLFORM1";
    case Family::POLFORM2: return "POLFORM2";
    case Family::PHI: return "PHI";
    case Family::LP: return "LP";
    case Family::TRACE_CLUB: return "TRACE_CLUB";
    case Family::CLUB_LAMBDA: return "CLUB_LAMBDA";
    case Family::CLUB_UAB: return "CLUB_UAB";
    case Family::COMP_PRODUCT: return "COMP_PRODUCT";
    case Family::NPSZ: return "NPSZ";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (auto f : {Family::T1, Family::T2, Family::POLFORM1, Family::POLFORM2, Family::PHI, Family::LP,
                 Family::TRACE_CLUB, Family::CLUB_LAMBDA, Family::CLUB_UAB, Family::COMP_PRODUCT,
                 Family::NPSZ})
    if (family_name(f) == name) return f;
  throw InvalidInput("unknown family \"" + name + "\"");
}

bool Expected::matches(const linset::SpectrumReport& rep) const {
  const auto& c = rep.classification;
  if (kind && c.kind != *kind) return false;
  if (r && c.r != *r) return false;
  if (i && c.i != *i) return false;
  if (rank && rep.rho != *rank) return false;
  if (heavy_points_subgeometry && rep.heavy_points_subgeometry != heavy_points_subgeometry) return false;
  return true;
}

json descriptor_to_json(const ConstructionDescriptor& d) {
  json exp = json::object();
  const auto& e = d.expected;
  if (e.kind) exp["kind"] = linset::kind_name(*e.kind);
  if (e.r) exp["r"] = *e.r;
  if (e.r_unspecified) exp["r"] = "unspecified";
  if (e.i) exp["i"] = *e.i;
  if (e.rank) exp["rank"] = *e.rank;
  if (e.heavy_points_subgeometry) exp["heavy_points_subgeometry"] = *e.heavy_points_subgeometry;
  return {{"family", family_name(d.family)},
          {"field", io::field_to_json(*d.field)},
          {"params", d.params},
          {"expected", exp},
          {"violated", d.violated}};
}

ConstructionDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw InvalidInput("descriptor needs a \"family\" string");
  ConstructionDescriptor d{family_from_name(j.at("family").get<std::string>()),
                           io::field_from_json(get(j, "field")), get(j, "params"), {}, {}};
  if (j.contains("expected")) {
    const auto& e = j.at("expected");
    if (e.contains("kind")) {
      const auto k = e.at("kind").get<std::string>();
      for (auto kind : {linset::Kind::scattered, linset::Kind::regular_fat, linset::Kind::fat_irregular})
        if (linset::kind_name(kind) == k) d.expected.kind = kind;
    }
    if (e.contains("r")) {
      if (e.at("r").is_string()) d.expected.r_unspecified = true;
      else d.expected.r = e.at("r").get<std::uint64_t>();
    }
    if (e.contains("i")) d.expected.i = e.at("i").get<unsigned>();
    if (e.contains("rank")) d.expected.rank = e.at("rank").get<std::size_t>();
    if (e.contains("heavy_points_subgeometry"))
      d.expected.heavy_points_subgeometry = e.at("heavy_points_subgeometry").get<bool>();
  }
  if (j.contains("violated")) d.violated = j.at("violated").get<std::vector<std::string>>();
  return d;
}

// ---------------------------------------------------------------------------

std::vector<Elem> subfield_fq_basis(const Field& F, unsigned t) {
  return F.subfield_basis(F.h() * t, F.h());
}

bool in_trace_zero(const Field& F, Elem x, unsigned t) {
  return F.add(x, qpow(F, x, t)) == F.zero();
}

Elem auto_w(const Field& F, unsigned t) {
  if (F.q() % 2 == 0) throw HypothesisError("q_odd", hypothesis_text("q_odd"));
  return F.omega_pow((q_to(F, t) + 1) / 2);
}

std::optional<Elem> trace_zero_root(const Field& F, Elem c, std::uint64_t exponent, unsigned t) {
  if (F.q() % 2 == 0) throw InvalidInput("E-power tests need q odd");
  if (F.n() != 2 * t) throw InvalidInput("E-power tests need n = 2t");
  if (c == F.zero()) return std::nullopt;
  // E* = {omega^{u (q^t+1)/2} : u odd}.
  const std::uint64_t N = F.group_order();
  const std::uint64_t half = (q_to(F, t) + 1) / 2;
  const std::uint64_t a = num::mulmod(exponent % N, half, N);
  std::uint64_t least = 0, period = 0;
  if (!num::solve_linear_congruence(a, F.discrete_log(c), N, least, period)) return std::nullopt;
  std::uint64_t u = least;
  if (u % 2 == 0) {
    if (period % 2 == 0) return std::nullopt;
    u += period;
  }
  const Elem e = F.omega_pow(num::mulmod(u % N, half, N));
  if (F.pow(e, exponent) != c || !in_trace_zero(F, e, t)) throw CheckFailure("E-root verification failed");
  return e;
}

bool is_power_of_trace_zero(const Field& F, Elem c, std::uint64_t exponent, unsigned t) {
  return trace_zero_root(F, c, exponent, t).has_value();
}

// ---------------------------------------------------------------------------

unsigned t1_half(const Field& F) {
  if (F.n() % 2 != 0) throw InvalidInput("T1 needs n = 2t");
  return F.n() / 2;
}

std::vector<std::string> t1_violations(const Field& F, const T1Params& p) {
  const unsigned t = t1_half(F);
  std::vector<std::string> v;
  const bool q_odd = F.q() % 2 == 1;
  if (!q_odd) v.push_back("q_odd");
  if (t < 3) v.push_back("t_ge_3");
  if (!coprime(p.s, t)) v.push_back("gcd_s_t");
  const bool w_ok = p.w != F.zero() && in_trace_zero(F, p.w, t);
  if (!w_ok) v.push_back("w_in_E_star");
  if (w_ok && q_odd && norm_to_q(F, F.mul(p.w, p.w), t) == minus_one_pow(F, t)) v.push_back("norm_w2");
  if (p.I_basis.size() < 2) v.push_back("dim_I_ge_2");
  if (p.k < 2) v.push_back("k_ge_2");
  return v;
}

Built construct_T1(const FieldPtr& F, const T1Params& p, bool check) {
  const unsigned t = t1_half(*F);
  if (p.k < 1) throw InvalidInput("k must be positive");
  require_subfield_elems(*F, p.I_basis, t, "I");
  auto violated = t1_violations(*F, p);
  if (check) throw_first(violated, "T1");
  if (p.w == F->zero()) throw InvalidInput("w must be nonzero");
  Subspace U(F, p.k, power_of_graph(*F, p.I_basis, p.w, p.s, p.k));
  json params{{"s", p.s},
              {"t", t},
              {"k", p.k},
              {"w", io::elem_to_json(*F, p.w)},
              {"I", io::elems_to_json(*F, p.I_basis)},
              {"i", p.I_basis.size()}};
  const unsigned i = static_cast<unsigned>(p.I_basis.size());
  Expected e = regular(projective_count(F->q(), p.k), i, p.k * i);
  e.heavy_points_subgeometry = true;
  return make_built(std::move(U), Family::T1, F, std::move(params), std::move(e), std::move(violated));
}

T1Params t1_params(const ConstructionDescriptor& d) {
  if (d.family != Family::T1) throw InvalidInput("descriptor is not T1");
  const Field& F = *d.field;
  T1Params p;
  p.s = get_long(d.params, "s");
  p.w = io::parse_elem(F, get(d.params, "w"));
  p.I_basis = io::elems_from_json(F, get(d.params, "I"));
  p.k = static_cast<std::size_t>(get_long(d.params, "k"));
  return p;
}

// ---------------------------------------------------------------------------

bool in_component(const Field& F, Elem x, Elem epsilon, unsigned j, unsigned t) {
  return qpow(F, x, t) == F.mul(F.pow(epsilon, j), x);
}

EComponents e_components(const Field& F, unsigned ell, unsigned t) {
  if (ell == 0 || t == 0 || F.n() != ell * t) throw InvalidInput("E_j decomposition needs n = ell t");
  const std::uint64_t qt1 = q_to(F, t) - 1;
  if (qt1 % ell != 0) throw InvalidInput("ell must divide q^t - 1");
  EComponents c;
  c.ell = ell;
  c.t = t;
  c.epsilon = F.pow(F.subfield_generator(F.h() * t), qt1 / ell);
  const auto eta = F.solve_power(c.epsilon, static_cast<std::int64_t>(qt1));
  if (!eta) throw CheckFailure("E_1 has no nonzero element");
  c.eta = *eta;
  const auto sub = subfield_fq_basis(F, t);
  std::vector<Elem> all;
  for (unsigned j = 0; j < ell; ++j) {
    const Elem g = F.pow(c.eta, j);
    std::vector<Elem> b;
    for (auto x : sub) b.push_back(F.mul(g, x));
    for (auto x : b)
      if (!in_component(F, x, c.epsilon, j, t)) throw CheckFailure("E_j basis element outside E_j");
    all.insert(all.end(), b.begin(), b.end());
    c.bases.push_back(std::move(b));
  }
  c.direct_sum_rank = linalg::fq_rank_scalars(F, all);
  c.direct_sum_ok = c.direct_sum_rank == F.n();
  c.products_ok = true;
  for (unsigned j = 0; j < ell; ++j)
    for (unsigned h = 0; h < ell; ++h)
      for (auto x : c.bases[j])
        for (auto y : c.bases[h])
          c.products_ok = c.products_ok && in_component(F, F.mul(x, y), c.epsilon, (j + h) % ell, t);
  return c;
}

std::vector<std::string> t2_violations(const Field& F, const T2Params& p) {
  std::vector<std::string> v;
  if (p.ell == 0 || F.n() % p.ell != 0) throw InvalidInput("T2 needs n = ell t");
  const unsigned t = F.n() / p.ell;
  if (!coprime(p.s, t)) v.push_back("gcd_s_t");
  if (p.ell <= 2) v.push_back("ell_gt_2");
  const bool divides = (q_to(F, t) - 1) % p.ell == 0;
  if (!divides) v.push_back("ell_divides_qt_minus_1");
  if (divides) {
    const auto c = e_components(F, p.ell, t);
    if (p.eta == F.zero() || !in_component(F, p.eta, c.epsilon, 1, t)) v.push_back("eta_in_E1_star");
  }
  if (p.I_basis.size() < 2) v.push_back("dim_I_ge_2");
  if (p.k < 2) v.push_back("k_ge_2");
  return v;
}

Built construct_T2(const FieldPtr& F, const T2Params& p, bool check) {
  if (p.ell == 0 || F->n() % p.ell != 0) throw InvalidInput("T2 needs n = ell t");
  const unsigned t = F->n() / p.ell;
  if (p.k < 1) throw InvalidInput("k must be positive");
  require_subfield_elems(*F, p.I_basis, t, "I");
  auto violated = t2_violations(*F, p);
  if (check) throw_first(violated, "T2");
  if (p.eta == F->zero()) throw InvalidInput("eta must be nonzero");
  Subspace U(F, p.k, power_of_graph(*F, p.I_basis, p.eta, p.s, p.k));
  json params{{"s", p.s},
              {"t", t},
              {"ell", p.ell},
              {"k", p.k},
              {"eta", io::elem_to_json(*F, p.eta)},
              {"I", io::elems_to_json(*F, p.I_basis)},
              {"i", p.I_basis.size()}};
  const unsigned i = static_cast<unsigned>(p.I_basis.size());
  Expected e = regular(projective_count(F->q(), p.k), i, p.k * i);
  e.heavy_points_subgeometry = true;
  return make_built(std::move(U), Family::T2, F, std::move(params), std::move(e), std::move(violated));
}

T2Params t2_params(const ConstructionDescriptor& d) {
  if (d.family != Family::T2) throw InvalidInput("descriptor is not T2");
  const Field& F = *d.field;
  T2Params p;
  p.s = get_long(d.params, "s");
  p.eta = io::parse_elem(F, get(d.params, "eta"));
  p.I_basis = io::elems_from_json(F, get(d.params, "I"));
  p.k = static_cast<std::size_t>(get_long(d.params, "k"));
  p.ell = static_cast<unsigned>(get_long(d.params, "ell"));
  return p;
}

// ---------------------------------------------------------------------------

LinearizedPoly polform1(const FieldPtr& F, Elem mu, Elem w, long s) {
  const Field& K = *F;
  const unsigned t = t1_half(K);
  if (K.q() % 2 == 0) throw HypothesisError("q_odd", "POL1: q must be odd");
  if (!coprime(s, t)) throw HypothesisError("gcd_s_t", "POL1: gcd(s, t) must be 1");
  if (!K.in_subfield(mu, K.h() * t)) throw HypothesisError("mu_in_Fqt", "POL1: mu must lie in F_{q^t}");
  if (mu == K.one() || norm_to_q(K, mu, t) != K.one())
    throw HypothesisError("norm_mu", "POL1: mu must have norm 1 and differ from 1");
  if (w == K.zero() || !in_trace_zero(K, w, t)) throw HypothesisError("w_in_E_star", "POL1: w must lie in E*");
  const long T = t;
  const Elem two = K.from_int(2);
  const Elem mu_s = qpow(K, mu, s);
  const Elem A = K.sub(mu_s, K.one());
  const Elem B = K.sub(mu, K.one());
  const Elem w_inv = K.inv(qpow(K, w, T - s));
  auto f = LinearizedPoly::zero(F);
  f.add_term(T, K.mul(A, K.add(mu, K.one())));
  f.add_term(T - s, K.neg(K.mul(A, K.mul(two, w_inv))));
  f.add_term(2 * T - s, K.mul(A, K.mul(two, w_inv)));
  f.add_term(T, K.mul(B, K.add(mu_s, K.one())));
  const Elem c = K.mul(B, K.mul(two, K.mul(w, mu_s)));
  f.add_term(s, c);
  f.add_term(T + s, c);
  return f;
}

LinearizedPoly polform2(const FieldPtr& F, Elem m, long s) {
  const Field& K = *F;
  const unsigned t = t1_half(K);
  if (K.q() % 2 == 0) throw HypothesisError("q_odd", "POL2: q must be odd");
  if (t % 2 != 0) throw HypothesisError("t_even", "POL2: t must be even");
  if (!coprime(s, t)) throw HypothesisError("gcd_s_t", "POL2: gcd(s, t) must be 1");
  if (!is_power_of_trace_zero(K, m, K.q() + 1, t))
    throw HypothesisError("m_power", "POL2: m must be a (q+1)-th power of a nonzero element of E");
  const long T = t;
  auto f = LinearizedPoly::zero(F);
  f.add_term(s, K.one());
  f.add_term(T + s, K.one());
  f.add_term(T - s, m);
  f.add_term(2 * T - s, K.neg(m));
  return f;
}

Built construct_polform1(const FieldPtr& F, Elem mu, Elem w, long s) {
  const auto f = polform1(F, mu, w, s);
  const unsigned t = F->n() / 2;
  const T1Params tp{s, w, subfield_fq_basis(*F, t), 2};
  json params{{"variant", "POL1"}, {"s", s}, {"t", t}, {"mu", io::elem_to_json(*F, mu)},
              {"w", io::elem_to_json(*F, w)}, {"poly", io::poly_to_json(f)}};
  return make_built(linpoly::graph_subspace(f), Family::POLFORM1, F, std::move(params),
                    regular(F->q() + 1, t, 2 * t), t1_violations(*F, tp));
}

Built construct_polform2(const FieldPtr& F, Elem m, long s) {
  const auto f = polform2(F, m, s);
  const unsigned t = F->n() / 2;
  json params{{"variant", "POL2"}, {"s", s}, {"t", t}, {"m", io::elem_to_json(*F, m)},
              {"poly", io::poly_to_json(f)}};
  return make_built(linpoly::graph_subspace(f), Family::POLFORM2, F, std::move(params),
                    regular(F->q() + 1, t, 2 * t));
}

// ---------------------------------------------------------------------------

std::string phi_case_name(PhiCase c) {
  switch (c) {
    case PhiCase::sigma_minus_one: return "sigma_minus_one_power";
    case PhiCase::sigma_plus_one: return "sigma_plus_one_power";
    case PhiCase::neither: return "neither";
  }
  return "unknown";
}

PhiExpectation phi_expected_class(const Field& F, Elem m, long J) {
  const unsigned t = t1_half(F);
  if (m == F.zero() || !F.in_subfield(m, F.h() * t))
    throw InvalidInput("m must be a nonzero element of F_{q^t}");
  const std::uint64_t N = F.group_order();
  const std::uint64_t sigma = num::powmod(F.q(), num::mod_signed(J, 2 * t), N);
  const bool minus = is_power_of_trace_zero(F, m, (sigma + N - 1) % N, t);
  const bool plus = is_power_of_trace_zero(F, m, (sigma + 1) % N, t);
  if (minus && plus) throw CheckFailure("m is both a (sigma-1)- and a (sigma+1)-power of E*");
  PhiExpectation out;
  out.expected.rank = F.n();
  if (minus) {
    out.which = PhiCase::sigma_minus_one;
    out.expected.kind = linset::Kind::regular_fat;
    out.expected.i = 2;
    out.expected.r_unspecified = true;
  } else if (plus) {
    out.which = PhiCase::sigma_plus_one;
    out.expected.kind = linset::Kind::regular_fat;
    out.expected.r = t % 2 ? 2 : F.q() + 1;
    out.expected.i = t;
  } else {
    out.expected.kind = linset::Kind::scattered;
  }
  return out;
}

Built construct_phi(const FieldPtr& F, Elem m, long J) {
  const unsigned t = t1_half(*F);
  const auto f = linpoly::phi_poly(F, m, J, t);
  auto pe = phi_expected_class(*F, m, J);
  json params{{"m", io::elem_to_json(*F, m)}, {"J", J}, {"t", t}, {"case", phi_case_name(pe.which)},
              {"poly", io::poly_to_json(f)}};
  return make_built(linpoly::graph_subspace(f), Family::PHI, F, std::move(params), pe.expected);
}

std::string weight2_outcome_name(Weight2Outcome o) {
  switch (o) {
    case Weight2Outcome::weight_two: return "weight_two";
    case Weight2Outcome::not_weight_two: return "not_weight_two";
    case Weight2Outcome::denominator_zero: return "denominator_zero";
    case Weight2Outcome::ratio_outside_subfield: return "ratio_outside_subfield";
  }
  return "unknown";
}

Weight2Outcome phi_weight2_char(const Field& F, Elem x, Elem m, Elem w, long J) {
  const unsigned t = t1_half(F);
  if (F.q() % 2 == 0) throw InvalidInput("q must be odd");
  if (x == F.zero()) throw InvalidInput("x must be nonzero");
  if (w == F.zero() || !in_trace_zero(F, w, t)) throw InvalidInput("w must lie in E*");
  const std::uint64_t N = F.group_order();
  const std::uint64_t sigma = num::powmod(F.q(), num::mod_signed(J, 2 * t), N);
  if (F.pow(w, (sigma + N - 1) % N) != m) throw InvalidInput("m must equal w^{sigma-1}");
  auto sig = [&](Elem y, long k) { return F.frobenius(y, J * k, F.h()); };
  const long T = t;
  const Elem half = F.inv(F.from_int(2));
  const Elem xt = qpow(F, x, T);
  const Elem x0 = F.mul(half, F.add(x, xt));
  const Elem x1 = F.mul(half, F.sub(x, xt));
  const Elem x0_last = sig(x0, T - 1);
  const Elem num = F.add(F.neg(F.mul(m, F.mul(sig(x0, 1), x1))),
                         F.mul(sig(m, 1), F.mul(x0_last, sig(x1, 2))));
  const Elem inner = F.sub(F.mul(x0_last, x0), F.mul(m, F.mul(sig(x1, 1), x1)));
  const Elem den = F.mul(sig(w, 1), F.mul(sig(inner, 1), inner));
  if (den == F.zero()) return Weight2Outcome::denominator_zero;
  const Elem ratio = F.div(num, den);
  if (!F.in_subfield(ratio, F.h() * t)) return Weight2Outcome::ratio_outside_subfield;
  return F.rel_trace(ratio, F.h() * t, F.h()) == F.zero() ? Weight2Outcome::weight_two
                                                          : Weight2Outcome::not_weight_two;
}

// ---------------------------------------------------------------------------

Built construct_trace_club(const FieldPtr& F, unsigned t, long s) {
  const auto f = linpoly::club_trace_poly(F, t, s);
  const unsigned i = F->n() - t;
  json params{{"t", t}, {"s", s}, {"poly", io::poly_to_json(f)}};
  return make_built(linpoly::graph_subspace(f), Family::TRACE_CLUB, F, std::move(params),
                    regular(1, i, F->n()));
}

Built construct_club_lambda(const FieldPtr& F, Elem lambda) {
  const Field& K = *F;
  const unsigned n = K.n();
  std::vector<Elem> powers;
  for (unsigned j = 0; j < n; ++j) powers.push_back(K.pow(lambda, j));
  if (n < 2 || linalg::fq_rank_scalars(K, powers) != n)
    throw InvalidInput("1, lambda, ..., lambda^{n-1} must be an F_q-basis of F_{q^n}");
  std::vector<Vec> basis;
  for (unsigned j = 1; j + 1 < n; ++j) basis.push_back(Vec{powers[j], K.zero()});
  basis.push_back(Vec{powers[n - 1], K.one()});
  basis.push_back(Vec{K.zero(), lambda});
  json params{{"lambda", io::elem_to_json(K, lambda)}};
  return make_built(Subspace(F, 2, std::move(basis)), Family::CLUB_LAMBDA, F, std::move(params),
                    regular(1, n - 2, n));
}

Elem SubfieldPoly::eval(const Field& F, Elem x) const {
  Elem sum = F.zero();
  Elem conj = x;
  for (auto c : coeffs) {
    sum = F.add(sum, F.mul(c, conj));
    conj = F.frob(conj, F.h());
  }
  return sum;
}

namespace {

void check_subfield_poly(const Field& F, const SubfieldPoly& f) {
  if (f.t == 0 || F.n() % f.t != 0) throw InvalidInput("f must live on a subfield F_{q^t}, t | n");
  if (f.coeffs.size() != f.t) throw InvalidInput("f needs t coefficients");
  for (auto c : f.coeffs)
    if (!F.in_subfield(c, F.h() * f.t)) throw InvalidInput("coefficients of f must lie in F_{q^t}");
}

unsigned subfield_kernel_dim(const Field& F, const std::vector<Elem>& basis,
                             const std::function<Elem(Elem)>& g) {
  std::vector<Elem> images;
  for (auto b : basis) images.push_back(g(b));
  return static_cast<unsigned>(basis.size() - linalg::fq_rank_scalars(F, images));
}

}  // namespace

bool is_scattered_over_subfield(const Field& F, const SubfieldPoly& f) {
  check_subfield_poly(F, f);
  const auto basis = subfield_fq_basis(F, f.t);
  for (auto x : F.subfield_elements(F.h() * f.t)) {
    if (x == F.zero()) continue;
    const Elem fx = f.eval(F, x);
    auto g = [&](Elem l) { return F.sub(f.eval(F, F.mul(l, x)), F.mul(l, fx)); };
    if (subfield_kernel_dim(F, basis, g) > 1) return false;
  }
  return true;
}

Built construct_club_uab(const FieldPtr& F, const SubfieldPoly& f, Elem a, Elem b, unsigned ell) {
  const Field& K = *F;
  check_subfield_poly(K, f);
  const unsigned t = f.t;
  if (ell < 2 || t < 2 || K.n() != ell * t) throw InvalidInput("U_{a,b} needs n = ell t with t, ell > 1");
  if (b == K.zero()) throw InvalidInput("b must be nonzero");
  if (!K.in_subfield(a, K.h() * t) || !K.in_subfield(b, K.h() * t))
    throw InvalidInput("a and b must lie in F_{q^t}");
  if (!is_scattered_over_subfield(K, f)) throw InvalidInput("f must be scattered over F_{q^t}");
  const auto sub = subfield_fq_basis(K, t);
  std::vector<Vec> basis;
  for (auto x : sub) basis.push_back(Vec{K.sub(f.eval(K, x), K.mul(a, x)), K.mul(b, x)});
  for (unsigned j = 1; j < ell; ++j)
    for (auto x : sub) basis.push_back(Vec{K.zero(), K.mul(x, K.omega_pow(j))});
  const unsigned kernel =
      subfield_kernel_dim(K, sub, [&](Elem x) { return K.sub(f.eval(K, x), K.mul(a, x)); });
  const unsigned i = t * (ell - 1) + (kernel == 0 ? 0 : 1);
  json params{{"t", t},
              {"ell", ell},
              {"f", io::elems_to_json(K, f.coeffs)},
              {"a", io::elem_to_json(K, a)},
              {"b", io::elem_to_json(K, b)},
              {"f_minus_aX_invertible", kernel == 0}};
  return make_built(Subspace(F, 2, std::move(basis)), Family::CLUB_UAB, F, std::move(params),
                    regular(1, i, K.n()));
}

Built construct_comp_product(const FieldPtr& F, const std::vector<Elem>& S_basis,
                             const std::vector<Elem>& Sp_basis) {
  const Field& K = *F;
  std::vector<Elem> both = S_basis;
  both.insert(both.end(), Sp_basis.begin(), Sp_basis.end());
  if (linalg::fq_rank_scalars(K, both) != both.size())
    throw InvalidInput("S and S' must be independent with trivial intersection");
  std::vector<Vec> basis;
  for (auto x : S_basis) basis.push_back(Vec{x, K.zero()});
  for (auto y : Sp_basis) basis.push_back(Vec{K.zero(), y});
  json params{{"S", io::elems_to_json(K, S_basis)}, {"S_prime", io::elems_to_json(K, Sp_basis)}};
  Expected e;
  e.rank = both.size();
  return make_built(Subspace(F, 2, std::move(basis)), Family::COMP_PRODUCT, F, std::move(params), e);
}

std::vector<std::string> npsz_violations(const Field& F, Elem xi, Elem mu, long s) {
  const unsigned t = t1_half(F);
  std::vector<std::string> v;
  if (!coprime(s, t)) v.push_back("gcd_s_t");
  const bool mu_ok = mu != F.zero() && F.in_subfield(mu, F.h() * t);
  if (!mu_ok) v.push_back("mu_in_Fqt_star");
  if (F.in_subfield(xi, F.h() * t)) v.push_back("xi_not_in_Fqt");
  if (mu_ok && norm_to_q(F, mu, t) == F.one()) v.push_back("norm_mu");
  if (mu_ok) {
    const Elem y = F.neg(F.mul(F.pow(xi, q_to(F, t) + 1), mu));
    if (norm_to_q(F, y, t) == minus_one_pow(F, t)) v.push_back("norm_xi_mu");
  }
  return v;
}

Built construct_npsz(const FieldPtr& F, Elem xi, Elem mu, long s, bool check) {
  const Field& K = *F;
  const unsigned t = t1_half(K);
  auto violated = npsz_violations(K, xi, mu, s);
  if (check) throw_first(violated, "complementary-weight product");
  std::vector<Vec> basis;
  for (auto u : subfield_fq_basis(K, t)) basis.push_back(Vec{K.add(u, K.mul(xi, qpow(K, u, s))), K.zero()});
  for (auto v : subfield_fq_basis(K, t))
    basis.push_back(Vec{K.zero(), K.add(v, K.mul(K.mul(xi, mu), qpow(K, v, s)))});
  json params{{"xi", io::elem_to_json(K, xi)}, {"mu", io::elem_to_json(K, mu)}, {"s", s}, {"t", t}};
  return make_built(Subspace(F, 2, std::move(basis)), Family::NPSZ, F, std::move(params),
                    regular(2, t, 2 * t), std::move(violated));
}

// ---------------------------------------------------------------------------

Built construct_lp(const FieldPtr& F, Elem delta, long s) {
  const auto g = linpoly::lp_poly(F, delta, s);
  const auto r = lp_expected_r(*F, delta, s);
  json params{{"delta", io::elem_to_json(*F, delta)}, {"s", s}, {"poly", io::poly_to_json(g)}};
  return make_built(linpoly::graph_subspace(g), Family::LP, F, std::move(params), regular(r, 2, F->n()));
}

std::uint64_t lp_expected_r(const Field& F, Elem delta, long s) {
  const unsigned n = F.n();
  if (delta == F.zero()) throw InvalidInput("delta must be nonzero");
  if (!coprime(s, n)) throw InvalidInput("gcd(s, n) must be 1");
  if (F.rel_norm(delta, F.degree(), F.h()) != F.one()) return 0;
  const BigRational q(F.q());
  auto qp = [&](long e) {
    BigRational r = 1;
    for (long j = 0; j < std::labs(e); ++j) r *= q;
    return e < 0 ? 1 / r : r;
  };
  const BigRational q2m1 = q * q - 1;
  BigRational r;
  if (n % 2 == 1) {
    r = (qp(n - 1) - 1) / q2m1;
  } else {
    const Elem N2 = F.rel_norm(delta, F.degree(), 2 * F.h());
    const long h = (static_cast<long>(n) - 2) / 2;
    const long half = n / 2;
    if (n % 4 == 0 && N2 == F.one()) {
      r = q * q * (qp(h) + 1) * (qp(h - 1) - 1) / q2m1 + 1;
    } else if (n % 4 == 2 && N2 == F.from_int(-1)) {
      r = q * q * (qp(h - 1) + 1) * (qp(h) - 1) / q2m1 + 1;
    } else if (n % 4 == 0) {
      r = (qp(half - 1) + 1) * (qp(half) - 1) / q2m1;
    } else {
      r = (qp(half) + 1) * (qp(half - 1) - 1) / q2m1;
    }
  }
  if (denominator(r) != 1 || r < 0) throw CheckFailure("LP formula gave a non-integral count");
  return static_cast<std::uint64_t>(numerator(r));
}

// ---------------------------------------------------------------------------

Subspace rebuild(const ConstructionDescriptor& d) {
  const FieldPtr& F = d.field;
  const json& p = d.params;
  auto el = [&](const char* key) { return io::parse_elem(*F, get(p, key)); };
  switch (d.family) {
    case Family::T1: return construct_T1(F, t1_params(d), false).subspace;
    case Family::T2: return construct_T2(F, t2_params(d), false).subspace;
    case Family::POLFORM1: return construct_polform1(F, el("mu"), el("w"), get_long(p, "s")).subspace;
    case Family::POLFORM2: return construct_polform2(F, el("m"), get_long(p, "s")).subspace;
    case Family::PHI: return construct_phi(F, el("m"), get_long(p, "J")).subspace;
    case Family::LP: return construct_lp(F, el("delta"), get_long(p, "s")).subspace;
    case Family::TRACE_CLUB:
      return construct_trace_club(F, static_cast<unsigned>(get_long(p, "t")), get_long(p, "s")).subspace;
    case Family::CLUB_LAMBDA: return construct_club_lambda(F, el("lambda")).subspace;
    case Family::CLUB_UAB: {
      SubfieldPoly f{static_cast<unsigned>(get_long(p, "t")), io::elems_from_json(*F, get(p, "f"))};
      return construct_club_uab(F, f, el("a"), el("b"), static_cast<unsigned>(get_long(p, "ell"))).subspace;
    }
    case Family::COMP_PRODUCT:
      return construct_comp_product(F, io::elems_from_json(*F, get(p, "S")),
                                    io::elems_from_json(*F, get(p, "S_prime")))
          .subspace;
    case Family::NPSZ: return construct_npsz(F, el("xi"), el("mu"), get_long(p, "s"), false).subspace;
  }
  throw InvalidInput("unknown family");
}

}  // namespace fatlin::families
