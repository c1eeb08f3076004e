#include "fatlin/linset.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "fatlin/error.hpp"

namespace fatlin::linset {

namespace {

using PointCounts = std::unordered_map<Vec, std::uint64_t, VecHash>;

// Splits the top-coordinate range [0, q) over workers; each gets its own map.
PointCounts count_points(const Subspace& U, unsigned jobs) {
  const Field& F = U.field();
  const std::uint64_t q = F.q();
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), q));
  std::vector<PointCounts> parts(workers);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = q * w / workers;
    const std::uint64_t end = q * (w + 1) / workers;
    auto& counts = parts[w];
    U.for_each_vector(begin, end, [&](const Vec& v) {
      for (auto x : v) {
        if (x.v != 0) {
          ++counts[normalize_point(F, v)];
          return;
        }
      }
    });
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  PointCounts merged = std::move(parts[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (auto& [key, c] : parts[w]) merged[key] += c;
  return merged;
}

unsigned weight_from_count(std::uint64_t count, std::uint64_t q) {
  unsigned w = 0;
  std::uint64_t pw = 1;
  while (pw - 1 < count) {
    pw *= q;
    ++w;
  }
  if (pw - 1 != count) throw CheckFailure("point vector count is not of the form q^w - 1");
  return w;
}

unsigned extension_defect(const Subspace& U, const Vec& v, const std::vector<Elem>& basis) {
  const Field& F = U.field();
  linalg::FqSpan span = U.span();
  unsigned grew = 0;
  for (auto b : basis) {
    Vec bv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) bv[j] = F.mul(b, v[j]);
    grew += span.insert(bv) ? 1 : 0;
  }
  return grew;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x.v == 0; });
}

}  // namespace

std::size_t VecHash::operator()(const Vec& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto x : v) {
    h ^= x.v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Vec normalize_point(const Field& F, Vec v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].v == 0) continue;
    if (v[j] == F.one()) return v;
    const Elem inv = F.inv(v[j]);
    for (std::size_t l = j; l < v.size(); ++l) v[l] = F.mul(v[l], inv);
    return v;
  }
  throw InvalidInput("the zero vector is not a projective point");
}

unsigned point_weight(const Subspace& U, const Vec& v) {
  if (v.size() != U.k()) throw InvalidInput("point has the wrong number of coordinates");
  if (is_zero(v)) throw InvalidInput("the zero vector is not a projective point");
  const Field& F = U.field();
  return F.n() - extension_defect(U, v, F.power_basis());
}

unsigned subfield_line_weight(const Subspace& U, const Vec& v, unsigned t) {
  const Field& F = U.field();
  if (t == 0 || F.n() % t != 0) throw InvalidInput("t must divide n");
  if (v.size() != U.k()) throw InvalidInput("vector has the wrong number of coordinates");
  if (is_zero(v)) return 0;
  return t - extension_defect(U, v, F.subfield_basis(F.h() * t, F.h()));
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::scattered: return "scattered";
    case Kind::regular_fat: return "regular_fat";
    case Kind::fat_irregular: return "fat_irregular";
  }
  return "unknown";
}

Classification classify(const std::map<unsigned, std::uint64_t>& spectrum) {
  Classification c;
  for (auto [w, count] : spectrum)
    if (w > 1 && count > 0) c.heavy[w] = count;
  const bool has_one = spectrum.count(1) && spectrum.at(1) > 0;
  if (c.heavy.empty()) {
    c.kind = Kind::scattered;
  } else if (c.heavy.size() == 1 && has_one) {
    c.kind = Kind::regular_fat;
    c.i = c.heavy.begin()->first;
    c.r = c.heavy.begin()->second;
    c.club = c.r == 1;
  } else {
    c.kind = Kind::fat_irregular;
    c.no_weight_one = !has_one;
  }
  return c;
}

std::uint64_t SpectrumReport::size() const {
  std::uint64_t s = 0;
  for (auto [w, c] : spectrum) s += c;
  return s;
}

SpectrumReport weight_spectrum(const Subspace& U, const EnumOptions& opts) {
  const Field& F = U.field();
  U.checked_size(opts.cap);
  const auto counts = count_points(U, opts.jobs);

  SpectrumReport rep;
  rep.rho = U.rho();
  rep.k = U.k();
  rep.n = F.n();
  rep.q = F.q();

  BigInt total = 0;
  std::vector<std::pair<Vec, unsigned>> heavy;
  for (const auto& [point, count] : counts) {
    const unsigned w = weight_from_count(count, F.q());
    ++rep.spectrum[w];
    total += count;
    if (w > 1) heavy.emplace_back(point, w);
  }
  rep.vector_identity = total == num::big_pow(F.q(), static_cast<unsigned>(U.rho())) - 1;
  std::sort(heavy.begin(), heavy.end());
  for (auto& [p, w] : heavy) {
    rep.heavy_points.push_back(p);
    rep.heavy_weights.push_back(w);
  }

  bool agree = true;
  for (std::size_t a = 0; a < rep.heavy_points.size(); ++a)
    agree = agree && point_weight(U, rep.heavy_points[a]) == rep.heavy_weights[a];
  for (const auto& b : U.basis()) {
    const Vec p = normalize_point(F, b);
    auto it = counts.find(p);
    agree = agree && it != counts.end() && point_weight(U, p) == weight_from_count(it->second, F.q());
  }
  rep.weights_cross_checked = agree;

  rep.classification = classify(rep.spectrum);
  if (rep.classification.kind == Kind::regular_fat) {
    const auto& c = rep.classification;
    rep.size_formula_ok =
        size_formula(F.q(), static_cast<unsigned>(U.rho()), c.r, c.i) == BigInt(rep.size());
  }
  return rep;
}

std::vector<std::pair<Vec, unsigned>> point_weights(const Subspace& U, const EnumOptions& opts) {
  U.checked_size(opts.cap);
  const auto counts = count_points(U, opts.jobs);
  std::vector<std::pair<Vec, unsigned>> out;
  out.reserve(counts.size());
  for (const auto& [point, count] : counts)
    out.emplace_back(point, weight_from_count(count, U.field().q()));
  std::sort(out.begin(), out.end());
  return out;
}

BigInt size_formula(std::uint64_t q, unsigned rho, std::uint64_t r, unsigned i) {
  if (q < 2) throw InvalidInput("q must be at least 2");
  BigInt num = num::big_pow(q, rho) - 1;
  if (r > 0) num -= BigInt(r) * (num::big_pow(q, i) - q);
  if (num < 0 || num % (q - 1) != 0)
    throw InvalidInput("size formula is not a nonnegative integer for these parameters");
  return num / (q - 1);
}

bool is_partially_scattered(const Subspace& U, unsigned t, const EnumOptions& opts) {
  const Field& F = U.field();
  if (t == 0 || F.n() % t != 0) throw InvalidInput("t must divide n");
  U.checked_size(opts.cap);
  const auto basis = F.subfield_basis(F.h() * t, F.h());
  bool ok = true;
  U.for_each_projective_rep([&](const Vec& v) {
    if (ok && t - extension_defect(U, v, basis) > 1) ok = false;
  });
  return ok;
}

bool heavy_points_subgeometry(const SpectrumReport& report, const Subspace& U) {
  const auto& c = report.classification;
  const bool uniform = c.heavy.size() == 1;
  if (!(c.kind == Kind::regular_fat || (c.kind == Kind::fat_irregular && uniform)))
    throw InvalidInput("heavy_points_subgeometry needs a regular fat linear set");
  const Field& F = U.field();
  const unsigned i = c.heavy.begin()->first;
  for (const auto& p : report.heavy_points)
    for (auto x : p)
      if (!F.in_fq(x)) return false;

  // Every point of PG(k-1, q) must have weight i.
  const auto fq = F.fq_elements();
  const std::size_t k = U.k();
  BigInt expected = (num::big_pow(F.q(), static_cast<unsigned>(k)) - 1) / (F.q() - 1);
  if (BigInt(report.heavy_points.size()) != expected) return false;
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::size_t> digit(k - lead - 1, 0);
    while (true) {
      Vec p(k, F.zero());
      p[lead] = F.one();
      for (std::size_t j = 0; j < digit.size(); ++j) p[lead + 1 + j] = fq[digit[j]];
      if (point_weight(U, p) != i) return false;
      std::size_t j = 0;
      while (j < digit.size() && digit[j] == fq.size() - 1) digit[j++] = 0;
      if (j == digit.size()) break;
      ++digit[j];
    }
  }
  return true;
}

Rank2iReport rank2i_structure(const Subspace& U, const EnumOptions& opts) {
  const Field& F = U.field();
  if (U.k() != 2) throw HypothesisError("k_eq_2", "rank2i_structure needs a subspace of F_{q^n}^2");
  const auto rep = weight_spectrum(U, opts);
  const auto& c = rep.classification;
  Rank2iReport out;
  if (c.heavy.size() != 1)
    throw HypothesisError("uniform_heavy_weight", "heavy points must share a single weight");
  out.i = c.heavy.begin()->first;
  out.r = c.heavy.begin()->second;
  if (U.rho() != 2 * out.i) throw HypothesisError("rank_2i", "rank must equal twice the heavy weight");
  if (out.r <= 2) {
    out.reason = "r <= 2: nothing to check";
    out.statement_holds = true;
    return out;
  }
  const Vec e1{F.one(), F.zero()}, e2{F.zero(), F.one()}, e12{F.one(), F.one()};
  for (const auto& p : {e1, e2, e12})
    if (!std::binary_search(rep.heavy_points.begin(), rep.heavy_points.end(), p))
      throw HypothesisError("normalized_heavy_points",
                            "(1:0), (0:1) and (1:1) must be heavy points");
  out.applicable = true;

  // T = {x : (x, 0) ∈ U}.
  linalg::FqSpan t_span(F, 1);
  std::vector<Elem> t_basis;
  U.for_each_vector(0, F.q(), [&](const Vec& v) {
    if (v[1].v == 0 && v[0].v != 0 && t_span.insert(Vec{v[0]})) t_basis.push_back(v[0]);
  });

  for (unsigned j : num::divisors(F.n())) {
    const Elem g = F.subfield_generator(F.h() * j);
    bool stable = true;
    for (auto x : t_basis) stable = stable && t_span.contains(Vec{F.mul(g, x)});
    if (stable) out.subfield_degree = j;
  }
  const std::uint64_t s_size = num::ipow(F.q(), out.subfield_degree);
  out.r_matches = out.r == s_size + 1;

  std::vector<Vec> expected{e2};
  for (auto a : F.subfield_elements(F.h() * out.subfield_degree)) expected.push_back(Vec{F.one(), a});
  std::sort(expected.begin(), expected.end());
  out.heavy_points_match = expected == rep.heavy_points;
  out.statement_holds = out.r_matches && F.n() % out.subfield_degree == 0;
  return out;
}

}  // namespace fatlin::linset
