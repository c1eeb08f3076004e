// fatlin: command-line front end. JSON in, JSON out.
//
// Exit codes: 0 ok, 1 check mismatch, 2 invalid input, 3 enumeration cap.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fatlin/equiv.hpp"
#include "fatlin/error.hpp"
#include "fatlin/families.hpp"
#include "fatlin/io.hpp"
#include "fatlin/rmc.hpp"

using namespace fatlin;
using families::Built;
using gf::Elem;
using gf::FieldPtr;
using nlohmann::json;

namespace {

struct Globals {
  bool pretty = false;
  unsigned jobs = 0;
  std::optional<std::uint64_t> cap;
  std::string out;
};

struct ConstructArgs {
  std::string family;
  std::uint64_t q = 0;
  unsigned n = 0, t = 0, k = 2, ell = 3;
  long s = 1, J = 1;
  std::string w = "auto", I = "full", eta = "auto", mu = "auto", m = "auto", delta, lambda = "auto";
  std::string xi = "auto", f, a = "0", b = "1", S, Sp;
  bool unchecked = false;
};

linset::EnumOptions enum_options(const Globals& g) {
  linset::EnumOptions o;
  o.jobs = g.jobs;
  if (const char* env = std::getenv("FATLIN_CAP")) {
    try {
      o.cap = std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput("FATLIN_CAP must be a positive integer");
    }
  }
  if (g.cap) o.cap = *g.cap;
  return o;
}

void emit(const Globals& g, const json& j) {
  const std::string text = io::dump(j, g.pretty) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InvalidInput("cannot write " + g.out);
  f << text;
}

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot read " + path);
    buf << f.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON: " + e.what());
  }
}

FieldPtr field_for(std::uint64_t q, unsigned n) {
  if (q < 2) throw InvalidInput("--q is required and must be a prime power");
  if (n == 0) throw InvalidInput("field degree must be positive");
  const auto factors = num::prime_factors(q);
  if (factors.size() != 1) throw InvalidInput("q must be a prime power");
  const std::uint64_t p = factors.front();
  unsigned h = 0;
  for (std::uint64_t x = q; x > 1; x /= p) ++h;
  return gf::Field::make(p, h, n);
}

json as_json_arg(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error&) {
    return json(s);
  }
}

Elem elem_arg(const gf::Field& F, const std::string& s, const char* name) {
  if (s.empty()) throw InvalidInput(std::string("--") + name + " is required");
  return io::parse_elem(F, as_json_arg(s));
}

std::vector<Elem> subspace_arg(const gf::Field& F, const std::string& s, unsigned t) {
  const auto full = families::subfield_fq_basis(F, t);
  if (s == "full") return full;
  const json j = as_json_arg(s);
  if (j.is_number_unsigned()) {
    const auto d = j.get<std::size_t>();
    if (d == 0 || d > full.size()) throw InvalidInput("--I dimension must lie in [1, t]");
    return {full.begin(), full.begin() + static_cast<long>(d)};
  }
  return io::elems_from_json(F, j);
}

Elem first_norm_one(const gf::Field& F, unsigned t) {
  for (auto x : F.subfield_elements(F.h() * t))
    if (x != F.zero() && x != F.one() && F.rel_norm(x, F.h() * t, F.h()) == F.one()) return x;
  throw InvalidInput("no element of norm one other than 1");
}

std::pair<Elem, Elem> first_npsz(const gf::Field& F, long s) {
  for (std::uint64_t x = 1; x < F.order(); ++x)
    for (std::uint64_t m = 1; m < F.order(); ++m)
      if (families::npsz_violations(F, Elem{x}, Elem{m}, s).empty()) return {Elem{x}, Elem{m}};
  throw InvalidInput("no admissible (xi, mu) for these parameters");
}

Built construct(const ConstructArgs& a) {
  const std::string& fam = a.family;
  const bool check = !a.unchecked;
  if (fam == "t1") {
    auto F = field_for(a.q, 2 * a.t);
    const Elem w = a.w == "auto" ? families::auto_w(*F, a.t) : elem_arg(*F, a.w, "w");
    return families::construct_T1(F, {a.s, w, subspace_arg(*F, a.I, a.t), a.k}, check);
  }
  if (fam == "t2") {
    auto F = field_for(a.q, a.ell * a.t);
    const Elem eta = a.eta == "auto" ? families::e_components(*F, a.ell, a.t).eta : elem_arg(*F, a.eta, "eta");
    return families::construct_T2(F, {a.s, eta, subspace_arg(*F, a.I, a.t), a.k, a.ell}, check);
  }
  if (fam == "polform1") {
    auto F = field_for(a.q, 2 * a.t);
    const Elem mu = a.mu == "auto" ? first_norm_one(*F, a.t) : elem_arg(*F, a.mu, "mu");
    const Elem w = a.w == "auto" ? families::auto_w(*F, a.t) : elem_arg(*F, a.w, "w");
    return families::construct_polform1(F, mu, w, a.s);
  }
  if (fam == "polform2") {
    auto F = field_for(a.q, 2 * a.t);
    const Elem m = a.m == "auto" ? F->pow(families::auto_w(*F, a.t), F->q() + 1) : elem_arg(*F, a.m, "m");
    return families::construct_polform2(F, m, a.s);
  }
  if (fam == "phi") {
    auto F = field_for(a.q, 2 * a.t);
    if (a.m == "auto") throw InvalidInput("--m is required for phi");
    return families::construct_phi(F, elem_arg(*F, a.m, "m"), a.J);
  }
  if (fam == "lp") {
    auto F = field_for(a.q, a.n);
    return families::construct_lp(F, elem_arg(*F, a.delta, "delta"), a.s);
  }
  if (fam == "trace-club") {
    auto F = field_for(a.q, a.n);
    return families::construct_trace_club(F, a.t, a.s);
  }
  if (fam == "club-lambda") {
    auto F = field_for(a.q, a.n);
    return families::construct_club_lambda(F, a.lambda == "auto" ? F->omega() : elem_arg(*F, a.lambda, "lambda"));
  }
  if (fam == "club-uab") {
    auto F = field_for(a.q, a.ell * a.t);
    const families::SubfieldPoly f{a.t, io::elems_from_json(*F, as_json_arg(a.f))};
    return families::construct_club_uab(F, f, elem_arg(*F, a.a, "a"), elem_arg(*F, a.b, "b"), a.ell);
  }
  if (fam == "comp-product") {
    auto F = field_for(a.q, a.n);
    return families::construct_comp_product(F, io::elems_from_json(*F, as_json_arg(a.S)),
                                            io::elems_from_json(*F, as_json_arg(a.Sp)));
  }
  if (fam == "npsz") {
    auto F = field_for(a.q, 2 * a.t);
    auto [xi, mu] = a.xi == "auto" ? first_npsz(*F, a.s)
                                   : std::pair{elem_arg(*F, a.xi, "xi"), elem_arg(*F, a.mu, "mu")};
    return families::construct_npsz(F, xi, mu, a.s, check);
  }
  throw InvalidInput("unknown family \"" + fam + "\"");
}

struct Loaded {
  Subspace subspace;
  std::optional<families::ConstructionDescriptor> descriptor;
};

Loaded load_subspace(const std::string& path) {
  const json j = read_json(path);
  if (j.contains("subspace")) {
    std::optional<families::ConstructionDescriptor> d;
    if (j.contains("descriptor")) d = families::descriptor_from_json(j.at("descriptor"));
    return {io::subspace_from_json(j.at("subspace")), std::move(d)};
  }
  return {io::subspace_from_json(j), std::nullopt};
}

families::ConstructionDescriptor load_descriptor(const std::string& path) {
  const json j = read_json(path);
  return families::descriptor_from_json(j.contains("descriptor") ? j.at("descriptor") : j);
}

int cmd_classify(const Globals& g, const std::string& path, const std::vector<unsigned>& partial) {
  const auto opts = enum_options(g);
  auto [U, d] = load_subspace(path);
  auto rep = linset::weight_spectrum(U, opts);
  const auto& c = rep.classification;
  if (c.kind == linset::Kind::regular_fat || (c.kind == linset::Kind::fat_irregular && c.heavy.size() == 1))
    rep.heavy_points_subgeometry = linset::heavy_points_subgeometry(rep, U);
  for (unsigned t : partial) rep.partially_scattered[t] = linset::is_partially_scattered(U, t, opts);
  json out = io::spectrum_to_json(rep);
  bool ok = rep.vector_identity && rep.weights_cross_checked && rep.size_formula_ok.value_or(true);
  if (d) {
    out["family"] = families::family_name(d->family);
    out["violated"] = d->violated;
    if (d->violated.empty()) {
      const bool match = d->expected.matches(rep);
      out["checks"]["expected_match"] = match;
      ok = ok && match;
    }
  }
  emit(g, out);
  return ok ? 0 : 1;
}

int cmd_phi_sweep(const Globals& g, std::uint64_t q, unsigned t, long J) {
  const auto opts = enum_options(g);
  auto F = field_for(q, 2 * t);
  json rows = json::array();
  std::map<std::string, std::uint64_t> counts;
  bool all = true;
  for (auto m : F->subfield_elements(F->h() * t)) {
    if (m == F->zero()) continue;
    const auto b = families::construct_phi(F, m, J);
    const auto rep = linset::weight_spectrum(b.subspace, opts);
    const auto pe = families::phi_expected_class(*F, m, J);
    const bool match = pe.expected.matches(rep);
    all = all && match;
    const auto& c = rep.classification;
    std::string label = linset::kind_name(c.kind);
    if (c.kind == linset::Kind::regular_fat)
      label += "(" + std::to_string(c.r) + "," + std::to_string(c.i) + ")";
    ++counts[label];
    rows.push_back({{"m", io::elem_to_json(*F, m)},
                    {"case", families::phi_case_name(pe.which)},
                    {"predicted", families::descriptor_to_json(b.descriptor)["expected"]},
                    {"enumerated", io::classification_to_json(c)},
                    {"match", match}});
  }
  emit(g, {{"q", q}, {"t", t}, {"J", J}, {"rows", rows}, {"counts", counts}, {"all_match", all}});
  return all ? 0 : 1;
}

int cmd_code(const Globals& g, const std::string& path) {
  const auto opts = enum_options(g);
  const auto loaded = load_subspace(path);
  const auto rep = rmc::code_report(loaded.subspace, opts);
  const json j = rmc::code_report_to_json(rep);
  bool ok = true;
  for (const auto& [key, v] : j.at("checks").items()) {
    if (key == "A_enumerated") continue;
    if (v.is_boolean()) ok = ok && v.get<bool>();
    if (v.is_object() && v.contains("ok")) ok = ok && v.at("ok").get<bool>();
  }
  emit(g, j);
  return ok ? 0 : 1;
}

int cmd_equiv(const Globals& g, const std::string& p1, const std::string& p2) {
  const auto d1 = load_descriptor(p1);
  const auto d2 = load_descriptor(p2);
  if (d1.family != d2.family) throw InvalidInput("descriptors belong to different families");
  const auto v = equiv::check_equiv(d1, d2, enum_options(g));
  emit(g, equiv::verdict_to_json(*d1.field, v));
  return 0;
}

int cmd_field(const Globals& g, std::uint64_t q, unsigned n) {
  auto F = field_for(q, n);
  json j = io::field_to_json(*F);
  j["q"] = F->q();
  j["order"] = F->order();
  j["omega"] = io::elem_to_json(*F, F->omega());
  emit(g, j);
  return 0;
}

int fail(int code, const std::string& kind, const std::string& reason, const std::string& hypothesis = {}) {
  json j{{"error", kind}, {"reason", reason}};
  if (!hypothesis.empty()) j["hypothesis"] = hypothesis;
  std::cout << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear sets, regular fat constructions and their rank-metric codes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--pretty", g.pretty, "Indent JSON output");
  app.add_option("--jobs", g.jobs, "Worker threads for enumerations (0 = all cores)");
  app.add_option("--cap", g.cap, "Enumeration cap; overrides FATLIN_CAP");
  app.add_option("-o,--out", g.out, "Write output to a file instead of stdout");

  std::uint64_t field_q = 0;
  unsigned field_n = 0;
  auto* field = app.add_subcommand("field", "Describe F_{q^n}");
  field->add_option("--q", field_q, "Base field size")->required();
  field->add_option("--n", field_n, "Degree over F_q")->required();

  ConstructArgs ca;
  auto* cons = app.add_subcommand("construct", "Build a subspace from a family");
  cons->add_option("family", ca.family,
                   "t1 | t2 | polform1 | polform2 | phi | lp | trace-club | club-lambda | club-uab | "
                   "comp-product | npsz")
      ->required();
  cons->add_option("--q", ca.q, "Base field size")->required();
  cons->add_option("--n", ca.n, "Degree over F_q (lp, trace-club, club-lambda, comp-product)");
  cons->add_option("--t", ca.t, "Half degree (t1, polform, phi, npsz) or subfield degree");
  cons->add_option("--s", ca.s, "Twist exponent");
  cons->add_option("--k", ca.k, "Number of copies");
  cons->add_option("--ell", ca.ell, "Number of E_j components (t2) or n/t (club-uab)");
  cons->add_option("--J", ca.J, "sigma = q^J (phi)");
  cons->add_option("--w", ca.w, "Element of E*, or auto");
  cons->add_option("--I", ca.I, "full, a dimension, or a JSON array of elements");
  cons->add_option("--eta", ca.eta, "Element of E_1*, or auto");
  cons->add_option("--mu", ca.mu, "mu (polform1, npsz)");
  cons->add_option("--m", ca.m, "m (phi, polform2)");
  cons->add_option("--delta", ca.delta, "delta (lp)");
  cons->add_option("--lambda", ca.lambda, "lambda (club-lambda), or auto");
  cons->add_option("--xi", ca.xi, "xi (npsz), or auto");
  cons->add_option("--f", ca.f, "Coefficients of f on F_{q^t} (club-uab)");
  cons->add_option("--a", ca.a, "a (club-uab)");
  cons->add_option("--b", ca.b, "b (club-uab)");
  cons->add_option("--S", ca.S, "Basis of S (comp-product)");
  cons->add_option("--Sp", ca.Sp, "Basis of S' (comp-product)");
  cons->add_flag("--unchecked", ca.unchecked, "Build even if theorem hypotheses fail");

  std::string classify_path;
  std::vector<unsigned> partial;
  auto* classify = app.add_subcommand("classify", "Weight spectrum and classification");
  classify->add_option("file", classify_path, "Subspace or construct output, - for stdin")->required();
  classify->add_option("--partial-scattered", partial, "Check R-q^t-partial scatteredness for t");

  std::uint64_t sweep_q = 0;
  unsigned sweep_t = 0;
  long sweep_J = 1;
  auto* sweep = app.add_subcommand("phi-sweep", "Predicted vs enumerated class of phi for every m");
  sweep->add_option("--q", sweep_q)->required();
  sweep->add_option("--t", sweep_t)->required();
  sweep->add_option("--J", sweep_J);

  std::string code_path;
  auto* code = app.add_subcommand("code", "Rank-metric code of the trace dual");
  code->add_option("file", code_path)->required();

  std::string eq1, eq2;
  auto* eq = app.add_subcommand("equiv", "Equivalence of two T1 or T2 constructions");
  eq->add_option("first", eq1)->required();
  eq->add_option("second", eq2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*field) return cmd_field(g, field_q, field_n);
    if (*cons) {
      const auto b = construct(ca);
      emit(g, {{"subspace", io::subspace_to_json(b.subspace)},
               {"descriptor", families::descriptor_to_json(b.descriptor)}});
      return 0;
    }
    if (*classify) return cmd_classify(g, classify_path, partial);
    if (*sweep) return cmd_phi_sweep(g, sweep_q, sweep_t, sweep_J);
    if (*code) return cmd_code(g, code_path);
    if (*eq) return cmd_equiv(g, eq1, eq2);
  } catch (const HypothesisError& e) {
    return fail(2, "hypothesis", e.what(), e.hypothesis());
  } catch (const InvalidInput& e) {
    return fail(2, "invalid_input", e.what());
  } catch (const json::exception& e) {
    return fail(2, "invalid_input", e.what());
  } catch (const CapExceeded& e) {
    return fail(3, "cap_exceeded", e.what());
  } catch (const CheckFailure& e) {
    return fail(1, "check_failure", e.what());
  } catch (const Error& e) {
    return fail(1, "error", e.what());
  }
  return 2;
}
