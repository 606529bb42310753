#include "kloos/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include "kloos/acceptance.hpp"
#include "kloos/group_oracle.hpp"
#include "kloos/recursion.hpp"

namespace kloos {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kCacheEnv = "KLOOS_CACHE_DIR";

// Raised when a requested identity does not hold; carries the report.
struct IdentityFailure {
  Json report;
};

std::string str(const BigInt& x) { return x.get_str(); }
std::string str(const BigRational& x) { return x.get_str(); }

Json terms_json(const std::vector<NamedTerm>& terms) {
  Json out = Json::array();
  for (const NamedTerm& t : terms) out.push_back({{"term", t.name}, {"value", str(t.value)}});
  return out;
}

Json field_json(const FieldTable& t) {
  return {{"spec", t.params().spec()}, {"q", t.q()}, {"modulus", poly_to_string(t.params().modulus)}};
}

Json fam_json(const CosetFamily& f) {
  return {{"sign", to_string(f.sign)}, {"n", f.n}, {"i", f.i}, {"q", f.q}};
}

Json histogram_json(const std::vector<BigInt>& by_index) {
  Json out = Json::object();
  for (std::size_t v = 0; v < by_index.size(); ++v) out[std::to_string(v)] = str(by_index[v]);
  return out;
}

// Options shared by most subcommands.
struct Options {
  std::string field = "3^1";
  std::string format = "json";
  int jobs = 1;

  std::string sign = "minus";
  int n = 1;
  int i = 1;
  std::string code = "o";
  std::string kind = "T12SK";
  std::string profile = "closed";
  std::string lower = "solved";
  std::string job;
  int h = 1;
  int h_max = 4;
  int m = 1;
  int m_max = 4;
  int j_max = 6;
  std::vector<int> criteria;
};

CodeSpec code_spec(const Options& o) {
  const Sign s = parse_sign(o.sign);
  if (o.code == "o") return CodeSpec::o_code(s, o.n, o.i);
  if (o.code == "sp") return CodeSpec::sp_code(s, o.n);
  throw ParameterError("--code must be 'o' or 'sp'");
}

CosetFamily coset_family(const Options& o, const FieldTable& t) {
  CosetFamily fam{parse_sign(o.sign), o.n, o.i, t.q()};
  fam.validate();
  return fam;
}

/// Optional on-disk cache of delta tables keyed by field spec.
class DeltaCache {
 public:
  DeltaCache() {
    if (const char* dir = std::getenv(kCacheEnv); dir && *dir) dir_ = dir;
  }

  DeltaTable get(const FieldTable& t, int m) const {
    if (dir_.empty()) return delta_table(t, m);
    const std::filesystem::path path = file(t, m);
    if (auto hit = load(path, t, m)) return *hit;
    DeltaTable d = delta_table(t, m);
    store(path, t, d);
    return d;
  }

 private:
  std::filesystem::path file(const FieldTable& t, int m) const {
    std::string key = t.params().spec();
    for (char& c : key) {
      if (c == '^' || c == '/' || c == ',') c = '_';
    }
    return std::filesystem::path(dir_) / ("delta_" + key + "_m" + std::to_string(m) + ".json");
  }

  static std::optional<DeltaTable> load(const std::filesystem::path& path, const FieldTable& t, int m) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      const Json j = Json::parse(in);
      if (j.at("spec") != t.params().spec() || j.at("m") != m) return std::nullopt;
      DeltaTable d{m, j.at("values").get<std::vector<std::uint64_t>>()};
      if (d.values.size() != static_cast<std::size_t>(t.q())) return std::nullopt;
      // total mass of delta(m, q; .) is (q-1)^m
      BigInt mass = 0;
      for (auto v : d.values) mass += BigInt(static_cast<unsigned long>(v));
      if (mass != big_pow(t.q() - 1, static_cast<unsigned long>(m))) return std::nullopt;
      return d;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  static void store(const std::filesystem::path& path, const FieldTable& t, const DeltaTable& d) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream outf(path);
    if (!outf) return;  // the cache is best effort
    outf << Json{{"spec", t.params().spec()}, {"m", d.m}, {"values", d.values}}.dump() << "\n";
  }

  std::string dir_;
};

// ---- subcommands -----------------------------------------------------------

Json cmd_field(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  Json j = field_json(t);
  j["r"] = t.r();
  std::vector<BigInt> trace_hist(3, BigInt(0));
  long squares = 0;
  Json elements = Json::array();
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const FieldElement x{v};
    trace_hist[static_cast<std::size_t>(t.trace(x))] += 1;
    if (t.is_square(x)) ++squares;
    std::vector<int> coeffs;
    for (int k = 0; k < t.r(); ++k) coeffs.push_back(t.coefficient(x, k));
    elements.push_back({{"index", v},
                        {"coefficients", coeffs},
                        {"trace", t.trace(x)},
                        {"square", t.is_square(x)},
                        {"orbit", t.orbit_size(x)}});
  }
  j["trace_histogram"] = histogram_json(trace_hist);
  j["nonzero_squares"] = squares;
  j["elements"] = elements;
  return j;
}

Json cmd_moments(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const MomentKind kind = parse_moment_kind(o.kind);
  Json j = field_json(t);
  j["kind"] = to_string(kind);
  j["h"] = o.h;
  j["value"] = str(moment(t, kind, o.h));
  return j;
}

Json cmd_delta(const Options& o, std::string* csv) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const DeltaTable d = DeltaCache().get(t, o.m);
  Json j = field_json(t);
  j["m"] = o.m;
  Json values = Json::object();
  for (std::size_t v = 0; v < d.values.size(); ++v) values[std::to_string(v)] = std::to_string(d.values[v]);
  j["values"] = values;
  if (csv) {
    *csv = "beta,count\n";
    for (std::size_t v = 0; v < d.values.size(); ++v) *csv += std::to_string(v) + "," + std::to_string(d.values[v]) + "\n";
  }
  return j;
}

Json cmd_constants(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const Sign s = parse_sign(o.sign);
  CosetFamily{s, o.n, 1, t.q()}.validate();
  const CosetConstants k = constants(s, o.n, t.q());
  Json j = field_json(t);
  j["sign"] = to_string(s);
  j["n"] = o.n;
  j["A"] = str(k.A);
  j["B"] = str(k.B);
  j["N"] = str(k.N);
  Json bruhat = Json::array();
  for (int r = 0; r <= o.n; ++r) {
    const BruhatSizes b = bruhat_sizes(o.n, t.q(), r);
    bruhat.push_back({{"r", r}, {"cosets", str(b.cosets)}, {"double_coset", str(b.double_coset)}});
  }
  j["bruhat"] = bruhat;
  return j;
}

Json cmd_weights(const Options& o, std::string* csv) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const CodeSpec spec = code_spec(o);
  spec.validate();
  CellProfile profile;
  if (o.profile == "closed") {
    profile = cell_profile(t, spec);
  } else if (o.profile == "printed") {
    if (spec.family != CodeFamily::symplectic || spec.sign != Sign::plus) {
      throw ParameterError("--profile printed applies to the symplectic plus code only");
    }
    profile = sp_plus_profile_printed(t);
  } else {
    throw ParameterError("--profile must be 'closed' or 'printed'");
  }
  const MassDiagnostic mass = mass_diagnostic(profile, spec);
  Json j = field_json(t);
  j["code"] = describe(spec);
  j["length"] = str(mass.code_length);
  j["profile_mass"] = str(mass.profile_mass);
  j["mass_consistent"] = mass.consistent;
  j["cells"] = histogram_json(profile.sizes);
  if (!mass.consistent) {
    j["note"] = "profile mass differs from the code length; weight counts not computed";
    return j;
  }
  const WeightCounts wc = weight_counts(t, profile, o.j_max);
  Json counts = Json::array();
  for (const BigInt& c : wc.prefix) counts.push_back(str(c));
  j["weights"] = counts;
  if (csv) {
    *csv = "j,count\n";
    for (int w = 0; w <= wc.j_max(); ++w) *csv += std::to_string(w) + "," + str(wc.at(w)) + "\n";
  }
  return j;
}

Json cmd_dual(const Options& o, std::string* csv) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const CodeSpec spec = CodeSpec::o_code(parse_sign(o.sign), o.n, o.i);
  Json j = field_json(t);
  j["code"] = describe(spec);
  j["length"] = str(constants(spec.sign, spec.n, t.q()).N);
  Json words = Json::array();
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    words.push_back({{"a", v}, {"weight", str(dual_weight(t, spec, {v}))}});
  }
  j["dual_weights"] = words;
  Json dist = Json::object();
  for (const auto& [w, c] : dual_distribution(t, spec)) dist[str(w)] = str(c);
  j["distribution"] = dist;
  if (csv) {
    *csv = "weight,count\n";
    for (const auto& [w, c] : dual_distribution(t, spec)) *csv += str(w) + "," + str(c) + "\n";
  }
  return j;
}

Json report_json(const RecursionReport& r, bool with_trace) {
  Json j = {{"h", r.h},
            {"lhs", str(r.lhs)},
            {"rhs", str(r.rhs)},
            {"derivation_rhs", str(r.derivation_rhs)},
            {"t12sk_solved", str(r.t12sk_solved)},
            {"t12sk_direct", str(r.t12sk_direct)},
            {"match", r.match},
            {"routes_agree", r.routes_agree}};
  if (with_trace) j["trace"] = terms_json(r.trace);
  return j;
}

Json cmd_verify_recursion(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const Sign s = parse_sign(o.sign);
  LowerOrder lower;
  if (o.lower == "solved") {
    lower = LowerOrder::solved;
  } else if (o.lower == "direct") {
    lower = LowerOrder::direct;
  } else {
    throw ParameterError("--lower must be 'solved' or 'direct'");
  }
  const auto chain = recursion_chain(s, o.n, t, o.h_max, o.i, lower);
  Json j = field_json(t);
  j["sign"] = to_string(s);
  j["n"] = o.n;
  j["i"] = o.i;
  j["unknown"] = s == Sign::minus ? "T12SK^h" : "T12SK^{2h}";
  Json reports = Json::array();
  const RecursionReport* failure = nullptr;
  for (const RecursionReport& r : chain) {
    reports.push_back(report_json(r, false));
    if (!failure && !(r.match && r.routes_agree)) failure = &r;
  }
  j["reports"] = reports;
  j["pass"] = failure == nullptr;
  if (failure) {
    j["first_failure"] = report_json(*failure, true);
    throw IdentityFailure{j};
  }
  return j;
}

Json cmd_verify_sk(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const Sign s = parse_sign(o.sign);
  Json j = field_json(t);
  j["sign"] = to_string(s);
  j["n"] = o.n;
  Json reports = Json::array();
  bool pass = true;
  for (int h = 1; h <= o.h_max; ++h) {
    const SkIdentityReport r = sk_identity_report(s, o.n, t, h, o.i);
    Json rj = {{"h", h}, {"lhs", str(r.lhs)}, {"rhs", str(r.rhs)}, {"match", r.match}};
    reports.push_back(rj);
    if (!r.match && pass) {
      pass = false;
      j["first_failure"] = rj;
    }
  }
  j["reports"] = reports;
  j["pass"] = pass;
  if (!pass) throw IdentityFailure{j};
  return j;
}

Json cmd_verify_pless(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  const CodeSpec spec = CodeSpec::o_code(parse_sign(o.sign), o.n, o.i);
  spec.validate();
  if (o.h_max < 0 || o.h_max > 12) throw ParameterError("--h-max must be in 0..12");
  Json j = field_json(t);
  j["code"] = describe(spec);
  Json reports = Json::array();
  bool pass = true;
  for (int h = 0; h <= o.h_max; ++h) {
    const bool ok = pless_dual_moment_check(t, spec, h);
    reports.push_back({{"h", h}, {"match", ok}});
    if (!ok && pass) {
      pass = false;
      j["first_failure"] = {{"h", h}};
    }
  }
  j["reports"] = reports;
  j["pass"] = pass;
  if (!pass) throw IdentityFailure{j};
  return j;
}

Json cmd_verify_charsum(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  if (o.m_max < 0 || o.m_max > 4) throw ParameterError("--m-max must be in 0..4");
  Json j = field_json(t);
  Json reports = Json::array();
  bool pass = true;
  auto record = [&](const std::string& identity, int m, const std::string& at, std::uint32_t v, bool ok) {
    if (ok || !pass) return;
    pass = false;
    j["first_failure"] = {{"identity", identity}, {"m", m}, {at, v}};
  };
  for (int m = 0; m <= o.m_max; ++m) {
    bool incomplete = true;
    bool transform = true;
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
      const bool a = incomplete_moment_identity(t, m, {v});
      incomplete = incomplete && a;
      record("incomplete_moment", m, "beta", v, a);
      if (v == 0) continue;
      const bool b = char_delta_identity(t, m, {v});
      transform = transform && b;
      record("delta_transform", m, "a", v, b);
    }
    reports.push_back({{"m", m}, {"incomplete_moment", incomplete}, {"delta_transform", transform}});
  }
  const DeltaTable d1 = DeltaCache().get(t, 1);
  bool squares = true;
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const bool ok = static_cast<std::uint64_t>(delta1_via_squares(t, {v})) == d1.at({v});
    squares = squares && ok;
    record("delta1_square_class", 1, "beta", v, ok);
  }
  j["reports"] = reports;
  j["delta1_square_class"] = squares;
  j["pass"] = pass;
  if (!pass) throw IdentityFailure{j};
  return j;
}

Json cmd_verify_salie(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  if (o.h_max < 1 || o.h_max > 5) throw ParameterError("--h-max must be in 1..5");
  Json j = field_json(t);
  Json reports = Json::array();
  bool pass = true;
  for (int h = 1; h <= o.h_max; ++h) {
    const bool ok = salie_check(t, h);
    reports.push_back({{"h", h},
                       {"MK", str(moment(t, MomentKind::MK, h))},
                       {"M_{h-1}", str(salie_count(t, h - 1))},
                       {"match", ok}});
    if (!ok && pass) {
      pass = false;
      j["first_failure"] = reports.back();
    }
  }
  j["reports"] = reports;
  j["pass"] = pass;
  if (!pass) throw IdentityFailure{j};
  return j;
}

Json cmd_verify_all(const Options& o, std::ostream& err, std::string* csv) {
  std::vector<int> ids = o.criteria;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
  }
  for (int id : ids) {
    if (id < 1 || id > kCriterionCount) throw ParameterError("--criterion must be in 1.." + std::to_string(kCriterionCount));
  }
  // work queue over criteria; results are reported in id order
  std::vector<CriterionResult> results(ids.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(o.jobs, static_cast<int>(ids.size())));
  auto worker = [&] {
    for (std::size_t k = next++; k < ids.size(); k = next++) results[k] = run_criterion(ids[k], 1);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Json list = Json::array();
  int passed = 0;
  for (const CriterionResult& r : results) {
    err << format_result_line(r) << "\n";
    if (r.pass) ++passed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  Json j = {{"criteria", list}, {"passed", passed}, {"total", static_cast<int>(results.size())}};
  j["pass"] = passed == static_cast<int>(results.size());
  if (csv) {
    *csv = "id,name,pass,detail\n";
    for (const CriterionResult& r : results) {
      *csv += std::to_string(r.id) + ",\"" + r.name + "\"," + (r.pass ? "true" : "false") + ",\"" + r.detail + "\"\n";
    }
  }
  if (!j["pass"].get<bool>()) {
    for (const CriterionResult& r : results) {
      if (!r.pass) {
        j["first_failure"] = {{"id", r.id}, {"detail", r.detail}};
        break;
      }
    }
    throw IdentityFailure{j};
  }
  return j;
}

// ---- oracle jobs -----------------------------------------------------------

Json oracle_q(const Options& o, const FieldTable& t) {
  const auto q_elems = build_Q(o.n, t);
  bool blocks = true;
  for (const MatrixGF& w : q_elems) blocks = blocks && block_relations_hold(t, w);
  const BigInt expected = gl_order(o.n, t.q()) * big_pow(t.q(), static_cast<unsigned long>(o.n * (o.n + 1) / 2));
  const BigInt order(static_cast<unsigned long>(q_elems.size()));
  return {{"job", "q"},
          {"n", o.n},
          {"order", str(order)},
          {"expected", str(expected)},
          {"block_relations", blocks},
          {"pass", blocks && order == expected}};
}

Json oracle_coset(const Options& o, const FieldTable& t) {
  const CosetFamily fam = coset_family(o, t);
  const CosetEnumeration e = enumerate_double_coset(fam, t);
  const CellProfile profile = cell_profile(t, CodeSpec::o_code(fam.sign, fam.n, fam.i));
  std::vector<BigInt> hist;
  for (auto c : e.trace_histogram) hist.push_back(BigInt(static_cast<unsigned long>(c)));
  const BigInt count(static_cast<unsigned long>(e.elements.size()));
  const BigInt expected = constants(fam).N;
  return {{"job", "coset"},
          {"family", fam_json(fam)},
          {"count", str(count)},
          {"expected_count", str(expected)},
          {"histogram", histogram_json(hist)},
          {"closed_form", histogram_json(profile.sizes)},
          {"pass", count == expected && hist == profile.sizes}};
}

Json oracle_o3(const Options& o, const FieldTable& t) {
  const auto o3 = enumerate_O3(t, o.jobs);
  const std::set<MatrixGF> group(o3.begin(), o3.end());
  const auto q_elems = build_Q(1, t);
  bool pass = true;

  BigInt expected = 0;
  Json cells = Json::array();
  std::set<MatrixGF> seen;
  bool disjoint = true;
  bool contained = true;
  for (int r = 0; r <= 1; ++r) {
    const BruhatSizes b = bruhat_sizes(1, t.q(), r);
    for (bool rho : {false, true}) {
      const auto cell = product_coset(1, r, rho, q_elems, t);
      for (const MatrixGF& w : cell) {
        contained = contained && group.count(w);
        disjoint = seen.insert(w).second && disjoint;
      }
      const BigInt size(static_cast<unsigned long>(cell.size()));
      pass = pass && size == b.double_coset;
      cells.push_back({{"r", r}, {"rho", rho}, {"size", str(size)}, {"expected", str(b.double_coset)}});
    }
    expected += 2 * b.double_coset;
  }
  const bool partition = disjoint && contained && seen.size() == group.size();

  Json quotients = Json::array();
  for (int r = 0; r <= 1; ++r) {
    const BigInt got = bruhat_quotient_size(1, r, t);
    const BigInt want = bruhat_sizes(1, t.q(), r).cosets;
    pass = pass && got == want;
    quotients.push_back({{"r", r}, {"computed", str(got)}, {"expected", str(want)}});
  }
  const BigInt order(static_cast<unsigned long>(o3.size()));
  pass = pass && partition && order == expected;
  return {{"job", "o3"},
          {"order", str(order)},
          {"expected", str(expected)},
          {"double_cosets", cells},
          {"partition", partition},
          {"bruhat_quotients", quotients},
          {"pass", pass}};
}

Json dist_json(const std::map<long, BigInt>& d) {
  Json out = Json::object();
  for (const auto& [w, c] : d) out[std::to_string(w)] = str(c);
  return out;
}

Json oracle_code(const Options& o, const FieldTable& t) {
  const CosetFamily fam = coset_family(o, t);
  const ExplicitCode code = explicit_code(fam, t);
  const CodeSpec spec = CodeSpec::o_code(fam.sign, fam.n, fam.i);
  const long len = static_cast<long>(code.length());

  std::map<long, BigInt> closed_dual;
  for (const auto& [w, c] : dual_distribution(t, spec)) closed_dual[w.get_si()] = c;
  const auto dual = code.dual_weight_distribution();
  bool pass = code.delsarte_consistent && code.injective && dual == closed_dual;

  Json j = {{"job", "code"},
            {"family", fam_json(fam)},
            {"length", len},
            {"dual_rank", code.dual_rank},
            {"kernel_dimension", static_cast<long>(code.kernel_basis.size())},
            {"delsarte_consistent", code.delsarte_consistent},
            {"injective", code.injective},
            {"dual_distribution", dist_json(dual)},
            {"dual_distribution_closed_form", dist_json(closed_dual)}};

  std::vector<BigInt> brute;
  int j_max = std::min<long>(o.j_max, len);
  if (code.kernel_words) {
    const auto kernel = code.kernel_weight_distribution();
    j["kernel_distribution"] = dist_json(kernel);
    for (int w = 0; w <= j_max; ++w) brute.push_back(kernel.count(w) ? kernel.at(w) : BigInt(0));
  } else {
    brute = brute_force_low_weights(code.coordinates, t, j_max);
  }
  const WeightCounts wc = weight_counts(t, cell_profile(t, spec), j_max);
  Json low = Json::array();
  for (int w = 0; w <= j_max; ++w) {
    const bool ok = brute[static_cast<std::size_t>(w)] == wc.at(w);
    pass = pass && ok;
    low.push_back({{"j", w}, {"brute_force", str(brute[static_cast<std::size_t>(w)])}, {"closed_form", str(wc.at(w))}});
  }
  j["low_weights"] = low;
  j["pass"] = pass;
  return j;
}

Json oracle_expsum(const Options& o, const FieldTable& t) {
  const CosetFamily fam = coset_family(o, t);
  const CosetEnumeration e = enumerate_double_coset(fam, t);
  const CosetConstants k = constants(fam);
  Json sums = Json::array();
  bool pass = true;
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const FieldElement a{v};
    const EisensteinInt got = coset_exp_sum(e, t, a);
    const BigInt kl = kloosterman(t, t.mul(a, a));
    const BigInt inner = fam.sign == Sign::minus ? kl : kl * kl + BigInt(t.q()) * t.q() - t.q();
    const EisensteinInt want = canonical_char(t, fam.i == 1 ? a : t.neg(a)) * EisensteinInt(k.A * inner);
    pass = pass && got == want;
    sums.push_back({{"a", v},
                    {"enumerated", {{"a", str(got.a())}, {"b", str(got.b())}}},
                    {"closed_form", {{"a", str(want.a())}, {"b", str(want.b())}}},
                    {"match", got == want}});
  }
  return {{"job", "expsum"}, {"family", fam_json(fam)}, {"basis", "a + b*w"}, {"sums", sums}, {"pass", pass}};
}

Json cmd_oracle(const Options& o) {
  const FieldTable t = FieldTable::from_spec(o.field);
  Json j;
  if (o.job == "q") {
    j = oracle_q(o, t);
  } else if (o.job == "coset") {
    j = oracle_coset(o, t);
  } else if (o.job == "o3") {
    j = oracle_o3(o, t);
  } else if (o.job == "code") {
    j = oracle_code(o, t);
  } else if (o.job == "expsum") {
    j = oracle_expsum(o, t);
  } else {
    throw ParameterError("--job must be one of q, coset, o3, code, expsum");
  }
  j["field"] = field_json(t);
  if (!j["pass"].get<bool>()) throw IdentityFailure{j};
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Kloosterman-sum moments and ternary double-coset codes"};
  app.require_subcommand(1);
  Options o;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "3^r or 3^r/c_r,...,c_0")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--sign", o.sign, "minus (odd n) or plus (even n)")->capture_default_str();
    sub->add_option("--n", o.n, "n")->capture_default_str();
    sub->add_option("--i", o.i, "coset index 1 or 2")->capture_default_str();
  };

  std::function<Json(std::string*)> action;

  auto* field = app.add_subcommand("field", "field tables and parameters");
  add_field(field);
  field->callback([&] { action = [&](std::string*) { return cmd_field(o); }; });

  auto* moments = app.add_subcommand("moments", "MK, SK, T0SK or T12SK power moment");
  moments->set_help_flag("--help", "Print this help message and exit");
  add_field(moments);
  moments->add_option("--kind", o.kind, "MK, SK, T0SK or T12SK")->capture_default_str();
  moments->add_option("--h", o.h, "exponent")->capture_default_str();
  moments->callback([&] { action = [&](std::string*) { return cmd_moments(o); }; });

  auto* delta = app.add_subcommand("delta", "delta(m, q; beta) for every beta");
  add_field(delta);
  add_format(delta);
  delta->add_option("--m", o.m, "tuple length")->capture_default_str();
  delta->callback([&] { action = [&](std::string* csv) { return cmd_delta(o, csv); }; });

  auto* consts = app.add_subcommand("constants", "A, B, N and Bruhat cell sizes");
  add_field(consts);
  consts->add_option("--sign", o.sign, "minus or plus")->capture_default_str();
  consts->add_option("--n", o.n, "n")->capture_default_str();
  consts->callback([&] { action = [&](std::string*) { return cmd_constants(o); }; });

  auto* weights = app.add_subcommand("weights", "cell profile and low-weight counts of a code");
  add_field(weights);
  add_format(weights);
  add_family(weights);
  weights->add_option("--code", o.code, "o (double coset) or sp (symplectic)")->capture_default_str();
  weights->add_option("--j-max", o.j_max, "largest weight")->capture_default_str();
  weights->add_option("--profile", o.profile, "closed or printed")->capture_default_str();
  weights->callback([&] { action = [&](std::string* csv) { return cmd_weights(o, csv); }; });

  auto* dual = app.add_subcommand("dual", "dual codeword weights");
  add_field(dual);
  add_format(dual);
  add_family(dual);
  dual->callback([&] { action = [&](std::string* csv) { return cmd_dual(o, csv); }; });

  auto* verify = app.add_subcommand("verify", "check identities exactly");
  verify->require_subcommand(1);

  auto* v_rec = verify->add_subcommand("recursion", "recursion for T12SK moments");
  add_field(v_rec);
  add_family(v_rec);
  v_rec->add_option("--h-max", o.h_max, "largest h")->capture_default_str();
  v_rec->add_option("--lower", o.lower, "solved or direct lower-order moments")->capture_default_str();
  v_rec->callback([&] { action = [&](std::string*) { return cmd_verify_recursion(o); }; });

  auto* v_sk = verify->add_subcommand("sk", "SK moments against symplectic code weights");
  add_field(v_sk);
  add_family(v_sk);
  v_sk->add_option("--h-max", o.h_max, "largest h")->capture_default_str();
  v_sk->callback([&] { action = [&](std::string*) { return cmd_verify_sk(o); }; });

  auto* v_pless = verify->add_subcommand("pless", "dual power moments against Pless sums");
  add_field(v_pless);
  add_family(v_pless);
  v_pless->add_option("--h-max", o.h_max, "largest h")->capture_default_str();
  v_pless->callback([&] { action = [&](std::string*) { return cmd_verify_pless(o); }; });

  auto* v_char = verify->add_subcommand("charsum", "character-sum identities for delta");
  add_field(v_char);
  v_char->add_option("--m-max", o.m_max, "largest m")->capture_default_str();
  v_char->callback([&] { action = [&](std::string*) { return cmd_verify_charsum(o); }; });

  auto* v_salie = verify->add_subcommand("salie", "Salie recursion for MK moments");
  add_field(v_salie);
  v_salie->add_option("--h-max", o.h_max, "largest h")->capture_default_str();
  v_salie->callback([&] { action = [&](std::string*) { return cmd_verify_salie(o); }; });

  auto* v_all = verify->add_subcommand("all", "full acceptance suite");
  add_format(v_all);
  v_all->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  v_all->add_option("--criterion", o.criteria, "run only these criteria");
  v_all->callback([&] { action = [&](std::string* csv) { return cmd_verify_all(o, err, csv); }; });

  auto* oracle = app.add_subcommand("oracle", "brute-force group enumeration");
  add_field(oracle);
  add_family(oracle);
  oracle->add_option("--job", o.job, "q, coset, o3, code or expsum")->required();
  oracle->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  oracle->add_option("--j-max", o.j_max, "largest weight for the code job")->capture_default_str();
  oracle->callback([&] { action = [&](std::string*) { return cmd_oracle(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string csv;
  std::string* csv_target = o.format == "csv" ? &csv : nullptr;
  try {
    const Json j = action(csv_target);
    if (csv_target && !csv.empty()) {
      out << csv;
    } else {
      emit(out, j);
    }
    return kExitOk;
  } catch (const IdentityFailure& f) {
    emit(out, f.report);
    err << "identity failure";
    if (f.report.contains("first_failure")) err << ": " << f.report["first_failure"].dump();
    err << "\n";
    return kExitIdentityFailure;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitConsistency;
  }
}

}  // namespace kloos
